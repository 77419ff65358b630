#include "coxwalk/antichain.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace coxwalk {

namespace {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word repeat(const Word& a, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), a.begin(), a.end());
  return out;
}

// Does every reduced word of `product` cut into pieces from `parts`, in order?
std::optional<Word> first_unsplit(const CoxeterGroup& group, const GroupElement& product,
                                  const std::vector<const std::set<Word>*>& parts,
                                  std::size_t cap) {
  for (const Word& e : group.reduced_expressions(product, cap)) {
    std::size_t pos = 0;
    bool ok = true;
    for (const auto* part : parts) {
      const std::size_t len = part->begin()->size();
      Word piece(e.begin() + pos, e.begin() + pos + len);
      if (!part->count(piece)) {
        ok = false;
        break;
      }
      pos += len;
    }
    if (!ok) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string word_text(const CoxeterGroup& group, const Word& word) {
  return word.empty() ? "e" : group.format_word(word);
}

GoodPairReport check_good_pair(const CoxeterGroup& group, const GroupElement& u,
                               const GroupElement& w, std::size_t cap) {
  GoodPairReport r;
  r.u = group.shortlex_nf(u);
  r.w = group.shortlex_nf(w);
  const int lu = u.length(), lw = w.length();

  r.length_ok = lu <= lw;
  if (!r.length_ok)
    r.witnesses.push_back("(i) l(u) = " + std::to_string(lu) + " exceeds l(w) = " +
                          std::to_string(lw));

  r.not_below = !group.weak_leq(u, w);
  if (!r.not_below)
    r.witnesses.push_back("(ii) u <=_R w: w = u * (" +
                          word_text(group, group.shortlex_nf(
                                               group.multiply(group.inverse(u), w))) +
                          ")");

  const auto support = group.support(w);
  r.support_ok = support.size() >= 3;
  if (!r.support_ok)
    r.witnesses.push_back("(iii) support of w has " + std::to_string(support.size()) +
                          " generator(s)");

  const auto rex_u = group.reduced_expressions(u, cap);
  const auto rex_w = group.reduced_expressions(w, cap);

  const GroupElement wu = group.multiply(w, u);
  if (wu.length() != lw + lu) {
    r.witnesses.push_back("(iv) l(wu) = " + std::to_string(wu.length()) + " < l(w) + l(u)");
  } else if (auto bad = first_unsplit(group, wu, {&rex_w, &rex_u}, cap)) {
    r.witnesses.push_back("(iv) reduced word '" + word_text(group, *bad) +
                          "' of wu is not a reduced word of w followed by one of u");
  } else {
    r.product_splits = true;
  }

  const GroupElement ww = group.multiply(w, w);
  if (ww.length() != 2 * lw) {
    r.witnesses.push_back("(v) l(w^2) = " + std::to_string(ww.length()) + " < 2 l(w)");
  } else if (auto bad = first_unsplit(group, ww, {&rex_w, &rex_w}, cap)) {
    r.witnesses.push_back("(v) reduced word '" + word_text(group, *bad) +
                          "' of w^2 is not two reduced words of w");
  } else {
    r.square_splits = true;
  }
  return r;
}

std::string to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::GoodPair: return "GoodPair";
    case CertificateMethod::CosetConstruction: return "CosetConstruction";
    case CertificateMethod::AutomatonCycle: return "AutomatonCycle";
    case CertificateMethod::LabelTransfer: return "LabelTransfer";
  }
  return "?";
}

bool AntichainCertificate::verified() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const PairCheck& c) { return c.leq_forward || c.leq_backward; });
}

nlohmann::ordered_json AntichainCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = to_string(method);
  j["diagram"] = diagram;
  j["family"] = family_text;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"pair", {c.first, c.second}},
                   {"leq_forward", c.leq_forward},
                   {"leq_backward", c.leq_backward}});
  j["checks"] = std::move(arr);
  j["facts"] = facts;
  return j;
}

std::vector<PairCheck> pairwise_checks(const CoxeterGroup& group,
                                       const std::vector<GroupElement>& elements) {
  std::vector<PairCheck> out;
  const int n = static_cast<int>(elements.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back({i, j, group.weak_leq(elements[i], elements[j]),
                     group.weak_leq(elements[j], elements[i])});
  return out;
}

namespace {

AntichainCertificate make_certificate(const CoxeterGroup& group, CertificateMethod method,
                                      const std::vector<Word>& words,
                                      const std::vector<GroupElement>& elements) {
  AntichainCertificate cert;
  cert.method = method;
  cert.diagram = format_diagram(group.diagram());
  cert.family = words;
  for (const auto& word : words) cert.family_text.push_back(word_text(group, word));
  cert.checks = pairwise_checks(group, elements);
  return cert;
}

void require_antichain(const AntichainCertificate& cert) {
  for (const auto& c : cert.checks)
    if (c.leq_forward || c.leq_backward)
      throw VerificationFailure("family members " + std::to_string(c.first) + " and " +
                                std::to_string(c.second) + " are comparable");
}

}  // namespace

AntichainCertificate good_pair_family(const CoxeterGroup& group, const Word& u,
                                      const Word& w, int kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be >= 0");
  const GroupElement ue = group.element_of(u);
  const GroupElement we = group.element_of(w);
  if (ue.length() != static_cast<int>(u.size()) || we.length() != static_cast<int>(w.size()))
    throw std::invalid_argument("good pair words must be reduced");
  std::vector<Word> words;
  std::vector<GroupElement> elements;
  GroupElement cur = ue;
  nlohmann::ordered_json lengths = nlohmann::ordered_json::array();
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) cur = group.multiply(we, cur);
    const int expected = k * we.length() + ue.length();
    if (cur.length() != expected)
      throw VerificationFailure("l(w^" + std::to_string(k) + " u) = " +
                                std::to_string(cur.length()) + ", expected " +
                                std::to_string(expected));
    words.push_back(concat(repeat(w, k), u));
    elements.push_back(cur);
    lengths.push_back(cur.length());
  }
  auto cert = make_certificate(group, CertificateMethod::GoodPair, words, elements);
  cert.facts["u"] = word_text(group, u);
  cert.facts["w"] = word_text(group, w);
  cert.facts["lengths"] = std::move(lengths);
  require_antichain(cert);
  return cert;
}

std::optional<Word> first_unsplit_expression(const CoxeterGroup& group, const Word& u,
                                             const Word& w, int kmax, std::size_t cap) {
  const GroupElement ue = group.element_of(u);
  const GroupElement we = group.element_of(w);
  const auto rex_u = group.reduced_expressions(ue, cap);
  const auto rex_w = group.reduced_expressions(we, cap);
  GroupElement cur = ue;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) cur = group.multiply(we, cur);
    if (cur.length() != k * we.length() + ue.length()) return group.shortlex_nf(cur);
    std::vector<const std::set<Word>*> parts(k, &rex_w);
    parts.push_back(&rex_u);
    if (auto bad = first_unsplit(group, cur, parts, cap)) return bad;
  }
  return std::nullopt;
}

std::vector<JunctionMove> junction_moves(const CoxeterGroup& group, const Word& a,
                                         const Word& b) {
  std::vector<JunctionMove> out;
  if (a.empty() || b.empty()) return out;
  const Word c = concat(a, b);
  const std::size_t cut = a.size();
  if (c[cut - 1] == c[cut]) out.push_back({cut - 1, 2});
  for (std::size_t p = 0; p < cut; ++p) {
    const Generator x = c[p], y = c[p + 1];
    if (x == y) continue;
    const int m = group.diagram().label(x, y);
    if (m == kInfinity) continue;
    const std::size_t len = static_cast<std::size_t>(m);
    if (p + len <= cut || p + len > c.size()) continue;
    bool alternating = true;
    for (std::size_t i = 0; i < len; ++i)
      if (c[p + i] != (i % 2 == 0 ? x : y)) alternating = false;
    if (alternating) out.push_back({p, len});
  }
  return out;
}

std::string to_string(HyperbolicCase c) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI"};
  return names[static_cast<int>(c)];
}

namespace {

struct Template {
  HyperbolicCase which;
  int size;
  std::vector<int> labels;  // size x size, 2 off the edges
  Word u, w;

  void edge(int i, int j, int m) {
    labels[i * size + j] = m;
    labels[j * size + i] = m;
  }
};

Template make_template(HyperbolicCase which, int size) {
  return {which, size, std::vector<int>(static_cast<std::size_t>(size * size), 2), {}, {}};
}

bool dominates(int actual, int wanted) {
  if (actual == kInfinity) return true;
  if (wanted == kInfinity) return false;
  return actual >= wanted;
}

std::vector<Template> templates_for_rank(int rank) {
  std::vector<Template> out;
  if (rank >= 4) {  // path 3 - 5 - 3
    auto t = make_template(HyperbolicCase::V, 4);
    t.edge(0, 1, 3);
    t.edge(1, 2, 5);
    t.edge(2, 3, 3);
    t.u = {2, 3, 1, 2, 1};     // uvtut
    t.w = {2, 1, 3, 0, 2, 1};  // utvsut
    out.push_back(t);
  }
  for (int n = 4; n <= rank; ++n) {  // fork, 5 at the end of the handle
    auto t = make_template(HyperbolicCase::IV, n);
    t.edge(0, 1, 5);
    for (int i = 1; i + 1 <= n - 2; ++i) t.edge(i, i + 1, 3);
    t.edge(n - 3, n - 1, 3);
    t.u = {0, 1, 0};
    for (int i = 0; i < n; ++i) t.w.push_back(i);
    for (int i = n - 3; i >= 1; --i) t.w.push_back(i);
    out.push_back(t);
  }
  if (rank >= 3) {  // 7 - 3 path
    auto t = make_template(HyperbolicCase::III, 3);
    t.edge(0, 1, 7);
    t.edge(1, 2, 3);
    t.u = {0, 1};
    t.w = {0, 2, 1, 0, 1};
    out.push_back(t);
  }
  for (int n = 3; n <= rank; ++n) {  // cycle with one 4
    auto t = make_template(HyperbolicCase::I, n);
    for (int i = 0; i + 1 < n; ++i) t.edge(i, i + 1, 3);
    t.edge(0, n - 1, 4);
    t.u = {n - 1};
    for (int i = 1; i < n; ++i) t.w.push_back(i);
    t.w.push_back(0);
    out.push_back(t);
  }
  for (int n = 3; n <= rank; ++n) {  // path 5 ... 4
    auto t = make_template(HyperbolicCase::II, n);
    for (int i = 0; i + 1 < n; ++i) t.edge(i, i + 1, 3);
    t.edge(0, 1, 5);
    t.edge(n - 2, n - 1, 4);
    t.u = {0, 1, 0};
    for (int i = 0; i < n; ++i) t.w.push_back(i);
    for (int i = n - 2; i >= 1; --i) t.w.push_back(i);
    out.push_back(t);
  }
  return out;
}

// All injective placements of the template, in lexicographic order.
void placements(const Template& t, const CoxeterDiagram& d, bool exact,
                const std::function<void(const std::vector<Generator>&)>& emit) {
  std::vector<Generator> image;
  std::vector<bool> used(d.rank(), false);
  std::function<void()> rec = [&]() {
    const int i = static_cast<int>(image.size());
    if (i == t.size) {
      emit(image);
      return;
    }
    for (Generator g = 0; g < d.rank(); ++g) {
      if (used[g]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        const int wanted = t.labels[i * t.size + j];
        const int actual = d.label(g, image[j]);
        ok = exact ? actual == wanted : dominates(actual, wanted);
      }
      if (!ok) continue;
      used[g] = true;
      image.push_back(g);
      rec();
      image.pop_back();
      used[g] = false;
    }
  };
  rec();
}

Word map_word(const Word& word, const std::vector<Generator>& mapping) {
  Word out;
  for (Generator s : word) out.push_back(mapping[s]);
  return out;
}

}  // namespace

std::optional<std::vector<Generator>> match_case_vi(const CoxeterDiagram& d) {
  if (d.rank() != 5) return std::nullopt;
  auto t = make_template(HyperbolicCase::VI, 5);
  t.edge(0, 1, 5);
  t.edge(1, 2, 3);
  t.edge(2, 3, 3);
  t.edge(3, 4, 3);
  std::optional<std::vector<Generator>> found;
  placements(t, d, true, [&](const std::vector<Generator>& m) {
    if (!found) found = m;
  });
  return found;
}

std::vector<CasePair> case_candidates(const CoxeterDiagram& d) {
  std::vector<CasePair> out;
  std::set<std::pair<Word, Word>> seen;
  for (const auto& t : templates_for_rank(d.rank()))
    placements(t, d, false, [&](const std::vector<Generator>& m) {
      CasePair p{t.which, map_word(t.u, m), map_word(t.w, m), m};
      if (seen.insert({p.u, p.w}).second) out.push_back(std::move(p));
    });
  return out;
}

CasePair compact_hyperbolic_pair(const CoxeterGroup& group) {
  if (match_case_vi(group.diagram()))
    throw std::invalid_argument("Case VI diagram: use the automaton cycle certificate");
  for (const auto& c : case_candidates(group.diagram())) {
    if (check_good_pair(group, group.element_of(c.u), group.element_of(c.w)).all())
      return c;
  }
  throw std::invalid_argument("no case construction yields a good pair for this diagram");
}

bool CaseViFacts::all() const {
  return alpha_length == 9 && runs_accept && states_equal && length_65 == 65 &&
         lengths_ok && !checks.empty() &&
         std::none_of(checks.begin(), checks.end(), [](const PairCheck& c) {
           return c.leq_forward || c.leq_backward;
         });
}

CaseViFacts case_vi_facts(const CoxeterGroup& group, const std::vector<Generator>& path,
                          int kmax, std::size_t state_cap) {
  if (path.size() != 5) throw std::invalid_argument("Case VI needs five generators");
  if (kmax < 6 || kmax % 6 != 0)
    throw std::invalid_argument("kmax must be a positive multiple of 6");
  const Generator s = path[0], t = path[1], u = path[2], v = path[3], w = path[4];
  const Word alpha{s, t, u, v, w, s, t, u, v};
  const Word lead{w};

  CaseViFacts f;
  const GroupElement a = group.element_of(alpha);
  f.alpha_length = a.length();

  try {
    const auto automaton = build_automaton(group, state_cap);
    f.automaton_states = automaton.num_states();
    const auto q6 = run(automaton, concat(lead, repeat(alpha, 6)));
    const auto q7 = run(automaton, concat(lead, repeat(alpha, 7)));
    f.runs_accept = q6.has_value() && q7.has_value();
    if (q6) f.state_6 = *q6;
    if (q7) f.state_7 = *q7;
    f.states_equal = f.runs_accept && *q6 == *q7;
  } catch (const CapExceeded& e) {
    f.automaton_error = e.what();
  }

  // w a^k, extended one generator at a time
  GroupElement cur = group.generator(w);
  f.lengths_ok = true;
  for (int k = 1; k <= kmax + 1; ++k) {
    for (Generator x : alpha) cur = group.right_multiply(cur, x);
    if (k < 6) continue;
    const int len = group.right_multiply(cur, w).length();
    f.lengths.emplace_back(k, len);
    if (k == 7) f.length_65 = len;
    if (len != 2 + 9 * k) f.lengths_ok = false;
  }

  std::vector<GroupElement> family;
  GroupElement member = group.generator(w);
  for (int k = 0; k <= kmax; ++k) {
    if (k % 6 == 0) {
      f.exponents.push_back(k);
      family.push_back(member);
    }
    member = group.multiply(a, member);
  }
  f.checks = pairwise_checks(group, family);
  return f;
}

AntichainCertificate case_vi_certificate(const CoxeterGroup& group, int kmax,
                                         std::size_t state_cap) {
  const auto path = match_case_vi(group.diagram());
  if (!path) throw std::invalid_argument("diagram is not the rank-5 path with labels 5,3,3,3");
  const auto f = case_vi_facts(group, *path, kmax, state_cap);
  if (!f.automaton_error.empty()) throw CapExceeded(f.automaton_error);
  if (!f.all()) throw VerificationFailure("Case VI facts do not hold for this diagram");

  const auto& p = *path;
  const Word alpha{p[0], p[1], p[2], p[3], p[4], p[0], p[1], p[2], p[3]};
  std::vector<Word> words;
  for (int k : f.exponents) words.push_back(concat(repeat(alpha, k), Word{p[4]}));
  AntichainCertificate cert;
  cert.method = CertificateMethod::AutomatonCycle;
  cert.diagram = format_diagram(group.diagram());
  cert.family = words;
  for (const auto& word : words) cert.family_text.push_back(word_text(group, word));
  cert.checks = f.checks;
  cert.facts["alpha"] = word_text(group, alpha);
  cert.facts["alpha_length"] = f.alpha_length;
  cert.facts["automaton_states"] = f.automaton_states;
  cert.facts["state_w_alpha6"] = f.state_6;
  cert.facts["state_w_alpha7"] = f.state_7;
  cert.facts["length_w_alpha7_w"] = f.length_65;
  auto lengths = nlohmann::ordered_json::array();
  for (auto [k, len] : f.lengths) lengths.push_back({{"k", k}, {"length", len}});
  cert.facts["lengths_w_alphak_w"] = std::move(lengths);
  cert.facts["exponents"] = f.exponents;
  return cert;
}

AntichainCertificate not_locally_finite_antichain(const CoxeterGroup& group, int count,
                                                  int depth_cap) {
  const auto& d = group.diagram();
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (!is_irreducible(d)) throw std::invalid_argument("diagram is not irreducible");
  if (is_locally_finite(d)) throw std::invalid_argument("diagram is locally finite");
  const int n = d.rank();

  // smallest proper J, lexicographically first, with W_J infinite irreducible
  std::vector<Generator> J;
  for (int size = 2; size < n && J.empty(); ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<Generator> cand;
      for (int i = 0; i < n; ++i)
        if (pick[i]) cand.push_back(i);
      const auto sub = subdiagram(d, cand);
      if (is_irreducible(sub) && classify(sub) != DiagramClass::Finite) {
        J = cand;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  if (J.empty()) throw InternalError("no infinite proper parabolic subgroup found");

  Generator s = -1, s_out = -1;
  for (Generator a : J) {
    for (Generator b = 0; b < n && s < 0; ++b)
      if (std::find(J.begin(), J.end(), b) == J.end() && d.adjacent(a, b)) {
        s = a;
        s_out = b;
      }
    if (s >= 0) break;
  }
  if (s < 0) throw InternalError("J has no neighbour outside it");

  std::vector<Generator> K;
  for (Generator a : J)
    if (a != s) K.push_back(a);

  std::vector<Word> reps;
  int depth = std::min(depth_cap, std::max(4, count));
  for (;;) {
    reps.clear();
    for (const auto& g : group.min_coset_reps(J, K, depth))
      if (g.length() > 0) reps.push_back(group.shortlex_nf(g));
    if (static_cast<int>(reps.size()) >= count) break;
    if (depth >= depth_cap)
      throw CapExceeded("found " + std::to_string(reps.size()) + " of " +
                        std::to_string(count) + " coset representatives within depth " +
                        std::to_string(depth_cap));
    depth = std::min(depth_cap, depth * 2);
  }
  std::sort(reps.begin(), reps.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  reps.resize(count);

  std::vector<Word> words;
  std::vector<GroupElement> elements;
  for (const auto& r : reps) {
    words.push_back(concat(r, Word{s_out}));
    elements.push_back(group.element_of(words.back()));
  }
  auto cert = make_certificate(group, CertificateMethod::CosetConstruction, words, elements);
  std::vector<std::string> jnames;
  for (Generator a : J) jnames.push_back(d.name(a));
  cert.facts["J"] = jnames;
  cert.facts["s"] = d.name(s);
  cert.facts["s_prime"] = d.name(s_out);
  cert.facts["depth"] = depth;
  require_antichain(cert);
  return cert;
}

AntichainCertificate transfer_label_increase(const std::vector<Word>& words,
                                             const CoxeterDiagram& from,
                                             const CoxeterDiagram& to) {
  if (from.names() != to.names())
    throw std::invalid_argument("label transfer needs the same generators in the same order");
  for (Generator a = 0; a < from.rank(); ++a)
    for (Generator b = a + 1; b < from.rank(); ++b)
      if (!dominates(to.label(a, b), from.label(a, b)))
        throw std::invalid_argument("target diagram lowers the label of " + from.name(a) +
                                    "-" + from.name(b));
  const CoxeterGroup target(to);
  std::vector<GroupElement> elements;
  for (const auto& word : words) {
    elements.push_back(target.element_of(word));
    if (elements.back().length() != static_cast<int>(word.size()))
      throw VerificationFailure("word '" + word_text(target, word) +
                                "' is not reduced in the target group");
  }
  auto cert = make_certificate(target, CertificateMethod::LabelTransfer, words, elements);
  cert.facts["source"] = format_diagram(from);
  cert.facts["all_reduced"] = true;
  require_antichain(cert);
  return cert;
}

}  // namespace coxwalk
