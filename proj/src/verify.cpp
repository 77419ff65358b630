#include "coxwalk/verify.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "coxwalk/affine.hpp"
#include "coxwalk/antichain.hpp"
#include "coxwalk/automaton.hpp"

namespace coxwalk {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

FactResult run_fact(const std::string& id, const std::string& claim,
                    const std::function<Outcome()>& body) {
  FactResult r{id, claim, false, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto o = body();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<Generator> by_names(const CoxeterDiagram& d, const std::vector<std::string>& names) {
  std::vector<Generator> out;
  for (const auto& n : names) out.push_back(d.index_of(n));
  return out;
}

std::set<std::string> expression_texts(const CoxeterGroup& g, const GroupElement& x) {
  std::set<std::string> out;
  for (const auto& word : g.reduced_expressions(x)) {
    std::string s;
    for (Generator a : word) s += g.diagram().name(a);
    out.insert(s);
  }
  return out;
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
  return out;
}

const char* kRankFourFive[] = {
    "ch_path_4_3_5",   "ch_path_5_3_5",   "ch_path_4_3_3_5", "ch_path_5_3_3_5",
    "ch_square_4",     "ch_square_5",     "ch_square_4_4",   "ch_square_4_5",
    "ch_square_5_5",   "ch_pentagon_4",   "ch_fork_4",       "ch_fork_5",
    "ch_path_3_5_3",   "ch_path_5_3_3_3",
};

}  // namespace

std::vector<FactResult> verify_paper(const std::string& fixture_dir) {
  auto load = [&](const std::string& name) {
    return load_diagram(fixture_dir + "/" + name + ".cox");
  };
  std::vector<FactResult> out;

  // Case VI, computed once; a corrupted fixture still yields numbers.
  std::optional<CaseViFacts> vi;
  std::string vi_error;
  try {
    const CoxeterGroup g(load("case_vi"));
    vi = case_vi_facts(g, by_names(g.diagram(), {"s", "t", "u", "v", "w"}), 18);
  } catch (const std::exception& e) {
    vi_error = e.what();
  }
  auto with_vi = [&](const std::function<Outcome(const CaseViFacts&)>& f) {
    return [&, f]() -> Outcome {
      if (!vi) return {false, "error: " + vi_error};
      return f(*vi);
    };
  };
  out.push_back(run_fact("case-vi-alpha", "l(alpha) = 9 for alpha = stuvwstuv",
                         with_vi([](const CaseViFacts& f) -> Outcome {
                           return {f.alpha_length == 9,
                                   "l(alpha) = " + std::to_string(f.alpha_length)};
                         })));
  out.push_back(run_fact(
      "case-vi-cycle", "D(w alpha^6) = D(w alpha^7) in the reduced-word automaton",
      with_vi([](const CaseViFacts& f) -> Outcome {
        if (!f.automaton_error.empty()) return {false, f.automaton_error};
        std::string detail = std::to_string(f.automaton_states) + " states; ";
        if (!f.runs_accept) return {false, detail + "a run rejects"};
        return {f.states_equal, detail + "states " + std::to_string(f.state_6) + " and " +
                                    std::to_string(f.state_7)};
      })));
  out.push_back(run_fact("case-vi-length-65", "l(w alpha^7 w) = 65",
                         with_vi([](const CaseViFacts& f) -> Outcome {
                           return {f.length_65 == 65,
                                   "l(w alpha^7 w) = " + std::to_string(f.length_65)};
                         })));
  out.push_back(run_fact("case-vi-lengths", "l(w alpha^k w) = 2 + 9k for 6 <= k <= 19",
                         with_vi([](const CaseViFacts& f) -> Outcome {
                           std::string bad;
                           for (auto [k, len] : f.lengths)
                             if (len != 2 + 9 * k)
                               bad += " k=" + std::to_string(k) + ":" + std::to_string(len);
                           return {f.lengths_ok && bad.empty(),
                                   bad.empty() ? "all match" : "mismatch" + bad};
                         })));
  out.push_back(run_fact(
      "case-vi-antichain", "alpha^k w, k in {0, 6, 12, 18}, pairwise incomparable",
      with_vi([](const CaseViFacts& f) -> Outcome {
        int comparable = 0;
        for (const auto& c : f.checks) comparable += c.leq_forward || c.leq_backward;
        return {comparable == 0 && !f.checks.empty(),
                std::to_string(f.checks.size()) + " pairs, " + std::to_string(comparable) +
                    " comparable"};
      })));

  auto case_v = [&](const std::function<Outcome(const CoxeterGroup&, const Word&,
                                                const Word&)>& f) {
    return [&, f]() -> Outcome {
      const CoxeterGroup g(load("case_v"));
      return f(g, g.parse_word("uvtut"), g.parse_word("utvsut"));
    };
  };
  out.push_back(run_fact(
      "case-v-expressions",
      "omega = utvsut has exactly the reduced words utvsut utvust uvtust utsvut uvtsut; "
      "nu = uvtut has exactly uvtut utvut",
      case_v([](const CoxeterGroup& g, const Word& nu, const Word& omega) -> Outcome {
        const auto o = expression_texts(g, g.element_of(omega));
        const auto n = expression_texts(g, g.element_of(nu));
        const std::set<std::string> want_o{"utvsut", "utvust", "uvtust", "utsvut", "uvtsut"};
        const std::set<std::string> want_n{"uvtut", "utvut"};
        return {o == want_o && n == want_n, "omega: " + join(o) + "; nu: " + join(n)};
      })));
  out.push_back(run_fact(
      "case-v-junctions", "none of the 25 products of two reduced words of omega has a move across the junction",
      case_v([](const CoxeterGroup& g, const Word&, const Word& omega) -> Outcome {
        const auto rex = g.reduced_expressions(g.element_of(omega));
        int pairs = 0, moves = 0;
        for (const auto& a : rex)
          for (const auto& b : rex) {
            ++pairs;
            moves += static_cast<int>(junction_moves(g, a, b).size());
          }
        return {pairs == 25 && moves == 0,
                std::to_string(pairs) + " concatenations, " + std::to_string(moves) +
                    " junction moves"};
      })));
  out.push_back(run_fact(
      "case-v-good-pair", "(nu, omega) satisfies conditions (i)-(v)",
      case_v([](const CoxeterGroup& g, const Word& nu, const Word& omega) -> Outcome {
        const auto r = check_good_pair(g, g.element_of(nu), g.element_of(omega));
        std::string detail = r.all() ? "all conditions hold" : "";
        for (const auto& w : r.witnesses) detail += w + "; ";
        return {r.all(), detail};
      })));

  struct PairSpec {
    const char* id;
    const char* fixture;
    const char* u;
    const char* w;
  };
  for (const PairSpec& p : {PairSpec{"case-i", "case_i", "s3", "s2 s3 s1"},
                            PairSpec{"case-ii", "case_ii", "s1 s2 s1", "s1 s2 s3 s2"},
                            PairSpec{"case-iii", "case_iii", "a b", "a c b a b"},
                            PairSpec{"case-iv", "case_iv", "s1 s2 s1", "s1 s2 s3 s4 s2"}}) {
    out.push_back(run_fact(
        std::string(p.id) + "-good-pair",
        std::string("u = ") + p.u + ", w = " + p.w + " is a good pair; w^k u, k <= 6, is an antichain",
        [&, p]() -> Outcome {
          const CoxeterGroup g(load(p.fixture));
          const Word u = g.parse_word(p.u), w = g.parse_word(p.w);
          const auto r = check_good_pair(g, g.element_of(u), g.element_of(w));
          if (!r.all()) {
            std::string detail;
            for (const auto& x : r.witnesses) detail += x + "; ";
            return {false, detail};
          }
          const auto cert = good_pair_family(g, u, w, 6);
          return {cert.verified(), std::to_string(cert.checks.size()) + " pairs incomparable"};
        }));
  }

  out.push_back(run_fact("ch-classes", "all 14 compact hyperbolic diagrams of rank 4 and 5 classify as such",
                         [&]() -> Outcome {
                           std::string bad;
                           for (const char* name : kRankFourFive)
                             if (classify(load(name)) != DiagramClass::CompactHyperbolic)
                               bad += std::string(" ") + name;
                           return {bad.empty(), bad.empty() ? "14 of 14" : "not CH:" + bad};
                         }));
  out.push_back(run_fact(
      "ch-antichains", "every compact hyperbolic group of rank 4 and 5 has a verified antichain certificate",
      [&]() -> Outcome {
        std::ostringstream detail;
        bool ok = true;
        for (const char* name : kRankFourFive) {
          const CoxeterGroup g(load(name));
          if (match_case_vi(g.diagram())) {
            const auto cert = case_vi_certificate(g, 12);
            ok = ok && cert.verified();
            detail << name << ":VI ";
            continue;
          }
          const auto pair = compact_hyperbolic_pair(g);
          const auto cert = good_pair_family(g, pair.u, pair.w, 6);
          ok = ok && cert.verified();
          detail << name << ":" << to_string(pair.which) << " ";
        }
        return {ok, detail.str()};
      }));

  out.push_back(run_fact(
      "affine-embedding",
      "weak order agrees with the alcove order on balls of A~2 (6), C~2 (5), A~1 (10)",
      [&]() -> Outcome {
        std::ostringstream detail;
        bool ok = true;
        for (auto [name, radius] : {std::pair{"affine_a2", 6}, std::pair{"affine_c2", 5},
                                    std::pair{"affine_a1", 10}}) {
          const auto rep = embedding_check(load(name), radius);
          ok = ok && rep.ok();
          detail << rep.type << ": " << rep.pairs_checked << " pairs, "
                 << rep.violations.size() << " violations; ";
        }
        return {ok, detail.str()};
      }));

  out.push_back(run_fact("coset-antichain",
                         "the universal rank-3 group has 20 pairwise incomparable elements w s'",
                         [&]() -> Outcome {
                           const CoxeterGroup g(load("universal3"));
                           const auto cert = not_locally_finite_antichain(g, 20);
                           return {cert.verified() && cert.family.size() == 20,
                                   std::to_string(cert.family.size()) + " elements"};
                         }));

  out.push_back(run_fact(
      "label-increase", "Case I words of the (3,3,4) triangle stay an antichain in (3,3,5) and (3,4,4)",
      [&]() -> Outcome {
        const auto from = load("triangle_3_3_4");
        const CoxeterGroup g(from);
        const auto fam = good_pair_family(g, g.parse_word("c"), g.parse_word("b c a"), 6);
        bool ok = true;
        for (const char* target : {"triangle_3_3_5", "triangle_3_4_4"})
          ok = ok && transfer_label_increase(fam.family, from, load(target)).verified();
        return {ok, std::to_string(fam.family.size()) + " words transferred"};
      }));

  out.push_back(run_fact("growth", "I2(inf) has 2 reduced words of each length 1..10; A~2 has 3k elements of length k <= 8",
                         [&]() -> Outcome {
                           const CoxeterGroup dihedral(load("affine_a1"));
                           const auto a = build_automaton(dihedral);
                           const auto counts = count_reduced_words_upto(a, 10);
                           bool ok = true;
                           for (int k = 1; k <= 10; ++k) ok = ok && counts[k] == 2;
                           const CoxeterGroup a2(load("affine_a2"));
                           const auto levels = a2.ball(8).counts();
                           for (int k = 1; k <= 8; ++k)
                             ok = ok && levels[k] == static_cast<std::size_t>(3 * k);
                           return {ok, "automaton states " + std::to_string(a.num_states())};
                         }));
  return out;
}

nlohmann::ordered_json facts_to_json(const std::vector<FactResult>& facts) {
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& f : facts) {
    arr.push_back({{"id", f.id},
                   {"claim", f.claim},
                   {"passed", f.passed},
                   {"detail", f.detail},
                   {"seconds", f.seconds}});
    all = all && f.passed;
  }
  return {{"passed", all}, {"facts", std::move(arr)}};
}

}  // namespace coxwalk
