#include "coxwalk/automaton.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <unordered_map>
#include <sstream>

#include "json.hpp"

namespace coxwalk {

std::vector<Transition> ReducedWordAutomaton::transitions() const {
  std::vector<Transition> out;
  for (int q = 0; q < num_states(); ++q)
    for (int s = 0; s < rank; ++s)
      if (auto t = next(q, s)) out.push_back({q, s, *t});
  return out;
}

SigmaState ReducedWordAutomaton::state(int q) const {
  SigmaState out;
  out.reserve(states[q].size());
  for (int i : states[q]) out.push_back(roots[i]);
  return out;
}

namespace {

// s(beta) when -1 < (beta | alpha_s) < 1, nullopt otherwise.
std::optional<RootVector> guarded_reflection(const CoxeterGroup& group,
                                             const RootVector& beta, Generator s) {
  const auto& field = group.field();
  auto q = group.twice_form_with_simple(beta, s);
  std::vector<mpz_class> bound = q;
  bound[0] += 2;
  if (field.sign(std::span<const mpz_class>(bound)) <= 0) return std::nullopt;
  bound = q;
  for (auto& z : bound) z = -z;
  bound[0] += 2;
  if (field.sign(std::span<const mpz_class>(bound)) <= 0) return std::nullopt;
  RootVector image = beta;
  const int d = field.degree();
  for (int k = 0; k < d; ++k) image.coeffs[s * d + k] -= q[k];
  return image;
}

struct IdsHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

class RootTable {
 public:
  explicit RootTable(const CoxeterGroup& group) : group_(group) {
    for (Generator s = 0; s < group.rank(); ++s) intern(group.simple_root(s));
  }

  int intern(RootVector r) {
    auto [it, inserted] = index_.emplace(r, static_cast<int>(roots_.size()));
    if (inserted) {
      roots_.push_back(std::move(r));
      steps_.resize(roots_.size() * group_.rank(), kUnknown);
    }
    return it->second;
  }

  // Index of s(root i), or -1 when the guard drops it.
  int step(int i, Generator s) {
    const std::size_t key = static_cast<std::size_t>(i) * group_.rank() + s;
    if (steps_[key] == kUnknown) {
      auto image = guarded_reflection(group_, roots_[i], s);
      const int target = image ? intern(std::move(*image)) : -1;
      steps_[static_cast<std::size_t>(i) * group_.rank() + s] = target;
    }
    return steps_[key];
  }

  std::vector<RootVector> take_roots() { return std::move(roots_); }

 private:
  static constexpr int kUnknown = -2;
  const CoxeterGroup& group_;
  std::vector<RootVector> roots_;
  std::map<RootVector, int> index_;
  std::vector<int> steps_;
};

// Renumbers roots in lexicographic order and sorts every state.
void canonicalize(ReducedWordAutomaton& a) {
  std::vector<int> order(a.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a.roots[x] < a.roots[y]; });
  std::vector<int> renumber(order.size());
  std::vector<RootVector> sorted;
  sorted.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    renumber[order[k]] = static_cast<int>(k);
    sorted.push_back(std::move(a.roots[order[k]]));
  }
  a.roots = std::move(sorted);
  for (auto& st : a.states) {
    for (int& i : st) i = renumber[i];
    std::sort(st.begin(), st.end());
  }
}

}  // namespace

std::optional<SigmaState> sigma_successor(const CoxeterGroup& group,
                                          const SigmaState& state, Generator s) {
  const RootVector alpha_s = group.simple_root(s);
  if (std::binary_search(state.begin(), state.end(), alpha_s)) return std::nullopt;
  SigmaState out{alpha_s};
  for (const auto& beta : state)
    if (auto image = guarded_reflection(group, beta, s)) out.push_back(std::move(*image));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReducedWordAutomaton build_automaton(const CoxeterGroup& group, std::size_t max_states) {
  if (max_states < 1) throw std::invalid_argument("state cap must be >= 1");
  ReducedWordAutomaton a;
  a.rank = group.rank();
  a.degree = group.field().degree();
  a.generator_names = group.diagram().names();
  a.states.push_back({});
  a.start = 0;
  RootTable table(group);
  std::unordered_map<std::vector<int>, int, IdsHash> index{{std::vector<int>{}, 0}};
  std::vector<int> succ;
  for (int q = 0; q < a.num_states(); ++q) {
    for (Generator s = 0; s < a.rank; ++s) {
      // simple roots occupy indices 0..rank-1 in the table
      const auto& cur = a.states[q];
      if (std::find(cur.begin(), cur.end(), s) != cur.end()) {
        a.delta.push_back(-1);
        continue;
      }
      succ.assign(1, s);
      for (int i : a.states[q])
        if (int j = table.step(i, s); j >= 0) succ.push_back(j);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      auto [it, inserted] = index.emplace(succ, a.num_states());
      if (inserted) {
        if (a.states.size() >= max_states)
          throw CapExceeded("automaton state cap " + std::to_string(max_states) +
                            " exceeded with " +
                            std::to_string(a.states.size() - q) + " states on the frontier");
        a.states.push_back(succ);
      }
      a.delta.push_back(it->second);
    }
  }
  a.roots = table.take_roots();
  canonicalize(a);
  return a;
}

std::optional<int> run(const ReducedWordAutomaton& a, const Word& word) {
  int q = a.start;
  for (Generator s : word) {
    if (s < 0 || s >= a.rank) throw std::out_of_range("generator index out of range");
    auto t = a.next(q, s);
    if (!t) return std::nullopt;
    q = *t;
  }
  return q;
}

std::vector<mpz_class> count_reduced_words_upto(const ReducedWordAutomaton& a, int k) {
  if (k < 0) throw std::invalid_argument("negative word length");
  std::vector<mpz_class> ways(a.num_states()), next(a.num_states());
  ways[a.start] = 1;
  std::vector<mpz_class> out{1};
  for (int len = 1; len <= k; ++len) {
    for (auto& z : next) z = 0;
    for (int q = 0; q < a.num_states(); ++q) {
      if (ways[q] == 0) continue;
      for (int s = 0; s < a.rank; ++s)
        if (auto t = a.next(q, s)) next[*t] += ways[q];
    }
    std::swap(ways, next);
    mpz_class total = 0;
    for (const auto& z : ways) total += z;
    out.push_back(total);
  }
  return out;
}

mpz_class count_reduced_words(const ReducedWordAutomaton& a, int k) {
  return count_reduced_words_upto(a, k).back();
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "json") return ExportFormat::Json;
  throw std::invalid_argument("unsupported export format '" + name + "'");
}

namespace {

std::string export_dot(const ReducedWordAutomaton& a) {
  std::ostringstream out;
  out << "digraph reduced_words {\n";
  out << "  rankdir=LR;\n";
  for (int q = 0; q < a.num_states(); ++q) {
    out << "  q" << q << " [label=\"" << q << " (" << a.state_size(q) << ")\"";
    if (q == a.start) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& t : a.transitions())
    out << "  q" << t.from << " -> q" << t.to << " [label=\"" << a.generator_names[t.label]
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string quoted(const std::string& text) { return nlohmann::json(text).dump(); }

// Streamed by hand: one state or transition per line keeps large automata
// (10^5 states) cheap to write and diff.
std::string export_json(const ReducedWordAutomaton& a) {
  std::ostringstream out;
  out << "{\n  \"rank\": " << a.rank << ",\n  \"degree\": " << a.degree
      << ",\n  \"generators\": [";
  for (std::size_t i = 0; i < a.generator_names.size(); ++i)
    out << (i ? ", " : "") << quoted(a.generator_names[i]);
  out << "],\n  \"start\": " << a.start << ",\n  \"states\": [";
  for (int q = 0; q < a.num_states(); ++q) {
    out << (q ? ",\n    " : "\n    ") << "{\"id\": " << q << ", \"size\": " << a.state_size(q)
        << ", \"roots\": [";
    bool first_root = true;
    for (int i : a.states[q]) {
      out << (first_root ? "[" : ", [");
      first_root = false;
      bool first = true;
      for (const auto& z : a.roots[i].coeffs) {
        out << (first ? "\"" : ", \"") << z.get_str() << '"';
        first = false;
      }
      out << ']';
    }
    out << "]}";
  }
  out << (a.num_states() ? "\n  ],\n" : "],\n") << "  \"transitions\": [";
  bool first = true;
  for (const auto& t : a.transitions()) {
    out << (first ? "\n    " : ",\n    ") << "{\"from\": " << t.from
        << ", \"label\": " << quoted(a.generator_names[t.label]) << ", \"to\": " << t.to
        << '}';
    first = false;
  }
  out << (first ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

}  // namespace

std::string export_automaton(const ReducedWordAutomaton& a, ExportFormat format) {
  switch (format) {
    case ExportFormat::Dot: return export_dot(a);
    case ExportFormat::Json: return export_json(a);
  }
  throw std::invalid_argument("unsupported export format");
}

namespace {

// SAX reader for the export schema; avoids materializing a DOM for
// automata with 10^5 states.
class AutomatonReader : public nlohmann::json_sax<nlohmann::json> {
 public:
  bool null() override { return fail("unexpected null"); }
  bool boolean(bool) override { return fail("unexpected boolean"); }
  bool number_integer(number_integer_t v) override { return integer(v); }
  bool number_unsigned(number_unsigned_t v) override {
    return integer(static_cast<long long>(v));
  }
  bool number_float(number_float_t, const string_t&) override {
    return fail("unexpected number");
  }
  bool binary(binary_t&) override { return fail("unexpected binary value"); }

  bool string(string_t& v) override {
    if (in("generators", 2)) {
      names.push_back(v);
    } else if (in("states", 5)) {
      root.coeffs.emplace_back(v);
    } else if (in("transitions", 3) && key_ == "label") {
      trans_label = v;
    }
    return true;
  }

  bool start_object(std::size_t) override {
    stack_.push_back('o');
    if (in("states", 3)) {
      state_id = -1;
      state.clear();
    } else if (in("transitions", 3)) {
      trans_from = trans_to = -1;
      trans_label.reset();
    }
    return true;
  }
  bool end_object() override {
    if (in("states", 3)) {
      if (state_id < 0) return fail("state without id");
      states.emplace_back(state_id, std::move(state));
      state.clear();
    } else if (in("transitions", 3)) {
      if (trans_from < 0 || trans_to < 0 || !trans_label) return fail("incomplete transition");
      transitions.push_back({trans_from, std::move(*trans_label), trans_to});
    }
    stack_.pop_back();
    if (stack_.size() == 1) top_key_.clear();
    return true;
  }
  bool start_array(std::size_t) override {
    stack_.push_back('a');
    if (in("states", 5)) root.coeffs.clear();
    return true;
  }
  bool end_array() override {
    if (in("states", 5)) {
      auto [it, inserted] = index.emplace(root, static_cast<int>(roots.size()));
      if (inserted) roots.push_back(root);
      state.push_back(it->second);
    }
    stack_.pop_back();
    if (stack_.size() == 1) top_key_.clear();
    return true;
  }
  bool key(string_t& k) override {
    if (stack_.size() == 1) top_key_ = k;
    key_ = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception& e) override {
    throw std::invalid_argument(std::string("malformed automaton json: ") + e.what());
  }

  struct RawTransition {
    int from;
    std::string label;
    int to;
  };

  std::optional<int> rank, degree, start;
  std::vector<std::string> names;
  std::vector<RootVector> roots;
  std::vector<std::pair<int, std::vector<int>>> states;
  std::vector<RawTransition> transitions;

 private:
  bool in(const char* top, std::size_t depth) const {
    return stack_.size() == depth && top_key_ == top;
  }
  bool integer(long long v) {
    if (v < INT_MIN || v > INT_MAX) return fail("integer out of range");
    const int x = static_cast<int>(v);
    if (stack_.size() == 1) {
      if (key_ == "rank") rank = x;
      else if (key_ == "degree") degree = x;
      else if (key_ == "start") start = x;
    } else if (in("states", 3) && key_ == "id") {
      state_id = x;
    } else if (in("transitions", 3)) {
      if (key_ == "from") trans_from = x;
      else if (key_ == "to") trans_to = x;
    }
    return true;
  }
  bool fail(const std::string& what) {
    throw std::invalid_argument("malformed automaton json: " + what);
  }

  std::vector<char> stack_;
  std::string top_key_, key_;
  std::map<RootVector, int> index;
  RootVector root;
  int state_id = -1;
  std::vector<int> state;
  int trans_from = -1, trans_to = -1;
  std::optional<std::string> trans_label;
};

}  // namespace

ReducedWordAutomaton import_automaton_json(const std::string& text) {
  AutomatonReader reader;
  nlohmann::json::sax_parse(text, &reader);
  if (!reader.rank || !reader.degree || !reader.start)
    throw std::invalid_argument("malformed automaton json: missing rank, degree or start");
  ReducedWordAutomaton a;
  a.rank = *reader.rank;
  a.degree = *reader.degree;
  a.start = *reader.start;
  a.generator_names = std::move(reader.names);
  if (static_cast<int>(a.generator_names.size()) != a.rank)
    throw std::invalid_argument("malformed automaton json: generator count differs from rank");
  a.roots = std::move(reader.roots);
  a.states.resize(reader.states.size());
  for (auto& [id, st] : reader.states) {
    if (id < 0 || id >= a.num_states())
      throw std::invalid_argument("malformed automaton json: state id out of range");
    a.states[id] = std::move(st);
  }
  canonicalize(a);
  a.delta.assign(a.states.size() * a.rank, -1);
  for (const auto& t : reader.transitions) {
    auto it = std::find(a.generator_names.begin(), a.generator_names.end(), t.label);
    if (it == a.generator_names.end())
      throw std::invalid_argument("unknown transition label '" + t.label + "'");
    if (t.from < 0 || t.from >= a.num_states() || t.to < 0 || t.to >= a.num_states())
      throw std::invalid_argument("malformed automaton json: transition state out of range");
    const int s = static_cast<int>(it - a.generator_names.begin());
    a.delta[static_cast<std::size_t>(t.from) * a.rank + s] = t.to;
  }
  return a;
}

}  // namespace coxwalk
