#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "coxwalk/element.hpp"

namespace coxwalk {

inline constexpr std::size_t kDefaultStateCap = 250'000;

/// A state D(w): sorted, duplicate-free set of positive roots.
using SigmaState = std::vector<RootVector>;

struct Transition {
  int from;
  Generator label;
  int to;
  bool operator==(const Transition&) const = default;
};

/*
  Deterministic automaton whose accepted words are exactly the reduced words.
  States are the root sets D(w), starting from the empty set; the transition
  on s from D exists iff alpha_s is not in D and leads to

      {alpha_s} u { s(b) : b in D, -1 < (b | alpha_s) < 1 }.

  Every root occurring in some state is stored once in `roots`, sorted
  lexicographically; a state is the sorted list of its root indices, so
  index order and root order agree.
*/
struct ReducedWordAutomaton {
  int rank = 0;
  int degree = 1;
  std::vector<std::string> generator_names;
  std::vector<RootVector> roots;
  std::vector<std::vector<int>> states;
  int start = 0;
  // delta[state * rank + s] = target, or -1
  std::vector<int> delta;

  int num_states() const { return static_cast<int>(states.size()); }
  std::size_t state_size(int q) const { return states[q].size(); }
  SigmaState state(int q) const;
  std::optional<int> next(int state, Generator s) const {
    const int t = delta[static_cast<std::size_t>(state) * rank + s];
    return t < 0 ? std::nullopt : std::optional<int>(t);
  }
  std::vector<Transition> transitions() const;

  bool operator==(const ReducedWordAutomaton&) const = default;
};

/// Breadth-first construction; throws CapExceeded past max_states.
ReducedWordAutomaton build_automaton(const CoxeterGroup& group,
                                     std::size_t max_states = kDefaultStateCap);

/// The successor of a state on s, or nullopt when alpha_s is in the state.
std::optional<SigmaState> sigma_successor(const CoxeterGroup& group,
                                          const SigmaState& state, Generator s);

/// Final state, or nullopt when the word is rejected (i.e. not reduced).
std::optional<int> run(const ReducedWordAutomaton& a, const Word& word);

/// Number of accepted words of length exactly k.
mpz_class count_reduced_words(const ReducedWordAutomaton& a, int k);
/// Counts for every length 0..k.
std::vector<mpz_class> count_reduced_words_upto(const ReducedWordAutomaton& a, int k);

enum class ExportFormat { Dot, Json };
ExportFormat parse_export_format(const std::string& name);

std::string export_automaton(const ReducedWordAutomaton& a, ExportFormat format);
/// Inverse of the json export.
ReducedWordAutomaton import_automaton_json(const std::string& text);

}  // namespace coxwalk
