#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxwalk/automaton.hpp"
#include "coxwalk/element.hpp"
#include "json.hpp"

namespace coxwalk {

/// A certificate check contradicted a claim that should hold by construction.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditions (i)-(v) for a pair (u, w), with a witness for each failure.
struct GoodPairReport {
  Word u, w;  // shortlex normal forms
  bool length_ok = false;   // (i)   l(u) <= l(w)
  bool not_below = false;   // (ii)  u is not <=_R w
  bool support_ok = false;  // (iii) |S(w)| >= 3
  bool product_splits = false;  // (iv) every reduced word of wu splits as w|u
  bool square_splits = false;   // (v)  every reduced word of w^2 splits as w|w
  std::vector<std::string> witnesses;

  bool all() const {
    return length_ok && not_below && support_ok && product_splits && square_splits;
  }
};

GoodPairReport check_good_pair(const CoxeterGroup& group, const GroupElement& u,
                               const GroupElement& w,
                               std::size_t cap = kDefaultExpressionCap);

enum class CertificateMethod { GoodPair, CosetConstruction, AutomatonCycle, LabelTransfer };
std::string to_string(CertificateMethod m);

struct PairCheck {
  int first, second;  // indices into the family
  bool leq_forward, leq_backward;
};

struct AntichainCertificate {
  CertificateMethod method = CertificateMethod::GoodPair;
  std::string diagram;  // format_diagram text
  std::vector<Word> family;
  std::vector<std::string> family_text;
  std::vector<PairCheck> checks;
  nlohmann::ordered_json facts = nlohmann::ordered_json::object();

  /// Every listed pair is incomparable in both directions.
  bool verified() const;
  nlohmann::ordered_json to_json() const;
};

/// Checks every pair of the family with weak_leq in both directions.
std::vector<PairCheck> pairwise_checks(const CoxeterGroup& group,
                                       const std::vector<GroupElement>& elements);

/*
  The family w^k u, 0 <= k <= kmax, written as k copies of w's word followed
  by u's word. Lengths must add up and the family must be an antichain;
  throws VerificationFailure otherwise.
*/
AntichainCertificate good_pair_family(const CoxeterGroup& group, const Word& u,
                                      const Word& w, int kmax);

/// Every reduced word of w^k u, k <= kmax, cut into k reduced words for w and
/// one for u. Returns the first reduced word that does not split.
std::optional<Word> first_unsplit_expression(const CoxeterGroup& group, const Word& u,
                                             const Word& w, int kmax,
                                             std::size_t cap = kDefaultExpressionCap);

struct JunctionMove {
  std::size_t position;  // start of the factor in the concatenation
  std::size_t length;    // 2 for a nil move, m(s,t) for a braid move
};

/// Nil or braid moves in a+b whose factor uses letters of both a and b.
std::vector<JunctionMove> junction_moves(const CoxeterGroup& group, const Word& a,
                                         const Word& b);

enum class HyperbolicCase { I, II, III, IV, V, VI };
std::string to_string(HyperbolicCase c);

struct CasePair {
  HyperbolicCase which;
  Word u, w;
  std::vector<Generator> mapping;  // template node -> generator of the diagram
};

/// Rank-5 path s - t - u - v - w with labels 5, 3, 3, 3, as generators in path
/// order, if d is exactly that diagram.
std::optional<std::vector<Generator>> match_case_vi(const CoxeterDiagram& d);

/*
  Candidate pairs from the case templates, in dispatch order V, IV, III, I,
  II. A template applies when some injective placement of its nodes has every
  label at least the template's label.
*/
std::vector<CasePair> case_candidates(const CoxeterDiagram& d);

/// First candidate passing check_good_pair in the actual group. Throws
/// std::invalid_argument for the Case VI diagram or when nothing applies.
CasePair compact_hyperbolic_pair(const CoxeterGroup& group);

struct CaseViFacts {
  int alpha_length = 0;
  bool runs_accept = false;
  bool states_equal = false;
  int state_6 = -1, state_7 = -1;
  int automaton_states = 0;
  std::string automaton_error;
  int length_65 = 0;  // l(w a^7 w), expected 65
  std::vector<std::pair<int, int>> lengths;  // (k, l(w a^k w))
  bool lengths_ok = false;
  std::vector<PairCheck> checks;
  std::vector<int> exponents;  // family a^k w
  bool all() const;
};

/// path lists s, t, u, v, w; facts are computed in whatever group is given.
CaseViFacts case_vi_facts(const CoxeterGroup& group, const std::vector<Generator>& path,
                          int kmax, std::size_t state_cap = kDefaultStateCap);
/// kmax must be a positive multiple of 6; throws VerificationFailure on a failed fact.
AntichainCertificate case_vi_certificate(const CoxeterGroup& group, int kmax,
                                         std::size_t state_cap = kDefaultStateCap);

/// Coset construction for irreducible, not locally finite diagrams.
AntichainCertificate not_locally_finite_antichain(const CoxeterGroup& group, int count,
                                                  int depth_cap = 256);

/// Re-checks a family (words over the same generators) in a diagram with
/// labels at least as large.
AntichainCertificate transfer_label_increase(const std::vector<Word>& words,
                                             const CoxeterDiagram& from,
                                             const CoxeterDiagram& to);

/// "e" for the empty word.
std::string word_text(const CoxeterGroup& group, const Word& word);

}  // namespace coxwalk
