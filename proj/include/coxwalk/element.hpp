#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxwalk/algebra.hpp"
#include "coxwalk/diagram.hpp"

namespace coxwalk {

/// A word in the generators, leftmost letter first: s1 s2 ... sk.
using Word = std::vector<Generator>;

/// Raised when a configured size or iteration cap is exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (e.g. a mixed-sign root).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kDefaultBallCap = 1'000'000;
inline constexpr std::size_t kDefaultExpressionCap = 100'000;

/*
  A root (or any vector of V) in simple-root coordinates. Coordinates lie in
  Z[c] and are stored flat: coordinate t occupies coeffs[t*d, (t+1)*d).
  Ordering is lexicographic on the coefficient sequence.
*/
struct RootVector {
  std::vector<mpz_class> coeffs;

  auto operator<=>(const RootVector& other) const {
    return std::lexicographical_compare_three_way(
        coeffs.begin(), coeffs.end(), other.coeffs.begin(), other.coeffs.end(),
        [](const mpz_class& a, const mpz_class& b) {
          return cmp(a, b) <=> 0;
        });
  }
  bool operator==(const RootVector& other) const = default;
};

/*
  A group element, stored as the matrix of its action on simple-root
  coordinates in the geometric representation (faithful, so matrix equality
  is group equality), together with the matrix of its inverse and its length.
  Column j of the matrix is w(alpha_j).
*/
class GroupElement {
 public:
  int length() const { return length_; }
  bool operator==(const GroupElement& other) const {
    return group_id_ == other.group_id_ && matrix_ == other.matrix_;
  }
  std::size_t hash() const;
  std::uint64_t group_id() const { return group_id_; }
  const std::vector<mpz_class>& matrix() const { return matrix_; }

 private:
  friend class CoxeterGroup;
  std::uint64_t group_id_ = 0;
  int length_ = 0;
  std::vector<mpz_class> matrix_;   // n*n*d, row-major over (row, col)
  std::vector<mpz_class> inverse_;  // same layout
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

struct Ball {
  std::vector<std::vector<GroupElement>> levels;  // levels[k]: elements of length k
  std::vector<std::size_t> counts() const;
  std::vector<GroupElement> all() const;
};

/*
  The Coxeter group of a diagram, realized by the geometric representation
  over Q(2cos(pi/L)). Holds the reflection constants; elements produced by
  one group are rejected by another.
*/
class CoxeterGroup {
 public:
  explicit CoxeterGroup(CoxeterDiagram diagram);

  const CoxeterDiagram& diagram() const { return diagram_; }
  const algebra::FieldSpec& field() const { return *field_; }
  const algebra::FieldPtr& field_ptr() const { return field_; }
  int rank() const { return rank_; }
  std::uint64_t id() const { return id_; }

  GroupElement identity() const;
  GroupElement generator(Generator s) const;
  GroupElement element_of(const Word& word) const;
  /// w s, with the length updated from the descent test.
  GroupElement right_multiply(const GroupElement& w, Generator s) const;
  /// s w
  GroupElement left_multiply(Generator s, const GroupElement& w) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  /// a^k for k >= 0
  GroupElement power(const GroupElement& a, int k) const;

  std::vector<Generator> right_descents(const GroupElement& w) const;
  std::vector<Generator> left_descents(const GroupElement& w) const;
  bool is_right_descent(const GroupElement& w, Generator s) const;

  /// Lexicographically least reduced expression (smallest left descent first).
  Word shortlex_nf(const GroupElement& w) const;
  std::vector<Generator> support(const GroupElement& w) const;
  bool is_reduced(const Word& word) const;

  /// v <=_R w: l(v) + l(v^-1 w) = l(w).
  bool weak_leq(const GroupElement& v, const GroupElement& w) const;

  std::set<Word> reduced_expressions(const GroupElement& w,
                                     std::size_t cap = kDefaultExpressionCap) const;
  mpz_class count_reduced_expressions(const GroupElement& w) const;
  /// Closure of a reduced word under braid moves.
  std::set<Word> braid_closure(const Word& word,
                               std::size_t cap = kDefaultExpressionCap) const;

  Ball ball(int radius, std::size_t cap = kDefaultBallCap) const;
  /// Elements w of W_J with l(w) <= depth and no right descent in K.
  std::vector<GroupElement> min_coset_reps(const std::vector<Generator>& J,
                                           const std::vector<Generator>& K,
                                           int depth,
                                           std::size_t cap = kDefaultBallCap) const;

  // Roots and the bilinear form, all in Z[c] coordinates.
  RootVector simple_root(Generator s) const;
  /// w(alpha_s), i.e. column s of the matrix.
  RootVector image_of_simple_root(const GroupElement& w, Generator s) const;
  /// +1 positive, -1 negative, 0 for the zero vector; throws on mixed signs.
  int root_sign(const RootVector& v) const;
  /// 2(v | alpha_s), an element of Z[c] with d coefficients.
  std::vector<mpz_class> twice_form_with_simple(const RootVector& v, Generator s) const;
  /// sigma_s(v) = v - 2(v|alpha_s) alpha_s
  RootVector reflect(const RootVector& v, Generator s) const;
  /// Coordinates of a root as field elements.
  std::vector<algebra::AlgReal> coordinates(const RootVector& v) const;

  std::string format_word(const Word& word) const;
  /// Space-separated generator names; "" or "e" is the empty word.
  Word parse_word(std::string_view text) const;

 private:
  void check_generator(Generator s) const;
  void check_same_group(const GroupElement& g) const;
  // M <- M sigma_s (column operation) and M <- sigma_s M (row operation).
  void apply_right(std::vector<mpz_class>& m, Generator s) const;
  void apply_left(std::vector<mpz_class>& m, Generator s) const;
  int column_sign(const std::vector<mpz_class>& m, Generator s) const;
  // Number of descents stripped before reaching the identity; stops early and
  // returns limit + 1 once more than limit steps are needed.
  int length_of_matrix(std::vector<mpz_class> m, int limit) const;
  std::vector<mpz_class> matrix_product(const std::vector<mpz_class>& a,
                                        const std::vector<mpz_class>& b) const;

  CoxeterDiagram diagram_;
  algebra::FieldPtr field_;
  int rank_;
  int degree_;
  std::uint64_t id_;
  // bond_[s][t] = 2cos(pi/m(s,t)) for t != s (2 for m = infinity).
  std::vector<std::vector<algebra::FixedMultiplier>> bond_;
  std::vector<std::vector<std::vector<mpz_class>>> bond_values_;
};

}  // namespace coxwalk
