#pragma once

#include <gmpxx.h>

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "coxwalk/diagram.hpp"

namespace coxwalk::algebra {

/// Dense polynomial over Q, constant term first. Trailing zeros are trimmed.
using RationalPoly = std::vector<mpq_class>;

void trim(RationalPoly& p);
int poly_degree(const RationalPoly& p);  // -1 for the zero polynomial
RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b);
RationalPoly poly_sub(const RationalPoly& a, const RationalPoly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<RationalPoly, RationalPoly> poly_divmod(const RationalPoly& a,
                                                  const RationalPoly& b);
/// Square root of a perfect square with positive leading coefficient.
/// Throws std::domain_error if p is not a square.
RationalPoly poly_sqrt(const RationalPoly& p);

/// V_k(x) = 2 T_k(x/2), so that 2cos(k t) = V_k(2cos t).
RationalPoly vieta_lucas(int k);

/*
  The real cyclotomic field Q(c), c = 2cos(pi/L).

  Elements are coefficient vectors in the power basis 1, c, ..., c^(d-1).
  The minimal polynomial is monic with integer coefficients, so Z[c] is
  closed under the multiplication implemented here.

  Signs are decided by evaluating against a dyadic enclosure of c whose
  width halves with each refinement level until the value interval
  excludes zero.
*/
class FieldSpec {
 public:
  explicit FieldSpec(int modulus);

  int modulus() const { return modulus_; }
  int degree() const { return degree_; }
  /// Monic, integer coefficients, size degree()+1.
  const std::vector<mpz_class>& minpoly() const { return minpoly_; }
  double approx_generator() const;

  /// Reduces a polynomial in c (any length) modulo the minimal polynomial.
  std::vector<mpz_class> reduce(std::vector<mpz_class> poly) const;
  RationalPoly reduce(RationalPoly poly) const;

  /// 2cos(pi/m) in the power basis; m must divide modulus().
  std::vector<mpz_class> two_cos_pi_over(int m) const;

  /// Sign of sum coeffs[i] c^i, coeffs of length degree().
  int sign(std::span<const mpz_class> coeffs) const;
  int sign(std::span<const mpq_class> coeffs) const;

  /// Certified rational enclosure [lo, hi] of c with hi - lo <= 2^-bits.
  std::pair<mpq_class, mpq_class> enclosure(int bits) const;

 private:
  struct Enclosure {
    int bits = 0;
    mpz_class lo, hi;  // c in [lo, hi] / 2^bits
    std::vector<mpz_class> lo_pow, hi_pow;  // scaled powers, common denominator
  };
  Enclosure refine(const Enclosure& from, int bits) const;
  void fill_powers(Enclosure& e) const;
  int minpoly_sign_at(const mpz_class& num, int bits) const;
  int sign_with(const Enclosure& e, std::span<const mpz_class> coeffs) const;

  int modulus_;
  int degree_;
  std::vector<mpz_class> minpoly_;
  std::vector<Enclosure> enclosures_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Shared, cached field Q(2cos(pi/L)).
FieldPtr field_for_modulus(int modulus);
/// L = lcm of the finite labels of d (at least 2).
int field_modulus(const CoxeterDiagram& d);
FieldPtr field_for(const CoxeterDiagram& d);

/// Exact element of a FieldSpec with rational coordinates.
class AlgReal {
 public:
  explicit AlgReal(FieldPtr field);
  AlgReal(FieldPtr field, long value);
  AlgReal(FieldPtr field, mpq_class value);
  AlgReal(FieldPtr field, RationalPoly coeffs);
  static AlgReal from_integral(FieldPtr field, std::span<const mpz_class> coeffs);
  /// The generator c itself.
  static AlgReal generator(FieldPtr field);

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  AlgReal operator-() const;
  AlgReal& operator+=(const AlgReal& b);
  AlgReal& operator-=(const AlgReal& b);
  AlgReal& operator*=(const AlgReal& b);
  AlgReal& operator/=(const AlgReal& b);
  AlgReal inverse() const;

  friend AlgReal operator+(AlgReal a, const AlgReal& b) { return a += b; }
  friend AlgReal operator-(AlgReal a, const AlgReal& b) { return a -= b; }
  friend AlgReal operator*(AlgReal a, const AlgReal& b) { return a *= b; }
  friend AlgReal operator/(AlgReal a, const AlgReal& b) { return a /= b; }
  bool operator==(const AlgReal& b) const;

 private:
  void check_same_field(const AlgReal& b) const;

  FieldPtr field_;
  std::vector<mpq_class> coeffs_;  // always length field.degree()
};

/// (alpha_i | alpha_j) = -cos(pi/m(i,j)); -1 for m = infinity.
AlgReal form_value(const CoxeterDiagram& d, Generator i, Generator j,
                   const FieldPtr& field);

struct GramMatrix {
  int n = 0;
  std::vector<AlgReal> entries;  // row-major
  const AlgReal& at(int i, int j) const { return entries[i * n + j]; }
};

GramMatrix gram(const CoxeterDiagram& d);

enum class Definiteness { PosDef, PosSemiDefSingular, Other };

/// Symmetric Gaussian elimination with exact pivot signs.
Definiteness definiteness(const GramMatrix& g);
/// The pivots produced by the elimination, for diagnostics.
std::vector<AlgReal> gram_pivots(const GramMatrix& g);

/*
  dst += k * src for a fixed k in Z[c]. Integer k are applied as scalars,
  everything else as a sparse integer matrix.
*/
class FixedMultiplier {
 public:
  FixedMultiplier() = default;
  FixedMultiplier(const FieldSpec& field, std::span<const mpz_class> value);

  bool is_zero() const { return kind_ == Kind::Zero; }
  void add_product(std::span<mpz_class> dst, std::span<const mpz_class> src) const;

 private:
  enum class Kind { Zero, Scalar, Dense };
  struct Entry {
    int row, col;
    mpz_class value;
  };
  Kind kind_ = Kind::Zero;
  mpz_class scalar_;
  std::vector<Entry> entries_;
};

/// dst += a * b in Z[c], via an unreduced product buffer of length 2d-1.
void accumulate_product(std::span<mpz_class> unreduced,
                        std::span<const mpz_class> a,
                        std::span<const mpz_class> b);
/// Reduces an unreduced buffer of length 2d-1 into dst (length d), in place.
void reduce_into(const FieldSpec& field, std::span<mpz_class> unreduced,
                 std::span<mpz_class> dst);

}  // namespace coxwalk::algebra
