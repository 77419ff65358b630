#include "coxwalk/algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace coxwalk::algebra {

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_degree(const RationalPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RationalPoly poly_sub(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::pair<RationalPoly, RationalPoly> poly_divmod(const RationalPoly& a,
                                                  const RationalPoly& b) {
  const int db = poly_degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  RationalPoly rem = a;
  trim(rem);
  const int da = poly_degree(rem);
  if (da < db) return {{}, rem};
  RationalPoly quot(da - db + 1);
  for (int k = da; k >= db; --k) {
    if (rem[k] == 0) continue;
    mpq_class q = rem[k] / b[db];
    quot[k - db] = q;
    for (int i = 0; i <= db; ++i) rem[k - db + i] -= q * b[i];
  }
  trim(rem);
  trim(quot);
  return {quot, rem};
}

RationalPoly poly_sqrt(const RationalPoly& p) {
  const int dp = poly_degree(p);
  if (dp < 0) return {};
  if (dp % 2 != 0 || p[dp] <= 0) throw std::domain_error("polynomial is not a square");
  const int dr = dp / 2;
  // Leading coefficient must be a rational square.
  mpz_class num = p[dp].get_num(), den = p[dp].get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw std::domain_error("polynomial is not a square");
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  RationalPoly r(dr + 1);
  r[dr] = mpq_class(rn, rd);
  r[dr].canonicalize();
  // Match coefficients from the top: p[dr + k] determines r[k].
  for (int k = dr - 1; k >= 0; --k) {
    mpq_class acc = p[dr + k];
    for (int i = k + 1; i <= dr; ++i) {
      int j = dr + k - i;
      if (j > k && j <= dr) acc -= r[i] * r[j];
    }
    r[k] = acc / (2 * r[dr]);
  }
  if (poly_sub(poly_mul(r, r), p).size() != 0)
    throw std::domain_error("polynomial is not a square");
  return r;
}

RationalPoly vieta_lucas(int k) {
  if (k < 0) throw std::invalid_argument("vieta_lucas: negative index");
  RationalPoly prev{2}, cur{0, 1};
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    RationalPoly next(cur.size() + 1);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    trim(next);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Minimal polynomial of 2cos(pi/L), obtained by factoring V_L(x) + 2.
// Its distinct roots are 2cos(k pi/L) for odd k <= L; the factor for L is
// what remains after dividing out the factors for every L' = L/g, g odd > 1.
RationalPoly real_cyclotomic(int L) {
  RationalPoly odd_roots;
  if (L % 2 == 0) {
    // V_L + 2 = V_{L/2}^2
    odd_roots = vieta_lucas(L / 2);
  } else {
    RationalPoly p = vieta_lucas(L);
    p[0] += 2;
    RationalPoly x_plus_2{2, 1};
    auto [q, r] = poly_divmod(p, x_plus_2);
    if (!r.empty()) throw std::logic_error("V_L + 2 not divisible by x + 2");
    odd_roots = poly_mul(x_plus_2, poly_sqrt(q));
  }
  for (int g = 3; g <= L; g += 2) {
    if (L % g) continue;
    auto [q, r] = poly_divmod(odd_roots, real_cyclotomic(L / g));
    if (!r.empty()) throw std::logic_error("cyclotomic factor does not divide");
    odd_roots = std::move(q);
  }
  return odd_roots;
}

int sgn(const mpz_class& z) { return mpz_sgn(z.get_mpz_t()); }

constexpr int kBaseBits = 64;
constexpr int kMaxBits = 1 << 20;

}  // namespace

FieldSpec::FieldSpec(int modulus) : modulus_(modulus) {
  if (modulus < 2) throw std::invalid_argument("field modulus must be >= 2");
  RationalPoly psi = real_cyclotomic(modulus);
  degree_ = poly_degree(psi);
  if (psi[degree_] != 1) throw std::logic_error("minimal polynomial is not monic");
  for (const auto& coef : psi) {
    if (coef.get_den() != 1) throw std::logic_error("minimal polynomial is not integral");
    minpoly_.push_back(coef.get_num());
  }
  if (degree_ != euler_phi(2L * modulus) / 2)
    throw std::logic_error("minimal polynomial degree disagrees with totient count");
  if (degree_ == 1) return;

  // Bracket c from a double approximation, then refine by bisection.
  const double approx = approx_generator();
  constexpr int kSeedBits = 40;
  Enclosure seed;
  seed.bits = kSeedBits;
  seed.lo = mpz_class(std::floor(std::ldexp(approx, kSeedBits))) - 4;
  seed.hi = seed.lo + 8;
  int s_lo = minpoly_sign_at(seed.lo, kSeedBits), s_hi = minpoly_sign_at(seed.hi, kSeedBits);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi)
    throw std::logic_error("minimal polynomial has no sign change near 2cos(pi/L)");
  Enclosure base = refine(seed, kBaseBits);
  enclosures_.push_back(base);
  enclosures_.push_back(refine(base, 2 * kBaseBits));
}

double FieldSpec::approx_generator() const {
  return 2.0 * std::cos(std::numbers::pi / modulus_);
}

int FieldSpec::minpoly_sign_at(const mpz_class& num, int bits) const {
  mpz_class h = minpoly_[degree_];
  mpz_class term;
  for (int i = degree_ - 1; i >= 0; --i) {
    h *= num;
    mpz_mul_2exp(term.get_mpz_t(), minpoly_[i].get_mpz_t(),
                 static_cast<mp_bitcnt_t>(bits) * (degree_ - i));
    h += term;
  }
  return sgn(h);
}

FieldSpec::Enclosure FieldSpec::refine(const Enclosure& from, int bits) const {
  Enclosure e;
  e.bits = bits;
  const int shift = bits - from.bits;
  e.lo = from.lo;
  e.hi = from.hi;
  mpz_mul_2exp(e.lo.get_mpz_t(), e.lo.get_mpz_t(), shift);
  mpz_mul_2exp(e.hi.get_mpz_t(), e.hi.get_mpz_t(), shift);
  const int s_lo = minpoly_sign_at(e.lo, bits);
  mpz_class mid;
  while (e.hi - e.lo > 1) {
    mid = (e.lo + e.hi) / 2;
    const int s = minpoly_sign_at(mid, bits);
    if (s == 0) throw std::logic_error("dyadic root of an irreducible minimal polynomial");
    (s == s_lo ? e.lo : e.hi) = mid;
  }
  fill_powers(e);
  return e;
}

void FieldSpec::fill_powers(Enclosure& e) const {
  const int d = degree_;
  e.lo_pow.assign(d, 0);
  e.hi_pow.assign(d, 0);
  mpz_class lp = 1, hp = 1;
  for (int i = 0; i < d; ++i) {
    const mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(e.bits) * (d - 1 - i);
    mpz_mul_2exp(e.lo_pow[i].get_mpz_t(), lp.get_mpz_t(), shift);
    mpz_mul_2exp(e.hi_pow[i].get_mpz_t(), hp.get_mpz_t(), shift);
    lp *= e.lo;
    hp *= e.hi;
  }
}

int FieldSpec::sign_with(const Enclosure& e, std::span<const mpz_class> coeffs) const {
  // c > 0 here, so c^i lies in [lo^i, hi^i].
  mpz_class lower = 0, upper = 0;
  for (int i = 0; i < degree_; ++i) {
    const int s = sgn(coeffs[i]);
    if (s == 0) continue;
    const mpz_class& small = s > 0 ? e.lo_pow[i] : e.hi_pow[i];
    const mpz_class& large = s > 0 ? e.hi_pow[i] : e.lo_pow[i];
    mpz_addmul(lower.get_mpz_t(), coeffs[i].get_mpz_t(), small.get_mpz_t());
    mpz_addmul(upper.get_mpz_t(), coeffs[i].get_mpz_t(), large.get_mpz_t());
  }
  if (sgn(lower) > 0) return 1;
  if (sgn(upper) < 0) return -1;
  return 0;  // undecided at this precision
}

int FieldSpec::sign(std::span<const mpz_class> coeffs) const {
  if (static_cast<int>(coeffs.size()) != degree_)
    throw std::invalid_argument("coefficient vector has wrong length");
  bool zero = true;
  for (const auto& a : coeffs)
    if (sgn(a) != 0) {
      zero = false;
      break;
    }
  if (zero) return 0;
  if (degree_ == 1) return sgn(coeffs[0]);
  for (const auto& e : enclosures_)
    if (int s = sign_with(e, coeffs)) return s;
  // Precision doubling on a local enclosure.
  Enclosure e = enclosures_.back();
  while (e.bits < kMaxBits) {
    e = refine(e, 2 * e.bits);
    if (int s = sign_with(e, coeffs)) return s;
  }
  throw std::logic_error("sign refinement did not terminate");
}

int FieldSpec::sign(std::span<const mpq_class> coeffs) const {
  mpz_class den = 1;
  for (const auto& a : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
  std::vector<mpz_class> scaled(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    scaled[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return sign(std::span<const mpz_class>(scaled));
}

std::pair<mpq_class, mpq_class> FieldSpec::enclosure(int bits) const {
  if (degree_ == 1) {
    mpq_class c = -mpq_class(minpoly_[0]);
    return {c, c};
  }
  Enclosure e = enclosures_.front();
  for (const auto& pre : enclosures_)
    if (pre.bits <= bits) e = pre;
  if (e.bits < bits) e = refine(e, bits);
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), e.bits);
  mpq_class lo(e.lo, den), hi(e.hi, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

std::vector<mpz_class> FieldSpec::reduce(std::vector<mpz_class> poly) const {
  const int d = degree_;
  for (int k = static_cast<int>(poly.size()) - 1; k >= d; --k) {
    if (sgn(poly[k]) == 0) continue;
    for (int i = 0; i < d; ++i)
      mpz_submul(poly[k - d + i].get_mpz_t(), poly[k].get_mpz_t(), minpoly_[i].get_mpz_t());
    poly[k] = 0;
  }
  poly.resize(d);
  return poly;
}

RationalPoly FieldSpec::reduce(RationalPoly poly) const {
  const int d = degree_;
  for (int k = static_cast<int>(poly.size()) - 1; k >= d; --k) {
    if (poly[k] == 0) continue;
    for (int i = 0; i < d; ++i) poly[k - d + i] -= poly[k] * minpoly_[i];
    poly[k] = 0;
  }
  poly.resize(d);
  return poly;
}

std::vector<mpz_class> FieldSpec::two_cos_pi_over(int m) const {
  if (m < 1 || modulus_ % m != 0)
    throw std::invalid_argument("label " + std::to_string(m) +
                                " does not divide the field modulus " +
                                std::to_string(modulus_));
  RationalPoly v = vieta_lucas(modulus_ / m);
  std::vector<mpz_class> ints;
  for (const auto& a : v) ints.push_back(a.get_num());
  return reduce(std::move(ints));
}

FieldPtr field_for_modulus(int modulus) {
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(modulus);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const FieldSpec>(modulus);
  cache.emplace(modulus, field);
  return field;
}

int field_modulus(const CoxeterDiagram& d) {
  long L = 1;
  for (int i = 0; i < d.rank(); ++i)
    for (int j = i + 1; j < d.rank(); ++j)
      if (d.label(i, j) != kInfinity) L = std::lcm(L, static_cast<long>(d.label(i, j)));
  if (L > 1 << 20) throw std::invalid_argument("label lcm too large");
  return static_cast<int>(std::max(L, 2L));
}

FieldPtr field_for(const CoxeterDiagram& d) { return field_for_modulus(field_modulus(d)); }

// ---------------------------------------------------------------------------
// AlgReal

AlgReal::AlgReal(FieldPtr field)
    : field_(std::move(field)), coeffs_(field_->degree()) {}

AlgReal::AlgReal(FieldPtr field, long value) : AlgReal(std::move(field)) {
  coeffs_[0] = value;
}

AlgReal::AlgReal(FieldPtr field, mpq_class value) : AlgReal(std::move(field)) {
  coeffs_[0] = std::move(value);
}

AlgReal::AlgReal(FieldPtr field, RationalPoly coeffs) : field_(std::move(field)) {
  coeffs_ = field_->reduce(std::move(coeffs));
}

AlgReal AlgReal::from_integral(FieldPtr field, std::span<const mpz_class> coeffs) {
  RationalPoly p(coeffs.begin(), coeffs.end());
  return AlgReal(std::move(field), std::move(p));
}

AlgReal AlgReal::generator(FieldPtr field) {
  return AlgReal(std::move(field), RationalPoly{0, 1});
}

bool AlgReal::is_zero() const {
  for (const auto& a : coeffs_)
    if (a != 0) return false;
  return true;
}

int AlgReal::sign() const { return field_->sign(std::span<const mpq_class>(coeffs_)); }

double AlgReal::to_double() const {
  const double c = field_->approx_generator();
  double acc = 0;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
    acc = acc * c + coeffs_[i].get_d();
  return acc;
}

std::string AlgReal::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    std::string term = coeffs_[i].get_str();
    if (!out.empty()) out += term[0] == '-' ? " - " : " + ";
    if (!out.empty() && term[0] == '-') term.erase(0, 1);
    if (i == 0) {
      out += term;
    } else {
      if (term != "1") out += term + "*";
      out += i == 1 ? "c" : "c^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

void AlgReal::check_same_field(const AlgReal& b) const {
  if (field_->modulus() != b.field_->modulus())
    throw std::invalid_argument("AlgReal operands from different fields");
}

AlgReal AlgReal::operator-() const {
  AlgReal r = *this;
  for (auto& a : r.coeffs_) a = -a;
  return r;
}

AlgReal& AlgReal::operator+=(const AlgReal& b) {
  check_same_field(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

AlgReal& AlgReal::operator-=(const AlgReal& b) {
  check_same_field(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

AlgReal& AlgReal::operator*=(const AlgReal& b) {
  check_same_field(b);
  RationalPoly prod(2 * coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      prod[i + j] += coeffs_[i] * b.coeffs_[j];
  }
  coeffs_ = field_->reduce(std::move(prod));
  return *this;
}

AlgReal AlgReal::inverse() const {
  if (is_zero()) throw std::domain_error("AlgReal division by zero");
  // Extended Euclid against the minimal polynomial.
  RationalPoly r0(field_->minpoly().begin(), field_->minpoly().end());
  RationalPoly r1 = coeffs_;
  trim(r1);
  RationalPoly s0{}, s1{1};
  while (poly_degree(r1) >= 0) {
    auto [q, r] = poly_divmod(r0, r1);
    RationalPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (poly_degree(r0) != 0) throw std::logic_error("minimal polynomial is reducible");
  for (auto& a : s0) a /= r0[0];
  return AlgReal(field_, std::move(s0));
}

AlgReal& AlgReal::operator/=(const AlgReal& b) {
  check_same_field(b);
  return *this *= b.inverse();
}

bool AlgReal::operator==(const AlgReal& b) const {
  return field_->modulus() == b.field_->modulus() && coeffs_ == b.coeffs_;
}

AlgReal form_value(const CoxeterDiagram& d, Generator i, Generator j,
                   const FieldPtr& field) {
  if (i == j) return AlgReal(field, 1L);
  const int m = d.label(i, j);
  if (m == kInfinity) return AlgReal(field, -1L);
  auto two_cos = field->two_cos_pi_over(m);
  RationalPoly half;
  for (const auto& a : two_cos) half.push_back(mpq_class(-a, 2));
  for (auto& a : half) a.canonicalize();
  return AlgReal(field, std::move(half));
}

GramMatrix gram(const CoxeterDiagram& d) {
  FieldPtr field = field_for(d);
  GramMatrix g;
  g.n = d.rank();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) g.entries.push_back(form_value(d, i, j, field));
  return g;
}

namespace {

struct Elimination {
  Definiteness verdict;
  std::vector<AlgReal> pivots;
};

Elimination eliminate(const GramMatrix& g) {
  std::vector<AlgReal> a = g.entries;
  const int n = g.n;
  auto at = [&](int i, int j) -> AlgReal& { return a[i * n + j]; };
  Elimination out{Definiteness::PosDef, {}};
  bool singular = false;
  for (int k = 0; k < n; ++k) {
    const AlgReal pivot = at(k, k);
    out.pivots.push_back(pivot);
    const int s = pivot.sign();
    if (s < 0) {
      out.verdict = Definiteness::Other;
      return out;
    }
    if (s == 0) {
      // A positive semidefinite matrix with a zero diagonal entry has a zero row.
      for (int j = k + 1; j < n; ++j)
        if (!at(k, j).is_zero()) {
          out.verdict = Definiteness::Other;
          return out;
        }
      singular = true;
      continue;
    }
    const AlgReal inv = pivot.inverse();
    for (int i = k + 1; i < n; ++i) {
      if (at(i, k).is_zero()) continue;
      const AlgReal f = at(i, k) * inv;
      for (int j = k; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  out.verdict = singular ? Definiteness::PosSemiDefSingular : Definiteness::PosDef;
  return out;
}

}  // namespace

Definiteness definiteness(const GramMatrix& g) { return eliminate(g).verdict; }

std::vector<AlgReal> gram_pivots(const GramMatrix& g) { return eliminate(g).pivots; }

// ---------------------------------------------------------------------------
// Integral helpers

FixedMultiplier::FixedMultiplier(const FieldSpec& field, std::span<const mpz_class> value) {
  const int d = field.degree();
  bool integer = true;
  for (int i = 1; i < d; ++i)
    if (sgn(value[i]) != 0) integer = false;
  if (integer) {
    scalar_ = value[0];
    kind_ = sgn(scalar_) == 0 ? Kind::Zero : Kind::Scalar;
    return;
  }
  kind_ = Kind::Dense;
  for (int col = 0; col < d; ++col) {
    std::vector<mpz_class> shifted(col + d);
    for (int i = 0; i < d; ++i) shifted[col + i] = value[i];
    auto reduced = field.reduce(std::move(shifted));
    for (int row = 0; row < d; ++row)
      if (sgn(reduced[row]) != 0) entries_.push_back({row, col, reduced[row]});
  }
}

void FixedMultiplier::add_product(std::span<mpz_class> dst,
                                  std::span<const mpz_class> src) const {
  switch (kind_) {
    case Kind::Zero: return;
    case Kind::Scalar:
      for (std::size_t i = 0; i < dst.size(); ++i)
        mpz_addmul(dst[i].get_mpz_t(), scalar_.get_mpz_t(), src[i].get_mpz_t());
      return;
    case Kind::Dense:
      for (const auto& e : entries_)
        mpz_addmul(dst[e.row].get_mpz_t(), e.value.get_mpz_t(), src[e.col].get_mpz_t());
      return;
  }
}

void accumulate_product(std::span<mpz_class> unreduced, std::span<const mpz_class> a,
                        std::span<const mpz_class> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(unreduced[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
}

void reduce_into(const FieldSpec& field, std::span<mpz_class> unreduced,
                 std::span<mpz_class> dst) {
  const int d = field.degree();
  const auto& p = field.minpoly();
  for (int k = static_cast<int>(unreduced.size()) - 1; k >= d; --k) {
    if (sgn(unreduced[k]) == 0) continue;
    for (int i = 0; i < d; ++i)
      mpz_submul(unreduced[k - d + i].get_mpz_t(), unreduced[k].get_mpz_t(),
                 p[i].get_mpz_t());
    unreduced[k] = 0;
  }
  for (int i = 0; i < d; ++i) {
    mpz_swap(dst[i].get_mpz_t(), unreduced[i].get_mpz_t());
    unreduced[i] = 0;
  }
}

}  // namespace coxwalk::algebra
