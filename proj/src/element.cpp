#include "coxwalk/element.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace coxwalk {

namespace {

std::atomic<std::uint64_t> next_group_id{1};

int sgn(const mpz_class& z) { return mpz_sgn(z.get_mpz_t()); }

constexpr int kIterationCap = 10'000'000;

}  // namespace

std::size_t GroupElement::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& z : matrix_) {
    std::size_t v = mpz_get_ui(z.get_mpz_t()) * 2 + (sgn(z) < 0);
    h = (h ^ v) * 1099511628211ull;
  }
  return h;
}

std::vector<std::size_t> Ball::counts() const {
  std::vector<std::size_t> out;
  for (const auto& level : levels) out.push_back(level.size());
  return out;
}

std::vector<GroupElement> Ball::all() const {
  std::vector<GroupElement> out;
  for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

CoxeterGroup::CoxeterGroup(CoxeterDiagram diagram)
    : diagram_(std::move(diagram)),
      field_(algebra::field_for(diagram_)),
      rank_(diagram_.rank()),
      degree_(field_->degree()),
      id_(next_group_id++) {
  bond_.resize(rank_);
  bond_values_.resize(rank_);
  for (int s = 0; s < rank_; ++s) {
    bond_[s].resize(rank_);
    bond_values_[s].resize(rank_, std::vector<mpz_class>(degree_));
    for (int t = 0; t < rank_; ++t) {
      if (s == t) continue;
      std::vector<mpz_class> value(degree_);
      const int m = diagram_.label(s, t);
      if (m == kInfinity)
        value[0] = 2;
      else
        value = field_->two_cos_pi_over(m);
      bond_[s][t] = algebra::FixedMultiplier(*field_, value);
      bond_values_[s][t] = value;
    }
  }
}

void CoxeterGroup::check_generator(Generator s) const {
  if (s < 0 || s >= rank_)
    throw std::out_of_range("generator index " + std::to_string(s) + " out of range");
}

void CoxeterGroup::check_same_group(const GroupElement& g) const {
  if (g.group_id_ != id_)
    throw std::invalid_argument("element belongs to a different Coxeter group");
}

GroupElement CoxeterGroup::identity() const {
  GroupElement e;
  e.group_id_ = id_;
  e.matrix_.assign(static_cast<std::size_t>(rank_) * rank_ * degree_, 0);
  for (int i = 0; i < rank_; ++i) e.matrix_[(i * rank_ + i) * degree_] = 1;
  e.inverse_ = e.matrix_;
  return e;
}

void CoxeterGroup::apply_right(std::vector<mpz_class>& m, Generator s) const {
  const int n = rank_, d = degree_;
  for (int i = 0; i < n; ++i) {
    std::span<const mpz_class> pivot(&m[(i * n + s) * d], d);
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      bond_[s][j].add_product(std::span<mpz_class>(&m[(i * n + j) * d], d), pivot);
    }
    for (int k = 0; k < d; ++k) {
      mpz_class& z = m[(i * n + s) * d + k];
      mpz_neg(z.get_mpz_t(), z.get_mpz_t());
    }
  }
}

void CoxeterGroup::apply_left(std::vector<mpz_class>& m, Generator s) const {
  const int n = rank_, d = degree_;
  for (int c = 0; c < n; ++c) {
    std::span<mpz_class> target(&m[(s * n + c) * d], d);
    for (auto& z : target) mpz_neg(z.get_mpz_t(), z.get_mpz_t());
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      bond_[s][j].add_product(target, std::span<const mpz_class>(&m[(j * n + c) * d], d));
    }
  }
}

int CoxeterGroup::column_sign(const std::vector<mpz_class>& m, Generator s) const {
  const int n = rank_, d = degree_;
  int result = 0;
  for (int i = 0; i < n; ++i) {
    const int sign = field_->sign(std::span<const mpz_class>(&m[(i * n + s) * d], d));
    if (sign == 0) continue;
    if (result != 0 && sign != result)
      throw InternalError("root with mixed-sign coordinates");
    result = sign;
  }
  if (result == 0) throw InternalError("zero image of a simple root");
  return result;
}

int CoxeterGroup::length_of_matrix(std::vector<mpz_class> m, int limit) const {
  int steps = 0;
  for (;;) {
    Generator descent = -1;
    for (int s = 0; s < rank_ && descent < 0; ++s)
      if (column_sign(m, s) < 0) descent = s;
    if (descent < 0) return steps;
    if (steps == limit) return limit + 1;
    if (steps >= kIterationCap) throw CapExceeded("length computation iteration cap");
    apply_right(m, descent);
    ++steps;
  }
}

std::vector<mpz_class> CoxeterGroup::matrix_product(const std::vector<mpz_class>& a,
                                                    const std::vector<mpz_class>& b) const {
  const int n = rank_, d = degree_;
  std::vector<mpz_class> out(a.size());
  std::vector<mpz_class> buffer(2 * d - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int t = 0; t < n; ++t)
        algebra::accumulate_product(buffer,
                                    std::span<const mpz_class>(&a[(i * n + t) * d], d),
                                    std::span<const mpz_class>(&b[(t * n + j) * d], d));
      algebra::reduce_into(*field_, buffer, std::span<mpz_class>(&out[(i * n + j) * d], d));
    }
  return out;
}

GroupElement CoxeterGroup::generator(Generator s) const {
  return right_multiply(identity(), s);
}

GroupElement CoxeterGroup::right_multiply(const GroupElement& w, Generator s) const {
  check_generator(s);
  check_same_group(w);
  GroupElement out = w;
  out.length_ += column_sign(w.matrix_, s) < 0 ? -1 : 1;
  apply_right(out.matrix_, s);
  apply_left(out.inverse_, s);
  return out;
}

GroupElement CoxeterGroup::left_multiply(Generator s, const GroupElement& w) const {
  check_generator(s);
  check_same_group(w);
  GroupElement out = w;
  out.length_ += column_sign(w.inverse_, s) < 0 ? -1 : 1;
  apply_left(out.matrix_, s);
  apply_right(out.inverse_, s);
  return out;
}

GroupElement CoxeterGroup::element_of(const Word& word) const {
  GroupElement w = identity();
  for (Generator s : word) w = right_multiply(w, s);
  return w;
}

GroupElement CoxeterGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  check_same_group(a);
  check_same_group(b);
  GroupElement out;
  out.group_id_ = id_;
  out.matrix_ = matrix_product(a.matrix_, b.matrix_);
  out.inverse_ = matrix_product(b.inverse_, a.inverse_);
  out.length_ = length_of_matrix(out.matrix_, a.length_ + b.length_);
  if (out.length_ > a.length_ + b.length_) throw InternalError("length is not subadditive");
  return out;
}

GroupElement CoxeterGroup::inverse(const GroupElement& a) const {
  check_same_group(a);
  GroupElement out = a;
  std::swap(out.matrix_, out.inverse_);
  return out;
}

GroupElement CoxeterGroup::power(const GroupElement& a, int k) const {
  if (k < 0) throw std::invalid_argument("negative exponent");
  GroupElement out = identity();
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

bool CoxeterGroup::is_right_descent(const GroupElement& w, Generator s) const {
  check_generator(s);
  check_same_group(w);
  return column_sign(w.matrix_, s) < 0;
}

std::vector<Generator> CoxeterGroup::right_descents(const GroupElement& w) const {
  check_same_group(w);
  std::vector<Generator> out;
  for (int s = 0; s < rank_; ++s)
    if (column_sign(w.matrix_, s) < 0) out.push_back(s);
  return out;
}

std::vector<Generator> CoxeterGroup::left_descents(const GroupElement& w) const {
  check_same_group(w);
  std::vector<Generator> out;
  for (int s = 0; s < rank_; ++s)
    if (column_sign(w.inverse_, s) < 0) out.push_back(s);
  return out;
}

Word CoxeterGroup::shortlex_nf(const GroupElement& w) const {
  check_same_group(w);
  std::vector<mpz_class> inv = w.inverse_;
  Word out;
  for (;;) {
    Generator descent = -1;
    for (int s = 0; s < rank_ && descent < 0; ++s)
      if (column_sign(inv, s) < 0) descent = s;
    if (descent < 0) break;
    if (static_cast<int>(out.size()) > w.length_)
      throw InternalError("normal form longer than the element length");
    out.push_back(descent);
    apply_right(inv, descent);
  }
  if (static_cast<int>(out.size()) != w.length_)
    throw InternalError("normal form length disagrees with cached length");
  return out;
}

std::vector<Generator> CoxeterGroup::support(const GroupElement& w) const {
  Word nf = shortlex_nf(w);
  std::vector<Generator> out(nf.begin(), nf.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CoxeterGroup::is_reduced(const Word& word) const {
  return element_of(word).length() == static_cast<int>(word.size());
}

bool CoxeterGroup::weak_leq(const GroupElement& v, const GroupElement& w) const {
  check_same_group(v);
  check_same_group(w);
  const int gap = w.length_ - v.length_;
  if (gap < 0) return false;
  if (gap == 0) return v == w;
  std::vector<mpz_class> quotient = matrix_product(v.inverse_, w.matrix_);
  return length_of_matrix(std::move(quotient), gap) == gap;
}

std::set<Word> CoxeterGroup::reduced_expressions(const GroupElement& w,
                                                 std::size_t cap) const {
  check_same_group(w);
  std::unordered_map<GroupElement, std::vector<Word>, GroupElementHash> memo;
  std::function<const std::vector<Word>&(const GroupElement&)> rec =
      [&](const GroupElement& x) -> const std::vector<Word>& {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<Word> out;
    if (x.length_ == 0) {
      out.push_back({});
    } else {
      for (Generator s : right_descents(x)) {
        const auto& prefixes = rec(right_multiply(x, s));
        for (const auto& p : prefixes) {
          Word word = p;
          word.push_back(s);
          out.push_back(std::move(word));
          if (out.size() > cap) throw CapExceeded("reduced expression cap exceeded");
        }
      }
    }
    return memo.emplace(x, std::move(out)).first->second;
  };
  const auto& words = rec(w);
  return {words.begin(), words.end()};
}

mpz_class CoxeterGroup::count_reduced_expressions(const GroupElement& w) const {
  check_same_group(w);
  std::unordered_map<GroupElement, mpz_class, GroupElementHash> memo;
  std::function<mpz_class(const GroupElement&)> rec = [&](const GroupElement& x) {
    if (x.length_ == 0) return mpz_class(1);
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    mpz_class total = 0;
    for (Generator s : right_descents(x)) total += rec(right_multiply(x, s));
    memo.emplace(x, total);
    return total;
  };
  return rec(w);
}

std::set<Word> CoxeterGroup::braid_closure(const Word& word, std::size_t cap) const {
  for (Generator s : word) check_generator(s);
  std::set<Word> seen{word};
  std::deque<Word> queue{word};
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Generator a = cur[i], b = cur[i + 1];
      if (a == b)
        throw std::invalid_argument("word is not reduced: nil move at position " +
                                    std::to_string(i));
      const int m = diagram_.label(a, b);
      if (m == kInfinity || i + m > cur.size()) continue;
      bool alternating = true;
      for (int k = 0; k < m && alternating; ++k)
        alternating = cur[i + k] == (k % 2 == 0 ? a : b);
      if (!alternating) continue;
      Word next = cur;
      for (int k = 0; k < m; ++k) next[i + k] = k % 2 == 0 ? b : a;
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw CapExceeded("braid closure cap exceeded");
        queue.push_back(std::move(next));
      }
    }
  }
  return seen;
}

Ball CoxeterGroup::ball(int radius, std::size_t cap) const {
  if (radius < 0) throw std::invalid_argument("negative radius");
  Ball out;
  out.levels.push_back({identity()});
  std::size_t total = 1;
  for (int k = 0; k < radius; ++k) {
    std::vector<GroupElement> next;
    std::unordered_set<GroupElement, GroupElementHash> seen;
    for (const auto& w : out.levels[k])
      for (int s = 0; s < rank_; ++s) {
        if (column_sign(w.matrix_, s) < 0) continue;
        GroupElement ws = right_multiply(w, s);
        if (seen.insert(ws).second) {
          next.push_back(std::move(ws));
          if (++total > cap) throw CapExceeded("ball element cap exceeded");
        }
      }
    if (next.empty()) break;  // finite group exhausted
    out.levels.push_back(std::move(next));
  }
  return out;
}

std::vector<GroupElement> CoxeterGroup::min_coset_reps(const std::vector<Generator>& J,
                                                       const std::vector<Generator>& K,
                                                       int depth,
                                                       std::size_t cap) const {
  for (Generator s : J) check_generator(s);
  for (Generator s : K)
    if (std::find(J.begin(), J.end(), s) == J.end())
      throw std::invalid_argument("min_coset_reps: K is not a subset of J");
  std::vector<GroupElement> out{identity()};
  std::vector<GroupElement> level{identity()};
  // Minimal coset representatives are closed under suffixes, so every one is
  // reached from a shorter one by a length-increasing left multiplication.
  for (int k = 0; k < depth && !level.empty(); ++k) {
    std::vector<GroupElement> next;
    std::unordered_set<GroupElement, GroupElementHash> seen;
    for (const auto& w : level)
      for (Generator s : J) {
        if (column_sign(w.inverse_, s) < 0) continue;
        GroupElement sw = left_multiply(s, w);
        bool ok = true;
        for (Generator t : K)
          if (column_sign(sw.matrix_, t) < 0) ok = false;
        if (ok && seen.insert(sw).second) {
          next.push_back(std::move(sw));
          if (out.size() + next.size() > cap) throw CapExceeded("coset representative cap exceeded");
        }
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

RootVector CoxeterGroup::simple_root(Generator s) const {
  check_generator(s);
  RootVector v{std::vector<mpz_class>(static_cast<std::size_t>(rank_) * degree_)};
  v.coeffs[s * degree_] = 1;
  return v;
}

RootVector CoxeterGroup::image_of_simple_root(const GroupElement& w, Generator s) const {
  check_generator(s);
  check_same_group(w);
  RootVector v{std::vector<mpz_class>(static_cast<std::size_t>(rank_) * degree_)};
  for (int i = 0; i < rank_; ++i)
    for (int k = 0; k < degree_; ++k)
      v.coeffs[i * degree_ + k] = w.matrix_[(i * rank_ + s) * degree_ + k];
  return v;
}

int CoxeterGroup::root_sign(const RootVector& v) const {
  int result = 0;
  for (int i = 0; i < rank_; ++i) {
    const int s = field_->sign(std::span<const mpz_class>(&v.coeffs[i * degree_], degree_));
    if (s == 0) continue;
    if (result != 0 && s != result) throw InternalError("root with mixed-sign coordinates");
    result = s;
  }
  return result;
}

std::vector<mpz_class> CoxeterGroup::twice_form_with_simple(const RootVector& v,
                                                            Generator s) const {
  check_generator(s);
  // 2(v|alpha_s) = 2 v_s - sum_{t != s} 2cos(pi/m(s,t)) v_t
  std::vector<mpz_class> out(degree_);
  for (int k = 0; k < degree_; ++k) out[k] = 2 * v.coeffs[s * degree_ + k];
  std::vector<mpz_class> acc(degree_);
  for (int t = 0; t < rank_; ++t) {
    if (t == s) continue;
    bond_[s][t].add_product(acc, std::span<const mpz_class>(&v.coeffs[t * degree_], degree_));
  }
  for (int k = 0; k < degree_; ++k) out[k] -= acc[k];
  return out;
}

RootVector CoxeterGroup::reflect(const RootVector& v, Generator s) const {
  auto q = twice_form_with_simple(v, s);
  RootVector out = v;
  for (int k = 0; k < degree_; ++k) out.coeffs[s * degree_ + k] -= q[k];
  return out;
}

std::vector<algebra::AlgReal> CoxeterGroup::coordinates(const RootVector& v) const {
  std::vector<algebra::AlgReal> out;
  for (int i = 0; i < rank_; ++i)
    out.push_back(algebra::AlgReal::from_integral(
        field_, std::span<const mpz_class>(&v.coeffs[i * degree_], degree_)));
  return out;
}

std::string CoxeterGroup::format_word(const Word& word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += diagram_.name(word[i]);
  }
  return out;
}

Word CoxeterGroup::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  Word out;
  if (tokens.size() == 1 && tokens[0] == "e" && !diagram_.has_generator("e")) return out;
  for (const auto& t : tokens) {
    if (diagram_.has_generator(t)) {
      out.push_back(diagram_.index_of(t));
      continue;
    }
    // A run of single-character generator names, e.g. "stuvw".
    for (char ch : t) {
      std::string name(1, ch);
      if (!diagram_.has_generator(name))
        throw ParseError("unknown generator '" + t + "' in word");
      out.push_back(diagram_.index_of(name));
    }
  }
  return out;
}

}  // namespace coxwalk
