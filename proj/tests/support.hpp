#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "coxwalk/diagram.hpp"
#include "coxwalk/element.hpp"

namespace testsupport {

inline coxwalk::CoxeterDiagram fixture(const std::string& name) {
  return coxwalk::load_diagram(std::string(COXWALK_FIXTURE_DIR) + "/" + name + ".cox");
}

/*
  Floating-point copy of the geometric representation, used as an oracle.
  Matrices are rounded to a grid to serve as hash keys; only fine for short
  words.
*/
class FloatGroup {
 public:
  explicit FloatGroup(const coxwalk::CoxeterDiagram& d) : n_(d.rank()) {
    form_.assign(n_ * n_, 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) {
          form_[i * n_ + j] = 1;
        } else {
          const int m = d.label(i, j);
          form_[i * n_ + j] = m == coxwalk::kInfinity ? -1.0 : -std::cos(std::numbers::pi / m);
        }
      }
  }

  using Matrix = std::vector<double>;
  using Key = std::vector<std::int64_t>;

  Matrix identity() const {
    Matrix m(n_ * n_, 0.0);
    for (int i = 0; i < n_; ++i) m[i * n_ + i] = 1;
    return m;
  }

  // m <- m sigma_s: column j gains -2 (alpha_j|alpha_s) times column s
  Matrix right(const Matrix& m, int s) const {
    Matrix out = m;
    for (int j = 0; j < n_; ++j) {
      const double k = -2 * form_[j * n_ + s];
      for (int r = 0; r < n_; ++r) out[r * n_ + j] += k * m[r * n_ + s];
    }
    return out;
  }

  Matrix of(const coxwalk::Word& w) const {
    Matrix m = identity();
    for (int s : w) m = right(m, s);
    return m;
  }

  static Key key(const Matrix& m) {
    Key k;
    for (double x : m) k.push_back(std::llround(x * 1e6));
    return k;
  }

  // Cayley-graph BFS: element key -> length
  std::map<Key, int> ball(int radius) const {
    std::map<Key, int> seen{{key(identity()), 0}};
    std::vector<Matrix> frontier{identity()};
    for (int r = 1; r <= radius; ++r) {
      std::vector<Matrix> next;
      for (const auto& m : frontier)
        for (int s = 0; s < n_; ++s) {
          auto x = right(m, s);
          if (seen.emplace(key(x), r).second) next.push_back(std::move(x));
        }
      frontier = std::move(next);
    }
    return seen;
  }

  std::vector<std::size_t> counts(int radius) const {
    std::vector<std::size_t> c(radius + 1, 0);
    for (const auto& [k, len] : ball(radius)) ++c[len];
    return c;
  }

  int rank() const { return n_; }

 private:
  int n_;
  std::vector<double> form_;
};

/// Every word of length exactly len over rank letters.
inline std::vector<coxwalk::Word> all_words(int rank, int len) {
  std::vector<coxwalk::Word> out{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<coxwalk::Word> next;
    for (const auto& w : out)
      for (int s = 0; s < rank; ++s) {
        next.push_back(w);
        next.back().push_back(s);
      }
    out = std::move(next);
  }
  return out;
}

inline coxwalk::Word random_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> pick(0, rank - 1);
  coxwalk::Word w(len);
  for (auto& x : w) x = pick(rng);
  return w;
}

}  // namespace testsupport
