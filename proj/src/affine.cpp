#include "coxwalk/affine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace coxwalk {

bool z_leq(long i, long j) {
  if (i == 0) return true;
  if ((i > 0) != (j > 0) || j == 0) return false;
  return std::labs(i) <= std::labs(j);
}

mpq_class FiniteRootDatum::form(const std::vector<int>& a, const std::vector<int>& b) const {
  mpq_class out = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (a[i] && b[j]) out += gram[i * rank + j] * a[i] * b[j];
  return out;
}

mpq_class FiniteRootDatum::cartan(const std::vector<int>& a, const std::vector<int>& b) const {
  return 2 * form(a, b) / form(a, a);
}

std::vector<int> FiniteRootDatum::simple_root(int i) const {
  std::vector<int> out(rank, 0);
  out.at(i) = 1;
  return out;
}

const std::vector<std::string>& supported_types() {
  static const std::vector<std::string> types{"A1", "A2", "A3", "A4", "B3", "C2", "G2"};
  return types;
}

namespace {

int height(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::size_t expected_positive_roots(const std::string& type, int rank) {
  if (type[0] == 'A') return static_cast<std::size_t>(rank * (rank + 1) / 2);
  if (type == "B3") return 9;
  if (type == "C2") return 4;
  return 6;  // G2
}

}  // namespace

FiniteRootDatum root_datum(const std::string& type) {
  FiniteRootDatum d;
  d.type = type;
  std::vector<std::vector<int>> g;
  if (type.size() == 2 && type[0] == 'A' && type[1] >= '1' && type[1] <= '4') {
    const int n = type[1] - '0';
    g.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      g[i][i] = 2;
      if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
    }
  } else if (type == "B3") {
    g = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 1}};  // e1-e2, e2-e3, e3
  } else if (type == "C2") {
    g = {{2, -2}, {-2, 4}};  // e1-e2, 2e2
  } else if (type == "G2") {
    g = {{2, -3}, {-3, 6}};  // short, long
  } else {
    throw UnsupportedType("unsupported finite type '" + type + "'");
  }
  d.rank = static_cast<int>(g.size());
  for (const auto& row : g)
    for (int x : row) d.gram.emplace_back(x);

  // Positive roots: closure of the simple roots under simple reflections.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < d.rank; ++i) {
    queue.push_back(d.simple_root(i));
    seen.insert(queue.back());
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto beta = queue[k];
    for (int i = 0; i < d.rank; ++i) {
      const mpq_class c = d.cartan(d.simple_root(i), beta);
      if (c.get_den() != 1) throw InternalError("non-integral Cartan number");
      auto image = beta;
      image[i] -= static_cast<int>(c.get_num().get_si());
      if (std::any_of(image.begin(), image.end(), [](int x) { return x < 0; })) continue;
      if (seen.insert(image).second) queue.push_back(image);
    }
  }
  d.positive_roots = std::move(queue);
  std::sort(d.positive_roots.begin(), d.positive_roots.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              const int ha = height(a), hb = height(b);
              return ha != hb ? ha < hb : a > b;
            });
  if (d.positive_roots.size() != expected_positive_roots(type, d.rank))
    throw InternalError("wrong number of positive roots for " + type);
  d.highest_root = d.positive_roots.back();
  for (const auto& r : d.positive_roots)
    for (int i = 0; i < d.rank; ++i)
      if (r[i] > d.highest_root[i]) throw InternalError("highest root does not dominate");
  return d;
}

namespace {

int label_from_product(const mpq_class& n) {
  // n = 4 cos^2(pi/m)
  if (n == 0) return 2;
  if (n == 1) return 3;
  if (n == 2) return 4;
  if (n == 3) return 6;
  if (n == 4) return kInfinity;
  throw InternalError("non-crystallographic angle in an affine diagram");
}

}  // namespace

CoxeterDiagram affine_diagram(const FiniteRootDatum& datum) {
  std::vector<std::string> names;
  for (int i = 0; i <= datum.rank; ++i) names.push_back("s" + std::to_string(i));
  CoxeterDiagram d(names);
  auto root = [&](int node) {
    return node == 0 ? datum.highest_root : datum.simple_root(node - 1);
  };
  for (int i = 0; i <= datum.rank; ++i)
    for (int j = i + 1; j <= datum.rank; ++j) {
      const mpq_class n = datum.cartan(root(i), root(j)) * datum.cartan(root(j), root(i));
      d.set_label(i, j, label_from_product(n));
    }
  return d;
}

AffineRealization recognize_affine(const CoxeterDiagram& d) {
  if (classify(d) != DiagramClass::Affine)
    throw std::invalid_argument("diagram is not affine");
  const int n = d.rank();
  for (const auto& type : supported_types()) {
    auto datum = root_datum(type);
    if (datum.rank != n - 1) continue;
    const auto a = affine_diagram(datum);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool match = true;
      for (int i = 0; i < n && match; ++i)
        for (int j = i + 1; j < n && match; ++j)
          match = d.label(i, j) == a.label(perm[i], perm[j]);
      if (match) {
        AffineRealization r;
        r.datum = std::move(datum);
        r.node_of = perm;
        r.affine_node = static_cast<Generator>(
            std::find(perm.begin(), perm.end(), 0) - perm.begin());
        return r;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  throw UnsupportedType("affine diagram with no tabulated realization");
}

std::vector<mpq_class> interior_point(const FiniteRootDatum& datum, int variant) {
  if (variant < 0) throw std::invalid_argument("negative variant");
  const int r = datum.rank;
  // t_i = c_i <p, alpha_i>, a point of the open simplex t > 0, sum t < 1
  std::vector<mpq_class> t(r);
  if (variant == 0) {
    for (auto& x : t) x = mpq_class(1, r + 1);
  } else {
    long denom = 1;
    for (int i = 1; i <= r; ++i) denom += i + variant;
    for (int i = 1; i <= r; ++i) t[i - 1] = mpq_class(i + variant, denom);
  }
  std::vector<mpq_class> a(r);
  for (int i = 0; i < r; ++i) {
    a[i] = t[i] / datum.highest_root[i];
    a[i].canonicalize();
  }
  return a;
}

AlcoveVector alcove_coords(const AffineRealization& r, const Word& word,
                           const std::vector<mpq_class>& p0) {
  const auto& datum = r.datum;
  const int n = datum.rank;
  if (static_cast<int>(p0.size()) != n) throw std::invalid_argument("point of wrong dimension");
  std::vector<mpq_class> a = p0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= static_cast<int>(r.node_of.size()))
      throw std::out_of_range("generator index out of range");
    const int node = r.node_of[*it];
    std::vector<mpq_class> next(n);
    if (node == 0) {
      mpq_class t = 0;
      for (int k = 0; k < n; ++k) t += datum.highest_root[k] * a[k];
      for (int j = 0; j < n; ++j)
        next[j] = a[j] - (t - 1) * datum.cartan(datum.highest_root, datum.simple_root(j));
    } else {
      const auto alpha = datum.simple_root(node - 1);
      const mpq_class ai = a[node - 1];
      for (int j = 0; j < n; ++j)
        next[j] = a[j] - ai * datum.cartan(alpha, datum.simple_root(j));
    }
    a = std::move(next);
  }
  AlcoveVector out;
  for (const auto& beta : datum.positive_roots) {
    mpq_class v = 0;
    for (int k = 0; k < n; ++k) v += beta[k] * a[k];
    if (v.get_den() == 1) throw InternalError("alcove point on a wall");
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    out.push_back(f.get_si());
  }
  return out;
}

AlcoveVector alcove_coords(const AffineRealization& r, const Word& word) {
  return alcove_coords(r, word, interior_point(r.datum));
}

bool phi_leq(const AlcoveVector& a, const AlcoveVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("alcove vectors of different size");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!z_leq(a[i], b[i])) return false;
  return true;
}

nlohmann::ordered_json EmbeddingReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = type;
  j["radius"] = radius;
  j["elements"] = elements;
  j["pairs_checked"] = pairs_checked;
  auto v = nlohmann::ordered_json::array();
  for (const auto& x : violations)
    v.push_back({{"v", x.v}, {"w", x.w}, {"weak_leq", x.weak_leq}, {"phi_leq", x.phi_leq}});
  j["violations"] = std::move(v);
  j["length_mismatches"] = length_mismatches;
  j["largest_level"] = largest_level;
  j["level_is_phi_antichain"] = level_is_phi_antichain;
  return j;
}

EmbeddingReport embedding_check(const CoxeterDiagram& d, int radius) {
  const auto r = recognize_affine(d);
  const CoxeterGroup group(d);
  const Ball ball = group.ball(radius);

  EmbeddingReport rep;
  rep.type = r.name();
  rep.radius = radius;
  std::vector<GroupElement> elems;
  std::vector<std::string> names;
  std::vector<AlcoveVector> phi;
  for (const auto& level : ball.levels)
    for (const auto& g : level) {
      const Word nf = group.shortlex_nf(g);
      elems.push_back(g);
      names.push_back(nf.empty() ? "e" : group.format_word(nf));
      phi.push_back(alcove_coords(r, nf));
      long total = 0;
      for (long x : phi.back()) total += std::labs(x);
      if (total != g.length()) rep.length_mismatches.push_back(names.back());
    }
  rep.elements = elems.size();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (i == j) continue;
      ++rep.pairs_checked;
      const bool weak = group.weak_leq(elems[i], elems[j]);
      const bool geo = phi_leq(phi[i], phi[j]);
      if (weak != geo) rep.violations.push_back({names[i], names[j], weak, geo});
    }

  // the largest length level is an antichain; its images must be one too
  std::size_t best = 0, offset = 0, best_offset = 0;
  for (const auto& level : ball.levels) {
    if (level.size() > best) {
      best = level.size();
      best_offset = offset;
    }
    offset += level.size();
  }
  rep.largest_level = best;
  rep.level_is_phi_antichain = true;
  for (std::size_t i = best_offset; i < best_offset + best; ++i)
    for (std::size_t j = best_offset; j < best_offset + best; ++j)
      if (i != j && phi_leq(phi[i], phi[j])) rep.level_is_phi_antichain = false;
  return rep;
}

}  // namespace coxwalk
