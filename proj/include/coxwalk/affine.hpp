#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "coxwalk/diagram.hpp"
#include "coxwalk/element.hpp"
#include "json.hpp"

namespace coxwalk {

/// An affine type outside the tabulated realizations.
class UnsupportedType : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// i <= j in the poset Z: |i| <= |j| and (i = 0 or sgn i = sgn j).
bool z_leq(long i, long j);

/*
  A finite crystallographic root system given by the Gram matrix of its
  simple roots (rational, in a normalization with integer Cartan numbers).
  Positive roots are integer vectors in the simple-root basis, ordered by
  height and, within a height, lexicographically descending.
*/
struct FiniteRootDatum {
  std::string type;  // "A1".."A4", "B3", "C2", "G2"
  int rank = 0;
  std::vector<mpq_class> gram;  // rank x rank
  std::vector<std::vector<int>> positive_roots;
  std::vector<int> highest_root;

  mpq_class form(const std::vector<int>& a, const std::vector<int>& b) const;
  /// <a^vee, b> = 2(a|b)/(a|a)
  mpq_class cartan(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> simple_root(int i) const;
};

/// Supported: A1, A2, A3, A4, B3, C2, G2.
FiniteRootDatum root_datum(const std::string& type);
const std::vector<std::string>& supported_types();

/// Coxeter diagram of the affine group: node 0 is the reflection in H_{theta,1},
/// nodes 1..rank the simple reflections.
CoxeterDiagram affine_diagram(const FiniteRootDatum& datum);

struct AffineRealization {
  FiniteRootDatum datum;
  std::vector<int> node_of;  // generator of the input diagram -> 0..rank
  Generator affine_node = 0;
  std::string name() const { return datum.type.substr(0, 1) + "~" + datum.type.substr(1); }
};

/// Matches d against the tabulated affine diagrams. Throws std::invalid_argument
/// if d is not affine and UnsupportedType if no table entry fits.
AffineRealization recognize_affine(const CoxeterDiagram& d);

using AlcoveVector = std::vector<long>;

/// A point of the fundamental alcove, as the values <p, alpha_i> on the simple
/// roots. variant 0 is the barycenter; other variants are further interior points.
std::vector<mpq_class> interior_point(const FiniteRootDatum& datum, int variant = 0);

/// n_w^alpha = floor(<w p0, alpha>) for alpha in the positive-root order.
AlcoveVector alcove_coords(const AffineRealization& r, const Word& word,
                           const std::vector<mpq_class>& p0);
AlcoveVector alcove_coords(const AffineRealization& r, const Word& word);

/// Componentwise z_leq; throws std::invalid_argument on a size mismatch.
bool phi_leq(const AlcoveVector& a, const AlcoveVector& b);

struct EmbeddingViolation {
  std::string v, w;
  bool weak_leq, phi_leq;
};

struct EmbeddingReport {
  std::string type;
  int radius = 0;
  std::size_t elements = 0;
  std::size_t pairs_checked = 0;
  std::vector<EmbeddingViolation> violations;
  std::vector<std::string> length_mismatches;  // words with l(w) != sum |n_w^alpha|
  std::size_t largest_level = 0;  // a same-length level, phi-incomparable pairwise
  bool level_is_phi_antichain = false;

  bool ok() const {
    return violations.empty() && length_mismatches.empty() && level_is_phi_antichain;
  }
  nlohmann::ordered_json to_json() const;
};

/// Exhaustive comparison of weak order and the phi-order on ball(radius).
EmbeddingReport embedding_check(const CoxeterDiagram& d, int radius);

}  // namespace coxwalk
