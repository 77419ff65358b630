#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coxwalk {

using Generator = int;

/// Label value standing for m = infinity.
inline constexpr int kInfinity = 0;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
  A Coxeter diagram: generator names plus the symmetric label matrix m(i,j).
  The diagonal is 1, off-diagonal labels are >= 2 or kInfinity.
*/
class CoxeterDiagram {
 public:
  CoxeterDiagram() = default;
  /// All off-diagonal labels start at 2 (commuting generators).
  explicit CoxeterDiagram(std::vector<std::string> names);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Generator s) const { return names_.at(s); }

  /// Index of a generator name; throws std::out_of_range if absent.
  Generator index_of(std::string_view name) const;
  bool has_generator(std::string_view name) const;

  int label(Generator s, Generator t) const;
  bool is_infinite(Generator s, Generator t) const {
    return s != t && label(s, t) == kInfinity;
  }
  bool adjacent(Generator s, Generator t) const {
    return s != t && label(s, t) != 2;
  }
  /// Sets m(s,t) = m(t,s); m must be >= 2 or kInfinity.
  void set_label(Generator s, Generator t, int m);

  /// True when some pair has label infinity.
  bool has_infinite_label() const;

  bool operator==(const CoxeterDiagram& other) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> labels_;  // row-major rank x rank
};

enum class DiagramClass { Finite, Affine, CompactHyperbolic, OtherInfinite };

std::string to_string(DiagramClass c);

/// Parses the line-oriented diagram format. ';' acts as a line break.
CoxeterDiagram parse_diagram(std::string_view text);
CoxeterDiagram load_diagram(const std::string& path);
/// Inverse of parse_diagram, with explicit labels for every edge.
std::string format_diagram(const CoxeterDiagram& d);

/// Connected components of the graph of pairs with m >= 3, each sorted.
std::vector<std::vector<Generator>> components(const CoxeterDiagram& d);
bool is_irreducible(const CoxeterDiagram& d);

/// Restriction of d to the generators in J, in the order given by J.
CoxeterDiagram subdiagram(const CoxeterDiagram& d,
                          const std::vector<Generator>& J);
CoxeterDiagram subdiagram(const CoxeterDiagram& d,
                          const std::vector<std::string>& names);

/// Classifies an irreducible diagram; throws std::invalid_argument otherwise.
DiagramClass classify(const CoxeterDiagram& d);

/// Every proper parabolic subgroup is finite.
bool is_locally_finite(const CoxeterDiagram& d);

}  // namespace coxwalk
