#include "coxwalk/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "coxwalk/algebra.hpp"

namespace coxwalk {

CoxeterDiagram::CoxeterDiagram(std::vector<std::string> names)
    : names_(std::move(names)), labels_(names_.size() * names_.size(), 2) {
  const int n = rank();
  for (int i = 0; i < n; ++i) labels_[i * n + i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names_[i] == names_[j])
        throw ParseError("duplicate generator name '" + names_[i] + "'");
}

Generator CoxeterDiagram::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw std::out_of_range("unknown generator '" + std::string(name) + "'");
  return static_cast<Generator>(it - names_.begin());
}

bool CoxeterDiagram::has_generator(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

int CoxeterDiagram::label(Generator s, Generator t) const {
  return labels_.at(s * rank() + t);
}

void CoxeterDiagram::set_label(Generator s, Generator t, int m) {
  if (s == t) throw std::invalid_argument("diagonal labels are fixed at 1");
  if (m != kInfinity && m < 2)
    throw std::invalid_argument("label must be >= 2 or infinity");
  labels_.at(s * rank() + t) = m;
  labels_.at(t * rank() + s) = m;
}

bool CoxeterDiagram::has_infinite_label() const {
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (label(i, j) == kInfinity) return true;
  return false;
}

std::string to_string(DiagramClass c) {
  switch (c) {
    case DiagramClass::Finite: return "Finite";
    case DiagramClass::Affine: return "Affine";
    case DiagramClass::CompactHyperbolic: return "CompactHyperbolic";
    case DiagramClass::OtherInfinite: return "OtherInfinite";
  }
  return "?";
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_label(const std::string& text, const std::string& token) {
  if (text == "inf" || text == "oo") return kInfinity;
  if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit))
    throw ParseError("bad label in '" + token + "'");
  if (text.size() > 6) throw ParseError("label too large in '" + token + "'");
  int m = std::stoi(text);
  if (m < 2) throw ParseError("label must be >= 2 in '" + token + "'");
  return m;
}

}  // namespace

CoxeterDiagram parse_diagram(std::string_view text) {
  // Logical lines: split on newlines and ';', strip comments.
  std::vector<std::string> lines;
  {
    std::string current;
    bool in_comment = false;
    for (char ch : text) {
      if (ch == '\n' || ch == ';') {
        lines.push_back(current);
        current.clear();
        in_comment = false;
      } else if (ch == '#') {
        in_comment = true;
      } else if (!in_comment) {
        current.push_back(ch);
      }
    }
    lines.push_back(current);
  }

  auto it = std::find_if(lines.begin(), lines.end(), [](const std::string& l) {
    return !split_ws(l).empty();
  });
  if (it == lines.end()) throw ParseError("missing generator line");

  std::vector<std::string> names = split_ws(*it);
  for (const auto& name : names)
    if (name.find_first_of("-:") != std::string::npos)
      throw ParseError("generator names may not contain '-' or ':': '" + name + "'");

  CoxeterDiagram d{names};
  std::vector<bool> given(names.size() * names.size(), false);
  for (++it; it != lines.end(); ++it) {
    for (const auto& token : split_ws(*it)) {
      auto dash = token.find('-');
      if (dash == std::string::npos || dash == 0)
        throw ParseError("expected 'x-y' or 'x-y:m', got '" + token + "'");
      auto colon = token.find(':', dash);
      std::string a = token.substr(0, dash);
      std::string b = token.substr(dash + 1, colon == std::string::npos
                                                 ? std::string::npos
                                                 : colon - dash - 1);
      int m = colon == std::string::npos ? 3 : parse_label(token.substr(colon + 1), token);
      if (!d.has_generator(a) || !d.has_generator(b))
        throw ParseError("unknown generator in '" + token + "'");
      Generator s = d.index_of(a), t = d.index_of(b);
      if (s == t) throw ParseError("self-edge in '" + token + "'");
      const std::size_t key = std::min(s, t) * names.size() + std::max(s, t);
      if (given[key] && d.label(s, t) != m)
        throw ParseError("asymmetric or conflicting labels for '" + token + "'");
      given[key] = true;
      d.set_label(s, t, m);
    }
  }
  return d;
}

CoxeterDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open diagram file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

std::string format_diagram(const CoxeterDiagram& d) {
  std::string out;
  for (int i = 0; i < d.rank(); ++i) {
    if (i) out += ' ';
    out += d.name(i);
  }
  out += '\n';
  bool first = true;
  for (int i = 0; i < d.rank(); ++i)
    for (int j = i + 1; j < d.rank(); ++j) {
      int m = d.label(i, j);
      if (m == 2) continue;
      if (!first) out += ' ';
      first = false;
      out += d.name(i) + "-" + d.name(j) + ":" +
             (m == kInfinity ? std::string("inf") : std::to_string(m));
    }
  if (!first) out += '\n';
  return out;
}

std::vector<std::vector<Generator>> components(const CoxeterDiagram& d) {
  const int n = d.rank();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Generator>> out;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<Generator> members{start};
    comp[start] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int t = 0; t < n; ++t)
        if (comp[t] < 0 && d.adjacent(members[k], t)) {
          comp[t] = comp[start];
          members.push_back(t);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_irreducible(const CoxeterDiagram& d) {
  return d.rank() >= 1 && components(d).size() == 1;
}

CoxeterDiagram subdiagram(const CoxeterDiagram& d,
                          const std::vector<Generator>& J) {
  std::vector<std::string> names;
  for (Generator s : J) {
    if (s < 0 || s >= d.rank())
      throw std::invalid_argument("subdiagram: generator index out of range");
    names.push_back(d.name(s));
  }
  CoxeterDiagram sub{names};  // rejects repeated members
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = i + 1; j < J.size(); ++j)
      sub.set_label(static_cast<int>(i), static_cast<int>(j), d.label(J[i], J[j]));
  return sub;
}

CoxeterDiagram subdiagram(const CoxeterDiagram& d,
                          const std::vector<std::string>& names) {
  std::vector<Generator> J;
  for (const auto& name : names) {
    if (!d.has_generator(name))
      throw std::invalid_argument("subdiagram: '" + name + "' is not a generator");
    J.push_back(d.index_of(name));
  }
  return subdiagram(d, J);
}

namespace {

bool all_proper_subdiagrams_finite(const CoxeterDiagram& d) {
  // Removing one node at a time suffices: parabolics of finite groups are finite.
  for (int drop = 0; drop < d.rank(); ++drop) {
    std::vector<Generator> J;
    for (int s = 0; s < d.rank(); ++s)
      if (s != drop) J.push_back(s);
    CoxeterDiagram sub = subdiagram(d, J);
    for (const auto& comp : components(sub))
      if (classify(subdiagram(sub, comp)) != DiagramClass::Finite) return false;
  }
  return true;
}

}  // namespace

DiagramClass classify(const CoxeterDiagram& d) {
  if (d.rank() == 0) throw std::invalid_argument("classify: rank 0 diagram");
  if (!is_irreducible(d)) throw std::invalid_argument("classify: reducible diagram");
  if (d.rank() == 1) return DiagramClass::Finite;
  if (d.has_infinite_label()) {
    if (d.rank() == 2) return DiagramClass::Affine;
    // A proper I2(inf) parabolic is infinite, so never locally finite.
    return DiagramClass::OtherInfinite;
  }
  switch (algebra::definiteness(algebra::gram(d))) {
    case algebra::Definiteness::PosDef: return DiagramClass::Finite;
    case algebra::Definiteness::PosSemiDefSingular: return DiagramClass::Affine;
    case algebra::Definiteness::Other: break;
  }
  return all_proper_subdiagrams_finite(d) ? DiagramClass::CompactHyperbolic
                                          : DiagramClass::OtherInfinite;
}

bool is_locally_finite(const CoxeterDiagram& d) {
  if (d.rank() == 0) return true;
  return all_proper_subdiagrams_finite(d);
}

}  // namespace coxwalk
