// coxwalk: weak order, reduced words and infinite antichains in Coxeter groups.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coxwalk/affine.hpp"
#include "coxwalk/antichain.hpp"
#include "coxwalk/automaton.hpp"
#include "coxwalk/verify.hpp"

#ifndef COXWALK_FIXTURE_DIR
#define COXWALK_FIXTURE_DIR "fixtures"
#endif

using namespace coxwalk;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFactFailure = 1, kInputError = 2, kUnsupported = 3 };

struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  std::ostringstream text;
  int exit_code = kPass;
};

void emit(const Report& r, bool as_json) {
  if (as_json) {
    json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    j["exit_code"] = r.exit_code;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.text.str();
  }
}

std::size_t state_cap() {
  const char* env = std::getenv("COXWALK_STATE_CAP");
  if (!env || !*env) return kDefaultStateCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw std::invalid_argument(std::string("COXWALK_STATE_CAP must be a positive integer, got '") +
                                env + "'");
  return static_cast<std::size_t>(v);
}

std::string pair_verdict(bool forward, bool backward) {
  if (forward && backward) return "equal";
  if (forward) return "less";
  if (backward) return "greater";
  return "incomparable";
}

void print_certificate(Report& r, const AntichainCertificate& cert) {
  r.result["certificate"] = cert.to_json();
  r.text << "method: " << to_string(cert.method) << "\n";
  r.text << "family (" << cert.family_text.size() << "):\n";
  for (std::size_t i = 0; i < cert.family_text.size(); ++i)
    r.text << "  [" << i << "] " << cert.family_text[i] << "\n";
  std::size_t comparable = 0;
  for (const auto& c : cert.checks) comparable += c.leq_forward || c.leq_backward;
  r.text << "pairs checked: " << cert.checks.size() << ", comparable: " << comparable << "\n";
  for (auto it = cert.facts.begin(); it != cert.facts.end(); ++it)
    r.text << "  " << it.key() << ": " << it.value().dump() << "\n";
  r.text << "verdict: " << (cert.verified() ? "antichain verified" : "FAILED") << "\n";
  if (!cert.verified()) r.exit_code = kFactFailure;
}

void cmd_classify(Report& r, const std::string& file) {
  const auto d = load_diagram(file);
  r.inputs["file"] = file;
  json comps = json::array();
  for (const auto& comp : components(d)) {
    const auto sub = subdiagram(d, comp);
    const auto cls = classify(sub);
    comps.push_back({{"generators", sub.names()}, {"class", to_string(cls)}});
    std::string names;
    for (const auto& n : sub.names()) names += (names.empty() ? "" : " ") + n;
    r.text << "{" << names << "}: " << to_string(cls) << "\n";
  }
  r.result["components"] = std::move(comps);
}

void cmd_automaton(Report& r, const std::string& file, const std::string& format, int count,
                   const std::string& output) {
  const CoxeterGroup g(load_diagram(file));
  r.inputs = {{"file", file}, {"export", format}, {"count", count}};
  const bool exporting = !format.empty();
  const ExportFormat fmt = exporting ? parse_export_format(format) : ExportFormat::Dot;
  const auto a = build_automaton(g, state_cap());
  r.result["states"] = a.num_states();
  r.result["transitions"] = a.transitions().size();
  r.result["roots"] = a.roots.size();
  r.text << "states: " << a.num_states() << "\ntransitions: " << a.transitions().size()
         << "\nroots: " << a.roots.size() << "\n";
  if (count >= 0) {
    const auto counts = count_reduced_words_upto(a, count);
    json c = json::array();
    r.text << "reduced words by length:";
    for (const auto& z : counts) {
      c.push_back(z.get_str());
      r.text << " " << z.get_str();
    }
    r.text << "\n";
    r.result["counts"] = std::move(c);
  }
  if (exporting) {
    const std::string text = export_automaton(a, fmt);
    if (output.empty() || output == "-") {
      r.text.str("");
      r.text << text;
    } else {
      std::ofstream out(output);
      if (!out) throw std::invalid_argument("cannot write '" + output + "'");
      out << text;
      r.text << "written: " << output << "\n";
      r.result["written"] = output;
    }
  }
}

void cmd_compare(Report& r, const std::string& file, const std::string& w1,
                 const std::string& w2) {
  const CoxeterGroup g(load_diagram(file));
  r.inputs = {{"file", file}, {"v", w1}, {"w", w2}};
  const auto v = g.element_of(g.parse_word(w1));
  const auto w = g.element_of(g.parse_word(w2));
  const bool fwd = g.weak_leq(v, w), bwd = g.weak_leq(w, v);
  const auto nv = word_text(g, g.shortlex_nf(v)), nw = word_text(g, g.shortlex_nf(w));
  r.result = {{"length_v", v.length()},     {"length_w", w.length()},
              {"normal_form_v", nv},        {"normal_form_w", nw},
              {"v_leq_w", fwd},             {"w_leq_v", bwd},
              {"relation", pair_verdict(fwd, bwd)}};
  r.text << "v: " << nv << " (length " << v.length() << ")\n"
         << "w: " << nw << " (length " << w.length() << ")\n"
         << "v <=_R w: " << (fwd ? "yes" : "no") << "\n"
         << "w <=_R v: " << (bwd ? "yes" : "no") << "\n"
         << "relation: " << pair_verdict(fwd, bwd) << "\n";
}

void cmd_goodpair(Report& r, const std::string& file, const std::string& us,
                  const std::string& ws, int kmax) {
  const CoxeterGroup g(load_diagram(file));
  r.inputs = {{"file", file}, {"u", us}, {"w", ws}, {"kmax", kmax}};
  const Word u = g.parse_word(us), w = g.parse_word(ws);
  const auto rep = check_good_pair(g, g.element_of(u), g.element_of(w));
  const std::pair<const char*, bool> conds[] = {{"(i) l(u) <= l(w)", rep.length_ok},
                                                {"(ii) u not <=_R w", rep.not_below},
                                                {"(iii) |S(w)| >= 3", rep.support_ok},
                                                {"(iv) wu splits", rep.product_splits},
                                                {"(v) w^2 splits", rep.square_splits}};
  json c = json::object();
  for (auto [name, ok] : conds) {
    r.text << (ok ? "pass " : "FAIL ") << name << "\n";
    c[name] = ok;
  }
  for (const auto& x : rep.witnesses) r.text << "  witness: " << x << "\n";
  r.result["conditions"] = std::move(c);
  r.result["witnesses"] = rep.witnesses;
  r.result["good_pair"] = rep.all();
  if (!rep.all()) {
    r.exit_code = kFactFailure;
    return;
  }
  // The family keeps the words as given when they are reduced.
  print_certificate(r, good_pair_family(g, g.is_reduced(u) ? u : rep.u,
                                        g.is_reduced(w) ? w : rep.w, kmax));
}

void cmd_antichain(Report& r, const std::string& file, const std::string& method, int n,
                   int kmax) {
  const auto full = load_diagram(file);
  r.inputs = {{"file", file}, {"method", method}, {"n", n}, {"kmax", kmax}};
  // An antichain exists iff some irreducible component has one.
  std::optional<CoxeterDiagram> target;
  DiagramClass cls = DiagramClass::Finite;
  for (const auto& comp : components(full)) {
    const auto sub = subdiagram(full, comp);
    const auto c = classify(sub);
    if (c == DiagramClass::CompactHyperbolic || c == DiagramClass::OtherInfinite) {
      target = sub;
      cls = c;
      break;
    }
    if (c == DiagramClass::Affine) cls = c;
  }
  if (!target) {
    const std::string msg = cls == DiagramClass::Affine
                                ? "affine: no infinite antichain exists"
                                : "finite: no infinite antichain exists";
    r.result["refused"] = msg;
    r.text << msg << "\n";
    r.exit_code = kUnsupported;
    return;
  }
  const CoxeterGroup g(*target);
  std::string m = method;
  if (m == "auto") {
    if (!is_locally_finite(*target)) m = "coset";
    else if (match_case_vi(*target)) m = "casevi";
    else m = "goodpair";
  }
  r.result["method"] = m;
  if (m == "coset") {
    print_certificate(r, not_locally_finite_antichain(g, n));
  } else if (m == "casevi") {
    print_certificate(r, case_vi_certificate(g, kmax, state_cap()));
  } else if (m == "goodpair") {
    const auto pair = compact_hyperbolic_pair(g);
    r.text << "case " << to_string(pair.which) << ": u = " << word_text(g, pair.u)
           << ", w = " << word_text(g, pair.w) << "\n";
    r.result["case"] = to_string(pair.which);
    print_certificate(r, good_pair_family(g, pair.u, pair.w, kmax));
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
}

void cmd_affine(Report& r, const std::string& file, int radius) {
  r.inputs = {{"file", file}, {"radius", radius}};
  const auto rep = embedding_check(load_diagram(file), radius);
  r.result = rep.to_json();
  r.text << "type: " << rep.type << "\nradius: " << rep.radius << "\nelements: " << rep.elements
         << "\npairs checked: " << rep.pairs_checked << "\nviolations: " << rep.violations.size()
         << "\nlength mismatches: " << rep.length_mismatches.size() << "\n";
  for (const auto& v : rep.violations)
    r.text << "  " << v.v << " vs " << v.w << ": weak " << v.weak_leq << ", phi " << v.phi_leq
           << "\n";
  r.text << "verdict: " << (rep.ok() ? "embedding verified" : "FAILED") << "\n";
  if (!rep.ok()) r.exit_code = kFactFailure;
}

void cmd_verify(Report& r, const std::string& dir) {
  r.inputs["fixtures"] = dir;
  const auto facts = verify_paper(dir);
  r.result = facts_to_json(facts);
  std::size_t width = 0;
  for (const auto& f : facts) width = std::max(width, f.id.size());
  int failed = 0;
  for (const auto& f : facts) {
    r.text << std::left << std::setw(static_cast<int>(width) + 2) << f.id
           << (f.passed ? "pass  " : "FAIL  ") << f.claim << "\n";
    r.text << std::string(width + 8, ' ') << f.detail << "\n";
    failed += !f.passed;
  }
  r.text << (failed ? std::to_string(failed) + " fact(s) failed" : "all facts verified") << "\n";
  if (failed) r.exit_code = kFactFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak order, reduced words and infinite antichains in Coxeter groups"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string file, word1, word2, format, output, method = "auto";
  std::string fixtures = COXWALK_FIXTURE_DIR;
  int count = -1, kmax = 6, n = 20, radius = 5;

  auto* classify_cmd = app.add_subcommand("classify", "Classify each irreducible component");
  classify_cmd->add_option("file", file, "Diagram file")->required();

  auto* automaton_cmd = app.add_subcommand("automaton", "Build the reduced-word automaton");
  automaton_cmd->add_option("file", file, "Diagram file")->required();
  automaton_cmd->add_option("--export", format, "Export format: dot or json");
  automaton_cmd->add_option("--count", count, "Print reduced-word counts up to this length");
  automaton_cmd->add_option("-o,--output", output, "Write the export to a file");

  auto* compare_cmd = app.add_subcommand("compare", "Compare two elements in weak order");
  compare_cmd->add_option("file", file, "Diagram file")->required();
  compare_cmd->add_option("v", word1, "First word ('e' for the identity)")->required();
  compare_cmd->add_option("w", word2, "Second word")->required();

  auto* goodpair_cmd = app.add_subcommand("goodpair", "Check the good-pair conditions");
  goodpair_cmd->add_option("file", file, "Diagram file")->required();
  goodpair_cmd->add_option("u", word1, "Word for u")->required();
  goodpair_cmd->add_option("w", word2, "Word for w")->required();
  goodpair_cmd->add_option("--kmax", kmax, "Family size for the certificate")
      ->check(CLI::NonNegativeNumber);

  auto* antichain_cmd = app.add_subcommand("antichain", "Certify an infinite antichain");
  antichain_cmd->add_option("file", file, "Diagram file")->required();
  antichain_cmd->add_option("--method", method, "auto, coset, casevi or goodpair")
      ->check(CLI::IsMember({"auto", "coset", "casevi", "goodpair"}));
  antichain_cmd->add_option("--n", n, "Family size for the coset construction")
      ->check(CLI::PositiveNumber);
  antichain_cmd->add_option("--kmax", kmax, "Largest exponent (multiple of 6 for casevi)")
      ->check(CLI::NonNegativeNumber);

  auto* affine_cmd = app.add_subcommand("affine-embed", "Check the alcove embedding of weak order");
  affine_cmd->add_option("file", file, "Diagram file")->required();
  affine_cmd->add_option("--radius", radius, "Ball radius")->check(CLI::NonNegativeNumber);

  auto* verify_cmd = app.add_subcommand("verify-paper", "Re-derive every built-in fact");
  verify_cmd->add_option("--fixtures", fixtures, "Directory with the diagram fixtures");

  for (auto* sub : app.get_subcommands({}))
    sub->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  Report r;
  try {
    if (*classify_cmd) {
      r.command = "classify";
      cmd_classify(r, file);
    } else if (*automaton_cmd) {
      r.command = "automaton";
      cmd_automaton(r, file, format, count, output);
    } else if (*compare_cmd) {
      r.command = "compare";
      cmd_compare(r, file, word1, word2);
    } else if (*goodpair_cmd) {
      r.command = "goodpair";
      cmd_goodpair(r, file, word1, word2, kmax);
    } else if (*antichain_cmd) {
      r.command = "antichain";
      if (method == "casevi" && !antichain_cmd->count("--kmax")) kmax = 12;
      cmd_antichain(r, file, method, n, kmax);
    } else if (*affine_cmd) {
      r.command = "affine-embed";
      cmd_affine(r, file, radius);
    } else if (*verify_cmd) {
      r.command = "verify-paper";
      cmd_verify(r, fixtures);
    }
  } catch (const UnsupportedType& e) {
    r.exit_code = kUnsupported;
    r.result = {{"error", e.what()}};
    std::cerr << "unsupported: " << e.what() << "\n";
    if (as_json) emit(r, true);
    return r.exit_code;
  } catch (const VerificationFailure& e) {
    r.exit_code = kFactFailure;
    r.result = {{"error", e.what()}};
    std::cerr << "verification failed: " << e.what() << "\n";
    if (as_json) emit(r, true);
    return r.exit_code;
  } catch (const CapExceeded& e) {
    r.exit_code = kFactFailure;
    r.result = {{"error", e.what()}};
    std::cerr << "cap exceeded: " << e.what() << "\n";
    if (as_json) emit(r, true);
    return r.exit_code;
  } catch (const std::exception& e) {
    r.exit_code = kInputError;
    r.result = {{"error", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    if (as_json) emit(r, true);
    return r.exit_code;
  }
  emit(r, as_json);
  return r.exit_code;
}
