#include "doctest.h"

#include "coxwalk/antichain.hpp"
#include "support.hpp"

using namespace coxwalk;
using testsupport::fixture;

namespace {

void check_family_by_hand(const CoxeterGroup& g, const std::vector<Word>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto x = g.element_of(family[i]);
    CHECK(x.length() == static_cast<int>(family[i].size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i == j) continue;
      const auto y = g.element_of(family[j]);
      // v <=_R w iff l(v) + l(v^-1 w) = l(w)
      CHECK(x.length() + g.multiply(g.inverse(x), y).length() != y.length());
    }
  }
}

}  // namespace

TEST_CASE("good pair conditions") {
  const CoxeterGroup g(fixture("case_v"));
  const auto r = check_good_pair(g, g.element_of(g.parse_word("uvtut")),
                                 g.element_of(g.parse_word("utvsut")));
  CHECK(r.length_ok);
  CHECK(r.not_below);
  CHECK(r.support_ok);
  CHECK(r.product_splits);
  CHECK(r.square_splits);
  CHECK(r.witnesses.empty());

  const auto s = g.generator(0);
  const auto bad = check_good_pair(g, s, s);
  CHECK_FALSE(bad.not_below);
  CHECK_FALSE(bad.support_ok);
  CHECK_FALSE(bad.all());
  CHECK_FALSE(bad.witnesses.empty());

  // w is a reflection, so w^2 = e
  const CoxeterGroup a3(fixture("a3"));
  const auto fail = check_good_pair(a3, a3.element_of({0}), a3.element_of({0, 1, 2, 1, 0}));
  CHECK_FALSE(fail.square_splits);
}

TEST_CASE("case templates in their minimal diagrams") {
  struct Template {
    const char* fixture;
    const char* u;
    const char* w;
  };
  for (const Template& p : {Template{"case_i", "s3", "s2 s3 s1"}, Template{"case_ii", "s1 s2 s1", "s1 s2 s3 s2"},
                        Template{"case_iii", "a b", "a c b a b"},
                        Template{"case_iv", "s1 s2 s1", "s1 s2 s3 s4 s2"},
                        Template{"case_v", "uvtut", "utvsut"}}) {
    CAPTURE(p.fixture);
    const CoxeterGroup g(fixture(p.fixture));
    const Word u = g.parse_word(p.u), w = g.parse_word(p.w);
    CHECK(check_good_pair(g, g.element_of(u), g.element_of(w)).all());
    const auto cert = good_pair_family(g, u, w, 6);
    CHECK(cert.verified());
    CHECK(cert.family.size() == 7);
    CHECK(cert.checks.size() == 21);
    check_family_by_hand(g, cert.family);
    for (int k = 0; k <= 6; ++k)
      CHECK(cert.family[k].size() == k * w.size() + u.size());
    CHECK_FALSE(first_unsplit_expression(g, u, w, 3));
  }
}

TEST_CASE("family edge cases") {
  const CoxeterGroup g(fixture("case_i"));
  const auto one = good_pair_family(g, g.parse_word("s3"), g.parse_word("s2 s3 s1"), 0);
  CHECK(one.family.size() == 1);
  CHECK(one.checks.empty());
  CHECK(one.verified());
  CHECK_THROWS_AS(good_pair_family(g, g.parse_word("s3"), g.parse_word("s2 s3 s1"), -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(good_pair_family(g, g.parse_word("s3 s3"), g.parse_word("s2 s3 s1"), 2),
                  std::invalid_argument);
  // not a good pair: w^k u collapses or becomes comparable
  const CoxeterGroup a3(fixture("a3"));
  CHECK_THROWS_AS(good_pair_family(a3, {0}, {0, 1, 2}, 4), VerificationFailure);
}

TEST_CASE("case V junctions") {
  const CoxeterGroup g(fixture("case_v"));
  const auto rex = g.reduced_expressions(g.element_of(g.parse_word("utvsut")));
  int count = 0;
  for (const auto& a : rex)
    for (const auto& b : rex) {
      ++count;
      CHECK(junction_moves(g, a, b).empty());
    }
  CHECK(count == 25);
  // a nil move and a braid move across the cut
  CHECK(junction_moves(g, g.parse_word("s t"), g.parse_word("t")).size() == 1);
  const auto m = junction_moves(g, g.parse_word("u t"), g.parse_word("u t u"));
  REQUIRE_FALSE(m.empty());
  CHECK(m[0].length == 5);
}

TEST_CASE("dispatch on compact hyperbolic diagrams") {
  struct Want {
    const char* fixture;
    HyperbolicCase which;
  };
  for (const Want& x :
       {Want{"case_i", HyperbolicCase::I}, Want{"case_ii", HyperbolicCase::II},
        Want{"case_iii", HyperbolicCase::III}, Want{"case_iv", HyperbolicCase::IV},
        Want{"case_v", HyperbolicCase::V}, Want{"ch_square_4", HyperbolicCase::I},
        Want{"ch_path_3_5_3", HyperbolicCase::V}, Want{"ch_path_4_3_5", HyperbolicCase::II},
        Want{"ch_fork_4", HyperbolicCase::IV}}) {
    CAPTURE(x.fixture);
    const CoxeterGroup g(fixture(x.fixture));
    const auto pair = compact_hyperbolic_pair(g);
    CHECK(pair.which == x.which);
    CHECK(check_good_pair(g, g.element_of(pair.u), g.element_of(pair.w)).all());
  }
  const CoxeterGroup vi(fixture("case_vi"));
  CHECK(match_case_vi(vi.diagram()));
  CHECK_FALSE(match_case_vi(fixture("ch_path_5_3_3_5")));
  CHECK_THROWS_AS(compact_hyperbolic_pair(vi), std::invalid_argument);
}

TEST_CASE("a rank-4 path with a 7 uses the Case III pair on the 7 edge") {
  const CoxeterGroup g(parse_diagram("a b c d\na-b:7 b-c c-d"));
  const auto pair = compact_hyperbolic_pair(g);
  CHECK(pair.which == HyperbolicCase::III);
  CHECK(check_good_pair(g, g.element_of(pair.u), g.element_of(pair.w)).all());
  CHECK(good_pair_family(g, pair.u, pair.w, 6).verified());
}

TEST_CASE("every rank-4 and rank-5 compact hyperbolic diagram") {
  for (const char* name :
       {"ch_path_4_3_5", "ch_path_5_3_5", "ch_path_4_3_3_5", "ch_path_5_3_3_5", "ch_square_4",
        "ch_square_5", "ch_square_4_4", "ch_square_4_5", "ch_square_5_5", "ch_pentagon_4",
        "ch_fork_4", "ch_fork_5", "ch_path_3_5_3"}) {
    CAPTURE(name);
    const CoxeterGroup g(fixture(name));
    const auto pair = compact_hyperbolic_pair(g);
    CHECK(check_good_pair(g, g.element_of(pair.u), g.element_of(pair.w)).all());
    const auto cert = good_pair_family(g, pair.u, pair.w, 6);
    CHECK(cert.verified());
    check_family_by_hand(g, cert.family);
    CHECK_FALSE(first_unsplit_expression(g, pair.u, pair.w, 3));
  }
}

TEST_CASE("squares also carry a Case I pair") {
  for (const char* name : {"ch_square_4", "ch_square_5", "ch_square_4_4", "ch_square_4_5",
                           "ch_square_5_5"}) {
    CAPTURE(name);
    const CoxeterGroup g(fixture(name));
    bool found = false;
    for (const auto& c : case_candidates(g.diagram())) {
      if (c.which != HyperbolicCase::I) continue;
      found = true;
      CHECK(check_good_pair(g, g.element_of(c.u), g.element_of(c.w)).all());
    }
    CHECK(found);
  }
}

TEST_CASE("hyperbolic triangles") {
  int count = 0;
  for (int p = 2; p <= 7; ++p)
    for (int q = 2; q <= 7; ++q)
      for (int r = 2; r <= 7; ++r) {
        if ((p == 2) + (q == 2) + (r == 2) >= 2) continue;
        if (q * r + p * r + p * q >= p * q * r) continue;
        auto d = parse_diagram("a b c");
        d.set_label(0, 1, p);
        d.set_label(1, 2, q);
        d.set_label(0, 2, r);
        const CoxeterGroup g(d);
        const auto pair = compact_hyperbolic_pair(g);
        CHECK(good_pair_family(g, pair.u, pair.w, 4).verified());
        ++count;
      }
  CHECK(count == 175);
}

TEST_CASE("case VI certificate") {
  const CoxeterGroup g(fixture("case_vi"));
  const auto cert = case_vi_certificate(g, 18);
  CHECK(cert.method == CertificateMethod::AutomatonCycle);
  CHECK(cert.verified());
  CHECK(cert.family.size() == 4);
  check_family_by_hand(g, cert.family);

  std::vector<Generator> path;
  for (const char* n : {"s", "t", "u", "v", "w"}) path.push_back(g.diagram().index_of(n));
  const auto f = case_vi_facts(g, path, 12);
  CHECK(f.alpha_length == 9);
  CHECK(f.runs_accept);
  CHECK(f.states_equal);
  CHECK(f.length_65 == 65);
  CHECK(f.lengths_ok);
  for (auto [k, len] : f.lengths) CHECK(len == 2 + 9 * k);
  CHECK(f.all());
  CHECK_THROWS_AS(case_vi_certificate(g, 7), std::invalid_argument);
  CHECK_THROWS_AS(case_vi_certificate(CoxeterGroup(fixture("case_v")), 6), std::invalid_argument);
}

TEST_CASE("case VI facts fail on a perturbed diagram") {
  auto d = fixture("case_vi");
  d.set_label(d.index_of("s"), d.index_of("t"), 4);
  const CoxeterGroup g(d);
  std::vector<Generator> path;
  for (const char* n : {"s", "t", "u", "v", "w"}) path.push_back(d.index_of(n));
  const auto f = case_vi_facts(g, path, 6);
  CHECK_FALSE(f.all());
}

TEST_CASE("coset construction") {
  const CoxeterGroup g(fixture("universal3"));
  const auto cert = not_locally_finite_antichain(g, 20);
  CHECK(cert.method == CertificateMethod::CosetConstruction);
  CHECK(cert.family.size() == 20);
  CHECK(cert.verified());
  check_family_by_hand(g, cert.family);
  const auto five = not_locally_finite_antichain(g, 5);
  for (const auto& w : five.family) {
    // an alternating a/b word ending in a, then c
    REQUIRE(w.size() >= 2);
    CHECK(w.back() == 2);
    CHECK(w[w.size() - 2] == 0);
    for (std::size_t i = 0; i + 2 < w.size(); ++i) CHECK(w[i] != w[i + 1]);
  }
  CHECK(not_locally_finite_antichain(g, 1).family.size() == 1);

  const CoxeterGroup plus(fixture("universal_triangle_plus"));
  const auto c = not_locally_finite_antichain(plus, 5);
  CHECK(c.verified());
  check_family_by_hand(plus, c.family);
  CHECK_THROWS(not_locally_finite_antichain(CoxeterGroup(fixture("affine_a2")), 5));
}

TEST_CASE("label increase") {
  const auto from = fixture("triangle_3_3_4");
  const CoxeterGroup g(from);
  const auto fam = good_pair_family(g, g.parse_word("c"), g.parse_word("b c a"), 6);
  for (const char* target : {"triangle_3_3_5", "triangle_3_4_4"}) {
    const auto to = fixture(target);
    const auto cert = transfer_label_increase(fam.family, from, to);
    CHECK(cert.method == CertificateMethod::LabelTransfer);
    CHECK(cert.verified());
    check_family_by_hand(CoxeterGroup(to), fam.family);
  }
  CHECK(transfer_label_increase(fam.family, from, from).verified());
  CHECK_THROWS(transfer_label_increase(fam.family, fixture("triangle_3_3_5"), from));

  const auto p54 = fixture("case_ii");
  const CoxeterGroup g2(p54);
  const auto fam2 = good_pair_family(g2, g2.parse_word("s1 s2 s1"), g2.parse_word("s1 s2 s3 s2"), 5);
  auto p55 = p54;
  p55.set_label(1, 2, 5);
  CHECK(transfer_label_increase(fam2.family, p54, p55).verified());
}

TEST_CASE("certificate json") {
  const CoxeterGroup g(fixture("case_i"));
  const auto cert = good_pair_family(g, g.parse_word("s3"), g.parse_word("s2 s3 s1"), 2);
  const auto j = cert.to_json();
  CHECK(j["method"] == "GoodPair");
  CHECK(j["family"].size() == 3);
  CHECK(j["family"][0] == "s3");
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["leq_forward"] == false);
  CHECK(word_text(g, {}) == "e");
}
