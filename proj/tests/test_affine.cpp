#include "doctest.h"

#include "coxwalk/affine.hpp"
#include "support.hpp"

using namespace coxwalk;
using testsupport::fixture;

namespace {

// Input generator whose realization node is `node`.
Generator gen_for(const AffineRealization& r, int node) {
  for (std::size_t i = 0; i < r.node_of.size(); ++i)
    if (r.node_of[i] == node) return static_cast<Generator>(i);
  FAIL("node missing");
  return -1;
}

}  // namespace

TEST_CASE("the poset Z") {
  for (long k = -3; k <= 3; ++k) CHECK(z_leq(0, k));
  CHECK(z_leq(1, 2));
  CHECK_FALSE(z_leq(2, 1));
  CHECK(z_leq(-1, -2));
  CHECK_FALSE(z_leq(1, -2));
  CHECK_FALSE(z_leq(-2, 1));
  CHECK_FALSE(z_leq(1, 0));
  for (long i = -4; i <= 4; ++i)
    for (long j = -4; j <= 4; ++j) {
      if (i != j && z_leq(i, j)) CHECK_FALSE(z_leq(j, i));
      for (long k = -4; k <= 4; ++k)
        if (z_leq(i, j) && z_leq(j, k)) CHECK(z_leq(i, k));
    }
}

TEST_CASE("root data") {
  struct Want {
    const char* type;
    std::size_t roots;
    std::vector<int> highest;
  };
  for (const Want& w : {Want{"A1", 1, {1}}, Want{"A2", 3, {1, 1}}, Want{"A3", 6, {1, 1, 1}},
                        Want{"A4", 10, {1, 1, 1, 1}}, Want{"B3", 9, {1, 2, 2}},
                        Want{"C2", 4, {2, 1}}, Want{"G2", 6, {3, 2}}}) {
    CAPTURE(w.type);
    const auto d = root_datum(w.type);
    CHECK(d.positive_roots.size() == w.roots);
    CHECK(d.highest_root == w.highest);
    // reflecting a positive root by a simple reflection gives +-roots only
    for (const auto& beta : d.positive_roots)
      for (int i = 0; i < d.rank; ++i) {
        auto image = beta;
        image[i] -= static_cast<int>(d.cartan(d.simple_root(i), beta).get_num().get_si());
        if (image == d.simple_root(i)) continue;
        auto neg = image;
        for (auto& x : neg) x = -x;
        const bool pos = std::find(d.positive_roots.begin(), d.positive_roots.end(), image) !=
                         d.positive_roots.end();
        const bool negated = std::find(d.positive_roots.begin(), d.positive_roots.end(), neg) !=
                             d.positive_roots.end();
        CHECK((pos || negated));
      }
  }
  CHECK(root_datum("A2").positive_roots ==
        std::vector<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(root_datum("E8"), UnsupportedType);
}

TEST_CASE("affine diagrams from root data") {
  CHECK(classify(affine_diagram(root_datum("A2"))) == DiagramClass::Affine);
  for (const auto& t : supported_types()) CHECK(classify(affine_diagram(root_datum(t))) == DiagramClass::Affine);
  const auto g2 = affine_diagram(root_datum("G2"));
  CHECK(g2.label(1, 2) == 6);
  CHECK(g2.label(0, 2) == 3);
  CHECK(g2.label(0, 1) == 2);
  CHECK(affine_diagram(root_datum("A1")).label(0, 1) == kInfinity);
}

TEST_CASE("recognition") {
  CHECK(recognize_affine(fixture("affine_a2")).name() == "A~2");
  CHECK(recognize_affine(fixture("affine_c2")).name() == "C~2");
  CHECK(recognize_affine(fixture("affine_g2")).name() == "G~2");
  CHECK(recognize_affine(fixture("affine_a1")).name() == "A~1");
  CHECK(recognize_affine(parse_diagram("a b c d\na-c b-c c-d:4")).name() == "B~3");
  CHECK(recognize_affine(parse_diagram("a b c d\na-b b-c c-d d-a")).name() == "A~3");
  CHECK_THROWS_AS(recognize_affine(parse_diagram("a b c d e\na-b:4 b-c c-d d-e:4")),
                  UnsupportedType);
  CHECK_THROWS_AS(recognize_affine(fixture("a3")), std::invalid_argument);
}

TEST_CASE("alcove coordinates of generators") {
  const auto r = recognize_affine(fixture("affine_a2"));
  CHECK(alcove_coords(r, {}) == AlcoveVector{0, 0, 0});
  CHECK(alcove_coords(r, {gen_for(r, 1)}) == AlcoveVector{-1, 0, 0});
  CHECK(alcove_coords(r, {gen_for(r, 2)}) == AlcoveVector{0, -1, 0});
  CHECK(alcove_coords(r, {gen_for(r, 0)}) == AlcoveVector{0, 0, 1});
  CHECK_FALSE(phi_leq(alcove_coords(r, {gen_for(r, 1)}), alcove_coords(r, {gen_for(r, 2)})));
  CHECK(phi_leq(AlcoveVector{0, 0, 0}, AlcoveVector{3, -2, 1}));
  CHECK_THROWS_AS(phi_leq(AlcoveVector{0}, AlcoveVector{0, 0}), std::invalid_argument);

  const auto d = recognize_affine(fixture("affine_a1"));
  const Generator s0 = gen_for(d, 0), s1 = gen_for(d, 1);
  CHECK(alcove_coords(d, {s1, s0, s1}) == AlcoveVector{-3});
  CHECK(alcove_coords(d, {s0, s1, s0, s1}) == AlcoveVector{4});
}

TEST_CASE("coordinates do not depend on the interior point; walks cross one wall") {
  for (const char* name : {"affine_a2", "affine_c2", "affine_g2", "affine_a1"}) {
    CAPTURE(name);
    const auto d = fixture(name);
    const auto r = recognize_affine(d);
    const CoxeterGroup g(d);
    const auto p0 = interior_point(r.datum, 0), p1 = interior_point(r.datum, 1),
               p3 = interior_point(r.datum, 3);
    CHECK(p0 != p1);
    for (const auto& w : g.ball(5).all()) {
      const Word nf = g.shortlex_nf(w);
      const auto a = alcove_coords(r, nf, p0);
      CHECK(a == alcove_coords(r, nf, p1));
      CHECK(a == alcove_coords(r, nf, p3));
      // also any other reduced word of the same element
      CHECK(a == alcove_coords(r, *g.reduced_expressions(w).rbegin()));
      for (Generator s = 0; s < g.rank(); ++s) {
        Word ws = nf;
        ws.push_back(s);
        const auto b = alcove_coords(r, ws);
        int changed = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          CHECK(std::labs(a[i] - b[i]) <= 1);
          changed += a[i] != b[i];
        }
        CHECK(changed == 1);
      }
    }
  }
}

TEST_CASE("embedding checks") {
  for (auto [name, radius] : {std::pair{"affine_a2", 6}, std::pair{"affine_c2", 5},
                              std::pair{"affine_a1", 10}, std::pair{"affine_g2", 5}}) {
    CAPTURE(name);
    const auto rep = embedding_check(fixture(name), radius);
    CHECK(rep.violations.empty());
    CHECK(rep.length_mismatches.empty());
    CHECK(rep.level_is_phi_antichain);
    CHECK(rep.ok());
    CHECK(rep.pairs_checked == rep.elements * (rep.elements - 1));
  }
  const auto a3 = embedding_check(parse_diagram("a b c d\na-b b-c c-d d-a"), 4);
  CHECK(a3.ok());
  const auto b3 = embedding_check(parse_diagram("a b c d\na-c b-c c-d:4"), 4);
  CHECK(b3.ok());
  const auto j = embedding_check(fixture("affine_a1"), 3).to_json();
  CHECK(j["type"] == "A~1");
  CHECK(j["violations"].empty());
  CHECK(j["pairs_checked"] == 42);
}
