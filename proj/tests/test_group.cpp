#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "tfcalc/group.hpp"

using namespace tfcalc;

namespace {
// Independent pairing oracle: straight std::polar of the defining angle.
cd naive_pairing(const Group& g, std::size_t xi, std::size_t x) {
  auto cxi = g.coords(xi), cx = g.coords(x);
  double angle = 0.0;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    angle += 2.0 * std::numbers::pi * cxi[j] * cx[j] / g.moduli()[j];
  }
  return std::polar(1.0, angle);
}
}  // namespace

TEST_CASE("element arithmetic is componentwise mod N") {
  Group g({4, 6});
  CHECK(g.order() == 24);
  std::size_t a = g.index(std::vector<int>{3, 5});
  std::size_t b = g.index(std::vector<int>{2, 4});
  CHECK(g.coords(g.add(a, b)) == std::vector<int>{1, 3});
  CHECK(g.coords(g.neg(a)) == std::vector<int>{1, 1});
  CHECK(g.add(a, g.neg(a)) == 0);
  CHECK(g.sub(a, b) == g.add(a, g.neg(b)));
  CHECK(g.index(std::vector<int>{-1, 7}) == g.index(std::vector<int>{3, 1}));
}

TEST_CASE("pairing values and laws") {
  Group z4({4});
  // primitive 4th root of unity
  CHECK(std::abs(z4.character(1, 1) - cd(0.0, 1.0)) < 1e-15);

  Group z6({6});
  CHECK(std::abs(z6.character(2, 3) - cd(1.0, 0.0)) < 1e-15);  // 2*3 = 0 mod 6

  for (const Group& g : {Group({8}), Group({4, 6})}) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      CHECK(std::abs(g.character(0, x) - cd(1.0, 0.0)) < 1e-15);
    }
    for (std::size_t xi = 0; xi < g.order(); ++xi) {
      for (std::size_t x = 0; x < g.order(); ++x) {
        CHECK(std::abs(std::abs(g.character(xi, x)) - 1.0) < 1e-15);
        CHECK(std::abs(g.character(xi, x) - naive_pairing(g, xi, x)) < 1e-12);
        // multiplicativity and conjugation, exhaustive over a third element
        for (std::size_t y = 0; y < g.order(); ++y) {
          CHECK(std::abs(g.character(xi, g.add(x, y)) -
                         g.character(xi, x) * g.character(xi, y)) < 1e-12);
        }
        CHECK(std::abs(g.character(g.neg(xi), x) - std::conj(g.character(xi, x))) <
              1e-12);
      }
    }
  }
}

TEST_CASE("metric: circular l1 distance") {
  Group z8({8});
  CHECK(z8.metric(5) == 3);
  CHECK(z8.metric(0) == 0);
  Group g({4, 4});
  CHECK(g.metric(g.index(std::vector<int>{2, 3})) == 3);
  // symmetry and triangle inequality, exhaustive
  Group z12({12});
  for (std::size_t a = 0; a < 12; ++a) {
    CHECK(z12.metric(z12.neg(a)) == z12.metric(a));
    for (std::size_t b = 0; b < 12; ++b) {
      CHECK(z12.metric(z12.add(a, b)) <= z12.metric(a) + z12.metric(b));
    }
  }
}

TEST_CASE("polynomial weight") {
  Group z8({8});
  Weight w0 = Weight::polynomial(z8, 0.0);
  for (std::size_t a = 0; a < 8; ++a) CHECK(w0(a) == 1.0);

  Weight w1 = Weight::polynomial(z8, 1.0);
  CHECK(w1(5) == 4.0);  // 1 + min(5,3)

  Group z12({12});
  Weight w2 = Weight::polynomial(z12, 2.0);
  CHECK(w2.submultiplicativity_defect() <= 0.0);
  CHECK(w2.evenness_defect() == 0.0);
  CHECK(w2.normalization_defect() == 0.0);
  CHECK(w2.grs_defect() < 1e-12);

  CHECK_THROWS_AS(Weight::polynomial(z8, -1.0), std::invalid_argument);
}

TEST_CASE("subexponential weight is admissible") {
  Group z12({12});
  Weight w = Weight::subexponential(z12, 0.4, 0.5);
  CHECK(w.submultiplicativity_defect() <= 1e-12);
  CHECK(w.evenness_defect() == 0.0);
  CHECK(w.normalization_defect() == 0.0);
  CHECK(w.grs_defect() < 1e-12);
}

TEST_CASE("moderate: polynomial family is self-moderate with constant 1") {
  Group z12({12});
  Weight v = Weight::polynomial(z12, 2.0);
  CHECK(moderate_defect(v, v, 1.0) <= 1e-12);
  // a weight that is not v-moderate with C = 1 for a smaller v
  Weight v0 = Weight::polynomial(z12, 0.0);
  CHECK(moderate_defect(v, v0, 1.0) > 0.1);
}

TEST_CASE("lattice enumeration, membership, decomposition") {
  Group z12({12});
  Lattice lat(z12, {3});
  CHECK(lat.size() == 4);
  CHECK(lat.points() == std::vector<std::size_t>{0, 3, 6, 9});
  CHECK(lat.contains(6));
  CHECK(!lat.contains(5));
  CHECK(lat.index_of(9) == 3);
  CHECK_THROWS_AS(lat.index_of(5), std::invalid_argument);
  CHECK_THROWS_AS(Lattice(z12, {5}), std::invalid_argument);

  // unique decomposition over the whole phase space of Z4 x Z6 using steps (2,3,2,2)
  Group space = phase_space(Group({4, 6}));
  Lattice plat(space, {2, 3, 2, 2});
  CHECK(plat.size() * plat.fundamental_domain().size() == space.order());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t y = 0; y < space.order(); ++y) {
    auto d = plat.decompose(y);
    CHECK(plat.contains(d.lattice_point));
    CHECK(space.add(d.lattice_point, d.offset) == y);
    seen.insert({d.lattice_point, d.offset});
  }
  CHECK(seen.size() == space.order());  // injective, hence unique

  // lattice is a subgroup: closed under addition and negation
  for (std::size_t i = 0; i < plat.size(); ++i) {
    CHECK(plat.contains(space.neg(plat.point(i))));
    for (std::size_t j = 0; j < plat.size(); ++j) {
      CHECK(plat.contains(space.add(plat.point(i), plat.point(j))));
    }
  }
}

TEST_CASE("annihilator") {
  Group z12({12});

  // whole group -> {0}
  Lattice whole(z12, {1});
  CHECK(annihilator(whole).points() == std::vector<std::size_t>{0});

  // {0} -> whole dual group
  Lattice zero(z12, {12});
  CHECK(annihilator(zero).size() == 12);

  // 3Z12 (order 4) -> 4Z12 (order 3), verified against the pairing definition
  Lattice k(z12, {3});
  Lattice kp = annihilator(k);
  CHECK(kp.size() == 3);
  CHECK(k.size() * kp.size() == z12.order());
  for (std::size_t xi = 0; xi < z12.order(); ++xi) {
    bool annihilates = true;
    for (std::size_t p : k.points()) {
      if (std::abs(z12.character(xi, p) - cd(1.0, 0.0)) > 1e-12) annihilates = false;
    }
    CHECK(annihilates == kp.contains(xi));
  }
}

TEST_CASE("J map is a measure-preserving bijection with the stated inverse") {
  Group g({4, 6});
  const std::size_t n = g.order();
  std::set<std::size_t> image;
  for (std::size_t p = 0; p < n * n; ++p) {
    std::size_t q = j_map(g, p);
    image.insert(q);
    CHECK(j_inv(g, q) == p);
  }
  CHECK(image.size() == n * n);  // bijection
  // J(x, xi) = (-xi, x)
  std::size_t x = g.index(std::vector<int>{1, 2});
  std::size_t xi = g.index(std::vector<int>{3, 5});
  CHECK(j_map(g, x * n + xi) == g.neg(xi) * n + x);
}

TEST_CASE("weight restriction to a lattice") {
  Group space = phase_space(Group({12}));
  Weight v = Weight::polynomial(space, 1.0);
  Lattice lat(space, {2, 2});
  Weight vl = v.restrict_to(lat);
  CHECK(vl.group().order() == lat.size());
  for (std::size_t k = 0; k < lat.size(); ++k) {
    CHECK(vl(k) == v(lat.point(k)));
  }
}

TEST_CASE("group order of elements") {
  Group g({4, 6});
  CHECK(g.element_order(0) == 1);
  CHECK(g.element_order(g.index(std::vector<int>{1, 0})) == 4);
  CHECK(g.element_order(g.index(std::vector<int>{0, 1})) == 6);
  CHECK(g.element_order(g.index(std::vector<int>{2, 3})) == 2);
  CHECK(g.element_order(g.index(std::vector<int>{1, 1})) == 12);
}
