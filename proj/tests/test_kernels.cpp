#include <doctest.h>

#include <random>

#include "tfcalc/kernels.hpp"
#include "tfcalc/ref_kernels.hpp"

using namespace tfcalc;

namespace {
std::vector<cd> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = cd(dist(rng), dist(rng));
  return v;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}
}  // namespace

// The OpenMP lane and the serial reference lane must agree to rounding error
// on every kernel; the reference lane also avoids the dense tables, so this
// doubles as a check of the table construction.

TEST_CASE("dft lanes agree") {
  std::mt19937_64 rng(11);
  for (const Group& g : {Group({8}), Group({4, 6}), Group({3, 5})}) {
    auto in = random_vector(g.order(), rng);
    std::vector<cd> a(g.order()), b(g.order());
    for (bool conj_kernel : {true, false}) {
      kernels::dft(g, in.data(), a.data(), conj_kernel, 0.37);
      ref::dft(g, in.data(), b.data(), conj_kernel, 0.37);
      CHECK(max_diff(a, b) < 1e-12);
    }
  }
}

TEST_CASE("windowed transform lanes agree") {
  std::mt19937_64 rng(12);
  Group g({12});
  auto f = random_vector(g.order(), rng);
  auto w = random_vector(g.order(), rng);
  std::vector<cd> a(g.order() * g.order()), b(g.order() * g.order());
  kernels::windowed_transform(g, f.data(), w.data(), 1.0, a.data());
  ref::windowed_transform(g, f.data(), w.data(), 1.0, b.data());
  CHECK(max_diff(a, b) < 1e-12);

  // single-point evaluation matches the full transform
  for (std::size_t x : {std::size_t(0), std::size_t(5), std::size_t(11)}) {
    for (std::size_t om : {std::size_t(1), std::size_t(7)}) {
      CHECK(std::abs(kernels::windowed_transform_point(g, f.data(), w.data(), 1.0, x, om) -
                     a[x * g.order() + om]) < 1e-12);
    }
  }

  // column suprema
  std::vector<double> sa(g.order()), sb(g.order());
  kernels::windowed_transform_colsup(g, f.data(), w.data(), 1.0, sa.data());
  ref::windowed_transform_colsup(g, f.data(), w.data(), 1.0, sb.data());
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(std::abs(sa[i] - sb[i]) < 1e-12);
}

TEST_CASE("windowed transform lanes agree on a phase space") {
  std::mt19937_64 rng(13);
  Group space = phase_space(Group({2, 3}));
  auto f = random_vector(space.order(), rng);
  auto w = random_vector(space.order(), rng);
  const double weight = 1.0 / 6.0;
  std::vector<cd> a(space.order() * space.order()), b(space.order() * space.order());
  kernels::windowed_transform(space, f.data(), w.data(), weight, a.data());
  ref::windowed_transform(space, f.data(), w.data(), weight, b.data());
  CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("kn matrix lanes agree") {
  std::mt19937_64 rng(14);
  for (const Group& g : {Group({9}), Group({2, 5})}) {
    auto sigma = random_vector(g.order() * g.order(), rng);
    std::vector<cd> a(g.order() * g.order()), b(g.order() * g.order());
    kernels::kn_matrix(g, sigma.data(), a.data());
    ref::kn_matrix(g, sigma.data(), b.data());
    CHECK(max_diff(a, b) < 1e-12);
  }
}

TEST_CASE("twisted convolution lanes agree") {
  std::mt19937_64 rng(15);
  Group g({6});
  auto f = random_vector(g.order() * g.order(), rng);
  auto h = random_vector(g.order() * g.order(), rng);
  std::vector<cd> a(g.order() * g.order()), b(g.order() * g.order());
  kernels::twisted_convolution(g, f.data(), h.data(), a.data());
  ref::twisted_convolution(g, f.data(), h.data(), b.data());
  CHECK(max_diff(a, b) < 1e-12);
}
