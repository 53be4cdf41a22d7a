#include <doctest.h>

#include <random>

#include "tfcalc/sjostrand.hpp"
#include "tfcalc/transforms.hpp"
#include "test_support.hpp"

using namespace tfcalc;

namespace {
GaborSystem tight_system(const Group& g, std::vector<int> steps, std::mt19937_64& rng) {
  Signal w = oracle::random_signal(g, rng);
  GaborSystem raw(w, Lattice(phase_space(g), steps));
  return GaborSystem(raw.tight_window(), Lattice(phase_space(g), std::move(steps)));
}
}  // namespace

TEST_CASE("sjostrand norm of the zero symbol is zero") {
  Group z8({8});
  Symbol zero(PhaseFunction(z8, PhaseDomain::time_freq));
  Weight v = Weight::polynomial(phase_space(z8), 1.0);
  CHECK(sjostrand_norm(zero, delta_tensor_one(z8), v) == 0.0);
}

TEST_CASE("sjostrand norm against the partial-transform formula") {
  // With the window delta (x) 1 the norm collapses to
  // sum_u sup_x |(1/N) sum_xi sigma(x,xi) <xi,u>| v(u); both routes computed
  // independently must agree to working precision.
  std::mt19937_64 rng(81);
  for (int n : {8, 16}) {
    Group g({n});
    Weight v = Weight::polynomial(g, 1.0);
    for (int t = 0; t < 5; ++t) {
      Symbol sigma = random_decaying_symbol(g, 0.6, rng);
      double got = sjostrand_norm(sigma, delta_tensor_one(g), position_weight(v));

      double expect = 0.0;
      for (std::size_t u = 0; u < g.order(); ++u) {
        double sup = 0.0;
        for (std::size_t x = 0; x < g.order(); ++x) {
          cd acc(0, 0);
          for (std::size_t xi = 0; xi < g.order(); ++xi) {
            acc += sigma.data().at(x, xi) * oracle::pairing(g, xi, u);
          }
          sup = std::max(sup, std::abs(acc) / n);
        }
        expect += sup * v(g.neg(u));
      }
      CHECK(std::abs(got - expect) < 1e-12);
    }
  }
}

TEST_CASE("symbol stft of a pure shift is a translated window transform") {
  // sigma of pi(x0) is the phase-space character indexed by w0 = J(-x0), so
  // V_Psi sigma(z, w) has modulus |F(Psi)(w0 - w)| for every z: the column
  // suprema are an exact translate of the window transform, peaking at w0.
  Group z8({8});
  Signal g = gaussian_like(z8);
  PhaseFunction psi = rihaczek(g, g);
  const Group space = phase_space(z8);
  std::size_t pos = 2, freq = 3;
  Symbol sigma = shift_symbol(z8, pos, freq);
  std::size_t hot = j_map(z8, space.neg(phase_index(z8, pos, freq)));

  PhaseFunction psihat = phase_fourier(psi);
  double peak = 0.0, peak_at_hot = 0.0;
  for (std::size_t w = 0; w < space.order(); ++w) {
    double expect = std::abs(psihat[space.sub(hot, w)]);
    double sup = 0.0;
    for (std::size_t z = 0; z < space.order(); z += 5) {
      sup = std::max(sup, std::abs(phase_stft_point(sigma.data(), psi, z, w)));
    }
    CHECK(sup <= expect + 1e-12);
    if (expect > peak) peak = expect;
    if (w == hot) peak_at_hot = expect;
  }
  CHECK(peak_at_hot == peak);  // mass concentrates at the J image of the shift
  CHECK(peak > 1e-3);
}

TEST_CASE("gabor matrix of the identity symbol is the gram matrix") {
  Group z12({12});
  std::mt19937_64 rng(83);
  Signal g = oracle::random_signal(z12, rng);
  GaborSystem sys(g, Lattice(phase_space(z12), {2, 2}));
  GaborMatrix m = gabor_matrix(identity_symbol(z12), sys);
  const Mat& w = sys.shift_matrix();
  Mat gram = w.adjoint() * w;
  CHECK((m.entries - gram).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("gabor matrix of a lattice shift in an orthonormal system") {
  Group z12({12});
  GaborSystem onb = orthonormal_basis_system(z12, {3});
  std::size_t m0 = onb.lattice().point(5);
  GaborMatrix m = gabor_matrix(shift_symbol(z12, m0 / 12, m0 % 12), onb);
  // permutation with phases: one unit-modulus entry per column
  for (Eigen::Index col = 0; col < m.entries.cols(); ++col) {
    int hits = 0;
    for (Eigen::Index row = 0; row < m.entries.rows(); ++row) {
      double a = std::abs(m.entries(row, col));
      if (a > 1e-9) {
        ++hits;
        CHECK(std::abs(a - 1.0) < 1e-10);
      }
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("factorization and intertwining for tight bound-1 systems") {
  Group z12({12});
  std::mt19937_64 rng(84);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  for (int t = 0; t < 3; ++t) {
    Symbol sigma = random_decaying_symbol(z12, 0.4, rng);
    Mat k = kn_matrix(sigma).mat;
    GaborMatrix m = gabor_matrix(sigma, sys);
    const Mat& w = sys.shift_matrix();
    // K = C* M C
    CHECK((w * m.entries * w.adjoint() - k).cwiseAbs().maxCoeff() < 1e-10);
    // C K f = M C f
    Signal f = oracle::random_signal(z12, rng);
    Vec lhs = sys.analysis(Signal(z12, Side::group, k * f.data()));
    Vec rhs = m.entries * sys.analysis(f);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gabor matrix maps ran(C) into ran(C) and kills its complement") {
  Group z12({12});
  std::mt19937_64 rng(85);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Symbol sigma = random_decaying_symbol(z12, 0.4, rng);
  GaborMatrix m = gabor_matrix(sigma, sys);
  const Mat& w = sys.shift_matrix();
  Mat p = w.adjoint() * w;  // projector onto ran(C) since C*C = I
  CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(((Mat::Identity(p.rows(), p.cols()) - p) * m.entries * p).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK((m.entries * (Mat::Identity(p.rows(), p.cols()) - p)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("cv norm basics and the brute-force oracle") {
  Group q({6, 6});
  Weight v = Weight::polynomial(q, 1.0);

  Mat id = Mat::Identity(36, 36);
  CHECK(cv_norm(id, q, v) == 1.0);

  std::size_t k0 = q.index(std::vector<int>{2, 1});
  Mat shift = Mat::Zero(36, 36);
  for (std::size_t i = 0; i < 36; ++i) {
    shift(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q.sub(i, k0))) = 1.0;
  }
  CHECK(std::abs(cv_norm(shift, q, v) - v(k0)) < 1e-14);

  // banded random matrix against the definitional double loop
  std::mt19937_64 rng(86);
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat a = Mat::Zero(36, 36);
  for (std::size_t i = 0; i < 36; ++i) {
    for (std::size_t j = 0; j < 36; ++j) {
      if (q.metric(q.sub(i, j)) <= 2) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            cd(dist(rng), dist(rng));
      }
    }
  }
  double expect = 0.0;
  for (std::size_t k = 0; k < 36; ++k) {
    double sup = 0.0;
    for (std::size_t i = 0; i < 36; ++i) {
      sup = std::max(sup,
                     std::abs(a(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(q.sub(i, k)))));
    }
    expect += sup * v(k);
  }
  CHECK(std::abs(cv_norm(a, q, v) - expect) < 1e-12);
}

TEST_CASE("cv norm is submultiplicative") {
  Group q({6});
  Weight v = Weight::polynomial(q, 1.0);
  std::mt19937_64 rng(87);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Mat a(6, 6), b(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) {
        a(i, j) = cd(dist(rng), dist(rng));
        b(i, j) = cd(dist(rng), dist(rng));
      }
    }
    CHECK(cv_norm(a * b, q, v) <= cv_norm(a, q, v) * cv_norm(b, q, v) + 1e-10);
  }
}

TEST_CASE("cv inverse and pseudoinverse") {
  Group q({6, 6});
  Weight v = Weight::polynomial(q, 1.0);

  CvMatrix id(q, Mat::Identity(36, 36), v);
  CHECK(cv_inverse(id).norm() == 1.0);

  std::size_t k0 = q.index(std::vector<int>{1, 2});
  Mat shift = Mat::Zero(36, 36);
  for (std::size_t i = 0; i < 36; ++i) {
    shift(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q.sub(i, k0))) = 1.0;
  }
  CvMatrix sh(q, shift, v);
  CvMatrix shinv = cv_inverse(sh);
  CHECK((shinv.entries() - shift.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(shinv.norm() - v(q.neg(k0))) < 1e-12);
  CHECK(std::abs(shinv.norm() - v(k0)) < 1e-12);  // evenness

  // random diagonally dominant matrix
  std::mt19937_64 rng(88);
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat a = 12.0 * Mat::Identity(36, 36);
  for (Eigen::Index i = 0; i < 36; ++i) {
    for (Eigen::Index j = 0; j < 36; ++j) a(i, j) += cd(dist(rng), dist(rng)) * 0.3;
  }
  CvMatrix am(q, a, v);
  CvMatrix ainv = cv_inverse(am);
  CHECK((a * ainv.entries() - Mat::Identity(36, 36)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::isfinite(ainv.norm()));

  // pseudoinverse of a rank-deficient projector-like matrix
  Mat b = Mat::Zero(36, 36);
  b.topLeftCorner(18, 18) = 3.0 * Mat::Identity(18, 18);
  CvMatrix bm(q, b, v);
  CvMatrix bp = cv_pseudoinverse(bm);
  Mat x = bp.entries();
  CHECK((b * x * b - b).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((x * b * x - x).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(((b * x) - (b * x).adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(((x * b) - (x * b).adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ambiguous rank decisions abort") {
  Group q({4});
  Weight v = Weight::one(q);
  Mat a = Mat::Zero(4, 4);
  a(0, 0) = 1.0;
  a(1, 1) = 3e-10;   // kept at rel_tol 1e-10
  a(2, 2) = 5e-11;   // dropped, but only a factor 6 below the kept one
  CvMatrix am(q, a, v);
  CHECK_THROWS_AS(cv_pseudoinverse(am, 1e-10), RankAmbiguityError);
}

TEST_CASE("almost diagonalization: envelope dominates the gabor matrix") {
  Group z12({12});
  std::mt19937_64 rng(89);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z12), 1.0);
  for (int t = 0; t < 10; ++t) {
    Symbol sigma = random_decaying_symbol(z12, 0.7, rng);
    GaborMatrix m = gabor_matrix(sigma, sys);
    Envelope h = almost_diag_envelope(sigma, sys, v);
    CHECK(domination_defect(m, h) <= 1e-10);
    CHECK(std::isfinite(h.weighted_mass));
  }
}

TEST_CASE("envelope of the identity in an orthonormal system is delta-like") {
  Group z12({12});
  GaborSystem onb = orthonormal_basis_system(z12, {3});
  Weight v = Weight::one(phase_space(z12));
  GaborMatrix m = gabor_matrix(identity_symbol(z12), onb);
  // the gabor matrix itself is the identity; its cv envelope is a delta
  std::vector<double> env = cv_envelope(m.entries, onb.lattice().index_group());
  CHECK(std::abs(env[0] - 1.0) < 1e-12);
  for (std::size_t k = 1; k < env.size(); ++k) CHECK(env[k] < 1e-12);
}

TEST_CASE("continuous envelope mass equals the sjostrand norm") {
  Group z8({8});
  std::mt19937_64 rng(90);
  GaborSystem sys = tight_system(z8, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z8), 1.0);
  Symbol sigma = random_decaying_symbol(z8, 0.5, rng);
  Envelope cont = continuous_envelope(sigma, sys.window(), v);
  double nrm = sjostrand_norm(sigma, rihaczek(sys.window(), sys.window()), v);
  CHECK(std::abs(cont.weighted_mass - nrm) < 1e-12);
}

TEST_CASE("reverse envelope from the certificate is finite and dominates h") {
  Group z12({12});
  std::mt19937_64 rng(91);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z12), 1.0);
  Weight vl = v.restrict_to(sys.lattice());
  Symbol sigma = random_decaying_symbol(z12, 0.7, rng);
  Envelope h = almost_diag_envelope(sigma, sys, v);
  std::vector<double> alpha = window_autocorrelation(sys);
  Envelope rev = reverse_envelope(h, alpha, vl);
  CHECK(std::isfinite(rev.weighted_mass));
  CHECK(rev.weighted_mass >= 0.0);
  // alpha(0) >= |<g,g>| = 1 for a bound-1 tight normalized window, so the
  // convolution cannot shrink the certificate mass
  CHECK(rev.weighted_mass >= h.weighted_mass * 0.99);
}

TEST_CASE("algebra homomorphism on the coefficient space") {
  Group z12({12});
  std::mt19937_64 rng(92);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Symbol sigma = random_decaying_symbol(z12, 0.4, rng);
  Symbol tau = random_decaying_symbol(z12, 0.4, rng);
  GaborMatrix ms = gabor_matrix(sigma, sys);
  GaborMatrix mt = gabor_matrix(tau, sys);
  GaborMatrix mc = gabor_matrix(compose(sigma, tau), sys);
  const Mat& w = sys.shift_matrix();
  Mat p = w.adjoint() * w;
  Mat lhs = mc.entries * p;
  Mat rhs = ms.entries * mt.entries * p;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  // with a tight bound-1 frame the identity even holds without the projector
  CHECK((mc.entries - ms.entries * mt.entries).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("wiener experiment on the identity symbol") {
  Group z12({12});
  std::mt19937_64 rng(93);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z12), 1.0);
  WienerReport r = wiener_experiment(identity_symbol(z12), sys, v);
  CHECK(r.inverse_residual < 1e-11);
  CHECK(r.pinv_residual < 1e-9);
  CHECK(std::abs(r.sigma_sjostrand - r.tau_sjostrand) < 1e-10);
  CHECK(std::abs(r.sigma_cv - r.tau_cv) < 1e-10);
}

TEST_CASE("wiener experiment inverts 2I + T_a with geometric envelope decay") {
  Group z12({12});
  GaborSystem raw(gaussian_like(z12), Lattice(phase_space(z12), {2, 2}));
  GaborSystem sys(raw.tight_window(), raw.lattice());
  Weight v = Weight::polynomial(phase_space(z12), 1.0);

  PhaseFunction p(z12, PhaseDomain::time_freq);
  p.data() = 2.0 * identity_symbol(z12).data().data() + shift_symbol(z12, 1, 0).data().data();
  Symbol sigma(std::move(p));
  WienerReport r = wiener_experiment(sigma, sys, v);
  CHECK(r.inverse_residual < 1e-10);
  CHECK(r.pinv_residual < 1e-8);
  CHECK(r.mp_residual < 1e-8);

  // tau is the Neumann series of (2I + T_1)^{-1} = sum_k c_k T_k: its dense
  // matrix is circulant, so the operator-side envelope over Z12 is exactly
  // |c_k|, which decays like 2^{-d(k)} up to wrap-around.
  Mat a = discrete_case_matrix(r.tau);
  std::vector<double> env = cv_envelope(a, z12);
  CHECK(std::abs(env[0] - 0.5) < 1e-3);  // c_0 ~ 1/2 up to 2^{-12} wrap
  for (std::size_t k = 0; k < env.size(); ++k) {
    CHECK(env[k] <= env[0] * std::pow(0.51, z12.metric(k)) + 1e-12);
  }

  // the gabor-side envelope of a localized window decays away from the
  // diagonal as well: compare the worst far entry to the peak
  const Group& q = sys.lattice().index_group();
  double peak = 0.0, far = 0.0;
  for (std::size_t k = 0; k < r.tau_envelope.size(); ++k) {
    if (q.metric(k) == 0) peak = std::max(peak, r.tau_envelope[k]);
    if (q.metric(k) >= 4) far = std::max(far, r.tau_envelope[k]);
  }
  CHECK(far < 0.5 * peak);
}

TEST_CASE("wiener experiment on random well-conditioned symbols") {
  Group z12({12});
  std::mt19937_64 rng(95);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z12), 1.0);
  for (int t = 0; t < 3; ++t) {
    Symbol sigma = well_conditioned_symbol(z12, 0.6, 0.5, rng);
    WienerReport r = wiener_experiment(sigma, sys, v);
    CHECK(r.inverse_residual < 1e-10);
    CHECK(r.pinv_residual < 1e-8);
    CHECK(r.mp_residual < 1e-8);
    CHECK(std::isfinite(r.sigma_sjostrand));
    CHECK(std::isfinite(r.tau_sjostrand));
  }
}

TEST_CASE("wiener experiment rejects singular operators and loose systems") {
  Group z12({12});
  std::mt19937_64 rng(96);
  GaborSystem sys = tight_system(z12, {2, 2}, rng);
  Weight v = Weight::polynomial(phase_space(z12), 1.0);
  Symbol zero(PhaseFunction(z12, PhaseDomain::time_freq));
  CHECK_THROWS_AS(wiener_experiment(zero, sys, v), std::invalid_argument);

  Signal g = oracle::random_signal(z12, rng);
  GaborSystem loose(g, Lattice(phase_space(z12), {2, 2}));
  CHECK_THROWS_AS(wiener_experiment(identity_symbol(z12), loose, v),
                  std::invalid_argument);
}

TEST_CASE("single-factor matrices and the exact norm identities") {
  std::mt19937_64 rng(97);
  for (int n : {8, 16}) {
    Group g({n});
    Weight v = Weight::polynomial(g, 1.0);
    for (int t = 0; t < 5; ++t) {
      Symbol sigma = random_decaying_symbol(g, 0.6, rng);
      Mat k = kn_matrix(sigma).mat;

      Mat a = discrete_case_matrix(sigma);
      CHECK((a - k).cwiseAbs().maxCoeff() < 1e-11);
      CHECK(std::abs(cv_norm(a, g, v) -
                     sjostrand_norm(sigma, delta_tensor_one(g), position_weight(v))) <
            1e-12);

      Mat b = periodic_case_matrix(sigma);
      // b acts on Fourier coefficients: b = F k F^{-1}
      Mat f(n, n), finv(n, n);
      for (std::size_t xi = 0; xi < g.order(); ++xi) {
        for (std::size_t x = 0; x < g.order(); ++x) {
          f(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(x)) =
              std::conj(oracle::pairing(g, xi, x));
          finv(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(xi)) =
              oracle::pairing(g, xi, x) / static_cast<double>(n);
        }
      }
      CHECK((b - f * k * finv).cwiseAbs().maxCoeff() < 1e-11);
      CHECK(std::abs(cv_norm(b, g, v) -
                     sjostrand_norm(sigma, one_tensor_delta(g), frequency_weight(v))) <
            1e-12);
    }
  }

  // identity symbol: both matrices are the identity, both norms are 1
  Group z8({8});
  Weight v = Weight::polynomial(z8, 2.0);
  Symbol one = identity_symbol(z8);
  CHECK((discrete_case_matrix(one) - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(cv_norm(discrete_case_matrix(one), z8, v) - 1.0) < 1e-12);
  CHECK(std::abs(sjostrand_norm(one, delta_tensor_one(z8), position_weight(v)) - 1.0) <
        1e-12);

  Group z46({4, 6});
  std::mt19937_64 rng2(98);
  Symbol multi = random_decaying_symbol(z46, 0.5, rng2);
  CHECK_THROWS_AS(discrete_case_matrix(multi), std::invalid_argument);
  CHECK_THROWS_AS(periodic_case_matrix(multi), std::invalid_argument);
}

TEST_CASE("sjostrand norms under window change are equivalent") {
  Group z8({8});
  std::mt19937_64 rng(99);
  Signal g = gaussian_like(z8);
  PhaseFunction psi1 = rihaczek(g, g);
  PhaseFunction psi2 = delta_tensor_one(z8);
  Weight v = Weight::polynomial(phase_space(z8), 1.0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int t = 0; t < 10; ++t) {
    Symbol sigma = random_decaying_symbol(z8, 0.5, rng);
    double a = sjostrand_norm(sigma, psi1, v);
    double b = sjostrand_norm(sigma, psi2, v);
    REQUIRE(b > 0.0);
    lo = std::min(lo, a / b);
    hi = std::max(hi, a / b);
  }
  CHECK(lo > 0.0);
  CHECK(std::isfinite(hi));
  MESSAGE("window-change equivalence constants on Z8: [", lo, ", ", hi, "]");
}
