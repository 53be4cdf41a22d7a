#include "tfcalc/sjostrand.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

#include "tfcalc/kernels.hpp"
#include "tfcalc/transforms.hpp"

namespace tfcalc {

namespace {
// Compensated summation: the norm sums here are compared across independent
// routes at 1e-12, so plain left-to-right accumulation is too sloppy.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};
}  // namespace

GaborMatrix gabor_matrix(const Symbol& sigma, const GaborSystem& sys) {
  require_same_group(sigma.group(), sys.group(), "gabor matrix");
  Mat k = kn_matrix(sigma).mat;
  const Mat& w = sys.shift_matrix();
  return {sys.lattice(), w.adjoint() * (k * w)};
}

namespace {
// sup_x |V_Psi sigma(x, .)| over the dual phase space.
std::vector<double> symbol_colsup(const Symbol& sigma, const PhaseFunction& window) {
  if (window.domain() != PhaseDomain::time_freq)
    throw std::invalid_argument("sjostrand norm: window must live on G x G^");
  if (window.data().isZero(0.0))
    throw std::invalid_argument("sjostrand norm: zero window");
  require_same_group(sigma.data().space(), window.space(), "sjostrand norm");
  const Group& space = sigma.data().space();
  std::vector<double> sup(space.order());
  kernels::windowed_transform_colsup(space, sigma.data().data().data(),
                                     window.data().data(),
                                     sigma.data().measure_weight(), sup.data());
  return sup;
}

void require_phase_weight(const Weight& v, const Group& base, const char* what) {
  require_same_group(v.group(), phase_space(base), what);
}
}  // namespace

double sjostrand_norm(const Symbol& sigma, const PhaseFunction& window,
                      const Weight& v) {
  require_phase_weight(v, sigma.group(), "sjostrand norm weight");
  std::vector<double> sup = symbol_colsup(sigma, window);
  const Group& base = sigma.group();
  KahanSum acc;
  for (std::size_t w = 0; w < sup.size(); ++w) {
    acc.add(sup[w] * v(j_inv(base, w)));
  }
  return acc.value() / static_cast<double>(base.order());
}

PhaseFunction delta_tensor_one(const Group& g) {
  PhaseFunction p(g, PhaseDomain::time_freq);
  for (std::size_t xi = 0; xi < g.order(); ++xi) p[p.index(0, xi)] = cd(1.0, 0.0);
  return p;
}

PhaseFunction one_tensor_delta(const Group& g) {
  PhaseFunction p(g, PhaseDomain::time_freq);
  for (std::size_t x = 0; x < g.order(); ++x) p[p.index(x, 0)] = cd(1.0, 0.0);
  return p;
}

Weight position_weight(const Weight& v) {
  const Group& g = v.group();
  Group space = phase_space(g);
  std::vector<double> vals(space.order());
  for (std::size_t p = 0; p < space.order(); ++p) vals[p] = v(p / g.order());
  return Weight(space, std::move(vals), v.kind(), v.moderate_constant());
}

Weight frequency_weight(const Weight& v) {
  const Group& g = v.group();
  Group space = phase_space(g);
  std::vector<double> vals(space.order());
  for (std::size_t p = 0; p < space.order(); ++p) vals[p] = v(p % g.order());
  return Weight(space, std::move(vals), v.kind(), v.moderate_constant());
}

std::vector<double> cv_envelope(const Mat& a, const Group& index_group) {
  const std::size_t n = index_group.order();
  if (a.rows() != static_cast<Eigen::Index>(n) || a.cols() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("cv envelope: matrix must be square over the index group");
  std::vector<double> d(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      best = std::max(best, std::abs(a(static_cast<Eigen::Index>(i),
                                       static_cast<Eigen::Index>(index_group.sub(i, k)))));
    }
    d[k] = best;
  }
  return d;
}

double cv_norm(const Mat& a, const Group& index_group, const Weight& v) {
  require_same_group(index_group, v.group(), "cv norm");
  std::vector<double> d = cv_envelope(a, index_group);
  KahanSum acc;
  for (std::size_t k = 0; k < d.size(); ++k) acc.add(d[k] * v(k));
  return acc.value();
}

CvMatrix::CvMatrix(Group index_group, Mat entries, Weight v)
    : index_group_(std::move(index_group)), entries_(std::move(entries)), v_(std::move(v)) {
  require_same_group(index_group_, v_.group(), "cv matrix");
  envelope_ = cv_envelope(entries_, index_group_);
  KahanSum acc;
  for (std::size_t k = 0; k < envelope_.size(); ++k) acc.add(envelope_[k] * v_(k));
  norm_ = acc.value();
}

CvMatrix cv_inverse(const CvMatrix& a, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(a.entries());
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= rel_tol * s(0))
    throw std::invalid_argument("cv inverse: matrix is singular at the declared tolerance");
  Mat inv = a.entries().partialPivLu().inverse();
  return CvMatrix(a.index_group(), std::move(inv), a.weight());
}

Mat pseudoinverse(const Mat& a, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Mat::Zero(a.cols(), a.rows());
  const double cut = rel_tol * s(0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  if (rank < s.size() && rank > 0) {
    double kept = s(rank - 1), dropped = s(rank);
    if (dropped > 0.0 && kept / dropped < 10.0)
      throw RankAmbiguityError(
          "pseudoinverse: singular values straddle the threshold within one order "
          "of magnitude; rank decision is ambiguous");
  }
  Vec inv = Vec::Zero(s.size());
  for (Eigen::Index i = 0; i < rank; ++i) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CvMatrix cv_pseudoinverse(const CvMatrix& a, double rel_tol) {
  return CvMatrix(a.index_group(), pseudoinverse(a.entries(), rel_tol), a.weight());
}

namespace {
std::vector<double> phase_envelope_values(const Symbol& sigma, const Signal& g) {
  PhaseFunction psi = rihaczek(g, g);
  std::vector<double> sup = symbol_colsup(sigma, psi);
  const Group& base = sigma.group();
  const std::size_t m = sup.size();
  std::vector<double> h(m);
  for (std::size_t x = 0; x < m; ++x) h[x] = sup[j_map(base, x)];
  return h;
}
}  // namespace

Envelope almost_diag_envelope(const Symbol& sigma, const GaborSystem& sys,
                              const Weight& v) {
  require_phase_weight(v, sigma.group(), "almost diag weight");
  std::vector<double> big = phase_envelope_values(sigma, sys.window());
  const Lattice& lat = sys.lattice();
  const Group& space = lat.ambient();
  Weight vl = v.restrict_to(lat);
  std::vector<double> h(lat.size(), 0.0);
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const std::size_t point = lat.point(k);
    for (std::size_t u : lat.fundamental_domain()) {
      h[k] = std::max(h[k], big[space.sub(u, point)]);
    }
  }
  KahanSum mass;
  for (std::size_t k = 0; k < h.size(); ++k) mass.add(h[k] * vl(k));
  return {lat.index_group(), std::move(h), mass.value()};
}

Envelope continuous_envelope(const Symbol& sigma, const Signal& g, const Weight& v) {
  require_phase_weight(v, sigma.group(), "continuous envelope weight");
  std::vector<double> h = phase_envelope_values(sigma, g);
  KahanSum mass;
  for (std::size_t x = 0; x < h.size(); ++x) mass.add(h[x] * v(x));
  return {sigma.data().space(), std::move(h),
          mass.value() / static_cast<double>(sigma.group().order())};
}

double domination_defect(const GaborMatrix& m, const Envelope& h) {
  const Lattice& lat = m.lattice;
  if (h.index_group != lat.index_group())
    throw std::invalid_argument("domination: envelope is not indexed by the lattice");
  double worst = 0.0;
  const Group& q = lat.index_group();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (std::size_t j = 0; j < lat.size(); ++j) {
      double entry = std::abs(m.entries(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j)));
      worst = std::max(worst, entry - h.h[q.sub(i, j)]);
    }
  }
  return std::max(worst, 0.0);
}

std::vector<double> window_autocorrelation(const GaborSystem& sys) {
  PhaseFunction vgg = stft(sys.window(), sys.window());
  const Lattice& lat = sys.lattice();
  const Group& space = lat.ambient();
  std::vector<double> alpha(lat.size(), 0.0);
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const std::size_t point = lat.point(k);
    for (std::size_t u : lat.fundamental_domain()) {
      alpha[k] = std::max(alpha[k], std::abs(vgg[space.sub(point, u)]));
    }
  }
  return alpha;
}

std::vector<double> group_convolve(const Group& g, const std::vector<double>& a,
                                   const std::vector<double>& b) {
  if (a.size() != g.order() || b.size() != g.order())
    throw std::invalid_argument("group convolution: length mismatch");
  std::vector<double> out(g.order(), 0.0);
  for (std::size_t k = 0; k < g.order(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.order(); ++j) acc += a[j] * b[g.sub(k, j)];
    out[k] = acc;
  }
  return out;
}

Envelope reverse_envelope(const Envelope& h, const std::vector<double>& alpha,
                          const Weight& v_lattice) {
  const Group& q = h.index_group;
  require_same_group(q, v_lattice.group(), "reverse envelope");
  std::vector<double> alpha_rev(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) alpha_rev[k] = alpha[q.neg(k)];
  std::vector<double> e = group_convolve(q, group_convolve(q, h.h, alpha), alpha_rev);
  double mass = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) mass += e[k] * v_lattice(k);
  return {q, std::move(e), mass};
}

WienerReport wiener_experiment(const Symbol& sigma, const GaborSystem& sys,
                               const Weight& v, double rel_tol) {
  require_phase_weight(v, sigma.group(), "wiener experiment weight");
  FrameDiagnostics d = sys.frame_bounds();
  if (!d.is_tight || std::abs(d.upper - 1.0) > 1e-8)
    throw std::invalid_argument("wiener experiment: needs a tight bound-1 system");

  const Group& g = sigma.group();
  Mat k = kn_matrix(sigma).mat;
  Eigen::JacobiSVD<Mat> svd(k);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= rel_tol * s(0))
    throw std::invalid_argument("wiener experiment: operator is singular");

  Mat kinv = k.partialPivLu().inverse();
  Symbol tau = kn_symbol_from_matrix({g, kinv});

  WienerReport r{tau, s(0) / (s(s.size() - 1)), 0, 0, 0, 0, 0, 0, 0, {}, {}};

  Mat ktau = kn_matrix(tau).mat;
  r.inverse_residual = (ktau * k - Mat::Identity(k.rows(), k.cols())).cwiseAbs().maxCoeff();

  GaborMatrix ms = gabor_matrix(sigma, sys);
  GaborMatrix mt = gabor_matrix(tau, sys);
  Mat pinv = pseudoinverse(ms.entries, rel_tol);
  r.pinv_residual = (mt.entries - pinv).cwiseAbs().maxCoeff();

  const Mat& a = ms.entries;
  const Mat& x = mt.entries;
  double mp = (a * x * a - a).cwiseAbs().maxCoeff();
  mp = std::max(mp, (x * a * x - x).cwiseAbs().maxCoeff());
  Mat ax = a * x, xa = x * a;
  mp = std::max(mp, (ax - ax.adjoint()).cwiseAbs().maxCoeff());
  mp = std::max(mp, (xa - xa.adjoint()).cwiseAbs().maxCoeff());
  r.mp_residual = mp;

  PhaseFunction psi = rihaczek(sys.window(), sys.window());
  r.sigma_sjostrand = sjostrand_norm(sigma, psi, v);
  r.tau_sjostrand = sjostrand_norm(tau, psi, v);

  Weight vl = v.restrict_to(sys.lattice());
  const Group& q = sys.lattice().index_group();
  r.sigma_cv = cv_norm(ms.entries, q, vl);
  r.tau_cv = cv_norm(mt.entries, q, vl);
  r.sigma_envelope = cv_envelope(ms.entries, q);
  r.tau_envelope = cv_envelope(mt.entries, q);
  return r;
}

Mat discrete_case_matrix(const Symbol& sigma) {
  const Group& g = sigma.group();
  if (g.dim() != 1)
    throw std::invalid_argument("discrete case: needs a single cyclic factor");
  const std::size_t n = g.order();
  // m(x, u) = (1/N) sum_xi sigma(x, xi) <xi, u>, then A[x,y] = m(x, x-y).
  Mat m(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t u = 0; u < n; ++u) {
      cd acc(0.0, 0.0);
      for (std::size_t xi = 0; xi < n; ++xi) {
        acc += sigma.data().at(x, xi) * g.character(xi, u);
      }
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(u)) =
          acc / static_cast<double>(n);
    }
  }
  Mat a(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(g.sub(x, y)));
    }
  }
  return a;
}

Mat periodic_case_matrix(const Symbol& sigma) {
  const Group& g = sigma.group();
  if (g.dim() != 1)
    throw std::invalid_argument("periodic case: needs a single cyclic factor");
  const std::size_t n = g.order();
  // F1 sigma(omega, xi) = sum_x sigma(x, xi) conj<omega, x>;
  // B[xi, omega] = (1/N) F1 sigma(xi - omega, omega) acts on Fourier coefficients.
  Mat f1(n, n);
  for (std::size_t om = 0; om < n; ++om) {
    for (std::size_t xi = 0; xi < n; ++xi) {
      cd acc(0.0, 0.0);
      for (std::size_t x = 0; x < n; ++x) {
        acc += sigma.data().at(x, xi) * std::conj(g.character(om, x));
      }
      f1(static_cast<Eigen::Index>(om), static_cast<Eigen::Index>(xi)) = acc;
    }
  }
  Mat b(n, n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    for (std::size_t om = 0; om < n; ++om) {
      b(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(om)) =
          f1(static_cast<Eigen::Index>(g.sub(xi, om)), static_cast<Eigen::Index>(om)) /
          static_cast<double>(n);
    }
  }
  return b;
}

}  // namespace tfcalc
