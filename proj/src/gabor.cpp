#include "tfcalc/gabor.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tfcalc/transforms.hpp"

namespace tfcalc {

GaborSystem::GaborSystem(Signal window, Lattice lattice)
    : window_(std::move(window)), lattice_(std::move(lattice)) {
  require_same_group(lattice_.ambient(), phase_space(window_.group()),
                     "gabor system lattice");
  if (window_.side() != Side::group)
    throw std::invalid_argument("gabor system: window must be a group-side signal");
  const std::size_t n = window_.group().order();
  shifts_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(lattice_.size()));
  for (std::size_t k = 0; k < lattice_.size(); ++k) {
    std::size_t m = lattice_.point(k);
    Signal shifted = tf_shift(window_, m / n, m % n);
    shifts_.col(static_cast<Eigen::Index>(k)) = shifted.data();
  }
}

Vec GaborSystem::analysis(const Signal& f) const {
  require_same_group(f.group(), group(), "gabor analysis");
  return shifts_.adjoint() * f.data();
}

Signal GaborSystem::synthesis(const Vec& c) const {
  if (c.size() != static_cast<Eigen::Index>(lattice_.size()))
    throw std::invalid_argument("gabor synthesis: coefficient count mismatch");
  return Signal(group(), Side::group, shifts_ * c);
}

Mat GaborSystem::frame_operator() const { return shifts_ * shifts_.adjoint(); }

FrameDiagnostics GaborSystem::frame_bounds() const {
  Eigen::SelfAdjointEigenSolver<Mat> eig(frame_operator(), Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  FrameDiagnostics d;
  d.lower = std::max(ev.minCoeff(), 0.0);
  d.upper = std::max(ev.maxCoeff(), 0.0);
  d.is_frame = d.lower > kFrameTol * d.upper && d.upper > 0.0;
  d.is_tight = d.is_frame && (d.upper - d.lower) <= kFrameTol * d.upper;
  d.redundancy = static_cast<double>(lattice_.size()) / static_cast<double>(group().order());
  return d;
}

namespace {
// S^p g through the Hermitian eigendecomposition, with the frame check.
Signal spectral_power_apply(const GaborSystem& sys, double power) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(sys.frame_operator());
  const auto& ev = eig.eigenvalues();
  double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= GaborSystem::kFrameTol * top)
    throw std::invalid_argument("gabor system: not a frame (lower bound at zero)");
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < GaborSystem::kEigenFloor * top)
      throw std::invalid_argument("gabor system: eigenvalue below floor, not a frame");
  }
  Vec scaled = eig.eigenvectors().adjoint() * sys.window().data();
  for (Eigen::Index i = 0; i < ev.size(); ++i) scaled[i] *= std::pow(ev[i], power);
  return Signal(sys.group(), Side::group, eig.eigenvectors() * scaled);
}
}  // namespace

Signal GaborSystem::tight_window() const {
  Signal gamma = spectral_power_apply(*this, -0.5);
  GaborSystem tight(gamma, lattice_);
  FrameDiagnostics d = tight.frame_bounds();
  if (!d.is_frame)
    throw std::invalid_argument("gabor system: tight window construction failed");
  gamma.data() /= std::sqrt(d.lower);
  return gamma;
}

Signal GaborSystem::dual_window() const { return spectral_power_apply(*this, -1.0); }

GaborSystem orthonormal_basis_system(const Group& g,
                                     const std::vector<int>& subgroup_steps) {
  if (subgroup_steps.size() != g.dim())
    throw std::invalid_argument("orthonormal basis: step count mismatch");
  std::vector<int> pos_steps(g.dim()), freq_steps(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    int n = g.moduli()[j], a = subgroup_steps[j];
    if (a < 1 || n % a != 0)
      throw std::invalid_argument("orthonormal basis: steps must divide the moduli");
    if (std::gcd(a, n / a) != 1)
      throw std::invalid_argument(
          "orthonormal basis: needs gcd(step, modulus/step) = 1 per coordinate");
    pos_steps[j] = n / a;
    freq_steps[j] = a;
  }
  Lattice k(g, subgroup_steps);
  Signal window = subgroup_indicator(k);
  window.data() /= std::sqrt(static_cast<double>(k.size()));
  std::vector<int> steps = pos_steps;
  steps.insert(steps.end(), freq_steps.begin(), freq_steps.end());
  return GaborSystem(window, Lattice(phase_space(g), steps));
}

}  // namespace tfcalc
