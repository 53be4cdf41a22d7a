#pragma once

#include "tfcalc/psido.hpp"
#include "tfcalc/signal.hpp"

namespace tfcalc {

struct FrameDiagnostics {
  double lower = 0.0;       // A = smallest eigenvalue of S
  double upper = 0.0;       // B = largest eigenvalue of S
  bool is_frame = false;    // A > 1e-10 * B
  bool is_tight = false;    // B - A <= 1e-10 * B
  double redundancy = 0.0;  // |Lambda| / |G|
};

/// Gabor system { pi(m) g : m in Lambda } over a phase-space lattice.  The
/// shifted windows are materialized once as the columns of a |G| x |Lambda|
/// matrix; everything else is dense algebra on top of it.
class GaborSystem {
public:
  GaborSystem(Signal window, Lattice lattice);

  const Signal& window() const { return window_; }
  const Lattice& lattice() const { return lattice_; }
  const Group& group() const { return window_.group(); }

  /// Column m is pi(m) g in lattice enumeration order.
  const Mat& shift_matrix() const { return shifts_; }

  /// c(m) = <f, pi(m) g>.
  Vec analysis(const Signal& f) const;
  /// sum_m c(m) pi(m) g; the adjoint of analysis.
  Signal synthesis(const Vec& c) const;

  /// S = C* C, Hermitian positive semidefinite.
  Mat frame_operator() const;
  FrameDiagnostics frame_bounds() const;

  /// S^{-1/2} g, rescaled so the resulting frame bound is exactly 1.
  /// Throws if the system is not a frame.
  Signal tight_window() const;
  /// S^{-1} g.  Throws if the system is not a frame.
  Signal dual_window() const;

  static constexpr double kFrameTol = 1e-10;   // is_frame: A > tol * B
  static constexpr double kEigenFloor = 1e-12; // eigenvalues below floor*max rejected

private:
  Signal window_;
  Lattice lattice_;
  Mat shifts_;
};

/// Orthonormal-basis configuration from a subgroup indicator: window
/// chi_K / sqrt(|K|) with K = prod steps_j Z_{N_j}, position lattice steps
/// N_j / steps_j and frequency lattice steps steps_j.  Requires
/// gcd(steps_j, N_j / steps_j) = 1 per coordinate so the translates and
/// modulations tile without overlap.
GaborSystem orthonormal_basis_system(const Group& g, const std::vector<int>& subgroup_steps);

}  // namespace tfcalc
