#pragma once

#include <stdexcept>

#include "tfcalc/gabor.hpp"
#include "tfcalc/psido.hpp"

namespace tfcalc {

/// Channel matrix of K_sigma against a Gabor system:
/// M(sigma)[m,n] = <K_sigma pi(n) g, pi(m) g>, m,n in lattice order.
struct GaborMatrix {
  Lattice lattice;
  Mat entries;
};

GaborMatrix gabor_matrix(const Symbol& sigma, const GaborSystem& sys);

/// sum over the dual phase space of sup_x |V_Psi sigma(x, w)| v(J^{-1} w),
/// with the (1/|G|) phase-space measure; v is a weight on G x G^.
double sjostrand_norm(const Symbol& sigma, const PhaseFunction& window,
                      const Weight& v);

/// The two single-factor analysis windows: delta_0 (x) 1 and 1 (x) delta_0.
PhaseFunction delta_tensor_one(const Group& g);
PhaseFunction one_tensor_delta(const Group& g);

/// Lift a weight on G (or on G^) to the phase space, depending only on the
/// position (resp. frequency) coordinate.
Weight position_weight(const Weight& v);
Weight frequency_weight(const Weight& v);

/// Diagonal-wise sup envelope d(k) = max_i |A[i, i-k]| over the index group.
std::vector<double> cv_envelope(const Mat& a, const Group& index_group);
/// ||A||_{C_v} = sum_k d(k) v(k).
double cv_norm(const Mat& a, const Group& index_group, const Weight& v);

/// Raised when a pseudoinverse rank decision sits inside the threshold gap.
struct RankAmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix over a finite abelian index group carrying its off-diagonal
/// envelope and C_v norm.
class CvMatrix {
public:
  CvMatrix(Group index_group, Mat entries, Weight v);

  const Group& index_group() const { return index_group_; }
  const Mat& entries() const { return entries_; }
  const Weight& weight() const { return v_; }
  const std::vector<double>& envelope() const { return envelope_; }
  double norm() const { return norm_; }

private:
  Group index_group_;
  Mat entries_;
  Weight v_;
  std::vector<double> envelope_;
  double norm_;
};

/// Dense inverse with the C_v norm attached; requires the smallest singular
/// value to clear rel_tol * largest.
CvMatrix cv_inverse(const CvMatrix& a, double rel_tol = 1e-10);

/// Moore-Penrose pseudoinverse through an SVD with relative threshold
/// rel_tol; aborts with RankAmbiguityError when the singular values around
/// the cut are separated by less than one order of magnitude.
CvMatrix cv_pseudoinverse(const CvMatrix& a, double rel_tol = 1e-10);
Mat pseudoinverse(const Mat& a, double rel_tol = 1e-10);

/// Almost-diagonalization certificate: h dominates a Gabor matrix entrywise
/// through |M[m,n]| <= h(m-n).
struct Envelope {
  Group index_group;       // lattice index group, or the full phase space
  std::vector<double> h;
  double weighted_mass;    // sum h v (lattice) or (1/|G|) sum h v (phase space)
};

/// Lattice envelope h(k) = max over the fundamental domain U of H(u - k),
/// where H(x) = sup_z |V_{R(g,g)} sigma(z, J x)|; v is a weight on G x G^.
Envelope almost_diag_envelope(const Symbol& sigma, const GaborSystem& sys,
                              const Weight& v);

/// Full-resolution envelope H over the phase space; its weighted mass equals
/// the Sjostrand norm of sigma with window R(g,g) exactly.
Envelope continuous_envelope(const Symbol& sigma, const Signal& g, const Weight& v);

/// max over entries of |M[m,n]| - h(m-n), clipped at 0; zero certifies
/// almost diagonalization.
double domination_defect(const GaborMatrix& m, const Envelope& h);

/// alpha(n) = sup_{u in U} |V_g g(n - u)| over the lattice index group.
std::vector<double> window_autocorrelation(const GaborSystem& sys);

/// Plain group convolution (a * b)(k) = sum_j a(j) b(k - j).
std::vector<double> group_convolve(const Group& g, const std::vector<double>& a,
                                   const std::vector<double>& b);

/// h * alpha * alpha~ together with its weighted mass: the reconstruction
/// bound that recovers a phase-space envelope from the lattice certificate.
Envelope reverse_envelope(const Envelope& h, const std::vector<double>& alpha,
                          const Weight& v_lattice);

struct WienerReport {
  Symbol tau;
  double condition;             // 2-norm condition number of kn_matrix(sigma)
  double inverse_residual;      // max |K_tau K_sigma - I|
  double pinv_residual;         // max |M(tau) - pinv(M(sigma))|
  double mp_residual;           // worst of the four Moore-Penrose identities
  double sigma_sjostrand, tau_sjostrand;
  double sigma_cv, tau_cv;
  std::vector<double> sigma_envelope, tau_envelope;  // over the lattice group
};

/// Inversion experiment: tau = symbol of kn_matrix(sigma)^{-1}; checks
/// K_tau K_sigma = I and M(tau) = M(sigma)^+, and reports both Sjostrand and
/// C_v norms with envelope decay curves.  Requires a tight bound-1 system
/// and an invertible operator.
WienerReport wiener_experiment(const Symbol& sigma, const GaborSystem& sys,
                               const Weight& v, double rel_tol = 1e-10);

/// Single cyclic factor: the matrix realizing K_sigma via the partial Fourier
/// transform of the symbol in its second slot.  Equals kn_matrix entrywise,
/// and its C_v norm equals the Sjostrand norm with window delta (x) 1 and the
/// position-lifted weight.
Mat discrete_case_matrix(const Symbol& sigma);

/// Single cyclic factor: the matrix of F K_sigma F^{-1} acting on Fourier
/// coefficients; its C_v norm equals the Sjostrand norm with window
/// 1 (x) delta and the frequency-lifted weight.
Mat periodic_case_matrix(const Symbol& sigma);

}  // namespace tfcalc
