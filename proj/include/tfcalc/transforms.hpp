#pragma once

#include "tfcalc/signal.hpp"

namespace tfcalc {

/// f^(xi) = sum_x f(x) conj<xi,x> on the group side; the dual side uses the
/// (1/|G|) measure, so inverse_fourier(fourier(f)) == f and Plancherel holds
/// exactly: ||f||_2 computed with either side's measure agrees.
Signal fourier(const Signal& f);
Signal inverse_fourier(const Signal& f);

Signal translate(const Signal& f, std::size_t y);
Signal modulate(const Signal& f, std::size_t xi);
/// pi(x, xi) = M_xi T_x.
Signal tf_shift(const Signal& f, std::size_t pos, std::size_t freq);

/// V_g f(x, xi) = <f, M_xi T_x g>.  A group-side input lands on G x G^; a
/// dual-side input lands on G^ x G (the frequency variable then runs over G).
PhaseFunction stft(const Signal& f, const Signal& g);

/// R(f, g)(x, xi) = f(x) conj(g^(xi)) conj<xi,x>.
PhaseFunction rihaczek(const Signal& f, const Signal& g);

/// Fourier transform on the phase-space group, G x G^ -> G^ x G, and back.
PhaseFunction phase_fourier(const PhaseFunction& f);
PhaseFunction phase_inverse_fourier(const PhaseFunction& f);

/// Full phase-space STFT of F against the window Phi (same domain): row x,
/// column w layout with x over the domain of F and w over its dual.
Mat phase_stft(const PhaseFunction& f, const PhaseFunction& window);
cd phase_stft_point(const PhaseFunction& f, const PhaseFunction& window,
                    std::size_t x, std::size_t w);

/// STFT of a Rihaczek distribution: direct evaluation of
/// V_{R(phi,psi)}(R(g,f)) at ((x,xi),(omega,u)) and its closed form
/// conj<xi,u> V_phi g(x, xi+omega) conj(V_psi f(x+u, xi)); phi pairs with g.
cd stft_of_rihaczek_direct(const Signal& f, const Signal& g, const Signal& phi,
                           const Signal& psi, std::size_t x, std::size_t w);
cd stft_of_rihaczek_closed(const Signal& f, const Signal& g, const Signal& phi,
                           const Signal& psi, std::size_t x, std::size_t w);

// Identity residuals shared by the unit tests, the acceptance suite, and the
// `identities` experiment.  Each returns the max pointwise deviation of the
// two sides; the exact normalizations are fixed by the measure convention
// stated on fourier().

double plancherel_residual(const Signal& f);
/// T_x M_xi = conj<xi,x> M_xi T_x applied to f.
double commutation_residual(const Signal& f, std::size_t x, std::size_t xi);
/// V_g f(u, omega) = V_{g^} f^(omega, -u) conj<omega,u>.
double stft_fourier_residual(const Signal& f, const Signal& g);
/// Covariance of the STFT under time-frequency shifts of both arguments.
double stft_covariance_residual(const Signal& f, const Signal& g,
                                std::size_t x, std::size_t xi,
                                std::size_t y, std::size_t eta);
/// (V_{g1}f1 conj(V_{g2}f2))^ (xi, x) = (V_{f2}f1 conj(V_{g2}g1))(-x, xi).
double stft_product_fourier_check(const Signal& f1, const Signal& f2,
                                  const Signal& g1, const Signal& g2);
/// R(pi(x)g, pi(y)f) = <eta, x-y> M_{J(y-x)} T_{(x,eta)} R(g, f), with
/// x = (x, xi) the shift on g and y = (y, eta) the shift on f.
double rihaczek_covariance_residual(const Signal& f, const Signal& g,
                                    std::size_t shift_g, std::size_t shift_f);
/// Moyal: (1/|G|) sum |V_g f|^2 = ||f||^2 ||g||^2.
double moyal_residual(const Signal& f, const Signal& g);

}  // namespace tfcalc
