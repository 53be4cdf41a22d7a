#pragma once

#include <cstdint>
#include <random>

#include "tfcalc/signal.hpp"
#include "tfcalc/transforms.hpp"

namespace tfcalc {

/// Kohn-Nirenberg symbol sigma(x, xi) on G x G^.
class Symbol {
public:
  explicit Symbol(PhaseFunction data);
  const PhaseFunction& data() const { return data_; }
  PhaseFunction& data() { return data_; }
  const Group& group() const { return data_.base(); }

private:
  PhaseFunction data_;
};

/// Coefficients expanding K_sigma over time-frequency shifts; lives on G^ x G
/// and is the phase-space Fourier transform of the symbol.
class SpreadingFunction {
public:
  explicit SpreadingFunction(PhaseFunction data);
  const PhaseFunction& data() const { return data_; }
  PhaseFunction& data() { return data_; }
  const Group& group() const { return data_.base(); }

private:
  PhaseFunction data_;
};

/// Dense |G| x |G| realization of an operator on signals.
struct OperatorMatrix {
  Group group;
  Mat mat;
};

Symbol identity_symbol(const Group& g);
/// Symbol of pi(pos, freq) = M_freq T_pos:  sigma(x, xi) = <freq,x> conj<xi,pos>.
Symbol shift_symbol(const Group& g, std::size_t pos, std::size_t freq);

/// (K_sigma f)(x) = (1/|G|) sum_xi sigma(x,xi) f^(xi) <xi,x>, matrix-free.
Signal kn_apply(const Symbol& sigma, const Signal& f);

/// Dense matrix K(x,y) = (1/|G|) sum_xi sigma(x,xi) <xi,x-y> and its inverse
/// bookkeeping sigma(x,xi) = sum_y K(x,y) conj<xi,x-y>; the two are mutually
/// inverse on finite groups.
OperatorMatrix kn_matrix(const Symbol& sigma);
Symbol kn_symbol_from_matrix(const OperatorMatrix& k);

SpreadingFunction spreading(const Symbol& sigma);
Symbol symbol_from_spreading(const SpreadingFunction& f);

/// Unit of twisted convolution: |G| * delta at (0,0).
SpreadingFunction spreading_identity(const Group& g);

/// (F nat G)(xi,u) = (1/|G|) sum_{zeta,y} F(zeta,y) G(xi-zeta, u-y) <xi-zeta,y>.
SpreadingFunction twisted(const SpreadingFunction& a, const SpreadingFunction& b);

/// Symbol of K_sigma K_tau, via the twisted product of spreading functions.
Symbol compose(const Symbol& sigma, const Symbol& tau);

/// Mixed-norm modulation space norm ||V_window f . m||_{L^{p,q}} with the
/// inner exponent over positions (counting measure) and the outer over
/// frequencies ((1/|G|) counting); p or q = infinity means the sup.
double modulation_norm(const Signal& f, const Signal& window, double p, double q,
                       const Weight& m);

struct ModulationBound {
  double ratio;        // reported operator ratio
  double probe_ratio;  // max over the declared probe set only
  std::size_t probe_count;
};

/// Largest ratio ||K_sigma f|| / ||f|| in the M^{p,q}_m norm over a probe set
/// of all standard basis vectors plus seeded random signals.  For p = q = 2
/// with trivial weight the probe maximum is refined by power iteration, so
/// the reported ratio matches the spectral norm of the operator matrix.
ModulationBound kn_modulation_bound(const Symbol& sigma, const Signal& window,
                                    double p, double q, const Weight& m,
                                    std::uint64_t seed = 7, int random_probes = 100);

Signal random_signal(const Group& g, std::mt19937_64& rng, Side side = Side::group);

/// Random symbol whose spreading function carries the envelope
/// exp(-decay * d(omega,u)); uniform phases, seeded.
Symbol random_decaying_symbol(const Group& g, double decay, std::mt19937_64& rng);

/// Identity plus a contraction: kn_matrix of the result is well conditioned.
Symbol well_conditioned_symbol(const Group& g, double decay, double contraction,
                               std::mt19937_64& rng);

}  // namespace tfcalc
