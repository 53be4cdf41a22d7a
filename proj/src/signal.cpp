#include "tfcalc/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfcalc {

Signal::Signal(Group g, Side side, Vec data)
    : group_(std::move(g)), side_(side), data_(std::move(data)) {
  if (static_cast<std::size_t>(data_.size()) != group_.order())
    throw std::invalid_argument("signal: data length must equal group order");
}

// <f,g> = weight * sum f conj(g); Eigen's dot() conjugates its first factor.
cd inner(const Signal& f, const Signal& g) {
  require_same_group(f.group(), g.group(), "inner product");
  if (f.side() != g.side())
    throw std::invalid_argument("inner product: signals live on different sides");
  return f.measure_weight() * g.data().dot(f.data());
}

double norm2(const Signal& f) {
  return std::sqrt(f.measure_weight() * f.data().squaredNorm());
}

double max_abs_diff(const Signal& f, const Signal& g) {
  return (f.data() - g.data()).cwiseAbs().maxCoeff();
}

Signal delta(const Group& g, std::size_t at, Side side) {
  Signal s(g, side);
  s[at] = cd(1.0, 0.0);
  return s;
}

Signal constant(const Group& g, cd value, Side side) {
  Signal s(g, side);
  s.data().setConstant(value);
  return s;
}

Signal subgroup_indicator(const Lattice& k) {
  Signal s(k.ambient(), Side::group);
  for (std::size_t p : k.points()) s[p] = cd(1.0, 0.0);
  return s;
}

Signal gaussian_like(const Group& g) {
  Signal s(g, Side::group);
  for (std::size_t a = 0; a < g.order(); ++a) {
    auto c = g.coords(a);
    double e = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      double dj = std::min(c[j], g.moduli()[j] - c[j]);
      e += std::numbers::pi * dj * dj / g.moduli()[j];
    }
    s[a] = cd(std::exp(-e), 0.0);
  }
  return s;
}

PhaseFunction::PhaseFunction(Group base, PhaseDomain dom)
    : base_(std::move(base)), space_(phase_space(base_)), dom_(dom) {
  data_ = Vec::Zero(static_cast<Eigen::Index>(space_.order()));
}

PhaseFunction::PhaseFunction(Group base, PhaseDomain dom, Vec data)
    : base_(std::move(base)), space_(phase_space(base_)), dom_(dom), data_(std::move(data)) {
  if (static_cast<std::size_t>(data_.size()) != space_.order())
    throw std::invalid_argument("phase function: data length must equal |G|^2");
}

cd inner(const PhaseFunction& f, const PhaseFunction& g) {
  require_same_group(f.space(), g.space(), "phase inner product");
  if (f.domain() != g.domain())
    throw std::invalid_argument("phase inner product: domain mismatch");
  return f.measure_weight() * g.data().dot(f.data());
}

double norm2(const PhaseFunction& f) {
  return std::sqrt(f.measure_weight() * f.data().squaredNorm());
}

double max_abs_diff(const PhaseFunction& f, const PhaseFunction& g) {
  return (f.data() - g.data()).cwiseAbs().maxCoeff();
}

PhaseFunction j_pullback(const PhaseFunction& f) {
  PhaseDomain target = f.domain() == PhaseDomain::freq_time ? PhaseDomain::time_freq
                                                            : PhaseDomain::freq_time;
  PhaseFunction out(f.base(), target);
  for (std::size_t p = 0; p < f.size(); ++p) {
    std::size_t q = target == PhaseDomain::time_freq ? j_map(f.base(), p) : j_inv(f.base(), p);
    out[p] = f[q];
  }
  return out;
}

}  // namespace tfcalc
