#pragma once

#include <Eigen/Core>

#include "tfcalc/group.hpp"

namespace tfcalc {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Which copy of the moduli a signal lives on.  The Haar normalization is
/// counting measure on G and (1/|G|) counting on G^; with that choice Fourier
/// inversion and Plancherel hold without stray constants, and every integral
/// below is a literal weighted sum.
enum class Side { group, dual };

/// Complex vector indexed by group elements in enumeration order.
class Signal {
public:
  Signal(Group g, Side side) : group_(std::move(g)), side_(side) {
    data_ = Vec::Zero(static_cast<Eigen::Index>(group_.order()));
  }
  Signal(Group g, Side side, Vec data);

  const Group& group() const { return group_; }
  Side side() const { return side_; }
  double measure_weight() const {
    return side_ == Side::group ? 1.0 : 1.0 / static_cast<double>(group_.order());
  }

  Vec& data() { return data_; }
  const Vec& data() const { return data_; }
  cd operator[](std::size_t i) const { return data_[static_cast<Eigen::Index>(i)]; }
  cd& operator[](std::size_t i) { return data_[static_cast<Eigen::Index>(i)]; }
  std::size_t size() const { return group_.order(); }

private:
  Group group_;
  Side side_;
  Vec data_;
};

cd inner(const Signal& f, const Signal& g);
double norm2(const Signal& f);
double max_abs_diff(const Signal& f, const Signal& g);

Signal delta(const Group& g, std::size_t at = 0, Side side = Side::group);
Signal constant(const Group& g, cd value = cd(1.0, 0.0), Side side = Side::group);
/// Indicator of the step subgroup K (a lattice over G itself).
Signal subgroup_indicator(const Lattice& k);
/// exp(-pi d_j(x)^2 / N_j) per coordinate: a strictly positive bump.
Signal gaussian_like(const Group& g);

/// Which phase space a two-variable function lives on.
enum class PhaseDomain { time_freq, freq_time };  // G x G^ vs G^ x G

/// Complex array over a phase space, indexed pos-major: (a, b) -> a*|G| + b
/// where a is the first coordinate of the domain.  Carries the product Haar
/// measure (1/|G| per point).
class PhaseFunction {
public:
  PhaseFunction(Group base, PhaseDomain dom);
  PhaseFunction(Group base, PhaseDomain dom, Vec data);

  const Group& base() const { return base_; }
  const Group& space() const { return space_; }
  PhaseDomain domain() const { return dom_; }
  double measure_weight() const { return 1.0 / static_cast<double>(base_.order()); }

  Vec& data() { return data_; }
  const Vec& data() const { return data_; }
  std::size_t size() const { return space_.order(); }
  cd operator[](std::size_t i) const { return data_[static_cast<Eigen::Index>(i)]; }
  cd& operator[](std::size_t i) { return data_[static_cast<Eigen::Index>(i)]; }

  std::size_t index(std::size_t a, std::size_t b) const {
    return a * base_.order() + b;
  }
  cd at(std::size_t a, std::size_t b) const {
    return data_[static_cast<Eigen::Index>(index(a, b))];
  }

private:
  Group base_;
  Group space_;
  PhaseDomain dom_;
  Vec data_;
};

cd inner(const PhaseFunction& f, const PhaseFunction& g);
double norm2(const PhaseFunction& f);
double max_abs_diff(const PhaseFunction& f, const PhaseFunction& g);

/// Pullback under J: given F on G^ x G returns F(J .) on G x G^, and the
/// inverse pullback for the opposite domain.
PhaseFunction j_pullback(const PhaseFunction& f);

}  // namespace tfcalc
