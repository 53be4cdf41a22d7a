#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tfcalc {

using cd = std::complex<double>;

/// Finite abelian group Z_{N1} x ... x Z_{Nd}.  Elements are flat indices in
/// lexicographic coordinate order (last coordinate varies fastest) and all
/// arithmetic is componentwise mod N_j.  Instances are immutable after
/// construction and safe to share across threads; the dense pairing and
/// difference tables are shared process-wide between groups with equal
/// moduli, so constructing a Group is cheap after the first time.
class Group {
public:
  explicit Group(std::vector<int> moduli);

  std::size_t order() const { return order_; }
  std::size_t dim() const { return moduli_.size(); }
  const std::vector<int>& moduli() const { return moduli_; }

  std::vector<int> coords(std::size_t a) const;
  std::size_t index(std::span<const int> c) const;  // reduces mod N_j

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const { return sub(0, a); }
  std::size_t scale(long long k, std::size_t a) const;

  /// Smallest n >= 1 with n*a = 0.
  std::size_t element_order(std::size_t a) const;

  /// Circular l1 distance to the origin, d(a) = sum_j min(a_j, N_j - a_j).
  int metric(std::size_t a) const;

  /// Character pairing <xi,x> = exp(2 pi i sum_j xi_j x_j / N_j).
  /// Values are unit modulus; <xi,x+y> = <xi,x><xi,y> and <-xi,x> = conj<xi,x>.
  cd character(std::size_t xi, std::size_t x) const;

  /// Phase of the pairing as a residue k mod L (character value = exp(2 pi i k/L)).
  std::size_t pair_phase(std::size_t xi, std::size_t x) const;

  /// Dense per-pair tables for the inner kernels; present when order() <= 1024.
  const int32_t* sub_table() const;
  const cd* char_table() const;

  bool operator==(const Group& other) const { return moduli_ == other.moduli_; }
  bool operator!=(const Group& other) const { return !(*this == other); }

private:
  struct Tables;
  static std::shared_ptr<const Tables> lookup_tables(const std::vector<int>& moduli,
                                                     const std::vector<std::size_t>& strides,
                                                     std::size_t order);
  std::vector<int> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::shared_ptr<const Tables> tables_;
};

/// Checks that two values live over the same moduli.
void require_same_group(const Group& a, const Group& b, const char* what);

/// Phase space G x G^ as a product group with doubled moduli.  A phase point
/// (pos, freq) has flat index pos * |G| + freq; the dual phase space G^ x G
/// shares the moduli, with its own coordinates in the same layout, so one
/// Group instance serves both sides.
Group phase_space(const Group& g);

inline std::size_t phase_index(const Group& base, std::size_t pos, std::size_t freq) {
  return pos * base.order() + freq;
}
inline std::size_t phase_pos(const Group& base, std::size_t p) { return p / base.order(); }
inline std::size_t phase_freq(const Group& base, std::size_t p) { return p % base.order(); }

/// J(x, xi) = (-xi, x): measure-preserving bijection from G x G^ onto G^ x G.
std::size_t j_map(const Group& base, std::size_t phase_idx);
/// J^{-1}(omega, u) = (u, -omega).
std::size_t j_inv(const Group& base, std::size_t dual_phase_idx);

/// Subgroup of a group cut out by a step vector: points with coordinates in
/// steps_j * Z_{N_j}.  Each step must divide its modulus.  Doubles as the
/// phase-space lattice of a Gabor system; the fundamental domain
/// U = prod [0, steps_j) tiles the ambient group.
class Lattice {
public:
  Lattice(Group ambient, std::vector<int> steps);

  const Group& ambient() const { return ambient_; }
  const std::vector<int>& steps() const { return steps_; }
  std::size_t size() const { return points_.size(); }

  /// Ambient index of the k-th lattice point (k indexes the quotient group).
  std::size_t point(std::size_t k) const { return points_[k]; }
  const std::vector<std::size_t>& points() const { return points_; }

  bool contains(std::size_t ambient_idx) const { return inverse_[ambient_idx] >= 0; }
  /// Position of an ambient element within the lattice enumeration.
  std::size_t index_of(std::size_t ambient_idx) const;

  /// The abstract index group prod Z_{N_j / steps_j}; lattice point k is the
  /// image of element k under q -> q .* steps.
  const Group& index_group() const { return index_group_; }

  struct Decomposition {
    std::size_t lattice_point;  // ambient index, in the lattice
    std::size_t offset;         // ambient index, in the fundamental domain
  };
  /// Unique splitting y = n + u with n in the lattice and u in U.
  Decomposition decompose(std::size_t ambient_idx) const;

  /// Ambient indices of the fundamental domain U = prod [0, steps_j).
  const std::vector<std::size_t>& fundamental_domain() const { return domain_; }

private:
  Group ambient_;
  std::vector<int> steps_;
  Group index_group_;
  std::vector<std::size_t> points_;
  std::vector<std::size_t> domain_;
  std::vector<int64_t> inverse_;  // ambient index -> lattice enumeration or -1
};

/// Annihilator K-perp = { xi : <xi,k> = 1 for all k in K } of a step subgroup;
/// for K = prod s_j Z_{N_j} this is prod (N_j/s_j) Z_{N_j}, so |K||K-perp| = |G|.
Lattice annihilator(const Lattice& k);

enum class WeightKind { submultiplicative, moderate };

/// Positive weight over a group.  The submultiplicative kind satisfies
/// v(0) = 1, v(-k) = v(k) and v(j+k) <= v(j) v(k); a moderate weight carries
/// the constant C of m(j+k) <= C v(k) m(j) relative to a declared v.
class Weight {
public:
  Weight(Group group, std::vector<double> values, WeightKind kind,
         double moderate_constant = 1.0);

  /// (1 + d(k))^s.  Requires s >= 0 for the submultiplicative tag.
  static Weight polynomial(const Group& g, double s);
  /// exp(a d(k)^b) with a >= 0, 0 < b <= 1.
  static Weight subexponential(const Group& g, double a, double b);
  static Weight one(const Group& g);

  const Group& group() const { return group_; }
  WeightKind kind() const { return kind_; }
  double moderate_constant() const { return moderate_constant_; }
  double operator()(std::size_t idx) const { return values_[idx]; }
  const std::vector<double>& values() const { return values_; }

  /// Weight on the lattice index group obtained by restriction.
  Weight restrict_to(const Lattice& lat) const;

  // Diagnostics used by the admissibility tests; all exhaustive.
  double evenness_defect() const;          // max |v(-k) - v(k)|
  double normalization_defect() const;     // |v(0) - 1|
  double submultiplicativity_defect() const;  // max(v(j+k) - v(j)v(k), 0)
  /// max over elements of |v(n a)^(1/n) - 1| at n = order of a (the cyclic
  /// orbit closes there, so the limit in the GRS condition is attained).
  double grs_defect() const;

private:
  Group group_;
  std::vector<double> values_;
  WeightKind kind_;
  double moderate_constant_;
};

/// max over j,k of m(j+k) - C v(k) m(j), clipped at 0.
double moderate_defect(const Weight& m, const Weight& v, double constant);

}  // namespace tfcalc
