#include "tfcalc/group.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace tfcalc {

namespace {
constexpr std::size_t kTableCap = 1024;  // dense tables up to this order
}

// Shared per-moduli data: root-of-unity table, per-element pairing weights,
// metric, and (at small orders) the dense difference and character tables.
struct Group::Tables {
  std::size_t root_count = 1;  // L = lcm of moduli
  std::vector<cd> roots;       // exp(2 pi i k / L)
  std::vector<int32_t> weights;  // [a*d + j] = a_j * (L / N_j)
  std::vector<int32_t> metric;
  std::vector<int32_t> sub_table;
  std::vector<cd> char_table;

  Tables(const std::vector<int>& moduli, const std::vector<std::size_t>& strides,
         std::size_t order) {
    for (int n : moduli) root_count = std::lcm(root_count, static_cast<std::size_t>(n));
    roots.resize(root_count);
    for (std::size_t k = 0; k < root_count; ++k) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(root_count);
      roots[k] = cd(std::cos(angle), std::sin(angle));
    }

    const std::size_t d = moduli.size();
    weights.resize(order * d);
    metric.resize(order);
    std::vector<int> c(d, 0);
    for (std::size_t a = 0; a < order; ++a) {
      int dist = 0;
      for (std::size_t j = 0; j < d; ++j) {
        weights[a * d + j] =
            static_cast<int32_t>((root_count / moduli[j]) * static_cast<std::size_t>(c[j]));
        dist += std::min(c[j], moduli[j] - c[j]);
      }
      metric[a] = dist;
      for (std::size_t j = d; j-- > 0;) {
        if (++c[j] < moduli[j]) break;
        c[j] = 0;
      }
    }

    if (order <= kTableCap) {
      sub_table.resize(order * order);
      char_table.resize(order * order);
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          std::size_t out = 0, phase = 0;
          for (std::size_t j = 0; j < d; ++j) {
            std::size_t n = static_cast<std::size_t>(moduli[j]);
            std::size_t aj = (a / strides[j]) % n;
            std::size_t bj = (b / strides[j]) % n;
            std::size_t s = aj + n - bj;
            if (s >= n) s -= n;
            out += s * strides[j];
            phase += aj * static_cast<std::size_t>(weights[b * d + j]);
          }
          sub_table[a * order + b] = static_cast<int32_t>(out);
          char_table[a * order + b] = roots[phase % root_count];
        }
      }
    }
  }
};

Group::Group(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("group: empty moduli list");
  for (int n : moduli_) {
    if (n < 1) throw std::invalid_argument("group: every modulus must be >= 1");
  }
  strides_.assign(moduli_.size(), 1);
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    if (j + 1 < moduli_.size()) strides_[j] = strides_[j + 1] * moduli_[j + 1];
  }
  order_ = strides_[0] * static_cast<std::size_t>(moduli_[0]);
  tables_ = lookup_tables(moduli_, strides_, order_);
}

std::shared_ptr<const Group::Tables> Group::lookup_tables(
    const std::vector<int>& moduli, const std::vector<std::size_t>& strides,
    std::size_t order) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::shared_ptr<const Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(moduli);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const Tables>(moduli, strides, order);
  cache.emplace(moduli, t);
  return t;
}

std::vector<int> Group::coords(std::size_t a) const {
  std::vector<int> c(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    c[j] = static_cast<int>((a / strides_[j]) % static_cast<std::size_t>(moduli_[j]));
  }
  return c;
}

std::size_t Group::index(std::span<const int> c) const {
  if (c.size() != dim()) throw std::invalid_argument("group: coordinate count mismatch");
  std::size_t a = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    long long r = c[j] % moduli_[j];
    if (r < 0) r += moduli_[j];
    a += static_cast<std::size_t>(r) * strides_[j];
  }
  return a;
}

std::size_t Group::add(std::size_t a, std::size_t b) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    std::size_t n = static_cast<std::size_t>(moduli_[j]);
    std::size_t aj = (a / strides_[j]) % n;
    std::size_t bj = (b / strides_[j]) % n;
    std::size_t s = aj + bj;
    if (s >= n) s -= n;
    out += s * strides_[j];
  }
  return out;
}

std::size_t Group::sub(std::size_t a, std::size_t b) const {
  if (!tables_->sub_table.empty()) return tables_->sub_table[a * order_ + b];
  std::size_t out = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    std::size_t n = static_cast<std::size_t>(moduli_[j]);
    std::size_t aj = (a / strides_[j]) % n;
    std::size_t bj = (b / strides_[j]) % n;
    std::size_t s = aj + n - bj;
    if (s >= n) s -= n;
    out += s * strides_[j];
  }
  return out;
}

std::size_t Group::scale(long long k, std::size_t a) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    long long n = moduli_[j];
    long long aj = static_cast<long long>((a / strides_[j]) % static_cast<std::size_t>(n));
    long long s = (k % n) * aj % n;
    if (s < 0) s += n;
    out += static_cast<std::size_t>(s) * strides_[j];
  }
  return out;
}

std::size_t Group::element_order(std::size_t a) const {
  std::size_t ord = 1;
  for (std::size_t j = 0; j < dim(); ++j) {
    std::size_t n = static_cast<std::size_t>(moduli_[j]);
    std::size_t aj = (a / strides_[j]) % n;
    ord = std::lcm(ord, n / std::gcd(n, aj == 0 ? n : aj));
  }
  return ord;
}

int Group::metric(std::size_t a) const { return tables_->metric[a]; }

cd Group::character(std::size_t xi, std::size_t x) const {
  if (!tables_->char_table.empty()) return tables_->char_table[xi * order_ + x];
  return tables_->roots[pair_phase(xi, x)];
}

std::size_t Group::pair_phase(std::size_t xi, std::size_t x) const {
  const std::size_t d = dim();
  const int32_t* wx = &tables_->weights[x * d];
  std::size_t s = 0;
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t xij = (xi / strides_[j]) % static_cast<std::size_t>(moduli_[j]);
    s += xij * static_cast<std::size_t>(wx[j]);
  }
  return s % tables_->root_count;
}

const int32_t* Group::sub_table() const {
  return tables_->sub_table.empty() ? nullptr : tables_->sub_table.data();
}

const cd* Group::char_table() const {
  return tables_->char_table.empty() ? nullptr : tables_->char_table.data();
}

void require_same_group(const Group& a, const Group& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": modulus mismatch");
}

Group phase_space(const Group& g) {
  std::vector<int> m = g.moduli();
  m.insert(m.end(), g.moduli().begin(), g.moduli().end());
  return Group(std::move(m));
}

std::size_t j_map(const Group& base, std::size_t phase_idx) {
  std::size_t n = base.order();
  std::size_t pos = phase_idx / n, freq = phase_idx % n;
  return base.neg(freq) * n + pos;
}

std::size_t j_inv(const Group& base, std::size_t dual_phase_idx) {
  std::size_t n = base.order();
  std::size_t omega = dual_phase_idx / n, u = dual_phase_idx % n;
  return u * n + base.neg(omega);
}

namespace {
Group quotient_group(const Group& ambient, const std::vector<int>& steps) {
  if (steps.size() != ambient.dim())
    throw std::invalid_argument("lattice: step count must match group dimension");
  std::vector<int> q(steps.size());
  for (std::size_t j = 0; j < steps.size(); ++j) {
    int n = ambient.moduli()[j];
    if (steps[j] < 1 || n % steps[j] != 0)
      throw std::invalid_argument("lattice: each step must be a positive divisor of its modulus");
    q[j] = n / steps[j];
  }
  return Group(std::move(q));
}
}  // namespace

Lattice::Lattice(Group ambient, std::vector<int> steps)
    : ambient_(std::move(ambient)),
      steps_(std::move(steps)),
      index_group_(quotient_group(ambient_, steps_)) {
  points_.resize(index_group_.order());
  inverse_.assign(ambient_.order(), -1);
  for (std::size_t k = 0; k < index_group_.order(); ++k) {
    std::vector<int> c = index_group_.coords(k);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= steps_[j];
    points_[k] = ambient_.index(c);
    inverse_[points_[k]] = static_cast<int64_t>(k);
  }
  Group domain_shape(steps_);
  domain_.resize(domain_shape.order());
  for (std::size_t u = 0; u < domain_shape.order(); ++u) {
    domain_[u] = ambient_.index(domain_shape.coords(u));
  }
}

std::size_t Lattice::index_of(std::size_t ambient_idx) const {
  int64_t k = inverse_[ambient_idx];
  if (k < 0) throw std::invalid_argument("lattice: element is not a lattice point");
  return static_cast<std::size_t>(k);
}

Lattice::Decomposition Lattice::decompose(std::size_t ambient_idx) const {
  std::vector<int> c = ambient_.coords(ambient_idx);
  std::vector<int> n(c.size()), u(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    u[j] = c[j] % steps_[j];
    n[j] = c[j] - u[j];
  }
  return {ambient_.index(n), ambient_.index(u)};
}

Lattice annihilator(const Lattice& k) {
  const Group& g = k.ambient();
  std::vector<int> steps(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    steps[j] = g.moduli()[j] / k.steps()[j];
  }
  return Lattice(g, std::move(steps));
}

Weight::Weight(Group group, std::vector<double> values, WeightKind kind,
               double moderate_constant)
    : group_(std::move(group)),
      values_(std::move(values)),
      kind_(kind),
      moderate_constant_(moderate_constant) {
  if (values_.size() != group_.order())
    throw std::invalid_argument("weight: value count must equal group order");
  for (double v : values_) {
    if (!(v > 0.0)) throw std::invalid_argument("weight: values must be positive");
  }
}

Weight Weight::polynomial(const Group& g, double s) {
  if (s < 0.0)
    throw std::invalid_argument("weight: negative exponent is not submultiplicative");
  std::vector<double> v(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    v[a] = std::pow(1.0 + g.metric(a), s);
  }
  return Weight(g, std::move(v), WeightKind::submultiplicative);
}

Weight Weight::subexponential(const Group& g, double a, double b) {
  if (a < 0.0 || b <= 0.0 || b > 1.0)
    throw std::invalid_argument("weight: subexponential family needs a >= 0 and 0 < b <= 1");
  std::vector<double> v(g.order());
  for (std::size_t k = 0; k < g.order(); ++k) {
    v[k] = std::exp(a * std::pow(static_cast<double>(g.metric(k)), b));
  }
  return Weight(g, std::move(v), WeightKind::submultiplicative);
}

Weight Weight::one(const Group& g) {
  return Weight(g, std::vector<double>(g.order(), 1.0), WeightKind::submultiplicative);
}

Weight Weight::restrict_to(const Lattice& lat) const {
  require_same_group(group_, lat.ambient(), "weight restriction");
  std::vector<double> v(lat.size());
  for (std::size_t k = 0; k < lat.size(); ++k) v[k] = values_[lat.point(k)];
  return Weight(lat.index_group(), std::move(v), kind_, moderate_constant_);
}

double Weight::evenness_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < group_.order(); ++a) {
    worst = std::max(worst, std::abs(values_[group_.neg(a)] - values_[a]));
  }
  return worst;
}

double Weight::normalization_defect() const { return std::abs(values_[0] - 1.0); }

double Weight::submultiplicativity_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < group_.order(); ++a) {
    for (std::size_t b = 0; b < group_.order(); ++b) {
      worst = std::max(worst, values_[group_.add(a, b)] - values_[a] * values_[b]);
    }
  }
  return worst;
}

double Weight::grs_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < group_.order(); ++a) {
    double n = static_cast<double>(group_.element_order(a));
    double v = values_[group_.scale(group_.element_order(a), a)];  // = v(0) = 1
    worst = std::max(worst, std::abs(std::pow(v, 1.0 / n) - 1.0));
  }
  return worst;
}

double moderate_defect(const Weight& m, const Weight& v, double constant) {
  require_same_group(m.group(), v.group(), "moderate weight check");
  const Group& g = m.group();
  double worst = 0.0;
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      worst = std::max(worst, m(g.add(a, b)) - constant * v(b) * m(a));
    }
  }
  return worst;
}

}  // namespace tfcalc
