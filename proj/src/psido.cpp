#include "tfcalc/psido.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfcalc/kernels.hpp"

namespace tfcalc {

Symbol::Symbol(PhaseFunction data) : data_(std::move(data)) {
  if (data_.domain() != PhaseDomain::time_freq)
    throw std::invalid_argument("symbol: must live on G x G^");
}

SpreadingFunction::SpreadingFunction(PhaseFunction data) : data_(std::move(data)) {
  if (data_.domain() != PhaseDomain::freq_time)
    throw std::invalid_argument("spreading function: must live on G^ x G");
}

Symbol identity_symbol(const Group& g) {
  PhaseFunction p(g, PhaseDomain::time_freq);
  p.data().setConstant(cd(1.0, 0.0));
  return Symbol(std::move(p));
}

Symbol shift_symbol(const Group& g, std::size_t pos, std::size_t freq) {
  PhaseFunction p(g, PhaseDomain::time_freq);
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t xi = 0; xi < g.order(); ++xi) {
      p[p.index(x, xi)] = g.character(freq, x) * std::conj(g.character(xi, pos));
    }
  }
  return Symbol(std::move(p));
}

Signal kn_apply(const Symbol& sigma, const Signal& f) {
  require_same_group(sigma.group(), f.group(), "kn_apply");
  if (f.side() != Side::group)
    throw std::invalid_argument("kn_apply: operators act on group-side signals");
  const Group& g = f.group();
  const std::size_t n = g.order();
  Signal fhat = fourier(f);
  Signal out(g, Side::group);
  for (std::size_t x = 0; x < n; ++x) {
    cd acc(0.0, 0.0);
    for (std::size_t xi = 0; xi < n; ++xi) {
      acc += sigma.data().at(x, xi) * fhat[xi] * g.character(xi, x);
    }
    out[x] = acc / static_cast<double>(n);
  }
  return out;
}

OperatorMatrix kn_matrix(const Symbol& sigma) {
  const Group& g = sigma.group();
  const std::size_t n = g.order();
  std::vector<cd> buf(n * n);
  kernels::kn_matrix(g, sigma.data().data().data(), buf.data());
  Mat m(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = buf[x * n + y];
    }
  }
  return {g, std::move(m)};
}

Symbol kn_symbol_from_matrix(const OperatorMatrix& k) {
  const Group& g = k.group;
  const std::size_t n = g.order();
  if (k.mat.rows() != static_cast<Eigen::Index>(n) ||
      k.mat.cols() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("kn_symbol_from_matrix: matrix size mismatch");
  PhaseFunction p(g, PhaseDomain::time_freq);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xi = 0; xi < n; ++xi) {
      cd acc(0.0, 0.0);
      for (std::size_t y = 0; y < n; ++y) {
        acc += k.mat(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *
               std::conj(g.character(xi, g.sub(x, y)));
      }
      p[p.index(x, xi)] = acc;
    }
  }
  return Symbol(std::move(p));
}

SpreadingFunction spreading(const Symbol& sigma) {
  return SpreadingFunction(phase_fourier(sigma.data()));
}

Symbol symbol_from_spreading(const SpreadingFunction& f) {
  return Symbol(phase_inverse_fourier(f.data()));
}

SpreadingFunction spreading_identity(const Group& g) {
  PhaseFunction p(g, PhaseDomain::freq_time);
  p[0] = cd(static_cast<double>(g.order()), 0.0);
  return SpreadingFunction(std::move(p));
}

SpreadingFunction twisted(const SpreadingFunction& a, const SpreadingFunction& b) {
  require_same_group(a.group(), b.group(), "twisted convolution");
  PhaseFunction out(a.group(), PhaseDomain::freq_time);
  kernels::twisted_convolution(a.group(), a.data().data().data(),
                               b.data().data().data(), out.data().data());
  return SpreadingFunction(std::move(out));
}

Symbol compose(const Symbol& sigma, const Symbol& tau) {
  return symbol_from_spreading(twisted(spreading(sigma), spreading(tau)));
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_aggregate(const std::vector<double>& vals, double p, double weight) {
  if (p == kInf) {
    double best = 0.0;
    for (double v : vals) best = std::max(best, v);
    return best;
  }
  double acc = 0.0;
  for (double v : vals) acc += std::pow(v, p);
  return std::pow(weight * acc, 1.0 / p);
}
}  // namespace

double modulation_norm(const Signal& f, const Signal& window, double p, double q,
                       const Weight& m) {
  if (p < 1.0 || q < 1.0)
    throw std::invalid_argument("modulation norm: exponents must be >= 1");
  const Group& g = f.group();
  require_same_group(m.group(), phase_space(g), "modulation norm weight");
  PhaseFunction v = stft(f, window);
  const std::size_t n = g.order();
  std::vector<double> per_freq(n);
  std::vector<double> col(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    for (std::size_t x = 0; x < n; ++x) {
      col[x] = std::abs(v.at(x, xi)) * m(v.index(x, xi));
    }
    per_freq[xi] = lp_aggregate(col, p, 1.0);
  }
  return lp_aggregate(per_freq, q, 1.0 / static_cast<double>(n));
}

ModulationBound kn_modulation_bound(const Symbol& sigma, const Signal& window,
                                    double p, double q, const Weight& m,
                                    std::uint64_t seed, int random_probes) {
  const Group& g = sigma.group();
  if (window.data().isZero(0.0))
    throw std::invalid_argument("kn_modulation_bound: zero window");
  const std::size_t n = g.order();

  std::vector<Signal> probes;
  probes.reserve(n + static_cast<std::size_t>(random_probes));
  for (std::size_t x = 0; x < n; ++x) probes.push_back(delta(g, x));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_probes; ++i) probes.push_back(random_signal(g, rng));

  double best = 0.0;
  for (const Signal& f : probes) {
    double denom = modulation_norm(f, window, p, q, m);
    if (denom < 1e-14) continue;
    best = std::max(best, modulation_norm(kn_apply(sigma, f), window, p, q, m) / denom);
  }
  ModulationBound out{best, best, probes.size()};

  bool trivial_weight = true;
  for (double w : m.values()) {
    if (std::abs(w - 1.0) > 1e-14) trivial_weight = false;
  }
  if (p == 2.0 && q == 2.0 && trivial_weight) {
    // M^{2,2} with m = 1 is a multiple of L^2, so the exact maximizer is the
    // top singular vector; recover it by power iteration on K*K.
    Mat k = kn_matrix(sigma).mat;
    Mat khk = k.adjoint() * k;
    Vec x = Vec::Ones(static_cast<Eigen::Index>(n));
    x.normalize();
    for (int it = 0; it < 500; ++it) {
      Vec y = khk * x;
      double nrm = y.norm();
      if (nrm < 1e-300) break;
      y /= nrm;
      double step = (y - x).norm();
      x = y;
      if (step < 1e-15) break;
    }
    Signal top(g, Side::group, x);
    double denom = modulation_norm(top, window, p, q, m);
    if (denom > 1e-14) {
      double refined = modulation_norm(kn_apply(sigma, top), window, p, q, m) / denom;
      out.ratio = std::max(out.ratio, refined);
    }
  }
  return out;
}

Signal random_signal(const Group& g, std::mt19937_64& rng, Side side) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Signal s(g, side);
  for (std::size_t x = 0; x < g.order(); ++x) s[x] = cd(dist(rng), dist(rng));
  return s;
}

Symbol random_decaying_symbol(const Group& g, double decay, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  const Group space = phase_space(g);
  PhaseFunction f(g, PhaseDomain::freq_time);
  for (std::size_t w = 0; w < space.order(); ++w) {
    double envelope = std::exp(-decay * space.metric(w));
    f[w] = envelope * cd(dist(rng), dist(rng));
  }
  return symbol_from_spreading(SpreadingFunction(std::move(f)));
}

Symbol well_conditioned_symbol(const Group& g, double decay, double contraction,
                               std::mt19937_64& rng) {
  if (!(contraction >= 0.0 && contraction < 1.0))
    throw std::invalid_argument("well_conditioned_symbol: contraction must be in [0,1)");
  Symbol noise = random_decaying_symbol(g, decay, rng);
  double gain = kn_matrix(noise).mat.operatorNorm();
  Symbol out = identity_symbol(g);
  if (gain > 0.0) {
    out.data().data() += (contraction / gain) * noise.data().data();
  }
  return out;
}

}  // namespace tfcalc
