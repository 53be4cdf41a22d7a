#include "tfcalc/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "tfcalc/kernels.hpp"

namespace tfcalc {

namespace {
Side flip(Side s) { return s == Side::group ? Side::dual : Side::group; }

void require_nonzero(const Signal& g, const char* what) {
  if (g.data().isZero(0.0)) throw std::invalid_argument(std::string(what) + ": zero window");
}

// Single STFT value <f, M_xi T_x g> without forming the whole transform.
cd stft_value(const Signal& f, const Signal& g, std::size_t x, std::size_t xi) {
  const Group& grp = f.group();
  cd acc(0.0, 0.0);
  for (std::size_t y = 0; y < grp.order(); ++y) {
    acc += f[y] * std::conj(g[grp.sub(y, x)]) * std::conj(grp.character(xi, y));
  }
  return f.measure_weight() * acc;
}
}  // namespace

Signal fourier(const Signal& f) {
  Signal out(f.group(), flip(f.side()));
  kernels::dft(f.group(), f.data().data(), out.data().data(), true, f.measure_weight());
  return out;
}

Signal inverse_fourier(const Signal& f) {
  Signal out(f.group(), flip(f.side()));
  kernels::dft(f.group(), f.data().data(), out.data().data(), false, f.measure_weight());
  return out;
}

Signal translate(const Signal& f, std::size_t y) {
  Signal out(f.group(), f.side());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[f.group().sub(x, y)];
  return out;
}

Signal modulate(const Signal& f, std::size_t xi) {
  Signal out(f.group(), f.side());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f.group().character(xi, x) * f[x];
  return out;
}

Signal tf_shift(const Signal& f, std::size_t pos, std::size_t freq) {
  return modulate(translate(f, pos), freq);
}

PhaseFunction stft(const Signal& f, const Signal& g) {
  require_same_group(f.group(), g.group(), "stft");
  if (f.side() != g.side()) throw std::invalid_argument("stft: side mismatch");
  require_nonzero(g, "stft");
  PhaseDomain dom =
      f.side() == Side::group ? PhaseDomain::time_freq : PhaseDomain::freq_time;
  PhaseFunction out(f.group(), dom);
  kernels::windowed_transform(f.group(), f.data().data(), g.data().data(),
                              f.measure_weight(), out.data().data());
  return out;
}

PhaseFunction rihaczek(const Signal& f, const Signal& g) {
  require_same_group(f.group(), g.group(), "rihaczek");
  Signal ghat = fourier(g);
  const Group& grp = f.group();
  PhaseFunction out(grp, PhaseDomain::time_freq);
  for (std::size_t x = 0; x < grp.order(); ++x) {
    for (std::size_t xi = 0; xi < grp.order(); ++xi) {
      out[out.index(x, xi)] =
          f[x] * std::conj(ghat[xi]) * std::conj(grp.character(xi, x));
    }
  }
  return out;
}

PhaseFunction phase_fourier(const PhaseFunction& f) {
  if (f.domain() != PhaseDomain::time_freq)
    throw std::invalid_argument("phase_fourier: expected a G x G^ function");
  PhaseFunction out(f.base(), PhaseDomain::freq_time);
  kernels::dft(f.space(), f.data().data(), out.data().data(), true, f.measure_weight());
  return out;
}

PhaseFunction phase_inverse_fourier(const PhaseFunction& f) {
  if (f.domain() != PhaseDomain::freq_time)
    throw std::invalid_argument("phase_inverse_fourier: expected a G^ x G function");
  PhaseFunction out(f.base(), PhaseDomain::time_freq);
  kernels::dft(f.space(), f.data().data(), out.data().data(), false, f.measure_weight());
  return out;
}

Mat phase_stft(const PhaseFunction& f, const PhaseFunction& window) {
  require_same_group(f.space(), window.space(), "phase stft");
  if (f.domain() != window.domain())
    throw std::invalid_argument("phase stft: domain mismatch");
  if (window.data().isZero(0.0)) throw std::invalid_argument("phase stft: zero window");
  const std::size_t m = f.size();
  std::vector<cd> buf(m * m);
  kernels::windowed_transform(f.space(), f.data().data(), window.data().data(),
                              f.measure_weight(), buf.data());
  Mat out(m, m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t w = 0; w < m; ++w) {
      out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(w)) = buf[x * m + w];
    }
  }
  return out;
}

cd phase_stft_point(const PhaseFunction& f, const PhaseFunction& window,
                    std::size_t x, std::size_t w) {
  require_same_group(f.space(), window.space(), "phase stft");
  return kernels::windowed_transform_point(f.space(), f.data().data(),
                                           window.data().data(), f.measure_weight(),
                                           x, w);
}

cd stft_of_rihaczek_direct(const Signal& f, const Signal& g, const Signal& phi,
                           const Signal& psi, std::size_t x, std::size_t w) {
  require_nonzero(phi, "stft_of_rihaczek");
  require_nonzero(psi, "stft_of_rihaczek");
  PhaseFunction target = rihaczek(g, f);
  PhaseFunction window = rihaczek(phi, psi);
  return phase_stft_point(target, window, x, w);
}

cd stft_of_rihaczek_closed(const Signal& f, const Signal& g, const Signal& phi,
                           const Signal& psi, std::size_t x, std::size_t w) {
  require_nonzero(phi, "stft_of_rihaczek");
  require_nonzero(psi, "stft_of_rihaczek");
  const Group& grp = f.group();
  const std::size_t n = grp.order();
  const std::size_t xp = x / n, xf = x % n;
  const std::size_t ww = w / n, wu = w % n;
  cd a = stft_value(g, phi, xp, grp.add(xf, ww));
  cd b = stft_value(f, psi, grp.add(xp, wu), xf);
  return std::conj(grp.character(xf, wu)) * a * std::conj(b);
}

double plancherel_residual(const Signal& f) {
  Signal fhat = fourier(f);
  double unitarity = std::abs(norm2(f) - norm2(fhat));
  Signal back = inverse_fourier(fhat);
  return std::max(unitarity, max_abs_diff(back, f));
}

double commutation_residual(const Signal& f, std::size_t x, std::size_t xi) {
  Signal lhs = translate(modulate(f, xi), x);
  Signal rhs = modulate(translate(f, x), xi);
  rhs.data() *= std::conj(f.group().character(xi, x));
  return max_abs_diff(lhs, rhs);
}

double stft_fourier_residual(const Signal& f, const Signal& g) {
  const Group& grp = f.group();
  PhaseFunction a = stft(f, g);
  PhaseFunction b = stft(fourier(f), fourier(g));
  double worst = 0.0;
  for (std::size_t u = 0; u < grp.order(); ++u) {
    for (std::size_t om = 0; om < grp.order(); ++om) {
      cd rhs = b.at(om, grp.neg(u)) * std::conj(grp.character(om, u));
      worst = std::max(worst, std::abs(a.at(u, om) - rhs));
    }
  }
  return worst;
}

double stft_covariance_residual(const Signal& f, const Signal& g,
                                std::size_t x, std::size_t xi,
                                std::size_t y, std::size_t eta) {
  const Group& grp = f.group();
  PhaseFunction lhs = stft(tf_shift(f, x, xi), tf_shift(g, y, eta));
  PhaseFunction base = stft(f, g);
  const std::size_t dx = grp.sub(x, y);
  const std::size_t dxi = grp.sub(xi, eta);
  double worst = 0.0;
  for (std::size_t u = 0; u < grp.order(); ++u) {
    for (std::size_t om = 0; om < grp.order(); ++om) {
      cd rhs = base.at(grp.sub(u, dx), grp.sub(om, dxi)) *
               std::conj(grp.character(grp.sub(om, xi), x)) *
               grp.character(eta, grp.sub(u, x));
      worst = std::max(worst, std::abs(lhs.at(u, om) - rhs));
    }
  }
  return worst;
}

double stft_product_fourier_check(const Signal& f1, const Signal& f2,
                                  const Signal& g1, const Signal& g2) {
  const Group& grp = f1.group();
  PhaseFunction vf1 = stft(f1, g1);
  PhaseFunction vf2 = stft(f2, g2);
  PhaseFunction prod(grp, PhaseDomain::time_freq,
                     vf1.data().cwiseProduct(vf2.data().conjugate()));
  PhaseFunction lhs = phase_fourier(prod);

  PhaseFunction a = stft(f1, f2);
  PhaseFunction b = stft(g1, g2);
  double worst = 0.0;
  for (std::size_t xi = 0; xi < grp.order(); ++xi) {
    for (std::size_t x = 0; x < grp.order(); ++x) {
      cd rhs = a.at(grp.neg(x), xi) * std::conj(b.at(grp.neg(x), xi));
      worst = std::max(worst, std::abs(lhs.at(xi, x) - rhs));
    }
  }
  return worst;
}

double rihaczek_covariance_residual(const Signal& f, const Signal& g,
                                    std::size_t shift_g, std::size_t shift_f) {
  const Group& grp = f.group();
  const std::size_t n = grp.order();
  const Group space = phase_space(grp);
  const std::size_t xp = shift_g / n, xf = shift_g % n;
  const std::size_t yp = shift_f / n, yf = shift_f % n;

  PhaseFunction lhs = rihaczek(tf_shift(g, xp, xf), tf_shift(f, yp, yf));
  PhaseFunction base = rihaczek(g, f);

  const std::size_t jm = j_map(grp, space.sub(shift_f, shift_g));
  const std::size_t mod_first = jm / n;   // xi - eta, in G^
  const std::size_t mod_second = jm % n;  // y - x, in G
  const cd phase = grp.character(yf, grp.sub(xp, yp));

  double worst = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t tau = 0; tau < n; ++tau) {
      cd rhs = phase * grp.character(mod_first, t) * grp.character(tau, mod_second) *
               base.at(grp.sub(t, xp), grp.sub(tau, yf));
      worst = std::max(worst, std::abs(lhs.at(t, tau) - rhs));
    }
  }
  return worst;
}

double moyal_residual(const Signal& f, const Signal& g) {
  PhaseFunction v = stft(f, g);
  double lhs = v.measure_weight() * v.data().squaredNorm();
  double n2f = norm2(f), n2g = norm2(g);
  return std::abs(lhs - n2f * n2f * n2g * n2g);
}

}  // namespace tfcalc
