#include "tfcalc/ref_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tfcalc::ref {

// The reference lane deliberately avoids the dense tables and walks the
// defining sums with per-element group arithmetic.

void dft(const Group& g, const cd* in, cd* out, bool conj_kernel, double weight) {
  const std::size_t n = g.order();
  for (std::size_t xi = 0; xi < n; ++xi) {
    cd acc(0.0, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      cd chi = g.character(xi, x);
      acc += in[x] * (conj_kernel ? std::conj(chi) : chi);
    }
    out[xi] = weight * acc;
  }
}

void windowed_transform(const Group& space, const cd* F, const cd* win,
                        double weight, cd* out) {
  const std::size_t m = space.order();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t w = 0; w < m; ++w) {
      cd acc(0.0, 0.0);
      for (std::size_t t = 0; t < m; ++t) {
        acc += F[t] * std::conj(win[space.sub(t, x)]) * std::conj(space.character(w, t));
      }
      out[x * m + w] = weight * acc;
    }
  }
}

void windowed_transform_colsup(const Group& space, const cd* F, const cd* win,
                               double weight, double* out) {
  const std::size_t m = space.order();
  std::fill(out, out + m, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t w = 0; w < m; ++w) {
      cd acc(0.0, 0.0);
      for (std::size_t t = 0; t < m; ++t) {
        acc += F[t] * std::conj(win[space.sub(t, x)]) * std::conj(space.character(w, t));
      }
      out[w] = std::max(out[w], std::abs(weight * acc));
    }
  }
}

void kn_matrix(const Group& g, const cd* sigma, cd* out) {
  const std::size_t n = g.order();
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      cd acc(0.0, 0.0);
      for (std::size_t xi = 0; xi < n; ++xi) {
        acc += sigma[x * n + xi] * g.character(xi, g.sub(x, y));
      }
      out[x * n + y] = w * acc;
    }
  }
}

void twisted_convolution(const Group& g, const cd* F, const cd* G, cd* out) {
  const std::size_t n = g.order();
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    for (std::size_t u = 0; u < n; ++u) {
      cd acc(0.0, 0.0);
      for (std::size_t zeta = 0; zeta < n; ++zeta) {
        for (std::size_t y = 0; y < n; ++y) {
          acc += F[zeta * n + y] * G[g.sub(xi, zeta) * n + g.sub(u, y)] *
                 g.character(g.sub(xi, zeta), y);
        }
      }
      out[xi * n + u] = w * acc;
    }
  }
}

}  // namespace tfcalc::ref
