#include "tfcalc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tfcalc::kernels {

namespace {
void require_tables(const Group& g) {
  if (!g.sub_table() || !g.char_table())
    throw std::length_error("kernels: group exceeds the dense-table cap (order > 1024)");
}
}  // namespace

void dft(const Group& g, const cd* in, cd* out, bool conj_kernel, double weight) {
  require_tables(g);
  const std::int64_t n = static_cast<std::int64_t>(g.order());
  const cd* chi = g.char_table();
#pragma omp parallel for schedule(static)
  for (std::int64_t xi = 0; xi < n; ++xi) {
    const cd* row = chi + xi * n;
    cd acc(0.0, 0.0);
    if (conj_kernel) {
      for (std::int64_t x = 0; x < n; ++x) acc += in[x] * std::conj(row[x]);
    } else {
      for (std::int64_t x = 0; x < n; ++x) acc += in[x] * row[x];
    }
    out[xi] = weight * acc;
  }
}

void windowed_transform(const Group& space, const cd* F, const cd* win,
                        double weight, cd* out) {
  require_tables(space);
  const std::int64_t m = static_cast<std::int64_t>(space.order());
  const cd* chi = space.char_table();
  const int32_t* sub = space.sub_table();
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < m; ++x) {
    // F(t) conj(win(t-x)) is shared across all w for this x.
    std::vector<cd> prod(m);
    for (std::int64_t t = 0; t < m; ++t) {
      prod[t] = F[t] * std::conj(win[sub[t * m + x]]);
    }
    for (std::int64_t w = 0; w < m; ++w) {
      const cd* row = chi + w * m;
      cd acc(0.0, 0.0);
      for (std::int64_t t = 0; t < m; ++t) acc += prod[t] * std::conj(row[t]);
      out[x * m + w] = weight * acc;
    }
  }
}

void windowed_transform_colsup(const Group& space, const cd* F, const cd* win,
                               double weight, double* out) {
  require_tables(space);
  const std::int64_t m = static_cast<std::int64_t>(space.order());
  const cd* chi = space.char_table();
  const int32_t* sub = space.sub_table();
  std::fill(out, out + m, 0.0);
#pragma omp parallel
  {
    std::vector<double> local(m, 0.0);
    std::vector<cd> prod(m);
#pragma omp for schedule(static) nowait
    for (std::int64_t x = 0; x < m; ++x) {
      for (std::int64_t t = 0; t < m; ++t) {
        prod[t] = F[t] * std::conj(win[sub[t * m + x]]);
      }
      for (std::int64_t w = 0; w < m; ++w) {
        const cd* row = chi + w * m;
        cd acc(0.0, 0.0);
        for (std::int64_t t = 0; t < m; ++t) acc += prod[t] * std::conj(row[t]);
        local[w] = std::max(local[w], std::abs(weight * acc));
      }
    }
#pragma omp critical(colsup_merge)
    for (std::int64_t w = 0; w < m; ++w) out[w] = std::max(out[w], local[w]);
  }
}

cd windowed_transform_point(const Group& space, const cd* F, const cd* win,
                            double weight, std::size_t x, std::size_t w) {
  require_tables(space);
  const std::size_t m = space.order();
  const cd* chi = space.char_table() + w * m;
  const int32_t* sub = space.sub_table();
  cd acc(0.0, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    acc += F[t] * std::conj(win[sub[t * m + x]]) * std::conj(chi[t]);
  }
  return weight * acc;
}

void kn_matrix(const Group& g, const cd* sigma, cd* out) {
  require_tables(g);
  const std::int64_t n = static_cast<std::int64_t>(g.order());
  const cd* chi = g.char_table();
  const int32_t* sub = g.sub_table();
  const double w = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t y = 0; y < n; ++y) {
      const std::int64_t diff = sub[x * n + y];
      cd acc(0.0, 0.0);
      for (std::int64_t xi = 0; xi < n; ++xi) {
        acc += sigma[x * n + xi] * chi[xi * n + diff];
      }
      out[x * n + y] = w * acc;
    }
  }
}

void twisted_convolution(const Group& g, const cd* F, const cd* G, cd* out) {
  require_tables(g);
  const std::int64_t n = static_cast<std::int64_t>(g.order());
  const cd* chi = g.char_table();
  const int32_t* sub = g.sub_table();
  const double w = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t xi = 0; xi < n; ++xi) {
    for (std::int64_t u = 0; u < n; ++u) {
      cd acc(0.0, 0.0);
      for (std::int64_t zeta = 0; zeta < n; ++zeta) {
        const std::int64_t dxi = sub[xi * n + zeta];
        const cd* phase = chi + dxi * n;
        const cd* grow = G + dxi * n;
        const int32_t* usub = sub + u * n;
        const cd* frow = F + zeta * n;
        for (std::int64_t y = 0; y < n; ++y) {
          acc += frow[y] * grow[usub[y]] * phase[y];
        }
      }
      out[xi * n + u] = w * acc;
    }
  }
}

}  // namespace tfcalc::kernels
