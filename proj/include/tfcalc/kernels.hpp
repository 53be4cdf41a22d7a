#pragma once

#include "tfcalc/group.hpp"

namespace tfcalc::kernels {

// OpenMP-parallel inner loops shared by the transform and operator modules.
// Serial reference implementations with identical contracts live in
// tfcalc::ref (ref_kernels.hpp); the kernel tests and the benchmark target
// compare the two lanes.  All kernels require the dense group tables, which
// caps them at order <= 1024 per group (phase spaces included).

/// out[xi] = weight * sum_x in[x] * <xi,x>^{sign}, sign = -1 for conj_kernel.
void dft(const Group& g, const cd* in, cd* out, bool conj_kernel, double weight);

/// Windowed transform of F against win over the group `space`:
///   out[x * M + w] = weight * sum_t F[t] conj(win[t - x]) conj(<w,t>),
/// M = space.order().  With `space` = G this is the STFT of a signal; with
/// `space` = G x G^ it is the phase-space STFT of a symbol, where w runs over
/// the dual ordering (the coordinate lists pair slot for slot).
void windowed_transform(const Group& space, const cd* F, const cd* win,
                        double weight, cd* out);

/// Column suprema of the windowed transform: out[w] = max_x |V(x, w)|.
void windowed_transform_colsup(const Group& space, const cd* F, const cd* win,
                               double weight, double* out);

/// Single evaluation V(x, w) of the windowed transform.
cd windowed_transform_point(const Group& space, const cd* F, const cd* win,
                            double weight, std::size_t x, std::size_t w);

/// Dense matrix of the operator with symbol sigma (layout x * N + xi):
///   out[x * N + y] = (1/N) sum_xi sigma[x * N + xi] <xi, x - y>.
void kn_matrix(const Group& g, const cd* sigma, cd* out);

/// Twisted convolution of spreading functions on G^ x G (layout omega * N + u):
///   out[xi * N + u] = (1/N) sum_{zeta,y} F[zeta*N+y] G[(xi-zeta)*N + (u-y)] <xi-zeta, y>.
void twisted_convolution(const Group& g, const cd* F, const cd* G, cd* out);

}  // namespace tfcalc::kernels
