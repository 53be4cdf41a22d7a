#pragma once

#include "tfcalc/group.hpp"

namespace tfcalc::ref {

// Serial reference lane: plain loops over the defining sums, kept for the
// kernel equivalence tests and the benchmark baseline.  Contracts match
// tfcalc::kernels exactly.

void dft(const Group& g, const cd* in, cd* out, bool conj_kernel, double weight);

void windowed_transform(const Group& space, const cd* F, const cd* win,
                        double weight, cd* out);

void windowed_transform_colsup(const Group& space, const cd* F, const cd* win,
                               double weight, double* out);

void kn_matrix(const Group& g, const cd* sigma, cd* out);

void twisted_convolution(const Group& g, const cd* F, const cd* G, cd* out);

}  // namespace tfcalc::ref
