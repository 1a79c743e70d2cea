#pragma once

// Numeric reduction kernels behind the estimators. A scalar reference
// implementation always exists; an AVX2 variant is selected at runtime
// on CPUs that support it. Both variants are equivalence-tested.

#include <cstddef>
#include <span>

namespace treecut::kernels {

enum class Backend { scalar, avx2 };

// Backend currently used by the kernel entry points.
Backend active();

// Force a backend. Returns false (and leaves the dispatch unchanged)
// if the requested backend is not available on this CPU/build.
bool set_backend(Backend b);

// Re-run CPU detection and pick the best available backend.
void reset_backend();

const char* backend_name(Backend b);

// sum_i x[i]
double sum(std::span<const double> x);

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

// sum_i w[i] * -log2(v[i]).
// Terms with w[i] == 0 contribute 0 regardless of v[i] (0 log 0 := 0).
// Returns +infinity if any w[i] > 0 is paired with v[i] <= 0.
// v values must be zero or normal doubles (no denormals, no NaN).
double weighted_neg_log2(std::span<const double> w, std::span<const double> v);

// out[i] = k[i] == 0 ? 0 : k[i] * (c + log2(b[i]) - log2(k[i]))
// This is the "collapse to this class" data description length per node:
// k = class counts, b = class size (marginal) or extended p-hat (association),
// c = log2 of the sample size. Requires b[i] > 0 wherever k[i] > 0; k and b
// must be zero or normal doubles. In-place use (out == k or out == b) is ok.
void data_terms(std::span<const double> k, std::span<const double> b, double c,
                std::span<double> out);

}  // namespace treecut::kernels
