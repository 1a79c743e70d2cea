// Scalar reference kernels and the runtime dispatch table.

#include "treecut/kernels.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "kernels_table.hpp"

namespace treecut::kernels {

namespace {

double sum_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_neg_log2_scalar(std::span<const double> w,
                                std::span<const double> v) {
    assert(w.size() == v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (v[i] <= 0.0) return std::numeric_limits<double>::infinity();
        acc -= w[i] * std::log2(v[i]);
    }
    return acc;
}

void data_terms_scalar(std::span<const double> k, std::span<const double> b,
                       double c, std::span<double> out) {
    assert(k.size() == b.size() && k.size() == out.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        out[i] = (k[i] == 0.0)
                     ? 0.0
                     : k[i] * (c + std::log2(b[i]) - std::log2(k[i]));
    }
}

constexpr detail::Table kScalarTable{sum_scalar, dot_scalar,
                                     weighted_neg_log2_scalar,
                                     data_terms_scalar};

struct Dispatch {
    const detail::Table* table = &kScalarTable;
    Backend backend = Backend::scalar;
};

Dispatch detect() {
#if TREECUT_HAVE_AVX2_TU
    if (detail::avx2_supported()) return {detail::avx2_table(), Backend::avx2};
#endif
    return {};
}

Dispatch& dispatch() {
    static Dispatch d = detect();
    return d;
}

}  // namespace

Backend active() { return dispatch().backend; }

bool set_backend(Backend b) {
    if (b == Backend::scalar) {
        dispatch() = {&kScalarTable, Backend::scalar};
        return true;
    }
#if TREECUT_HAVE_AVX2_TU
    if (b == Backend::avx2 && detail::avx2_supported()) {
        dispatch() = {detail::avx2_table(), Backend::avx2};
        return true;
    }
#endif
    return false;
}

void reset_backend() { dispatch() = detect(); }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

double sum(std::span<const double> x) { return dispatch().table->sum(x); }

double dot(std::span<const double> a, std::span<const double> b) {
    return dispatch().table->dot(a, b);
}

double weighted_neg_log2(std::span<const double> w, std::span<const double> v) {
    return dispatch().table->weighted_neg_log2(w, v);
}

void data_terms(std::span<const double> k, std::span<const double> b, double c,
                std::span<double> out) {
    dispatch().table->data_terms(k, b, c, out);
}

}  // namespace treecut::kernels
