#pragma once

// Internal: function table shared by the kernel backends.

#include <span>

namespace treecut::kernels::detail {

struct Table {
    double (*sum)(std::span<const double>);
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*weighted_neg_log2)(std::span<const double>, std::span<const double>);
    void (*data_terms)(std::span<const double>, std::span<const double>, double,
                       std::span<double>);
};

#if TREECUT_HAVE_AVX2_TU
const Table* avx2_table();
bool avx2_supported();
#endif

}  // namespace treecut::kernels::detail
