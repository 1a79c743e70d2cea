// AVX2 kernel backend. Compiled with -mavx2 -mfma; selected at runtime
// only when the CPU reports both feature bits.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "kernels_table.hpp"

namespace treecut::kernels::detail {

namespace {

// log2 of 4 positive normal doubles. x = m * 2^e with m in (sqrt2/2, sqrt2],
// then log2(m) via the atanh series in s = (m-1)/(m+1); |s| <= 0.1716 so ten
// odd terms reach double precision. Non-positive or denormal lanes produce
// finite garbage, never NaN; callers mask such lanes out.
inline __m256d log2_pd(__m256d x) {
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    const __m256i magic_i = _mm256_set1_epi64x(0x4330000000000000LL);
    const __m256d magic_d = _mm256_set1_pd(4503599627370496.0);  // 2^52

    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i expi = _mm256_srli_epi64(bits, 52);
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(expi, magic_i)), magic_d);
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    const __m256d gt = _mm256_cmp_pd(
        m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
    e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), gt);

    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, _mm256_set1_pd(1.0)),
                                    _mm256_add_pd(m, _mm256_set1_pd(1.0)));
    const __m256d t = _mm256_mul_pd(s, s);

    __m256d p = _mm256_set1_pd(1.0 / 19.0);
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0));

    // log2(x) = e + s * p * (2 / ln 2)
    return _mm256_fmadd_pd(_mm256_mul_pd(s, p),
                           _mm256_set1_pd(2.8853900817779268), e);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

double sum_avx2(std::span<const double> x) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= x.size(); i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
    }
    double s = hsum(acc);
    for (; i < x.size(); ++i) s += x[i];
    return s;
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= a.size(); i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i),
                              _mm256_loadu_pd(b.data() + i), acc);
    }
    double s = hsum(acc);
    for (; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double weighted_neg_log2_avx2(std::span<const double> w,
                              std::span<const double> v) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    __m256d bad = _mm256_setzero_pd();
    const __m256d zero = _mm256_setzero_pd();
    for (; i + 4 <= w.size(); i += 4) {
        const __m256d wv = _mm256_loadu_pd(w.data() + i);
        const __m256d vv = _mm256_loadu_pd(v.data() + i);
        const __m256d live = _mm256_cmp_pd(wv, zero, _CMP_NEQ_OQ);
        bad = _mm256_or_pd(
            bad, _mm256_and_pd(live, _mm256_cmp_pd(vv, zero, _CMP_LE_OQ)));
        // dead lanes have w == 0, so w * log2(junk) == 0
        acc = _mm256_fnmadd_pd(wv, log2_pd(vv), acc);
    }
    if (_mm256_movemask_pd(bad) != 0) {
        return std::numeric_limits<double>::infinity();
    }
    double s = hsum(acc);
    for (; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (v[i] <= 0.0) return std::numeric_limits<double>::infinity();
        s -= w[i] * std::log2(v[i]);
    }
    return s;
}

void data_terms_avx2(std::span<const double> k, std::span<const double> b,
                     double c, std::span<double> out) {
    std::size_t i = 0;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d cc = _mm256_set1_pd(c);
    for (; i + 4 <= k.size(); i += 4) {
        const __m256d kv = _mm256_loadu_pd(k.data() + i);
        const __m256d bv = _mm256_loadu_pd(b.data() + i);
        const __m256d dead = _mm256_cmp_pd(kv, zero, _CMP_EQ_OQ);
        const __m256d t =
            _mm256_sub_pd(_mm256_add_pd(cc, log2_pd(bv)), log2_pd(kv));
        const __m256d r = _mm256_blendv_pd(_mm256_mul_pd(kv, t), zero, dead);
        _mm256_storeu_pd(out.data() + i, r);
    }
    for (; i < k.size(); ++i) {
        out[i] = (k[i] == 0.0)
                     ? 0.0
                     : k[i] * (c + std::log2(b[i]) - std::log2(k[i]));
    }
}

constexpr Table kAvx2Table{sum_avx2, dot_avx2, weighted_neg_log2_avx2,
                           data_terms_avx2};

}  // namespace

const Table* avx2_table() { return &kAvx2Table; }

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace treecut::kernels::detail
