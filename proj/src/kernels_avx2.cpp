// AVX2 variants of the kernels in kernels_scalar.cpp. Operation order matches
// the scalar reference exactly, so results are bit-identical.
#include "duo/kernels.hpp"

#include <immintrin.h>

namespace duo::kernels::avx2 {

void euclidean_matrix(const double* xs, const double* ys, int n, double* out) {
    for (int i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(xs[i]);
        const __m256d yi = _mm256_set1_pd(ys[i]);
        double* row = out + static_cast<long>(i) * n;
        int j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + j), xi);
            const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + j), yi);
            const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            _mm256_storeu_pd(row + j, _mm256_sqrt_pd(d2));
        }
        for (; j < n; ++j) {
            const double dx = xs[j] - xs[i];
            const double dy = ys[j] - ys[i];
            row[j] = __builtin_sqrt(dx * dx + dy * dy);
        }
    }
}

namespace {

// Shared min+argmin reduction. Lane indices track the first position (strict
// less-than update) so the reduction reproduces the scalar first-occurrence
// tie rule.
struct MinIdx {
    double value;
    int index;
};

inline MinIdx reduce_lanes(__m256d vmin, __m256d vidx) {
    alignas(32) double vals[4];
    alignas(32) double idxs[4];
    _mm256_store_pd(vals, vmin);
    _mm256_store_pd(idxs, vidx);
    MinIdx r{vals[0], static_cast<int>(idxs[0])};
    for (int l = 1; l < 4; ++l) {
        const int idx = static_cast<int>(idxs[l]);
        if (vals[l] < r.value || (vals[l] == r.value && idx < r.index)) {
            r.value = vals[l];
            r.index = idx;
        }
    }
    return r;
}

}  // namespace

double min_plus(const double* a, const double* b, int n, int* arg_out) {
    double best;
    int arg;
    if (n >= 4) {
        __m256d vmin = _mm256_add_pd(_mm256_loadu_pd(a), _mm256_loadu_pd(b));
        __m256d vidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
        __m256d cur = vidx;
        const __m256d four = _mm256_set1_pd(4.0);
        int i = 4;
        for (; i + 4 <= n; i += 4) {
            cur = _mm256_add_pd(cur, four);
            const __m256d v = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
            const __m256d lt = _mm256_cmp_pd(v, vmin, _CMP_LT_OQ);
            vmin = _mm256_blendv_pd(vmin, v, lt);
            vidx = _mm256_blendv_pd(vidx, cur, lt);
        }
        const MinIdx r = reduce_lanes(vmin, vidx);
        best = r.value;
        arg = r.index;
        for (; i < n; ++i) {
            const double v = a[i] + b[i];
            if (v < best) {
                best = v;
                arg = i;
            }
        }
    } else {
        best = a[0] + b[0];
        arg = 0;
        for (int i = 1; i < n; ++i) {
            const double v = a[i] + b[i];
            if (v < best) {
                best = v;
                arg = i;
            }
        }
    }
    *arg_out = arg;
    return best;
}

int argmin(const double* key, int n) {
    if (n < 4) {
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (key[i] < key[arg]) arg = i;
        return arg;
    }
    __m256d vmin = _mm256_loadu_pd(key);
    __m256d vidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d cur = vidx;
    const __m256d four = _mm256_set1_pd(4.0);
    int i = 4;
    for (; i + 4 <= n; i += 4) {
        cur = _mm256_add_pd(cur, four);
        const __m256d v = _mm256_loadu_pd(key + i);
        const __m256d lt = _mm256_cmp_pd(v, vmin, _CMP_LT_OQ);
        vmin = _mm256_blendv_pd(vmin, v, lt);
        vidx = _mm256_blendv_pd(vidx, cur, lt);
    }
    MinIdx r = reduce_lanes(vmin, vidx);
    for (; i < n; ++i) {
        if (key[i] < r.value) {
            r.value = key[i];
            r.index = i;
        }
    }
    return r.index;
}

void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n) {
    const __m256d vpu = _mm256_set1_pd(pi_u);
    int j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d cand = _mm256_add_pd(
            _mm256_add_pd(_mm256_loadu_pd(row_u + j), _mm256_loadu_pd(pi + j)), vpu);
        const __m256d k = _mm256_loadu_pd(key + j);
        const __m256d lt = _mm256_cmp_pd(cand, k, _CMP_LT_OQ);
        const int bits = _mm256_movemask_pd(lt);
        if (bits == 0) continue;
        _mm256_storeu_pd(key + j, _mm256_blendv_pd(k, cand, lt));
        if (bits & 1) parent[j] = u;
        if (bits & 2) parent[j + 1] = u;
        if (bits & 4) parent[j + 2] = u;
        if (bits & 8) parent[j + 3] = u;
    }
    for (; j < n; ++j) {
        const double cand = row_u[j] + pi[j] + pi_u;
        if (cand < key[j]) {
            key[j] = cand;
            parent[j] = u;
        }
    }
}

namespace {

inline void add_span(double* acc, const double* src, int len) {
    int i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(acc + i,
                         _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(src + i)));
    }
    for (; i < len; ++i) acc[i] += src[i];
}

}  // namespace

void rotate_accumulate(double* acc, const double* row, int offset, int n) {
    const int head = n - offset;
    add_span(acc, row + offset, head);
    add_span(acc + head, row, offset);
}

}  // namespace duo::kernels::avx2
