#include "duo/kernels.hpp"

#include <cmath>

namespace duo::kernels::scalar {

void euclidean_matrix(const double* xs, const double* ys, int n, double* out) {
    for (int i = 0; i < n; ++i) {
        const double xi = xs[i];
        const double yi = ys[i];
        double* row = out + static_cast<long>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double dx = xs[j] - xi;
            const double dy = ys[j] - yi;
            row[j] = std::sqrt(dx * dx + dy * dy);
        }
    }
}

double min_plus(const double* a, const double* b, int n, int* arg_out) {
    double best = a[0] + b[0];
    int arg = 0;
    for (int i = 1; i < n; ++i) {
        const double v = a[i] + b[i];
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    *arg_out = arg;
    return best;
}

int argmin(const double* key, int n) {
    int arg = 0;
    double best = key[0];
    for (int i = 1; i < n; ++i) {
        if (key[i] < best) {
            best = key[i];
            arg = i;
        }
    }
    return arg;
}

void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n) {
    for (int j = 0; j < n; ++j) {
        const double cand = row_u[j] + pi[j] + pi_u;
        if (cand < key[j]) {
            key[j] = cand;
            parent[j] = u;
        }
    }
}

void rotate_accumulate(double* acc, const double* row, int offset, int n) {
    const int head = n - offset;
    for (int l = 0; l < head; ++l) acc[l] += row[l + offset];
    for (int l = head; l < n; ++l) acc[l] += row[l - head];
}

}  // namespace duo::kernels::scalar
