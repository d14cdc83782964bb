#include "duo/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace duo::kernels {

#if DUO_BUILD_AVX2
namespace avx2 {
void euclidean_matrix(const double* xs, const double* ys, int n, double* out);
double min_plus(const double* a, const double* b, int n, int* arg_out);
int argmin(const double* key, int n);
void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n);
void rotate_accumulate(double* acc, const double* row, int offset, int n);
}  // namespace avx2
#endif

bool avx2_supported() {
#if DUO_BUILD_AVX2
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Backend initial_backend() {
    if (const char* env = std::getenv("DUO_KERNEL_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
    static Backend b = initial_backend();
    return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        throw std::invalid_argument("avx2 kernel backend not supported on this CPU");
    backend_slot() = b;
}

void euclidean_matrix(const double* xs, const double* ys, int n, double* out) {
#if DUO_BUILD_AVX2
    if (active_backend() == Backend::avx2) return avx2::euclidean_matrix(xs, ys, n, out);
#endif
    scalar::euclidean_matrix(xs, ys, n, out);
}

double min_plus(const double* a, const double* b, int n, int* arg_out) {
#if DUO_BUILD_AVX2
    if (active_backend() == Backend::avx2) return avx2::min_plus(a, b, n, arg_out);
#endif
    return scalar::min_plus(a, b, n, arg_out);
}

int argmin(const double* key, int n) {
#if DUO_BUILD_AVX2
    if (active_backend() == Backend::avx2) return avx2::argmin(key, n);
#endif
    return scalar::argmin(key, n);
}

void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n) {
#if DUO_BUILD_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::prim_scan(key, parent, row_u, pi, pi_u, u, n);
#endif
    scalar::prim_scan(key, parent, row_u, pi, pi_u, u, n);
}

void rotate_accumulate(double* acc, const double* row, int offset, int n) {
#if DUO_BUILD_AVX2
    if (active_backend() == Backend::avx2) return avx2::rotate_accumulate(acc, row, offset, n);
#endif
    scalar::rotate_accumulate(acc, row, offset, n);
}

}  // namespace duo::kernels
