// Arithmetic inner-loop kernels: a scalar reference implementation plus an
// AVX2 variant selected at runtime. Both backends are bit-identical by
// construction (no FP contraction, same operation order), so solver output
// never depends on the host CPU.
#ifndef DUO_KERNELS_HPP
#define DUO_KERNELS_HPP

#include <string>

namespace duo::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen at startup: AVX2 when the CPU supports it, scalar otherwise.
// The DUO_KERNEL_BACKEND environment variable ("scalar" or "avx2") overrides
// the automatic choice.
Backend active_backend();
std::string backend_name(Backend b);
bool avx2_supported();

// Throws std::invalid_argument if the requested backend is unavailable.
void set_backend(Backend b);

// Dense Euclidean distance matrix: out[i*n+j] = dist(points i, j).
void euclidean_matrix(const double* xs, const double* ys, int n, double* out);

// min over i of a[i] + b[i]; *arg_out receives the lowest attaining index.
double min_plus(const double* a, const double* b, int n, int* arg_out);

// Index of the minimum element, lowest index on ties.
int argmin(const double* key, int n);

// Prim relaxation sweep with node potentials:
//   cand = row_u[j] + pi[j] + pi_u;  if cand < key[j]: key[j] = cand, parent[j] = u.
void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n);

// Cyclic accumulate: acc[l] += row[(l + offset) % n] for all l. 0 <= offset < n.
void rotate_accumulate(double* acc, const double* row, int offset, int n);

// Reference implementations, always available; the public entry points above
// dispatch to these or to the AVX2 variants.
namespace scalar {
void euclidean_matrix(const double* xs, const double* ys, int n, double* out);
double min_plus(const double* a, const double* b, int n, int* arg_out);
int argmin(const double* key, int n);
void prim_scan(double* key, int* parent, const double* row_u, const double* pi,
               double pi_u, int u, int n);
void rotate_accumulate(double* acc, const double* row, int offset, int n);
}  // namespace scalar

}  // namespace duo::kernels

#endif
