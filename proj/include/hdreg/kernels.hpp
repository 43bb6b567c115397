#pragma once

#include <cstdint>

#include "hdreg/numerics.hpp"

namespace hdreg {

// Data-parallel inner loops of the pipeline, OpenMP-parallelized. Every
// kernel writes each output element as a pure function of the inputs (noise
// entries are seeded per element), so results are identical bit-for-bit for
// any thread count. hdreg::ref holds the plain serial implementations; tests
// assert exact agreement and tools/bench_kernels compares their speed.

namespace kernels {

// (1/n) sum over records of clip_l2(x_i, r) clip_l2(x_i, r)^T.
// x is n x d row-major.
SymMatrix gram_clipped(const double *x, std::size_t n, std::size_t d, double r);

// (1/n) sum over records of clip_elementwise(x_i, tau_x) * clip_elementwise(y_i, tau_y)
Vector xy_clipped(const double *x, const double *y, std::size_t n, std::size_t d,
                  double tau_x, double tau_y);

// Symmetric matrix whose upper triangle (diagonal included) is i.i.d.
// N(0, stddev^2), mirrored to the lower triangle. Entry (i, j) is drawn from
// its own stream derived from (seed, i * d + j).
SymMatrix sym_gaussian_noise(std::size_t d, double stddev, uint64_t seed);

// i.i.d. N(0, stddev^2) coordinates, per-coordinate streams.
Vector gaussian_vector(std::size_t d, double stddev, uint64_t seed);

void hard_threshold_inplace(SymMatrix &m, double thres);

// Row i of the output is scale * sqrt_sigma * z_i with z_i standard normal
// drawn from the stream (seed, i). Output is n x d row-major.
std::vector<double> sample_rows_gaussian(const SymMatrix &sqrt_sigma, std::size_t n,
                                         double scale, uint64_t seed);

} // namespace kernels

namespace ref {

SymMatrix gram_clipped(const double *x, std::size_t n, std::size_t d, double r);
Vector xy_clipped(const double *x, const double *y, std::size_t n, std::size_t d,
                  double tau_x, double tau_y);
SymMatrix sym_gaussian_noise(std::size_t d, double stddev, uint64_t seed);
Vector gaussian_vector(std::size_t d, double stddev, uint64_t seed);
void hard_threshold_inplace(SymMatrix &m, double thres);
std::vector<double> sample_rows_gaussian(const SymMatrix &sqrt_sigma, std::size_t n,
                                         double scale, uint64_t seed);

} // namespace ref

} // namespace hdreg
