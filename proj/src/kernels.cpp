#include "hdreg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hdreg/rng.hpp"

namespace hdreg {

namespace {

inline double clip_scalar(double v, double tau) {
	double a = std::abs(v);
	double c = a < tau ? a : tau;
	return v > 0.0 ? c : (v < 0.0 ? -c : 0.0);
}

inline double gaussian_at(uint64_t seed, uint64_t index, double stddev) {
	Rng g(derive_seed(seed, index));
	return stddev * g.next_gaussian();
}

// scale factor min(1, r/||row||)
inline double l2_clip_scale(const double *row, std::size_t d, double r) {
	double s = 0.0;
	for (std::size_t j = 0; j < d; ++j) {
		s += row[j] * row[j];
	}
	double n = std::sqrt(s);
	return n > r ? r / n : 1.0;
}

} // namespace

//===--------------------------------------------------------------------===//
// OpenMP kernels
//===--------------------------------------------------------------------===//

namespace kernels {

SymMatrix gram_clipped(const double *x, std::size_t n, std::size_t d, double r) {
	std::vector<double> clipped(n * d);
#pragma omp parallel for schedule(static)
	for (long long k = 0; k < static_cast<long long>(n); ++k) {
		const double *row = x + static_cast<std::size_t>(k) * d;
		double sc = l2_clip_scale(row, d, r);
		double *out = clipped.data() + static_cast<std::size_t>(k) * d;
		for (std::size_t j = 0; j < d; ++j) {
			out[j] = row[j] * sc;
		}
	}

	SymMatrix g(d);
	double *a = const_cast<double *>(g.data());
	const double inv_n = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
	for (long long i = 0; i < static_cast<long long>(d); ++i) {
		for (std::size_t j = static_cast<std::size_t>(i); j < d; ++j) {
			double s = 0.0;
			for (std::size_t k = 0; k < n; ++k) {
				const double *row = clipped.data() + k * d;
				s += row[static_cast<std::size_t>(i)] * row[j];
			}
			s *= inv_n;
			a[static_cast<std::size_t>(i) * d + j] = s;
			a[j * d + static_cast<std::size_t>(i)] = s;
		}
	}
	return g;
}

Vector xy_clipped(const double *x, const double *y, std::size_t n, std::size_t d,
                  double tau_x, double tau_y) {
	Vector out(d, 0.0);
	const double inv_n = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
	for (long long j = 0; j < static_cast<long long>(d); ++j) {
		double s = 0.0;
		for (std::size_t k = 0; k < n; ++k) {
			s += clip_scalar(x[k * d + static_cast<std::size_t>(j)], tau_x) *
			     clip_scalar(y[k], tau_y);
		}
		out[static_cast<std::size_t>(j)] = s * inv_n;
	}
	return out;
}

SymMatrix sym_gaussian_noise(std::size_t d, double stddev, uint64_t seed) {
	SymMatrix m(d);
	double *a = m.data();
#pragma omp parallel for schedule(static)
	for (long long i = 0; i < static_cast<long long>(d); ++i) {
		for (std::size_t j = static_cast<std::size_t>(i); j < d; ++j) {
			double v = gaussian_at(seed, static_cast<std::size_t>(i) * d + j, stddev);
			a[static_cast<std::size_t>(i) * d + j] = v;
			a[j * d + static_cast<std::size_t>(i)] = v;
		}
	}
	return m;
}

Vector gaussian_vector(std::size_t d, double stddev, uint64_t seed) {
	Vector v(d);
#pragma omp parallel for schedule(static)
	for (long long j = 0; j < static_cast<long long>(d); ++j) {
		v[static_cast<std::size_t>(j)] =
		    gaussian_at(seed, static_cast<uint64_t>(j), stddev);
	}
	return v;
}

void hard_threshold_inplace(SymMatrix &m, double thres) {
	std::size_t d = m.dim();
	double *a = m.data();
#pragma omp parallel for schedule(static)
	for (long long i = 0; i < static_cast<long long>(d * d); ++i) {
		if (!(std::abs(a[i]) > thres)) {
			a[i] = 0.0;
		}
	}
}

std::vector<double> sample_rows_gaussian(const SymMatrix &sqrt_sigma, std::size_t n,
                                         double scale, uint64_t seed) {
	const std::size_t d = sqrt_sigma.dim();
	std::vector<double> out(n * d);
	const double *s = sqrt_sigma.data();
#pragma omp parallel for schedule(static)
	for (long long i = 0; i < static_cast<long long>(n); ++i) {
		Rng g(derive_seed(seed, static_cast<uint64_t>(i)));
		std::vector<double> z(d);
		for (std::size_t j = 0; j < d; ++j) {
			z[j] = g.next_gaussian();
		}
		double *row = out.data() + static_cast<std::size_t>(i) * d;
		for (std::size_t r = 0; r < d; ++r) {
			double acc = 0.0;
			for (std::size_t c = 0; c < d; ++c) {
				acc += s[r * d + c] * z[c];
			}
			row[r] = scale * acc;
		}
	}
	return out;
}

} // namespace kernels

//===--------------------------------------------------------------------===//
// Serial reference implementations
//===--------------------------------------------------------------------===//

namespace ref {

SymMatrix gram_clipped(const double *x, std::size_t n, std::size_t d, double r) {
	std::vector<double> clipped(n * d);
	for (std::size_t k = 0; k < n; ++k) {
		const double *row = x + k * d;
		double sc = l2_clip_scale(row, d, r);
		for (std::size_t j = 0; j < d; ++j) {
			clipped[k * d + j] = row[j] * sc;
		}
	}
	SymMatrix g(d);
	double *a = g.data();
	const double inv_n = 1.0 / static_cast<double>(n);
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t j = i; j < d; ++j) {
			double s = 0.0;
			for (std::size_t k = 0; k < n; ++k) {
				s += clipped[k * d + i] * clipped[k * d + j];
			}
			s *= inv_n;
			a[i * d + j] = s;
			a[j * d + i] = s;
		}
	}
	return g;
}

Vector xy_clipped(const double *x, const double *y, std::size_t n, std::size_t d,
                  double tau_x, double tau_y) {
	Vector out(d, 0.0);
	const double inv_n = 1.0 / static_cast<double>(n);
	for (std::size_t j = 0; j < d; ++j) {
		double s = 0.0;
		for (std::size_t k = 0; k < n; ++k) {
			s += clip_scalar(x[k * d + j], tau_x) * clip_scalar(y[k], tau_y);
		}
		out[j] = s * inv_n;
	}
	return out;
}

SymMatrix sym_gaussian_noise(std::size_t d, double stddev, uint64_t seed) {
	SymMatrix m(d);
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t j = i; j < d; ++j) {
			m.set(i, j, gaussian_at(seed, i * d + j, stddev));
		}
	}
	return m;
}

Vector gaussian_vector(std::size_t d, double stddev, uint64_t seed) {
	Vector v(d);
	for (std::size_t j = 0; j < d; ++j) {
		v[j] = gaussian_at(seed, j, stddev);
	}
	return v;
}

void hard_threshold_inplace(SymMatrix &m, double thres) {
	std::size_t d = m.dim();
	double *a = m.data();
	for (std::size_t i = 0; i < d * d; ++i) {
		if (!(std::abs(a[i]) > thres)) {
			a[i] = 0.0;
		}
	}
}

std::vector<double> sample_rows_gaussian(const SymMatrix &sqrt_sigma, std::size_t n,
                                         double scale, uint64_t seed) {
	const std::size_t d = sqrt_sigma.dim();
	std::vector<double> out(n * d);
	const double *s = sqrt_sigma.data();
	std::vector<double> z(d);
	for (std::size_t i = 0; i < n; ++i) {
		Rng g(derive_seed(seed, i));
		for (std::size_t j = 0; j < d; ++j) {
			z[j] = g.next_gaussian();
		}
		for (std::size_t r = 0; r < d; ++r) {
			double acc = 0.0;
			for (std::size_t c = 0; c < d; ++c) {
				acc += s[r * d + c] * z[c];
			}
			out[i * d + r] = scale * acc;
		}
	}
	return out;
}

} // namespace ref

} // namespace hdreg
