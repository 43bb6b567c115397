#include "hdreg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hdreg/errors.hpp"

namespace hdreg {

namespace {

void require_finite(const Vector &v, const char *what) {
	for (double x : v) {
		if (!std::isfinite(x)) {
			throw std::invalid_argument(std::string(what) + ": non-finite input entry");
		}
	}
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace

Vector soft_threshold(const Vector &u, double lambda) {
	if (lambda < 0.0 || !std::isfinite(lambda)) {
		throw std::invalid_argument("soft_threshold: lambda must be finite and >= 0");
	}
	require_finite(u, "soft_threshold");
	Vector out(u.size());
	for (std::size_t i = 0; i < u.size(); ++i) {
		out[i] = sgn(u[i]) * std::max(std::abs(u[i]) - lambda, 0.0);
	}
	return out;
}

Vector clip_l2(const Vector &x, double r) {
	if (!(r > 0.0) || !std::isfinite(r)) {
		throw std::invalid_argument("clip_l2: radius must be finite and > 0");
	}
	require_finite(x, "clip_l2");
	double n = norm2(x);
	if (n <= r) {
		return x;
	}
	double scale = r / n;
	Vector out(x.size());
	for (std::size_t i = 0; i < x.size(); ++i) {
		out[i] = x[i] * scale;
	}
	return out;
}

Vector clip_elementwise(const Vector &v, double tau) {
	if (!(tau > 0.0) || !std::isfinite(tau)) {
		throw std::invalid_argument("clip_elementwise: tau must be finite and > 0");
	}
	require_finite(v, "clip_elementwise");
	Vector out(v.size());
	for (std::size_t i = 0; i < v.size(); ++i) {
		out[i] = clip_elementwise(v[i], tau);
	}
	return out;
}

double clip_elementwise(double v, double tau) {
	return sgn(v) * std::min(std::abs(v), tau);
}

Vector project_l2_ball(const Vector &v, double tau_theta) {
	return clip_l2(v, tau_theta);
}

SymMatrix hard_threshold_matrix(const SymMatrix &m, double thres) {
	if (thres < 0.0 || !std::isfinite(thres)) {
		throw std::invalid_argument("hard_threshold_matrix: thres must be finite and >= 0");
	}
	std::size_t d = m.dim();
	SymMatrix out(d);
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t j = i; j < d; ++j) {
			double v = m(i, j);
			out.set(i, j, std::abs(v) > thres ? v : 0.0);
		}
	}
	return out;
}

double norm2(const Vector &v) {
	double s = 0.0;
	for (double x : v) {
		s += x * x;
	}
	return std::sqrt(s);
}

double norm1(const Vector &v) {
	double s = 0.0;
	for (double x : v) {
		s += std::abs(x);
	}
	return s;
}

double norm_inf(const Vector &v) {
	double s = 0.0;
	for (double x : v) {
		s = std::max(s, std::abs(x));
	}
	return s;
}

std::size_t count_nonzero(const Vector &v) {
	std::size_t c = 0;
	for (double x : v) {
		if (x != 0.0) {
			++c;
		}
	}
	return c;
}

double frobenius_norm(const SymMatrix &m) {
	double s = 0.0;
	std::size_t d = m.dim();
	const double *a = m.data();
	for (std::size_t i = 0; i < d * d; ++i) {
		s += a[i] * a[i];
	}
	return std::sqrt(s);
}

double op1_norm(const SymMatrix &m) {
	std::size_t d = m.dim();
	double best = 0.0;
	for (std::size_t j = 0; j < d; ++j) {
		double s = 0.0;
		for (std::size_t i = 0; i < d; ++i) {
			s += std::abs(m(i, j));
		}
		best = std::max(best, s);
	}
	return best;
}

double max_abs_entry(const SymMatrix &m) {
	std::size_t d = m.dim();
	double best = 0.0;
	const double *a = m.data();
	for (std::size_t i = 0; i < d * d; ++i) {
		best = std::max(best, std::abs(a[i]));
	}
	return best;
}

double EigenSym::min_value() const {
	double v = std::numeric_limits<double>::infinity();
	for (double x : values) {
		v = std::min(v, x);
	}
	return v;
}

double EigenSym::max_value() const {
	double v = -std::numeric_limits<double>::infinity();
	for (double x : values) {
		v = std::max(v, x);
	}
	return v;
}

//===--------------------------------------------------------------------===//
// Cyclic Jacobi eigendecomposition
//===--------------------------------------------------------------------===//

EigenSym eigen_sym(const SymMatrix &m) {
	const std::size_t d = m.dim();
	std::vector<double> a(m.data(), m.data() + d * d);
	std::vector<double> v(d * d, 0.0);
	for (std::size_t i = 0; i < d; ++i) {
		v[i * d + i] = 1.0;
	}

	if (d > 1) {
		double scale = 0.0;
		for (std::size_t i = 0; i < d * d; ++i) {
			scale = std::max(scale, std::abs(a[i]));
		}
		const double stop = (scale == 0.0) ? 0.0 : 1e-15 * scale;
		const int max_sweeps = 64;

		for (int sweep = 0; sweep < max_sweeps; ++sweep) {
			double off = 0.0;
			for (std::size_t p = 0; p + 1 < d; ++p) {
				for (std::size_t q = p + 1; q < d; ++q) {
					off = std::max(off, std::abs(a[p * d + q]));
				}
			}
			if (off <= stop) {
				break;
			}
			for (std::size_t p = 0; p + 1 < d; ++p) {
				for (std::size_t q = p + 1; q < d; ++q) {
					double apq = a[p * d + q];
					if (std::abs(apq) <= stop) {
						continue;
					}
					double app = a[p * d + p];
					double aqq = a[q * d + q];
					double theta = (aqq - app) / (2.0 * apq);
					double t = sgn(theta == 0.0 ? 1.0 : theta) /
					           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
					double c = 1.0 / std::sqrt(t * t + 1.0);
					double s = t * c;

					// rotate rows/cols p and q of a
					for (std::size_t k = 0; k < d; ++k) {
						double akp = a[k * d + p];
						double akq = a[k * d + q];
						a[k * d + p] = c * akp - s * akq;
						a[k * d + q] = s * akp + c * akq;
					}
					for (std::size_t k = 0; k < d; ++k) {
						double apk = a[p * d + k];
						double aqk = a[q * d + k];
						a[p * d + k] = c * apk - s * aqk;
						a[q * d + k] = s * apk + c * aqk;
					}
					// accumulate eigenvectors
					for (std::size_t k = 0; k < d; ++k) {
						double vkp = v[k * d + p];
						double vkq = v[k * d + q];
						v[k * d + p] = c * vkp - s * vkq;
						v[k * d + q] = s * vkp + c * vkq;
					}
				}
			}
		}
	}

	EigenSym out;
	out.dim = d;
	out.values.resize(d);
	for (std::size_t i = 0; i < d; ++i) {
		out.values[i] = a[i * d + i];
	}
	out.vectors = std::move(v);
	return out;
}

namespace {

// x = V diag(1/values) V^T b using a precomputed decomposition
Vector eigen_apply_inverse(const EigenSym &e, const Vector &b) {
	const std::size_t d = e.dim;
	Vector w(d, 0.0);
	for (std::size_t j = 0; j < d; ++j) {
		double s = 0.0;
		for (std::size_t i = 0; i < d; ++i) {
			s += e.vectors[i * d + j] * b[i];
		}
		w[j] = s / e.values[j];
	}
	Vector x(d, 0.0);
	for (std::size_t i = 0; i < d; ++i) {
		double s = 0.0;
		for (std::size_t j = 0; j < d; ++j) {
			s += e.vectors[i * d + j] * w[j];
		}
		x[i] = s;
	}
	return x;
}

} // namespace

Vector solve_symmetric(const SymMatrix &m, const Vector &b, SolveDiagnostics *diag) {
	const std::size_t d = m.dim();
	if (d == 0 || b.size() != d) {
		throw std::invalid_argument("solve_symmetric: dimension mismatch");
	}
	require_finite(b, "solve_symmetric");

	EigenSym e = eigen_sym(m);
	double amax = 0.0;
	double amin = std::numeric_limits<double>::infinity();
	for (double lam : e.values) {
		amax = std::max(amax, std::abs(lam));
		amin = std::min(amin, std::abs(lam));
	}
	double cond = (amin == 0.0) ? std::numeric_limits<double>::infinity() : amax / amin;
	if (diag) {
		diag->condition_estimate = cond;
	}
	if (!(cond <= 1e12)) {
		throw SingularMatrixError(
		    "solve_symmetric: matrix singular or ill-conditioned (condition estimate " +
		        std::to_string(cond) + " > 1e12)",
		    cond);
	}

	Vector x = eigen_apply_inverse(e, b);
	double bnorm = norm2(b);
	double target = (bnorm == 0.0) ? 0.0 : 1e-12 * bnorm;
	double rel = 0.0;
	int steps = 0;
	for (; steps < 6; ++steps) {
		Vector r = sym_matvec(m, x);
		for (std::size_t i = 0; i < d; ++i) {
			r[i] = b[i] - r[i];
		}
		double rnorm = norm2(r);
		rel = (bnorm == 0.0) ? rnorm : rnorm / bnorm;
		if (rnorm <= target) {
			break;
		}
		Vector dx = eigen_apply_inverse(e, r);
		for (std::size_t i = 0; i < d; ++i) {
			x[i] += dx[i];
		}
	}
	if (diag) {
		diag->relative_residual = rel;
		diag->refinement_steps = steps;
	}
	if (!(rel <= 1e-10)) {
		throw SingularMatrixError(
		    "solve_symmetric: residual " + std::to_string(rel) +
		        " exceeds 1e-10 (condition estimate " + std::to_string(cond) + ")",
		    cond);
	}
	return x;
}

SymMatrix sqrt_psd(const SymMatrix &m) {
	const std::size_t d = m.dim();
	EigenSym e = eigen_sym(m);
	std::vector<double> sq(d);
	for (std::size_t j = 0; j < d; ++j) {
		sq[j] = std::sqrt(std::max(e.values[j], 0.0));
	}
	SymMatrix out(d);
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t j = i; j < d; ++j) {
			double s = 0.0;
			for (std::size_t k = 0; k < d; ++k) {
				s += e.vectors[i * d + k] * sq[k] * e.vectors[j * d + k];
			}
			out.set(i, j, s);
		}
	}
	return out;
}

Vector sym_matvec(const SymMatrix &m, const Vector &v) {
	const std::size_t d = m.dim();
	Vector y(d, 0.0);
	const double *a = m.data();
	for (std::size_t i = 0; i < d; ++i) {
		double s = 0.0;
		for (std::size_t j = 0; j < d; ++j) {
			s += a[i * d + j] * v[j];
		}
		y[i] = s;
	}
	return y;
}

double dot(const Vector &a, const Vector &b) {
	double s = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i) {
		s += a[i] * b[i];
	}
	return s;
}

} // namespace hdreg
