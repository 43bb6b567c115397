#pragma once

#include <cstddef>
#include <vector>

namespace hdreg {

using Vector = std::vector<double>;

//===--------------------------------------------------------------------===//
// SymMatrix
//===--------------------------------------------------------------------===//
// Dense symmetric matrix. Writes go through set() which mirrors the entry, so
// entries[i][j] == entries[j][i] holds exactly at all times.
class SymMatrix {
public:
	SymMatrix() = default;
	explicit SymMatrix(std::size_t d) : d_(d), a_(d * d, 0.0) {}

	static SymMatrix identity(std::size_t d) {
		SymMatrix m(d);
		for (std::size_t i = 0; i < d; ++i) {
			m.a_[i * d + i] = 1.0;
		}
		return m;
	}

	std::size_t dim() const { return d_; }

	double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

	void set(std::size_t i, std::size_t j, double v) {
		a_[i * d_ + j] = v;
		a_[j * d_ + i] = v;
	}

	double *data() { return a_.data(); }
	const double *data() const { return a_.data(); }

	bool operator==(const SymMatrix &other) const = default;

private:
	std::size_t d_ = 0;
	std::vector<double> a_;
};

//===--------------------------------------------------------------------===//
// Element-wise / fixed-point operators
//===--------------------------------------------------------------------===//

// sgn(u_i) * max(|u_i| - lambda, 0) per coordinate. lambda >= 0.
Vector soft_threshold(const Vector &u, double lambda);

// x * min(1, r / ||x||_2). Result stays inside the l2 ball of radius r, the
// direction is preserved. r > 0.
Vector clip_l2(const Vector &x, double r);

// sgn(v_i) * min(|v_i|, tau) per coordinate. tau > 0.
Vector clip_elementwise(const Vector &v, double tau);
double clip_elementwise(double v, double tau);

// Euclidean projection onto the closed l2 ball of radius tau_theta. Same
// formula as clip_l2; kept as its own name because call sites mean different
// things by it.
Vector project_l2_ball(const Vector &v, double tau_theta);

// Zeroes entries with |m_ij| <= thres (strict ">" keeps an entry). Symmetry
// is preserved. thres >= 0.
SymMatrix hard_threshold_matrix(const SymMatrix &m, double thres);

//===--------------------------------------------------------------------===//
// Norms
//===--------------------------------------------------------------------===//

double norm2(const Vector &v);
double norm1(const Vector &v);
double norm_inf(const Vector &v);
std::size_t count_nonzero(const Vector &v);

double frobenius_norm(const SymMatrix &m);
// Operator 1-norm (max absolute column sum); equals the operator inf-norm for
// symmetric matrices.
double op1_norm(const SymMatrix &m);
double max_abs_entry(const SymMatrix &m);

//===--------------------------------------------------------------------===//
// Symmetric eigendecomposition and solve
//===--------------------------------------------------------------------===//

struct EigenSym {
	// vectors is d x d row-major; column j holds the eigenvector for values[j]
	std::vector<double> values;
	std::vector<double> vectors;
	std::size_t dim = 0;

	double min_value() const;
	double max_value() const;
};

// Cyclic Jacobi. Deterministic; handles indefinite matrices.
EigenSym eigen_sym(const SymMatrix &m);

struct SolveDiagnostics {
	double condition_estimate = 0.0;
	double relative_residual = 0.0;
	int refinement_steps = 0;
};

// Factor-and-solve for M x = b via the symmetric eigendecomposition, with
// iterative refinement until the relative residual is <= 1e-12 (up to a small
// step cap). Throws SingularMatrixError carrying the condition estimate when
// the estimated condition number exceeds 1e12 or the residual target 1e-10
// cannot be met.
Vector solve_symmetric(const SymMatrix &m, const Vector &b,
                       SolveDiagnostics *diag = nullptr);

// Matrix square root of a positive semi-definite matrix (eigenvalues clamped
// at zero before the square root).
SymMatrix sqrt_psd(const SymMatrix &m);

// y = M v
Vector sym_matvec(const SymMatrix &m, const Vector &v);

double dot(const Vector &a, const Vector &b);

} // namespace hdreg
