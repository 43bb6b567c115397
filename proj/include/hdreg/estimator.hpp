#pragma once

#include <cstdint>
#include <string>

#include "hdreg/data.hpp"
#include "hdreg/numerics.hpp"

namespace hdreg {

struct PrivacyBudget {
	double eps = 1.0;
	double delta = 1e-3;

	void validate() const; // eps > 0, 0 < delta < 1
};

// How the cross-term noise N2 is scaled.
//  kNominal  - the published calibration: std proportional to tau_x * tau_y.
//  kStrict   - inflate N2 to cover the worst-case l2 sensitivity
//              2 * tau_y * min(r, tau_x sqrt(d)) / n, which can exceed the
//              nominal scale by up to sqrt(d). Default.
//  kDisabled - no noise at all; deterministic test hook only.
enum class NoiseMode { kNominal, kStrict, kDisabled };

struct Multipliers {
	double r = 1.0;
	double tau_x = 1.0;
	double tau_y = 1.0;
	double lambda = 1.0;
	double gamma = 1.0;
};

struct EstimatorConfig {
	double r = 1.0;         // l2 clip radius for the covariance term
	double tau_x = 1.0;     // element-wise covariate clip for the cross term
	double tau_y = 1.0;     // response clip
	double lambda_n = 0.0;  // soft threshold of the closed form
	double gamma = 0.5;     // statistical part of the hard threshold
	double thres = 0.0;     // hard threshold applied to the noisy covariance
	double tau_theta = 1.0; // projection radius of the released estimate
	PrivacyBudget budget;
	NoiseMode noise_mode = NoiseMode::kStrict;
	uint64_t seed = 1;

	// d is needed for the tau_x * sqrt(d) <= r constraint (strict mode only).
	void validate(std::size_t d) const;
};

// Default calibration, all scales in natural logs:
//   r        = m_r * sigma * sqrt(log n)
//   tau_x    = m_x * sigma * sqrt(log n) / sqrt(d)
//   tau_y    = m_y * sigma * sqrt(log n)
//   lambda_n = m_l * r^2 * sqrt(log d * log(1/delta)) / (sqrt(n) * eps)
//   gamma    = m_g * 0.5 * sigma^2
//   thres    = gamma * sqrt(log d / n)
//              + 4 r^2 * sqrt(2 log(1.25/delta)) * sqrt(log d) / (n eps)
// n and d are taken as reals so the formulas can be probed analytically.
EstimatorConfig default_config(double n, double d, double sigma, PrivacyBudget budget,
                               Multipliers mult = {});

// The hard threshold formula above, for recomputing after a gamma change.
double derived_threshold(double n, double d, double r, double gamma, PrivacyBudget budget);

// Per-entry noise scales used by perturb_stats.
double cov_noise_std(std::size_t n, const EstimatorConfig &cfg);
double xy_noise_std(std::size_t n, std::size_t d, const EstimatorConfig &cfg);

struct PrivateSufficientStats {
	SymMatrix cov_noisy;        // clipped second-moment matrix plus N1
	SymMatrix cov_thresholded;  // cov_noisy after the hard threshold
	Vector xy_noisy;            // clipped cross moments plus N2
	double noise_std_cov = 0.0;
	double noise_std_xy = 0.0;
};

// Noise-free clipped sufficient statistics:
//   gram = (1/n) sum clip_l2(x_i, r) clip_l2(x_i, r)^T
//   xy   = (1/n) sum clip_elementwise(x_i, tau_x) * clip_elementwise(y_i, tau_y)
struct SufficientStats {
	SymMatrix gram;
	Vector xy;
};
SufficientStats aggregate_stats(const ReportedDataset &data, const EstimatorConfig &cfg);

// Adds the calibrated Gaussian noise (symmetric N1 on the matrix, i.i.d. N2
// on the vector) and applies the hard threshold.
PrivateSufficientStats perturb_stats(const SufficientStats &stats, std::size_t n,
                                     const EstimatorConfig &cfg);

struct EstimateDiagnostics {
	double condition_estimate = 0.0;
	double relative_residual = 0.0;
	std::size_t entries_zeroed = 0;   // entries removed by the hard threshold
	std::size_t theta_hat_nnz = 0;
};

struct EstimateResult {
	Vector theta_hat; // soft-thresholded closed form
	Vector theta_bar; // theta_hat projected onto the tau_theta ball
	PrivateSufficientStats stats;
	EstimateDiagnostics diagnostics;
};

// The full private estimator: clip, aggregate, perturb, hard-threshold,
// solve, soft-threshold, project. Pure function of (data, cfg, cfg.seed).
// Throws SingularMatrixError when the thresholded covariance is not
// invertible (remedy: increase n or relax the privacy budget).
EstimateResult estimate(const ReportedDataset &data, const EstimatorConfig &cfg);

// Structured text export (JSON) of the released estimate, diagnostics, and a
// config echo.
std::string result_to_json(const EstimateResult &result, const EstimatorConfig &cfg);

} // namespace hdreg
