#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdreg/data.hpp"
#include "hdreg/numerics.hpp"

namespace hdreg {

enum class CovFamily { kBanded, kGeometricDecay };

struct SynthConfig {
	std::size_t n = 100;        // number of agents
	std::size_t d = 10;         // ambient dimension
	std::size_t k = 1;          // sparsity of the true parameter
	double q = 0.0;             // covariance approximate-sparsity exponent, in [0, 1)
	double s = 1.0;             // row lq budget of the covariance
	double sigma = 1.0;         // sub-Gaussian scale of covariates/responses
	double sigma_zeta = 0.1;    // response noise std
	double cost_rate = 1.0;     // exponential decay rate of privacy costs
	uint64_t seed = 1;
	double theta_norm = 1.0;    // target l2 norm of the true parameter, in (0, 1]
	CovFamily cov_family = CovFamily::kBanded;

	void validate() const; // throws ConfigError
};

struct RegressionInstance {
	SynthConfig cfg;
	Vector theta_star;  // k-sparse, ||theta_star||_2 == cfg.theta_norm
	SymMatrix sigma;    // unit diagonal; covariates have covariance (sigma^2/d) * Sigma
	double kappa_inf = 0.0; // diagnostic: min over canonical probes of ||Sigma w||_inf / ||w||_inf
	std::vector<AgentRecord> agents;
};

// Unit-diagonal covariance from the configured family, sized so that every
// row satisfies the lq budget: sum_j |sigma_ij|^q <= s. Throws ConfigError
// when s cannot accommodate a unit diagonal (s < 1).
SymMatrix make_covariance(const SynthConfig &cfg);

// Draws theta_star (k uniformly placed coordinates of value
// +-theta_norm/sqrt(k)), covariates x_i = (sigma/sqrt(d)) Sigma^{1/2} z_i with
// z_i standard normal, responses y_i = <theta_star, x_i> + N(0, sigma_zeta^2),
// and costs c_i ~ Exponential(cost_rate). Deterministic given cfg.seed.
RegressionInstance sample_instance(const SynthConfig &cfg);

// Factors Sigma^{1/2} once and samples instances that differ only in seed.
// Use this for Monte Carlo loops; sample_instance() refactors every call.
class InstanceSampler {
public:
	explicit InstanceSampler(const SynthConfig &base);
	RegressionInstance sample(uint64_t seed) const;
	const SymMatrix &sigma() const { return sigma_; }

private:
	SynthConfig base_;
	SymMatrix sigma_;
	SymMatrix sqrt_sigma_;
	double kappa_inf_ = 0.0;
};

struct AssumptionReport {
	bool theta_sparsity_ok = false;
	bool theta_norm_ok = false;
	bool cov_budget_ok = false;
	bool cov_pd_ok = false;
	bool subgaussian_ok = false;

	double max_row_budget = 0.0;
	double min_eigenvalue = 0.0;
	double max_standardized_fourth_moment = 0.0;

	bool all_ok() const {
		return theta_sparsity_ok && theta_norm_ok && cov_budget_ok && cov_pd_ok &&
		       subgaussian_ok;
	}
};

// Post-hoc validation of the generated instance: parameter sparsity and norm,
// covariance row budget, positive definiteness, and an empirical sub-Gaussian
// proxy (max standardized fourth moment of the covariate coordinates).
AssumptionReport check_assumptions(const RegressionInstance &inst, const SynthConfig &cfg,
                                   double fourth_moment_bound = 9.0);

// Versioned self-describing dataset files (JSON).
void save_instance(const RegressionInstance &inst, const std::string &path);
RegressionInstance load_instance(const std::string &path);

} // namespace hdreg
