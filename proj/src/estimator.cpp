#include "hdreg/estimator.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hdreg/errors.hpp"
#include "hdreg/kernels.hpp"
#include "hdreg/rng.hpp"

namespace hdreg {

void PrivacyBudget::validate() const {
	if (!(eps > 0.0)) throw ConfigError("PrivacyBudget: eps must be > 0");
	if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("PrivacyBudget: delta must be in (0, 1)");
}

void EstimatorConfig::validate(std::size_t d) const {
	budget.validate();
	if (!(r > 0.0)) throw ConfigError("EstimatorConfig: r must be > 0");
	if (!(tau_x > 0.0)) throw ConfigError("EstimatorConfig: tau_x must be > 0");
	if (!(tau_y > 0.0)) throw ConfigError("EstimatorConfig: tau_y must be > 0");
	if (lambda_n < 0.0) throw ConfigError("EstimatorConfig: lambda_n must be >= 0");
	if (!(gamma > 0.0)) throw ConfigError("EstimatorConfig: gamma must be > 0");
	if (thres < 0.0) throw ConfigError("EstimatorConfig: thres must be >= 0");
	if (!(tau_theta > 0.0)) throw ConfigError("EstimatorConfig: tau_theta must be > 0");
	if (noise_mode == NoiseMode::kStrict &&
	    tau_x * std::sqrt(static_cast<double>(d)) > r * (1.0 + 1e-12)) {
		throw ConfigError(
		    "EstimatorConfig: tau_x * sqrt(d) must not exceed r in strict noise mode "
		    "(the cross-term sensitivity analysis needs the element-wise clipped "
		    "covariate to stay inside the r-ball)");
	}
}

double derived_threshold(double n, double d, double r, double gamma, PrivacyBudget budget) {
	double stat = gamma * std::sqrt(std::log(d) / n);
	double noise = 4.0 * r * r * std::sqrt(2.0 * std::log(1.25 / budget.delta)) *
	               std::sqrt(std::log(d)) / (n * budget.eps);
	return stat + noise;
}

EstimatorConfig default_config(double n, double d, double sigma, PrivacyBudget budget,
                               Multipliers mult) {
	if (!(n >= 2.0)) throw ConfigError("default_config: n must be >= 2");
	if (!(d >= 1.0)) throw ConfigError("default_config: d must be >= 1");
	if (!(sigma > 0.0)) throw ConfigError("default_config: sigma must be > 0");
	budget.validate();

	EstimatorConfig cfg;
	cfg.budget = budget;
	double sln = sigma * std::sqrt(std::log(n));
	cfg.r = mult.r * sln;
	cfg.tau_x = mult.tau_x * sln / std::sqrt(d);
	cfg.tau_y = mult.tau_y * sln;
	cfg.lambda_n = mult.lambda * cfg.r * cfg.r *
	               std::sqrt(std::log(d) * std::log(1.0 / budget.delta)) /
	               (std::sqrt(n) * budget.eps);
	cfg.gamma = mult.gamma * 0.5 * sigma * sigma;
	cfg.thres = derived_threshold(n, d, cfg.r, cfg.gamma, budget);
	return cfg;
}

double cov_noise_std(std::size_t n, const EstimatorConfig &cfg) {
	if (cfg.noise_mode == NoiseMode::kDisabled) {
		return 0.0;
	}
	const PrivacyBudget &b = cfg.budget;
	return std::sqrt(32.0 * std::log(2.5 / b.delta)) * cfg.r * cfg.r /
	       (static_cast<double>(n) * b.eps);
}

double xy_noise_std(std::size_t n, std::size_t d, const EstimatorConfig &cfg) {
	if (cfg.noise_mode == NoiseMode::kDisabled) {
		return 0.0;
	}
	const PrivacyBudget &b = cfg.budget;
	double nominal = std::sqrt(32.0 * std::log(2.5 / b.delta)) * cfg.tau_x * cfg.tau_y /
	                 (static_cast<double>(n) * b.eps);
	if (cfg.noise_mode == NoiseMode::kNominal) {
		return nominal;
	}
	// Gaussian mechanism at (eps/2, delta/2) against the worst-case l2
	// sensitivity 2 * tau_y * min(r, tau_x sqrt(d)) / n.
	double delta2 = cfg.tau_y * std::min(cfg.r, cfg.tau_x * std::sqrt(static_cast<double>(d)));
	double strict = 2.0 * std::sqrt(2.0 * std::log(2.5 / b.delta)) * delta2 * 2.0 /
	                (static_cast<double>(n) * b.eps);
	return std::max(nominal, strict);
}

SufficientStats aggregate_stats(const ReportedDataset &data, const EstimatorConfig &cfg) {
	data.validate();
	const std::size_t n = data.size();
	const std::size_t d = data.dim();
	if (n == 0 || d == 0) {
		throw ConfigError("aggregate_stats: empty dataset");
	}

	std::vector<double> x(n * d);
	std::vector<double> y(n);
	for (std::size_t i = 0; i < n; ++i) {
		const ReportedRecord &rec = data.records[i];
		std::copy(rec.x.begin(), rec.x.end(), x.begin() + static_cast<std::ptrdiff_t>(i * d));
		y[i] = rec.y_hat;
	}

	SufficientStats out;
	out.gram = kernels::gram_clipped(x.data(), n, d, cfg.r);
	out.xy = kernels::xy_clipped(x.data(), y.data(), n, d, cfg.tau_x, cfg.tau_y);
	return out;
}

PrivateSufficientStats perturb_stats(const SufficientStats &stats, std::size_t n,
                                     const EstimatorConfig &cfg) {
	const std::size_t d = stats.gram.dim();
	PrivateSufficientStats out;
	out.noise_std_cov = cov_noise_std(n, cfg);
	out.noise_std_xy = xy_noise_std(n, d, cfg);

	out.cov_noisy = stats.gram;
	out.xy_noisy = stats.xy;
	if (cfg.noise_mode != NoiseMode::kDisabled) {
		SymMatrix n1 = kernels::sym_gaussian_noise(d, out.noise_std_cov,
		                                           derive_seed(cfg.seed, 101));
		double *a = out.cov_noisy.data();
		const double *b = n1.data();
		for (std::size_t i = 0; i < d * d; ++i) {
			a[i] += b[i];
		}
		Vector n2 = kernels::gaussian_vector(d, out.noise_std_xy, derive_seed(cfg.seed, 102));
		for (std::size_t i = 0; i < d; ++i) {
			out.xy_noisy[i] += n2[i];
		}
	}

	out.cov_thresholded = out.cov_noisy;
	kernels::hard_threshold_inplace(out.cov_thresholded, cfg.thres);
	return out;
}

EstimateResult estimate(const ReportedDataset &data, const EstimatorConfig &cfg) {
	cfg.validate(data.dim());
	SufficientStats stats = aggregate_stats(data, cfg);
	const std::size_t n = data.size();
	const std::size_t d = data.dim();

	EstimateResult res;
	res.stats = perturb_stats(stats, n, cfg);

	std::size_t zeroed = 0;
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t j = 0; j < d; ++j) {
			if (res.stats.cov_noisy(i, j) != 0.0 && res.stats.cov_thresholded(i, j) == 0.0) {
				++zeroed;
			}
		}
	}
	res.diagnostics.entries_zeroed = zeroed;

	SolveDiagnostics sd;
	Vector raw;
	try {
		raw = solve_symmetric(res.stats.cov_thresholded, res.stats.xy_noisy, &sd);
	} catch (const SingularMatrixError &e) {
		throw SingularMatrixError(
		    std::string(e.what()) +
		        " [the thresholded covariance estimate is not invertible at this sample "
		        "size; increase n or relax the privacy budget]",
		    e.condition_estimate());
	}
	res.diagnostics.condition_estimate = sd.condition_estimate;
	res.diagnostics.relative_residual = sd.relative_residual;

	res.theta_hat = soft_threshold(raw, cfg.lambda_n);
	res.theta_bar = project_l2_ball(res.theta_hat, cfg.tau_theta);
	res.diagnostics.theta_hat_nnz = count_nonzero(res.theta_hat);
	return res;
}

std::string result_to_json(const EstimateResult &result, const EstimatorConfig &cfg) {
	const char *mode = cfg.noise_mode == NoiseMode::kNominal
	                       ? "nominal"
	                       : (cfg.noise_mode == NoiseMode::kStrict ? "strict" : "disabled");
	nlohmann::json j{
	    {"theta_bar", result.theta_bar},
	    {"theta_hat_nnz", result.diagnostics.theta_hat_nnz},
	    {"condition_estimate", result.diagnostics.condition_estimate},
	    {"relative_residual", result.diagnostics.relative_residual},
	    {"entries_zeroed", result.diagnostics.entries_zeroed},
	    {"noise_std_cov", result.stats.noise_std_cov},
	    {"noise_std_xy", result.stats.noise_std_xy},
	    {"config",
	     {{"r", cfg.r},
	      {"tau_x", cfg.tau_x},
	      {"tau_y", cfg.tau_y},
	      {"lambda_n", cfg.lambda_n},
	      {"gamma", cfg.gamma},
	      {"thres", cfg.thres},
	      {"tau_theta", cfg.tau_theta},
	      {"eps", cfg.budget.eps},
	      {"delta", cfg.budget.delta},
	      {"noise_mode", mode},
	      {"seed", cfg.seed}}},
	};
	return j.dump(2);
}

} // namespace hdreg
