#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdreg/data.hpp"
#include "hdreg/estimator.hpp"
#include "hdreg/synth.hpp"

namespace hdreg {

// How agents whose privacy cost exceeds the threshold fill in their report.
enum class MisreportModel { kResample, kZero, kSignFlip, kUniformNoise };

struct MechanismConfig {
	double a1 = 0.0; // payment offset
	double a2 = 0.0; // payment curvature
	double alpha = 0.1;
	double beta = 0.1;
	double cost_rate = 1.0;  // exponential decay rate of privacy costs
	double tau = 0.0;        // operative cost threshold; <= 0 means "use the analytic bound"
	EstimatorConfig est_cfg;
	double prior_scale = 1.0; // sigma_p of the posterior model
	double resp_noise = 1.0;  // sigma_n of the posterior model
	MisreportModel misreport_model = MisreportModel::kResample;
	double cost_realization = 1.0; // rho in [0, 1]: realized fraction of the cost bound
	uint64_t partition_seed = 1;

	double operative_tau() const;
	void validate(std::size_t d) const; // errors only
	// Human-readable warnings (e.g. a1 below the participation bound).
	std::vector<std::string> warnings(std::size_t d) const;
};

struct MechanismOutcome {
	Vector theta_bar_full;
	Vector theta_bar_g0;
	Vector theta_bar_g1;
	std::vector<double> payments;
	std::vector<double> utilities;
	std::vector<uint8_t> group_assignment; // 0 or 1 per agent
	// audit trail: the two score arguments per agent
	std::vector<double> p_values;
	std::vector<double> q_values;
};

// Cost threshold tau such that, with confidence 1 - beta, at least a
// (1 - alpha) fraction of agents fall below it; closed-form bound
// log(1 / (alpha beta)) / cost_rate under exponential cost decay.
double tau_threshold_bound(double alpha, double beta, double cost_rate);

// Monte Carlo estimate of the exact population threshold (the smallest tau
// whose compliance probability reaches 1 - beta), for comparison against the
// analytic bound.
double tau_threshold_empirical(double alpha, double beta, double cost_rate, std::size_t n,
                               std::size_t trials, uint64_t seed);

// Agents with c_i <= tau report truthfully; the rest report according to
// cfg.misreport_model. Deterministic given the instance seed.
ReportedDataset apply_threshold_strategy(const RegressionInstance &inst,
                                         const MechanismConfig &cfg);

// a1 - a2 * (p - 2 p q + q^2); strictly concave in q, maximized at q == p.
double brier_score(double p, double q, double a1, double a2);

// Posterior mean of the parameter given a single report, under a centered
// Gaussian prior with per-coordinate scale prior_scale and response noise
// resp_noise. Closed form: (prior^2 y / (noise^2 + prior^2 ||xb||^2)) * xb
// with xb = clip_l2(x, r), projected onto the tau_theta ball.
Vector posterior_mean(const Vector &x, double y_hat, double prior_scale, double resp_noise,
                      double tau_theta, double r);

// The payment computation an agent could redo on their own: it sees only the
// agent's report, the released estimate of the opposite group, and the public
// payment parameters. run_mechanism routes every payment through this.
struct PaymentBreakdown {
	double p = 0.0;
	double q = 0.0;
	double payment = 0.0;
};
PaymentBreakdown payment_for_agent(const Vector &x, double y_hat, const Vector &theta_opposite,
                                   const MechanismConfig &cfg);

// a2 (r tau_theta + 3 r^2 tau_theta^2) + tau 8 (1 + 3 delta) eps^3: the
// smallest a1 that keeps every below-threshold agent's expected utility
// non-negative.
double participation_bound_a1(const MechanismConfig &cfg);

// Per-agent privacy cost charged in the utility: rho * c * (1 + 3 delta) (2 eps)^3.
double privacy_cost(double c, const MechanismConfig &cfg);

// The one-round mechanism: partition, three private estimates with
// independent noise, rescaled quadratic-score payments from the opposite
// group's estimate, utilities net of privacy costs.
MechanismOutcome run_mechanism(const ReportedDataset &reported, const MechanismConfig &cfg,
                               const std::vector<double> &true_costs);

// Writes the per-agent table: agent_id, group, c, truthful, p, q, payment, utility.
void write_outcome_csv(const MechanismOutcome &outcome, const ReportedDataset &reported,
                       const std::vector<double> &true_costs, const std::string &path);

struct DeviationGain {
	double gain = 0.0;    // max over deviations of the mean utility gain
	double stderr = 0.0;  // standard error of that mean
	std::size_t best_deviation = 0;
	std::vector<double> per_deviation_mean;
	std::vector<double> per_deviation_stderr;
};

// Monte Carlo estimate of how much one agent could gain by unilaterally
// misreporting: holds agent_index's record and cost fixed, resamples
// everything else (other agents, costs, partition, noise) per trial, and
// compares utilities under each candidate deviation against truthful
// reporting on the same trial randomness.
DeviationGain deviation_gain(const RegressionInstance &inst, const MechanismConfig &cfg,
                             std::size_t agent_index, const std::vector<double> &deviations,
                             std::size_t trials, uint64_t seed);

// Candidate deviations for an agent, one per misreport model.
std::vector<double> deviation_candidates(const RegressionInstance &inst,
                                         std::size_t agent_index, const MechanismConfig &cfg,
                                         uint64_t seed);

} // namespace hdreg
