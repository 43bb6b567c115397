#include "hdreg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "hdreg/errors.hpp"
#include "hdreg/kernels.hpp"
#include "hdreg/rng.hpp"

namespace hdreg {

void ReportedDataset::validate() const {
	if (provenance.size() != records.size()) {
		throw ConfigError("ReportedDataset: provenance length does not match records");
	}
	std::size_t d = dim();
	for (const auto &r : records) {
		if (r.x.size() != d) {
			throw ConfigError("ReportedDataset: ragged covariate dimensions");
		}
	}
}

void SynthConfig::validate() const {
	if (n < 2) throw ConfigError("SynthConfig: n must be >= 2");
	if (d < 1) throw ConfigError("SynthConfig: d must be >= 1");
	if (k < 1 || k > d) throw ConfigError("SynthConfig: k must satisfy 1 <= k <= d");
	if (!(q >= 0.0 && q < 1.0)) throw ConfigError("SynthConfig: q must be in [0, 1)");
	if (!(s > 0.0)) throw ConfigError("SynthConfig: s must be > 0");
	if (!(sigma > 0.0)) throw ConfigError("SynthConfig: sigma must be > 0");
	if (sigma_zeta < 0.0) throw ConfigError("SynthConfig: sigma_zeta must be >= 0");
	if (!(cost_rate > 0.0)) throw ConfigError("SynthConfig: cost_rate must be > 0");
	if (!(theta_norm > 0.0 && theta_norm <= 1.0)) {
		throw ConfigError("SynthConfig: theta_norm must be in (0, 1]");
	}
}

namespace {

// Row lq "norm" of a banded row with profile max(0, 1 - m/B), m = 0..B-1.
double banded_row_budget(std::size_t bandwidth, double q) {
	double s = 1.0; // diagonal
	for (std::size_t m = 1; m < bandwidth; ++m) {
		double v = 1.0 - static_cast<double>(m) / static_cast<double>(bandwidth);
		s += 2.0 * std::pow(v, q);
	}
	return s;
}

double row_budget(const SymMatrix &m, std::size_t row, double q) {
	double s = 0.0;
	for (std::size_t j = 0; j < m.dim(); ++j) {
		double a = std::abs(m(row, j));
		if (a == 0.0) {
			continue;
		}
		s += (q == 0.0) ? 1.0 : std::pow(a, q);
	}
	return s;
}

double max_row_budget(const SymMatrix &m, double q) {
	double best = 0.0;
	for (std::size_t i = 0; i < m.dim(); ++i) {
		best = std::max(best, row_budget(m, i, q));
	}
	return best;
}

// min over canonical probes (basis vectors plus fixed sign patterns) of
// ||Sigma w||_inf / ||w||_inf. Diagnostic only.
double kappa_inf_probe(const SymMatrix &sigma) {
	const std::size_t d = sigma.dim();
	double best = std::numeric_limits<double>::infinity();
	Vector w(d, 0.0);
	auto probe = [&](const Vector &v) {
		Vector y = sym_matvec(sigma, v);
		best = std::min(best, norm_inf(y) / norm_inf(v));
	};
	for (std::size_t j = 0; j < d; ++j) {
		w.assign(d, 0.0);
		w[j] = 1.0;
		probe(w);
	}
	// alternating sign patterns stress cancellation across the band
	for (std::size_t period = 1; period <= std::min<std::size_t>(4, d); ++period) {
		for (std::size_t j = 0; j < d; ++j) {
			w[j] = ((j / period) % 2 == 0) ? 1.0 : -1.0;
		}
		probe(w);
	}
	return best;
}

} // namespace

SymMatrix make_covariance(const SynthConfig &cfg) {
	cfg.validate();
	if (cfg.s < 1.0) {
		throw ConfigError("make_covariance: row budget s < 1 cannot fit a unit diagonal");
	}
	const std::size_t d = cfg.d;
	SymMatrix sigma(d);

	if (cfg.cov_family == CovFamily::kBanded) {
		// largest bandwidth whose row profile stays within the budget
		std::size_t bandwidth = 1;
		while (bandwidth < d && banded_row_budget(bandwidth + 1, cfg.q) <= cfg.s) {
			++bandwidth;
		}
		for (std::size_t i = 0; i < d; ++i) {
			for (std::size_t j = i; j < d; ++j) {
				double m = static_cast<double>(j - i);
				double v = 1.0 - m / static_cast<double>(bandwidth);
				sigma.set(i, j, v > 0.0 ? v : 0.0);
			}
		}
	} else {
		// geometric decay rho^|i-j| with rho sized from the closed-form
		// infinite row sum 1 + 2 rho^q / (1 - rho^q) <= s
		double rho = 0.0;
		if (cfg.q > 0.0 && cfg.s > 1.0) {
			rho = std::pow((cfg.s - 1.0) / (cfg.s + 1.0), 1.0 / cfg.q);
		}
		// q == 0 admits no off-diagonal mass for a geometric profile (every
		// nonzero entry costs 1 in the l0 row count), so rho stays 0.
		for (std::size_t i = 0; i < d; ++i) {
			for (std::size_t j = i; j < d; ++j) {
				sigma.set(i, j, std::pow(rho, static_cast<double>(j - i)));
			}
		}
	}

	double budget = max_row_budget(sigma, cfg.q);
	if (budget > cfg.s + 1e-9) {
		throw ConfigError("make_covariance: constructed matrix exceeds the row budget (" +
		                  std::to_string(budget) + " > " + std::to_string(cfg.s) + ")");
	}
	return sigma;
}

InstanceSampler::InstanceSampler(const SynthConfig &base) : base_(base) {
	base_.validate();
	sigma_ = make_covariance(base_);
	sqrt_sigma_ = sqrt_psd(sigma_);
	kappa_inf_ = kappa_inf_probe(sigma_);
}

RegressionInstance InstanceSampler::sample(uint64_t seed) const {
	const std::size_t n = base_.n;
	const std::size_t d = base_.d;
	const std::size_t k = base_.k;

	RegressionInstance inst;
	inst.cfg = base_;
	inst.cfg.seed = seed;
	inst.sigma = sigma_;
	inst.kappa_inf = kappa_inf_;

	// support: k indices drawn without replacement, values +-theta_norm/sqrt(k)
	Rng theta_rng(derive_seed(seed, 0));
	std::vector<std::size_t> idx(d);
	std::iota(idx.begin(), idx.end(), std::size_t{0});
	for (std::size_t i = 0; i < k; ++i) {
		std::size_t j = i + static_cast<std::size_t>(theta_rng.next_below(d - i));
		std::swap(idx[i], idx[j]);
	}
	inst.theta_star.assign(d, 0.0);
	double mag = base_.theta_norm / std::sqrt(static_cast<double>(k));
	for (std::size_t i = 0; i < k; ++i) {
		inst.theta_star[idx[i]] = (theta_rng.next_u64() & 1) ? mag : -mag;
	}

	double scale = base_.sigma / std::sqrt(static_cast<double>(d));
	std::vector<double> xmat =
	    kernels::sample_rows_gaussian(sqrt_sigma_, n, scale, derive_seed(seed, 1));

	uint64_t noise_seed = derive_seed(seed, 2);
	uint64_t cost_seed = derive_seed(seed, 3);
	inst.agents.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		AgentRecord &a = inst.agents[i];
		a.x.assign(xmat.begin() + static_cast<std::ptrdiff_t>(i * d),
		           xmat.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
		double signal = dot(inst.theta_star, a.x);
		double zeta = 0.0;
		if (base_.sigma_zeta > 0.0) {
			Rng g(derive_seed(noise_seed, i));
			zeta = base_.sigma_zeta * g.next_gaussian();
		}
		a.y = signal + zeta;
		Rng gc(derive_seed(cost_seed, i));
		a.c = gc.next_exponential(base_.cost_rate);
	}
	return inst;
}

RegressionInstance sample_instance(const SynthConfig &cfg) {
	InstanceSampler sampler(cfg);
	return sampler.sample(cfg.seed);
}

AssumptionReport check_assumptions(const RegressionInstance &inst, const SynthConfig &cfg,
                                   double fourth_moment_bound) {
	AssumptionReport rep;
	rep.theta_sparsity_ok = count_nonzero(inst.theta_star) <= cfg.k;
	rep.theta_norm_ok = norm2(inst.theta_star) <= cfg.theta_norm + 1e-12;

	rep.max_row_budget = max_row_budget(inst.sigma, cfg.q);
	rep.cov_budget_ok = rep.max_row_budget <= cfg.s + 1e-9;

	EigenSym e = eigen_sym(inst.sigma);
	rep.min_eigenvalue = e.min_value();
	rep.cov_pd_ok = rep.min_eigenvalue > 0.0;

	// standardized fourth moment per covariate coordinate (Gaussian target 3)
	const std::size_t n = inst.agents.size();
	const std::size_t d = inst.theta_star.size();
	double worst = 0.0;
	for (std::size_t j = 0; j < d; ++j) {
		double m2 = 0.0, m4 = 0.0;
		for (std::size_t i = 0; i < n; ++i) {
			double v = inst.agents[i].x[j];
			m2 += v * v;
			m4 += v * v * v * v;
		}
		m2 /= static_cast<double>(n);
		m4 /= static_cast<double>(n);
		if (m2 > 0.0) {
			worst = std::max(worst, m4 / (m2 * m2));
		}
	}
	rep.max_standardized_fourth_moment = worst;
	rep.subgaussian_ok = worst <= fourth_moment_bound;
	return rep;
}

//===--------------------------------------------------------------------===//
// Dataset files
//===--------------------------------------------------------------------===//

namespace {

constexpr int kInstanceFormatVersion = 1;

nlohmann::json config_to_json(const SynthConfig &cfg) {
	return nlohmann::json{
	    {"n", cfg.n},
	    {"d", cfg.d},
	    {"k", cfg.k},
	    {"q", cfg.q},
	    {"s", cfg.s},
	    {"sigma", cfg.sigma},
	    {"sigma_zeta", cfg.sigma_zeta},
	    {"cost_rate", cfg.cost_rate},
	    {"seed", cfg.seed},
	    {"theta_norm", cfg.theta_norm},
	    {"cov_family", cfg.cov_family == CovFamily::kBanded ? "banded" : "geometric-decay"},
	};
}

SynthConfig config_from_json(const nlohmann::json &j) {
	SynthConfig cfg;
	cfg.n = j.at("n").get<std::size_t>();
	cfg.d = j.at("d").get<std::size_t>();
	cfg.k = j.at("k").get<std::size_t>();
	cfg.q = j.at("q").get<double>();
	cfg.s = j.at("s").get<double>();
	cfg.sigma = j.at("sigma").get<double>();
	cfg.sigma_zeta = j.at("sigma_zeta").get<double>();
	cfg.cost_rate = j.at("cost_rate").get<double>();
	cfg.seed = j.at("seed").get<uint64_t>();
	cfg.theta_norm = j.at("theta_norm").get<double>();
	std::string fam = j.at("cov_family").get<std::string>();
	if (fam == "banded") {
		cfg.cov_family = CovFamily::kBanded;
	} else if (fam == "geometric-decay") {
		cfg.cov_family = CovFamily::kGeometricDecay;
	} else {
		throw ConfigError("unknown cov_family '" + fam + "'");
	}
	return cfg;
}

} // namespace

void save_instance(const RegressionInstance &inst, const std::string &path) {
	const std::size_t d = inst.theta_star.size();
	nlohmann::json j;
	j["format"] = "hdreg-instance";
	j["version"] = kInstanceFormatVersion;
	j["config"] = config_to_json(inst.cfg);
	j["theta_star"] = inst.theta_star;
	j["kappa_inf"] = inst.kappa_inf;
	std::vector<double> sig(inst.sigma.data(), inst.sigma.data() + d * d);
	j["sigma"] = sig;
	nlohmann::json agents = nlohmann::json::array();
	for (const auto &a : inst.agents) {
		agents.push_back(nlohmann::json{{"x", a.x}, {"y", a.y}, {"c", a.c}});
	}
	j["agents"] = std::move(agents);

	std::ofstream out(path);
	if (!out) {
		throw ConfigError("save_instance: cannot open '" + path + "' for writing");
	}
	out << j.dump() << "\n";
}

RegressionInstance load_instance(const std::string &path) {
	std::ifstream in(path);
	if (!in) {
		throw ConfigError("load_instance: cannot open '" + path + "'");
	}
	nlohmann::json j;
	try {
		in >> j;
	} catch (const nlohmann::json::exception &e) {
		throw ConfigError("load_instance: malformed JSON in '" + path + "': " + e.what());
	}
	if (j.value("format", "") != "hdreg-instance") {
		throw ConfigError("load_instance: '" + path + "' is not an hdreg instance file");
	}
	if (j.value("version", -1) != kInstanceFormatVersion) {
		throw ConfigError("load_instance: unsupported format version in '" + path + "'");
	}
	RegressionInstance inst;
	inst.cfg = config_from_json(j.at("config"));
	inst.theta_star = j.at("theta_star").get<Vector>();
	inst.kappa_inf = j.at("kappa_inf").get<double>();
	const std::size_t d = inst.theta_star.size();
	std::vector<double> sig = j.at("sigma").get<std::vector<double>>();
	if (sig.size() != d * d) {
		throw ConfigError("load_instance: sigma size does not match dimension");
	}
	inst.sigma = SymMatrix(d);
	for (std::size_t i = 0; i < d; ++i) {
		for (std::size_t jj = i; jj < d; ++jj) {
			inst.sigma.set(i, jj, sig[i * d + jj]);
		}
	}
	for (const auto &ja : j.at("agents")) {
		AgentRecord a;
		a.x = ja.at("x").get<Vector>();
		a.y = ja.at("y").get<double>();
		a.c = ja.at("c").get<double>();
		if (a.x.size() != d) {
			throw ConfigError("load_instance: agent covariate dimension mismatch");
		}
		inst.agents.push_back(std::move(a));
	}
	return inst;
}

} // namespace hdreg
