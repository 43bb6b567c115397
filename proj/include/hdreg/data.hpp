#pragma once

#include <cstddef>
#include <vector>

#include "hdreg/numerics.hpp"

namespace hdreg {

// One agent's ground-truth record: covariate, true response, privacy cost
// coefficient.
struct AgentRecord {
	Vector x;
	double y = 0.0;
	double c = 0.0;
};

enum class Provenance { kTruthful, kMisreported };

struct ReportedRecord {
	Vector x;
	double y_hat = 0.0;
};

// What the mechanism actually sees: covariates are always genuine, responses
// may have been manipulated. The provenance flags are audit metadata only;
// the estimator never reads them.
struct ReportedDataset {
	std::vector<ReportedRecord> records;
	std::vector<Provenance> provenance;

	std::size_t size() const { return records.size(); }
	std::size_t dim() const { return records.empty() ? 0 : records[0].x.size(); }

	// throws ConfigError on ragged dimensions or provenance length mismatch
	void validate() const;
};

} // namespace hdreg
