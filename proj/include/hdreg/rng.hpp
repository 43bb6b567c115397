#pragma once

#include <cmath>
#include <cstdint>

namespace hdreg {

// Deterministic RNG utilities. Everything in the project draws randomness
// through these so that results are reproducible bit-for-bit from the
// configured seeds, independent of the standard library implementation and
// of the number of OpenMP threads.

// SplitMix64 step (Vigna). Used both as a stream generator and to derive
// independent child seeds from a master seed.
inline uint64_t splitmix64(uint64_t &state) {
	uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

// Derives a child seed from (seed, salt). Distinct salts give independent
// streams; this is how per-trial / per-entry generators are decoupled from
// the thread schedule.
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
	uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + (salt << 1));
	uint64_t a = splitmix64(s);
	uint64_t b = splitmix64(s);
	return a ^ (b >> 1);
}

// Small self-contained generator: splitmix64 stream + polar Gaussian.
class Rng {
public:
	explicit Rng(uint64_t seed) : state_(seed) {
		// burn-in so that low-entropy seeds (0, 1, 2, ...) decorrelate
		splitmix64(state_);
		splitmix64(state_);
	}

	uint64_t next_u64() { return splitmix64(state_); }

	// uniform in [0, 1)
	double next_double() {
		return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
	}

	// uniform in [lo, hi)
	double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

	// uniform integer in [0, n)
	uint64_t next_below(uint64_t n) {
		// modulo bias is negligible for n << 2^64 but reject to be exact
		uint64_t limit = UINT64_MAX - UINT64_MAX % n;
		uint64_t v;
		do {
			v = next_u64();
		} while (v >= limit);
		return v % n;
	}

	// standard normal via Marsaglia polar method (cached pair)
	double next_gaussian() {
		if (has_cache_) {
			has_cache_ = false;
			return cache_;
		}
		double u, v, s;
		do {
			u = 2.0 * next_double() - 1.0;
			v = 2.0 * next_double() - 1.0;
			s = u * u + v * v;
		} while (s >= 1.0 || s == 0.0);
		double m = std::sqrt(-2.0 * std::log(s) / s);
		cache_ = v * m;
		has_cache_ = true;
		return u * m;
	}

	// Exponential(rate)
	double next_exponential(double rate) {
		// next_double() < 1 so the log argument is strictly positive
		return -std::log(1.0 - next_double()) / rate;
	}

private:
	uint64_t state_;
	double cache_ = 0.0;
	bool has_cache_ = false;
};

} // namespace hdreg
