#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace valring {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

/// Counter-based stream: draw i is mix64(key + (i + 1) * golden).
///
/// Every draw is a pure function of (key, i), so streams are reproducible and
/// independent of how work is scheduled. Bounded draws use rejection, never
/// std:: distributions, so results are identical across standard libraries.
class Rng
{
public:
	using result_type = std::uint64_t;
	static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

	explicit Rng(std::uint64_t key) noexcept : key_(key) {}

	static constexpr result_type min() noexcept { return 0; }
	static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

	result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGolden); }

	/// Uniform in [0, n); n > 0.
	std::uint64_t below(std::uint64_t n) noexcept;
	/// Uniform in [lo, hi].
	std::uint64_t between(std::uint64_t lo, std::uint64_t hi) noexcept { return lo + below(hi - lo + 1); }
	/// Uniform double in [0, 1) with 53 random bits.
	double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
	bool bernoulli(double p) noexcept { return unit() < p; }

	std::uint64_t key() const noexcept { return key_; }
	std::uint64_t position() const noexcept { return counter_; }

private:
	std::uint64_t key_;
	std::uint64_t counter_ = 0;
};

/// 64-bit FNV-1a of an experiment identifier.
std::uint64_t hash_id(std::string_view id) noexcept;

/// Per-trial stream. The key is mix64(mix64(seed ^ hash(id)) + trial * golden);
/// since mix64 is a bijection, distinct trial indices under one (seed, id)
/// always receive distinct keys.
Rng derive_substream(std::uint64_t master_seed, std::string_view experiment_id, std::uint64_t trial_index) noexcept;

/// k distinct values from [0, population), sorted (Floyd's algorithm).
std::vector<std::uint64_t> sample_distinct(Rng &rng, std::uint64_t population, std::uint64_t k);

} // namespace valring
