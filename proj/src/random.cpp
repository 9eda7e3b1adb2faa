#include "valring/random.hpp"

#include "valring/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace valring {

std::uint64_t Rng::below(std::uint64_t n) noexcept
{
	// Rejection on the top of the range keeps the draw unbiased.
	const std::uint64_t limit = max() - max() % n;
	std::uint64_t x;
	do
		x = (*this)();
	while (x >= limit);
	return x % n;
}

std::uint64_t hash_id(std::string_view id) noexcept
{
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (unsigned char c : id)
	{
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	return h;
}

Rng derive_substream(std::uint64_t master_seed, std::string_view experiment_id, std::uint64_t trial_index) noexcept
{
	const std::uint64_t base = mix64(master_seed ^ hash_id(experiment_id));
	return Rng(mix64(base + trial_index * Rng::kGolden));
}

std::vector<std::uint64_t> sample_distinct(Rng &rng, std::uint64_t population, std::uint64_t k)
{
	if (k > population)
		throw Error("cannot draw " + std::to_string(k) + " distinct values from " + std::to_string(population));
	std::unordered_set<std::uint64_t> chosen;
	chosen.reserve(k);
	std::vector<std::uint64_t> out;
	out.reserve(k);
	for (std::uint64_t j = population - k; j < population; ++j)
	{
		const std::uint64_t t = rng.below(j + 1);
		const std::uint64_t pick = chosen.count(t) ? j : t;
		chosen.insert(pick);
		out.push_back(pick);
	}
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace valring
