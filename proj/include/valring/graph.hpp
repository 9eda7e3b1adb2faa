#pragma once

#include "valring/eigensolver.hpp"
#include "valring/kernels.hpp"
#include "valring/projective.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace valring {

inline constexpr std::size_t kDefaultMaxPartSize = 5000;

/// The bipartite Erdos-Renyi graph E_{q,d}(R): both parts are the projective
/// classes of R^d, with [x] ~ [y] iff x . y = 0.
struct BipartiteGraph
{
	RingPtr ring;
	std::size_t d = 0;
	std::vector<ProjClass> classes; ///< shared vertex list of part A and part B
	ClassIndex index;
	BitMatrix biadjacency; ///< rows: part A, columns: part B

	std::size_t part_size() const noexcept { return classes.size(); }
	std::size_t degree_a(std::size_t i) const noexcept { return biadjacency.row_count(i); }
	std::size_t degree_b(std::size_t j) const noexcept;
};

/// q^{(d-2)(r-1)} (q^{d-1} - 1)/(q - 1).
std::uint64_t degree_formula(std::uint64_t q, unsigned r, unsigned d);
/// q^{(d-2)(2r-1)/2}.
double lambda3_bound(std::uint64_t q, unsigned r, unsigned d);

/// Throws CapacityError when the part size exceeds `max_part_size`.
BipartiteGraph build_graph(const RingPtr &ring, std::size_t d, std::size_t max_part_size = kDefaultMaxPartSize);

struct SpectralReport
{
	std::size_t part_size = 0;
	std::size_t degree = 0;
	std::vector<double> singular_values; ///< descending
	double lambda3 = 0;                  ///< second largest singular value
	double bound = 0;
	bool pass = false;
	double solver_tolerance = 0;
	EigenBackend backend = EigenBackend::Auto;
	long iterations = 0;
};

/// Bound check slack on lambda3.
inline constexpr double kSpectralSlack = 1e-6;

/// Singular values of the biadjacency matrix via eigenvalues of B B^T.
SpectralReport spectrum(const BipartiteGraph &g, EigenBackend backend = EigenBackend::Auto);

struct MixingRecord
{
	std::size_t x_size = 0;
	std::size_t y_size = 0;
	std::uint64_t edges = 0;
	double main_term = 0;   ///< a |X| |Y| / |B|
	double error_bound = 0; ///< lambda3 sqrt(|X| |Y|)
	bool pass = false;
};

inline constexpr double kMixingSlack = 1e-6;

/// Brute-force e(X, Y) against the expander mixing bound with the given lambda3.
MixingRecord mixing_check(const BipartiteGraph &g, std::span<const std::size_t> x, std::span<const std::size_t> y,
                          double lambda3);

} // namespace valring
