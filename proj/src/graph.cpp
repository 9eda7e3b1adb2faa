#include "valring/graph.hpp"

#include "valring/error.hpp"

#include <cmath>
#include <cstdlib>

namespace valring {

std::size_t BipartiteGraph::degree_b(std::size_t j) const noexcept
{
	std::size_t c = 0;
	for (std::size_t i = 0; i < biadjacency.rows(); ++i)
		c += biadjacency.get(i, j);
	return c;
}

std::uint64_t degree_formula(std::uint64_t q, unsigned r, unsigned d)
{
	std::uint64_t scale = 1;
	for (unsigned i = 0; i < (d - 2) * (r - 1); ++i)
		scale *= q;
	std::uint64_t geometric = 0, term = 1;
	for (unsigned i = 0; i + 1 < d; ++i)
	{
		geometric += term;
		term *= q;
	}
	return scale * geometric;
}

double lambda3_bound(std::uint64_t q, unsigned r, unsigned d)
{
	return std::pow(static_cast<double>(q), 0.5 * (static_cast<double>(d) - 2) * (2.0 * r - 1));
}

BipartiteGraph build_graph(const RingPtr &ring, std::size_t d, std::size_t max_part_size)
{
	const auto expected = class_count_formula(ring->q(), ring->r(), static_cast<unsigned>(d));
	if (expected > max_part_size)
		throw CapacityError("part size " + std::to_string(expected) + " exceeds cap " + std::to_string(max_part_size));

	BipartiteGraph g;
	g.ring = ring;
	g.d = d;
	g.classes = enumerate_classes(ring, d);
	g.index = ClassIndex(g.classes);

	std::vector<std::uint32_t> coords;
	coords.reserve(g.classes.size() * d);
	for (const auto &c : g.classes)
		for (auto x : c.coords())
			coords.push_back(x.index());
	g.biadjacency = kernels::omp::build_biadjacency(*ring, coords, d);
	return g;
}

SpectralReport spectrum(const BipartiteGraph &g, EigenBackend backend)
{
	const std::size_t n = g.part_size();
	SpectralReport rep;
	rep.part_size = n;
	rep.degree = n ? g.degree_a(0) : 0;
	rep.bound = lambda3_bound(g.ring->q(), g.ring->r(), static_cast<unsigned>(g.d));

	auto eig = symmetric_eigenvalues(kernels::omp::gram(g.biadjacency), n, backend);
	rep.backend = eig.backend;
	rep.iterations = eig.iterations;
	rep.solver_tolerance = eig.tolerance;
	rep.singular_values.reserve(n);
	for (double v : eig.values)
		rep.singular_values.push_back(std::sqrt(std::max(v, 0.0)));
	rep.lambda3 = n > 1 ? rep.singular_values[1] : 0.0;
	rep.pass = rep.lambda3 <= rep.bound + kSpectralSlack;
	return rep;
}

MixingRecord mixing_check(const BipartiteGraph &g, std::span<const std::size_t> x, std::span<const std::size_t> y,
                          double lambda3)
{
	const std::size_t n = g.part_size();
	for (auto i : x)
		if (i >= n)
			throw InvalidElement("vertex " + std::to_string(i) + " not in part A");
	for (auto j : y)
		if (j >= n)
			throw InvalidElement("vertex " + std::to_string(j) + " not in part B");

	MixingRecord rec;
	rec.x_size = x.size();
	rec.y_size = y.size();
	const auto mask = make_mask(y, n);
	rec.edges = kernels::omp::edges_between(g.biadjacency, x, mask);

	const std::uint64_t deg = n ? g.degree_a(0) : 0;
	const double a = static_cast<double>(deg);
	const double xy = static_cast<double>(x.size()) * static_cast<double>(y.size());
	rec.main_term = n ? a * xy / static_cast<double>(n) : 0.0;
	rec.error_bound = lambda3 * std::sqrt(xy);
	// Compare |e |B| - a |X||Y|| exactly in integers before dividing.
	const auto lhs_scaled = static_cast<double>(std::llabs(static_cast<long long>(rec.edges * n) -
	                                                       static_cast<long long>(deg * x.size() * y.size())));
	rec.pass = n == 0 || lhs_scaled <= (rec.error_bound + kMixingSlack) * static_cast<double>(n);
	return rec;
}

} // namespace valring
