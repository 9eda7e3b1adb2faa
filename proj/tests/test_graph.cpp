#include "valring/eigensolver.hpp"
#include "valring/error.hpp"
#include "valring/graph.hpp"
#include "valring/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace valring;

namespace {

std::vector<std::size_t> random_subset(Rng &rng, std::size_t n, double p)
{
	std::vector<std::size_t> out;
	for (std::size_t i = 0; i < n; ++i)
		if (rng.bernoulli(p))
			out.push_back(i);
	return out;
}

} // namespace

TEST(Graph, PartSizesAndDegrees)
{
	struct Case
	{
		const char *ring;
		unsigned d;
		std::size_t part, degree;
	};
	for (const auto &c : {Case{"Z/2", 4, 15, 7}, Case{"Z/4", 4, 120, 28}, Case{"Z/2", 2, 3, 1},
	                      Case{"GF(2)[t]/t^2", 3, 28, 6}, Case{"Z/9", 3, 117, 12}})
	{
		const auto g = build_graph(Ring::parse(c.ring), c.d);
		EXPECT_EQ(g.part_size(), c.part) << c.ring;
		const auto ring = Ring::parse(c.ring);
		EXPECT_EQ(degree_formula(ring->q(), ring->r(), c.d), c.degree);
		for (std::size_t i = 0; i < g.part_size(); ++i)
		{
			ASSERT_EQ(g.degree_a(i), c.degree) << c.ring << " row " << i;
			ASSERT_EQ(g.degree_b(i), c.degree) << c.ring << " col " << i;
		}
	}
}

TEST(Graph, BiadjacencyIsSymmetricIncidence)
{
	const auto g = build_graph(Ring::parse("Z/8"), 3);
	for (std::size_t i = 0; i < g.part_size(); ++i)
		for (std::size_t j = 0; j < g.part_size(); ++j)
			ASSERT_EQ(g.biadjacency.get(i, j), incident(g.classes[i], g.classes[j]));
}

TEST(Graph, SpectrumF2D4)
{
	const auto rep = spectrum(build_graph(Ring::parse("Z/2"), 4));
	ASSERT_EQ(rep.singular_values.size(), 15u);
	EXPECT_NEAR(rep.singular_values[0], 7.0, 1e-9);
	EXPECT_NEAR(rep.lambda3, 2.0, 1e-9);
	EXPECT_DOUBLE_EQ(rep.bound, 2.0);
	EXPECT_TRUE(rep.pass);
}

TEST(Graph, SpectrumSmallCases)
{
	const auto f2d2 = spectrum(build_graph(Ring::parse("Z/2"), 2));
	EXPECT_NEAR(f2d2.singular_values[0], 1.0, 1e-9);
	EXPECT_DOUBLE_EQ(f2d2.bound, 1.0);
	EXPECT_TRUE(f2d2.pass);

	const auto z4 = spectrum(build_graph(Ring::parse("Z/4"), 4));
	EXPECT_NEAR(z4.singular_values[0], 28.0, 1e-9);
	EXPECT_DOUBLE_EQ(z4.bound, 8.0);
	EXPECT_LE(z4.lambda3, 8.0 + kSpectralSlack);
}

TEST(Graph, SingularValuesSquaredSumToEdgeCount)
{
	const auto g = build_graph(Ring::parse("GF(3)[t]/t^2"), 3);
	const auto rep = spectrum(g);
	double sum = 0;
	for (double s : rep.singular_values)
		sum += s * s;
	EXPECT_NEAR(sum, static_cast<double>(g.part_size() * rep.degree), 1e-6 * sum);
}

TEST(Graph, BoundFormula)
{
	EXPECT_DOUBLE_EQ(lambda3_bound(2, 1, 4), 2.0);
	EXPECT_DOUBLE_EQ(lambda3_bound(2, 2, 4), 8.0);
	EXPECT_NEAR(lambda3_bound(3, 2, 3), std::pow(3.0, 1.5), 1e-12);
}

TEST(Graph, CapacityCap)
{
	EXPECT_THROW(build_graph(Ring::parse("Z/5^3"), 4), CapacityError);
}

TEST(Eigensolver, JacobiAgreesWithEigen)
{
	if (!eigen_available())
		GTEST_SKIP() << "built without Eigen";
	for (const char *spec : {"Z/4", "Z/9", "GF(2)[t]/t^2"})
	{
		const auto g = build_graph(Ring::parse(spec), 3);
		const auto gram = kernels::serial::gram(g.biadjacency);
		const auto a = symmetric_eigenvalues(gram, g.part_size(), EigenBackend::Eigen);
		const auto b = symmetric_eigenvalues(gram, g.part_size(), EigenBackend::Jacobi);
		ASSERT_EQ(a.values.size(), b.values.size());
		for (std::size_t i = 0; i < a.values.size(); ++i)
			EXPECT_NEAR(a.values[i], b.values[i], 1e-7 * std::max(1.0, std::abs(a.values[0]))) << spec << " " << i;
		EXPECT_GT(b.iterations, 0);
	}
}

TEST(Eigensolver, KnownMatrices)
{
	// [[2,1],[1,2]] has eigenvalues 3, 1
	const auto r = jacobi_eigenvalues({2, 1, 1, 2}, 2);
	EXPECT_NEAR(r.values[0], 3.0, 1e-12);
	EXPECT_NEAR(r.values[1], 1.0, 1e-12);
	const auto d = jacobi_eigenvalues({5, 0, 0, 0, -1, 0, 0, 0, 2}, 3);
	EXPECT_EQ(d.values, (std::vector<double>{5, 2, -1}));
	EXPECT_THROW(jacobi_eigenvalues({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}, 4, 1e-300, 0),
	             NumericalError);
	EXPECT_THROW(parse_backend("lapack"), ParseError);
}

TEST(Mixing, FullSetsHaveZeroError)
{
	const auto g = build_graph(Ring::parse("Z/4"), 3);
	std::vector<std::size_t> all(g.part_size());
	std::iota(all.begin(), all.end(), 0);
	const auto rep = spectrum(g);
	const auto m = mixing_check(g, all, all, rep.lambda3);
	EXPECT_EQ(m.edges, rep.degree * g.part_size());
	EXPECT_DOUBLE_EQ(m.main_term, static_cast<double>(m.edges));
	EXPECT_TRUE(m.pass);
}

TEST(Mixing, EmptySet)
{
	const auto g = build_graph(Ring::parse("Z/2"), 4);
	std::vector<std::size_t> none, all(g.part_size());
	std::iota(all.begin(), all.end(), 0);
	const auto m = mixing_check(g, none, all, 2.0);
	EXPECT_EQ(m.edges, 0u);
	EXPECT_EQ(m.error_bound, 0.0);
	EXPECT_TRUE(m.pass);
}

TEST(Mixing, RandomPairsAgainstBruteForce)
{
	for (const char *spec : {"Z/2", "Z/4", "GF(3)[t]/t^2"})
	{
		const auto g = build_graph(Ring::parse(spec), 4 - (spec[0] == 'G'));
		const auto lambda3 = spectrum(g).lambda3;
		Rng rng(hash_id(spec));
		for (int t = 0; t < 200; ++t)
		{
			const auto x = random_subset(rng, g.part_size(), rng.unit());
			const auto y = random_subset(rng, g.part_size(), rng.unit());
			std::uint64_t e = 0;
			for (auto i : x)
				for (auto j : y)
					e += incident(g.classes[i], g.classes[j]);
			const auto m = mixing_check(g, x, y, lambda3);
			ASSERT_EQ(m.edges, e);
			ASSERT_TRUE(m.pass) << spec << " trial " << t;
		}
	}
}
