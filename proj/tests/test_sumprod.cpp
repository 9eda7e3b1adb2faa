#include "oracles.hpp"

#include "valring/error.hpp"
#include "valring/random.hpp"
#include "valring/sumprod.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace valring;

namespace {

ElemSet random_set(const RingPtr &ring, Rng &rng, std::size_t max_size)
{
	const auto k = rng.between(1, std::min<std::uint64_t>(max_size, ring->order()));
	std::vector<RingElem> v;
	for (auto i : sample_distinct(rng, ring->order(), k))
		v.push_back(RingElem(static_cast<std::uint32_t>(i)));
	return ElemSet(ring, v);
}

std::vector<oracle::Line> to_oracle(const LineFamily &lines)
{
	std::vector<oracle::Line> out;
	for (const auto &[mb, mult] : lines.entries())
		out.push_back({mb.first.index(), mb.second.index(), mult});
	return out;
}

const std::vector<std::string> kRings = {"Z/4", "Z/8", "Z/9", "Z/25", "GF(2)[t]/t^2", "GF(3)[t]/t^2", "GF(4)[t]/t^2"};

} // namespace

TEST(SumProd, SetOperationExamples)
{
	auto z4 = Ring::parse("Z/4");
	EXPECT_EQ(sumset(ElemSet(z4, {0, 1}), ElemSet(z4, {0, 1})), ElemSet(z4, {0, 1, 2}));
	EXPECT_EQ(productset(ElemSet(z4, {2, 3}), ElemSet(z4, {2, 3})), ElemSet(z4, {0, 1, 2}));
	EXPECT_EQ(powerset_n(ElemSet(z4, {0, 1, 2, 3}), 2), ElemSet(z4, {0, 1}));
	EXPECT_TRUE(sumset(ElemSet(z4, std::vector<RingElem>{}), ElemSet(z4, {1})).empty());
	EXPECT_THROW(sumset(ElemSet(z4, {1}), ElemSet(Ring::parse("Z/9"), {1})), RingMismatch);
	EXPECT_THROW(ElemSet(z4, {4}), InvalidElement);
}

TEST(SumProd, SetOperationsMatchOracle)
{
	for (const auto &spec : kRings)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec));
		for (int t = 0; t < 50; ++t)
		{
			const auto a = random_set(ring, rng, 8), b = random_set(ring, rng, 8);
			const auto want_sum =
			    oracle::image2(a.indices(), b.indices(), [&](auto x, auto y) { return oracle::add(*ring, x, y); });
			const auto want_prod =
			    oracle::image2(a.indices(), b.indices(), [&](auto x, auto y) { return oracle::mul(*ring, x, y); });
			EXPECT_EQ(sumset(a, b).indices(), want_sum);
			EXPECT_EQ(productset(a, b).indices(), want_prod);
			EXPECT_EQ(iterated_sumset(a, b, 2), sumset(sumset(a, b), b));
			EXPECT_EQ(iterated_sumset(a, b, 0), a);
		}
	}
}

TEST(SumProd, BaPlusCExamples)
{
	auto z4 = Ring::parse("Z/4");
	const ElemSet a(z4, {1, 2, 3});
	EXPECT_EQ(ba_plus_c(a, a, a), ElemSet(z4, {0, 1, 2, 3}));
	const ElemSet c(z4, {1, 3});
	EXPECT_EQ(ba_plus_c(ElemSet(z4, {0}), a, c), c);

	auto z9 = Ring::parse("Z/9");
	const ElemSet s(z9, {1, 3});
	EXPECT_EQ(ba_plus_c(s, s, s), ElemSet(z9, {1, 2, 3, 4, 6}));
}

TEST(SumProd, BaPlusCIsLineEvaluation)
{
	for (const auto &spec : kRings)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec) ^ 1);
		for (int t = 0; t < 100; ++t)
		{
			const auto a = random_set(ring, rng, 6), b = random_set(ring, rng, 6), c = random_set(ring, rng, 6);
			ASSERT_EQ(ba_plus_c(a, b, c), evaluate_lines(lines_from_product(b, c), a)) << spec;
		}
	}
}

TEST(SumProd, LineFamilies)
{
	auto z4 = Ring::parse("Z/4");
	const auto single = lines_from_product(ElemSet(z4, {1}), ElemSet(z4, {0}));
	EXPECT_EQ(single.distinct(), 1u);
	EXPECT_EQ(single.multiplicity(z4->one(), z4->zero()), 1u);

	auto z9 = Ring::parse("Z/9");
	const auto l2 = lines_theorem2(ElemSet(z9, {0, 1}));
	std::set<std::pair<std::uint32_t, std::uint32_t>> got;
	for (const auto &[mb, mult] : l2.entries())
	{
		got.insert({mb.first.index(), mb.second.index()});
		EXPECT_EQ(mult, 1u);
	}
	EXPECT_EQ(got, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {0, 1}, {2, 8}, {2, 0}, {4, 5}, {4, 6}}));
	EXPECT_EQ(l2.weight(), 6u);
}

TEST(SumProd, Theorem2LinesCountedWithMultiplicity)
{
	// in characteristic 2 the slope 2s collapses, so weights exceed distinct counts
	auto z4 = Ring::parse("Z/4");
	const ElemSet a(z4, {0, 1, 2});
	const auto l = lines_theorem2(a);
	EXPECT_EQ(l.weight(), sumset(a, a).size() * a.size());
	EXPECT_LE(l.distinct(), l.weight());
}

TEST(SumProd, RepresentationExamples)
{
	auto z4 = Ring::parse("Z/4");
	LineFamily l(z4);
	l.add(z4->one(), z4->zero());
	l.add(z4->one(), z4->one());
	const ElemSet a(z4, {0, 1});
	EXPECT_EQ(evaluate_lines(l, a), ElemSet(z4, {0, 1, 2}));
	const auto r = r_function(l, a);
	EXPECT_EQ(r.at(RingElem(0)), 1u);
	EXPECT_EQ(r.at(RingElem(1)), 2u);
	EXPECT_EQ(r.at(RingElem(2)), 1u);

	const auto rep = energy(l, a);
	EXPECT_EQ(rep.energy, 6u);
	EXPECT_DOUBLE_EQ(rep.rhs, 36.0);
	EXPECT_TRUE(rep.pass());

	LineFamily zero(z4);
	zero.add(z4->zero(), z4->zero());
	EXPECT_EQ(evaluate_lines(zero, a), ElemSet(z4, {0}));
	EXPECT_EQ(r_function(zero, a).at(RingElem(0)), 2u);

	const ElemSet big(z4, {0, 2, 3});
	LineFamily id(z4);
	id.add(z4->one(), z4->zero());
	EXPECT_EQ(evaluate_lines(id, big), big);
	for (const auto &[y, n] : r_function(id, big))
		EXPECT_EQ(n, 1u);
	EXPECT_EQ(energy(id, ElemSet(z4, {3})).energy, 1u);
}

TEST(SumProd, EnergyMatchesQuadrupleCount)
{
	for (const auto &spec : kRings)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec) ^ 2);
		for (int t = 0; t < 40; ++t)
		{
			const auto a = random_set(ring, rng, 6);
			LineFamily lines(ring);
			const auto n = rng.between(1, 6);
			for (std::uint64_t i = 0; i < n; ++i)
				lines.add(RingElem(static_cast<std::uint32_t>(rng.below(ring->order()))),
				          RingElem(static_cast<std::uint32_t>(rng.below(ring->order()))), rng.between(1, 3));
			const auto rep = energy(lines, a);
			ASSERT_EQ(rep.energy, oracle::energy(*ring, to_oracle(lines), a.indices())) << spec;
			std::uint64_t sum = 0, sq = 0;
			for (const auto &[y, c] : rep.r_histogram)
			{
				sum += c;
				sq += c * c;
			}
			EXPECT_EQ(sum, lines.weight() * a.size());
			EXPECT_EQ(sq, rep.energy);
			EXPECT_TRUE(rep.pass()) << spec;
		}
	}
}

TEST(SumProd, CollisionBoundExact)
{
	// q = 2, r = 2, W = |A| = 2: 4E <= 16 + 32 * 4
	EXPECT_TRUE(collision_bound_holds(2, 2, 36, 2, 2));
	EXPECT_FALSE(collision_bound_holds(2, 2, 37, 2, 2));
}

TEST(SumProd, CollisionBoundIsAboutDistinctLines)
{
	// one constant line of multiplicity 3 over all of Z/4: r(b) = 12, so the
	// weighted energy 144 exceeds 9 * 16 / 4 + 8 * 3 * 4 = 132
	auto z4 = Ring::parse("Z/4");
	LineFamily l(z4);
	l.add(z4->zero(), z4->one(), 3);
	const auto rep = energy(l, ElemSet(z4, {0, 1, 2, 3}));
	EXPECT_EQ(rep.energy, 144u);
	EXPECT_EQ(rep.set_energy, 16u);
	EXPECT_EQ(rep.max_multiplicity, 3u);
	EXPECT_FALSE(collision_bound_holds(2, 2, rep.energy, rep.weight, 4));
	EXPECT_TRUE(rep.collision_pass);
	EXPECT_TRUE(rep.pass());
}

TEST(SumProd, Theorem2WeightedStepInCharacteristicTwo)
{
	auto ring = Ring::parse("GF(2)[t]/t^2");
	const auto res = check_theorem2(ElemSet(ring, {0, 1, 2, 3}));
	EXPECT_TRUE(res.characteristic_two);
	EXPECT_FALSE(res.step_collision);
	EXPECT_TRUE(res.step_collision_set);
	EXPECT_TRUE(res.pass());
}

TEST(SumProd, Theorem1Examples)
{
	auto z4 = Ring::parse("Z/4");
	const ElemSet r(z4, {0, 1, 2, 3});
	const auto full = check_theorem1(r, r, r);
	EXPECT_EQ(full.lhs, 4u);
	EXPECT_DOUBLE_EQ(full.rhs, 2.0);
	EXPECT_TRUE(full.pass);

	const ElemSet one(z4, {1});
	const auto tiny = check_theorem1(one, one, one);
	EXPECT_EQ(tiny.lhs, 1u);
	EXPECT_LT(tiny.rhs, 1.0);
	EXPECT_TRUE(tiny.pass);
}

TEST(SumProd, EnergySquaresExamples)
{
	auto z4 = Ring::parse("Z/4");
	const ElemSet a(z4, {0, 1});
	EXPECT_EQ(energy_squares(a), 20u);
	EXPECT_EQ(oracle::energy_squares(*z4, a.indices()), 20u);
	const auto t2 = check_theorem2(a);
	EXPECT_EQ(t2.sixth_power, 64u);
	EXPECT_EQ(t2.threefold_squares, 4u);
	EXPECT_TRUE(t2.step_cauchy_schwarz);

	const auto single = check_theorem2(ElemSet(z4, {3}));
	EXPECT_EQ(single.energy_squares, 1u);
	EXPECT_EQ(single.threefold_squares, 1u);
	EXPECT_TRUE(single.pass());
}

TEST(SumProd, EnergySquaresMatchesSixFoldCount)
{
	for (const auto &spec : kRings)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec) ^ 3);
		for (int t = 0; t < 10; ++t)
		{
			const auto a = random_set(ring, rng, 6);
			ASSERT_EQ(energy_squares(a), oracle::energy_squares(*ring, a.indices())) << spec;
		}
	}
	std::vector<RingElem> big;
	for (std::uint32_t i = 0; i < 41; ++i)
		big.push_back(RingElem(i));
	EXPECT_THROW(energy_squares(ElemSet(Ring::parse("Z/7^2"), big)), CapacityError);
}

TEST(SumProd, Theorem2ChainOnRandomSets)
{
	for (const auto &spec : kRings)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec) ^ 4);
		for (int t = 0; t < 30; ++t)
		{
			const auto a = random_set(ring, rng, 10);
			const auto res = check_theorem2(a);
			EXPECT_TRUE(res.pass()) << spec;
			EXPECT_EQ(res.characteristic_two, ring->p() == 2);
			EXPECT_EQ(res.ratio.has_value(), res.hypothesis);
		}
	}
}

TEST(SumProd, PlunneckeExamples)
{
	auto z4 = Ring::parse("Z/4");
	const ElemSet zero(z4, {0});
	for (auto delta : {Rational{1, 4}, Rational{1, 2}, Rational{3, 4}})
	{
		const auto res = plunnecke_verify(zero, zero, delta, 2);
		ASSERT_TRUE(res.found());
		EXPECT_EQ(*res.witness, zero);
	}
	const ElemSet a(z4, {0, 1});
	const auto res = plunnecke_verify(a, a, {1, 2}, 2);
	ASSERT_TRUE(res.found());
	EXPECT_DOUBLE_EQ(res.growth, 1.5);
	EXPECT_EQ(iterated_sumset(a, a, 2).size(), 4u);
	EXPECT_DOUBLE_EQ(res.bound, 18.0);

	std::vector<RingElem> many;
	for (std::uint32_t i = 0; i < 13; ++i)
		many.push_back(RingElem(i));
	auto z25 = Ring::parse("Z/25");
	EXPECT_THROW(plunnecke_verify(ElemSet(z25, many), ElemSet(z25, {1}), {1, 2}, 2), CapacityError);
}

TEST(SumProd, PlunneckeWitnessesAreValid)
{
	for (const char *spec : {"Z/4", "Z/8", "Z/9"})
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec) ^ 5);
		for (int t = 0; t < 40; ++t)
		{
			const auto a = random_set(ring, rng, 6), b = random_set(ring, rng, 6);
			const Rational delta{rng.between(1, 3), 4};
			const unsigned k = static_cast<unsigned>(rng.between(2, 3));
			const auto res = plunnecke_verify(a, b, delta, k);
			ASSERT_TRUE(res.found()) << spec;
			const auto &x = *res.witness;
			// |X| >= (1 - delta)|A| and |X + kB| < (K/delta)^k |X|, checked in exact arithmetic
			EXPECT_GE(x.size() * delta.den, (delta.den - delta.num) * a.size());
			for (auto m : x.members())
				EXPECT_TRUE(a.contains(m));
			const auto xs = iterated_sumset(x, b, k).size();
			EXPECT_EQ(xs, res.witness_sumset);
			const auto ab = sumset(a, b).size();
			long double lhs = static_cast<long double>(xs) * std::pow(static_cast<long double>(a.size() * delta.num), k);
			long double rhs = std::pow(static_cast<long double>(ab * delta.den), k) * x.size();
			EXPECT_LT(lhs, rhs);
		}
	}
}
