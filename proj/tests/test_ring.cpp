#include "oracles.hpp"

#include "valring/error.hpp"
#include "valring/random.hpp"
#include "valring/ring.hpp"

#include <gtest/gtest.h>

using namespace valring;

namespace {

const std::vector<std::string> kGrid = {"Z/2^1", "Z/2^2", "Z/2^3", "Z/3^1", "Z/3^2", "Z/3^3", "Z/5^2", "Z/7^2",
                                        "GF(2)[t]/t^2", "GF(2)[t]/t^3", "GF(3)[t]/t^2", "GF(4)[t]/t^2",
                                        "GF(9)[t]/t^2", "GF(2^3)[t]/t^2", "GF(5)[t]/t^3"};

RingElem el(const RingPtr &ring, std::uint32_t i) { return ring->element(i); }

} // namespace

TEST(Ring, Z4Examples)
{
	auto z4 = Ring::parse("Z/4");
	EXPECT_EQ(z4->mul(el(z4, 2), el(z4, 2)), el(z4, 0));
	EXPECT_EQ(z4->add(el(z4, 3), el(z4, 3)), el(z4, 2));
	EXPECT_TRUE(z4->is_unit(el(z4, 3)));
	EXPECT_FALSE(z4->is_unit(el(z4, 2)));
	EXPECT_EQ(z4->inverse(el(z4, 3)), el(z4, 3));
	EXPECT_EQ(z4->valuation(el(z4, 2)), 1u);
	EXPECT_EQ(z4->valuation(el(z4, 0)), 2u);
	EXPECT_EQ(z4->units(), (std::vector<RingElem>{el(z4, 1), el(z4, 3)}));
}

TEST(Ring, TruncatedExamples)
{
	auto f2t3 = Ring::parse("GF(2)[t]/t^3");
	const auto a = f2t3->parse_element("1+t");
	const auto b = f2t3->parse_element("1+t+t^2");
	EXPECT_EQ(f2t3->mul(a, b), f2t3->one());
	EXPECT_EQ(f2t3->valuation(f2t3->parse_element("t^2")), 2u);
	EXPECT_EQ(f2t3->units().size(), 4u);

	auto f2t2 = Ring::parse("GF(2)[t]/t^2");
	EXPECT_FALSE(f2t2->is_unit(f2t2->parse_element("t")));
	const auto u = f2t2->parse_element("1+t");
	EXPECT_EQ(f2t2->inverse(u), u);
}

TEST(Ring, Z9InverseOfTwo)
{
	auto z9 = Ring::parse("Z/3^2");
	EXPECT_EQ(z9->inverse(el(z9, 2)), el(z9, 5));
	EXPECT_EQ(oracle::inverse(*z9, 2), 5u);
}

TEST(Ring, FieldUnits)
{
	auto f2 = Ring::parse("Z/2");
	EXPECT_EQ(f2->units(), std::vector<RingElem>{f2->one()});
	EXPECT_EQ(f2->uniformizer(), f2->zero());
}

TEST(Ring, Errors)
{
	auto z4 = Ring::parse("Z/4");
	EXPECT_THROW(z4->element(4), InvalidElement);
	EXPECT_THROW(z4->add(RingElem(7), z4->one()), InvalidElement);
	EXPECT_THROW(z4->inverse(el(z4, 2)), NotInvertible);
	EXPECT_THROW(Ring::z_power(6, 1), InvalidRing);
	EXPECT_THROW(Ring::z_power(2, 0), InvalidRing);
	EXPECT_THROW(Ring::parse("Z/6"), ParseError);
	EXPECT_THROW(Ring::parse("Z/4^2"), ParseError);
	EXPECT_THROW(Ring::parse("GF(6)[t]/t^2"), ParseError);
	EXPECT_THROW(Ring::parse("nonsense"), ParseError);
	EXPECT_THROW(Ring::truncated_poly(2, 2, 2, std::vector<std::uint32_t>{1, 0, 1}), InvalidRing);
	EXPECT_THROW(Ring::parse("Z/2^30"), CapacityError);
	EXPECT_THROW(z4->parse_element("t"), ParseError);
}

TEST(Ring, SpecRoundTrip)
{
	for (const auto &spec : kGrid)
	{
		auto ring = Ring::parse(spec);
		auto again = Ring::parse(ring->spec_string());
		EXPECT_EQ(*ring, *again) << spec;
		EXPECT_EQ(ring->spec_string(), again->spec_string());
	}
	EXPECT_EQ(*Ring::parse("Z/8"), *Ring::parse("Z/2^3"));
	EXPECT_EQ(*Ring::parse("GF(2)[t]/(t^2)"), *Ring::parse("GF(2)[t]/t^2"));
	EXPECT_EQ(*Ring::parse("GF(4)[t]/t^2"), *Ring::parse("GF(2^2)[t]/t^2"));
}

TEST(Ring, ElementTextRoundTrip)
{
	for (const auto &spec : kGrid)
	{
		auto ring = Ring::parse(spec);
		for (auto x : ring->elements())
			EXPECT_EQ(ring->parse_element(ring->format(x)), x) << spec << " " << ring->format(x);
	}
}

TEST(Ring, ArithmeticAgreesWithOracle)
{
	for (const auto &spec : kGrid)
	{
		auto ring = Ring::parse(spec);
		Rng rng(hash_id(spec));
		for (int i = 0; i < 1000; ++i)
		{
			const auto x = static_cast<std::uint32_t>(rng.below(ring->order()));
			const auto y = static_cast<std::uint32_t>(rng.below(ring->order()));
			ASSERT_EQ(ring->add(RingElem(x), RingElem(y)).index(), oracle::add(*ring, x, y)) << spec;
			ASSERT_EQ(ring->mul(RingElem(x), RingElem(y)).index(), oracle::mul(*ring, x, y)) << spec;
			ASSERT_EQ(ring->add(ring->sub(RingElem(x), RingElem(y)), RingElem(y)).index(), x);
		}
	}
}

TEST(Ring, UnitsInversesValuationsExhaustive)
{
	for (const auto &spec : kGrid)
	{
		auto ring = Ring::parse(spec);
		if (ring->order() > 200)
			continue;
		std::uint64_t units = 0;
		for (auto x : ring->elements())
		{
			const auto inv = oracle::inverse(*ring, x.index());
			ASSERT_EQ(ring->is_unit(x), inv.has_value()) << spec << " " << x.index();
			if (inv)
			{
				++units;
				EXPECT_EQ(ring->inverse(x).index(), *inv);
			}
			EXPECT_EQ(ring->valuation(x), oracle::valuation(*ring, x.index())) << spec << " " << x.index();
			EXPECT_EQ(ring->neg(x).index(), oracle::neg(*ring, x.index()));
		}
		EXPECT_EQ(units, ring->unit_count());
		EXPECT_EQ(units, ring->order() - ring->order() / ring->q());
	}
}

TEST(Ring, NonunitsFormPrincipalIdeal)
{
	for (const auto &spec : kGrid)
	{
		auto ring = Ring::parse(spec);
		if (ring->order() > 200)
			continue;
		std::set<RingElem> multiples;
		for (auto y : ring->elements())
			multiples.insert(ring->mul(ring->uniformizer(), y));
		const auto nu = ring->nonunits();
		EXPECT_EQ(std::set<RingElem>(nu.begin(), nu.end()), multiples) << spec;
		EXPECT_EQ(nu.size(), ring->order() / ring->q());
		// closed under addition and under multiplication by R
		for (auto a : nu)
			for (auto b : nu)
				EXPECT_FALSE(ring->is_unit(ring->add(a, b)));
		EXPECT_EQ(ring->pow(ring->uniformizer(), ring->r()), ring->zero());
		if (ring->r() > 1)
			EXPECT_NE(ring->pow(ring->uniformizer(), ring->r() - 1), ring->zero());
	}
}

TEST(Ring, PowMatchesRepeatedProduct)
{
	auto ring = Ring::parse("GF(9)[t]/t^2");
	Rng rng(3);
	for (int i = 0; i < 200; ++i)
	{
		const auto x = RingElem(static_cast<std::uint32_t>(rng.below(ring->order())));
		const auto e = rng.below(20);
		auto acc = ring->one();
		for (std::uint64_t k = 0; k < e; ++k)
			acc = ring->mul(acc, x);
		EXPECT_EQ(ring->pow(x, e), acc);
	}
}

TEST(Ring, IrreducibilityAndDefaultModulus)
{
	EXPECT_TRUE(is_irreducible({1, 1, 1}, 2));
	EXPECT_FALSE(is_irreducible({1, 0, 1}, 2));
	EXPECT_TRUE(is_irreducible({1, 1, 0, 1}, 2));
	EXPECT_TRUE(is_prime(7));
	EXPECT_FALSE(is_prime(9));
	auto gf4 = Ring::parse("GF(4)[t]/t^1");
	EXPECT_EQ(gf4->modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
	EXPECT_TRUE(is_irreducible(Ring::parse("GF(3^2)[t]/t^2")->modulus(), 3));
}
