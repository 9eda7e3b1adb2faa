#pragma once

// Brute-force reference computations. They share no code paths with the
// library beyond the index encoding of ring elements.

#include "valring/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

// Element of F_p[x][t] as coeff[i][j] of t^i x^j.
using Poly2 = std::vector<std::vector<std::int64_t>>;

inline Poly2 decode(const valring::Ring &ring, std::uint32_t idx)
{
	Poly2 c(ring.r(), std::vector<std::int64_t>(ring.m(), 0));
	for (unsigned i = 0; i < ring.r(); ++i)
		for (unsigned j = 0; j < ring.m(); ++j)
		{
			c[i][j] = idx % ring.p();
			idx /= static_cast<std::uint32_t>(ring.p());
		}
	return c;
}

inline std::uint32_t encode(const valring::Ring &ring, const Poly2 &c)
{
	std::uint64_t idx = 0;
	for (unsigned i = ring.r(); i-- > 0;)
		for (unsigned j = ring.m(); j-- > 0;)
			idx = idx * ring.p() + static_cast<std::uint64_t>(c[i][j]);
	return static_cast<std::uint32_t>(idx);
}

inline std::int64_t mod(std::int64_t a, std::int64_t n)
{
	a %= n;
	return a < 0 ? a + n : a;
}

/// Schoolbook product in F_p[x][t], reduced mod the field modulus and t^r.
inline std::uint32_t poly_mul(const valring::Ring &ring, std::uint32_t x, std::uint32_t y)
{
	const auto a = decode(ring, x), b = decode(ring, y);
	const auto p = static_cast<std::int64_t>(ring.p());
	const unsigned r = ring.r(), m = ring.m();
	Poly2 full(r, std::vector<std::int64_t>(2 * m, 0));
	for (unsigned i = 0; i < r; ++i)
		for (unsigned k = 0; i + k < r; ++k)
			for (unsigned j = 0; j < m; ++j)
				for (unsigned l = 0; l < m; ++l)
					full[i + k][j + l] = mod(full[i + k][j + l] + a[i][j] * b[k][l], p);
	const auto &f = ring.modulus();
	for (auto &row : full)
	{
		for (unsigned deg = 2 * m - 1; deg >= m; --deg)
		{
			const auto lead = row[deg];
			if (lead == 0)
				continue;
			row[deg] = 0;
			for (unsigned s = 0; s < m; ++s)
				row[deg - m + s] = mod(row[deg - m + s] - lead * static_cast<std::int64_t>(f[s]), p);
		}
		row.resize(m);
	}
	return encode(ring, full);
}

inline std::uint32_t poly_add(const valring::Ring &ring, std::uint32_t x, std::uint32_t y)
{
	auto a = decode(ring, x);
	const auto b = decode(ring, y);
	for (unsigned i = 0; i < ring.r(); ++i)
		for (unsigned j = 0; j < ring.m(); ++j)
			a[i][j] = mod(a[i][j] + b[i][j], static_cast<std::int64_t>(ring.p()));
	return encode(ring, a);
}

inline std::uint32_t add(const valring::Ring &ring, std::uint32_t x, std::uint32_t y)
{
	if (ring.family() == valring::RingFamily::ZPowerR)
		return static_cast<std::uint32_t>((std::uint64_t{x} + y) % ring.order());
	return poly_add(ring, x, y);
}

inline std::uint32_t mul(const valring::Ring &ring, std::uint32_t x, std::uint32_t y)
{
	if (ring.family() == valring::RingFamily::ZPowerR)
		return static_cast<std::uint32_t>(static_cast<unsigned __int128>(x) * y % ring.order());
	return poly_mul(ring, x, y);
}

inline std::uint32_t neg(const valring::Ring &ring, std::uint32_t x)
{
	for (std::uint32_t y = 0; y < ring.order(); ++y)
		if (add(ring, x, y) == 0)
			return y;
	return ~0u;
}

/// Exhaustive scan for y with x y = 1.
inline std::optional<std::uint32_t> inverse(const valring::Ring &ring, std::uint32_t x)
{
	for (std::uint32_t y = 0; y < ring.order(); ++y)
		if (mul(ring, x, y) == 1)
			return y;
	return std::nullopt;
}

/// Largest k with x in pi^k R, by scanning multiples of powers of pi.
inline unsigned valuation(const valring::Ring &ring, std::uint32_t x)
{
	const auto pi = ring.uniformizer().index();
	unsigned best = 0;
	std::uint32_t pik = 1;
	for (unsigned k = 0; k <= ring.r(); ++k)
	{
		for (std::uint32_t y = 0; y < ring.order(); ++y)
			if (mul(ring, pik, y) == x)
			{
				best = k;
				break;
			}
		pik = mul(ring, pik, pi);
	}
	return best;
}

/// Orbit-minimum representative of v under unit scaling.
inline std::vector<std::uint32_t> orbit_min(const valring::Ring &ring, const std::vector<std::uint32_t> &v)
{
	std::vector<std::uint32_t> best;
	for (std::uint32_t u = 0; u < ring.order(); ++u)
	{
		if (!inverse(ring, u))
			continue;
		std::vector<std::uint32_t> w(v.size());
		for (std::size_t i = 0; i < v.size(); ++i)
			w[i] = mul(ring, u, v[i]);
		if (best.empty() || w < best)
			best = w;
	}
	return best;
}

/// Number of unit-scaling orbits on vectors with a unit coordinate.
inline std::size_t class_count(const valring::Ring &ring, unsigned d)
{
	std::vector<bool> unit(ring.order());
	for (std::uint32_t x = 0; x < ring.order(); ++x)
		unit[x] = inverse(ring, x).has_value();
	std::set<std::vector<std::uint32_t>> reps;
	std::vector<std::uint32_t> v(d, 0);
	std::uint64_t total = 1;
	for (unsigned i = 0; i < d; ++i)
		total *= ring.order();
	for (std::uint64_t n = 0; n < total; ++n)
	{
		auto k = n;
		bool any = false;
		for (unsigned i = 0; i < d; ++i)
		{
			v[i] = static_cast<std::uint32_t>(k % ring.order());
			k /= ring.order();
			any = any || unit[v[i]];
		}
		if (any)
			reps.insert(orbit_min(ring, v));
	}
	return reps.size();
}

/// Collision energy by the literal quadruple count over a line multiset.
struct Line
{
	std::uint32_t m, b;
	std::uint64_t mult;
};

inline std::uint64_t energy(const valring::Ring &ring, const std::vector<Line> &lines,
                            const std::vector<std::uint32_t> &a)
{
	std::uint64_t e = 0;
	for (const auto &l : lines)
		for (const auto &l2 : lines)
			for (auto x : a)
				for (auto x2 : a)
					if (add(ring, mul(ring, l.m, x), l.b) == add(ring, mul(ring, l2.m, x2), l2.b))
						e += l.mult * l2.mult;
	return e;
}

/// Literal six-fold count of c^2 + a^2 + b'^2 = c'^2 + a'^2 + b^2.
inline std::uint64_t energy_squares(const valring::Ring &ring, const std::vector<std::uint32_t> &a)
{
	std::uint64_t e = 0;
	for (auto c : a)
		for (auto x : a)
			for (auto bp : a)
				for (auto cp : a)
					for (auto xp : a)
						for (auto b : a)
							if (add(ring, add(ring, mul(ring, c, c), mul(ring, x, x)), mul(ring, bp, bp)) ==
							    add(ring, add(ring, mul(ring, cp, cp), mul(ring, xp, xp)), mul(ring, b, b)))
								++e;
	return e;
}

/// Sorted set {f(x, y)}.
template <class F>
std::vector<std::uint32_t> image2(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b, F f)
{
	std::set<std::uint32_t> s;
	for (auto x : a)
		for (auto y : b)
			s.insert(f(x, y));
	return {s.begin(), s.end()};
}

} // namespace oracle
