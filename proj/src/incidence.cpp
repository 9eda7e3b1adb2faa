#include "valring/incidence.hpp"

#include "valring/error.hpp"
#include "valring/kernels.hpp"

#include <array>
#include <cmath>

namespace valring {

namespace {

using i128 = __int128;

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
	std::uint64_t acc = 1;
	while (e--)
		acc *= b;
	return acc;
}

bool mul_ok(i128 a, i128 b, i128 &out)
{
	return !__builtin_mul_overflow(a, b, &out);
}

} // namespace

Plane3 Plane3::from_equation(const RingPtr &ring, RingElem a, RingElem b, RingElem c, RingElem d)
{
	const std::array<RingElem, 4> raw{a, b, c, ring->neg(d)};
	return Plane3(canonicalize(ring, raw));
}

Plane3 Plane3::from_class(ProjClass coeffs)
{
	if (coeffs.dim() != 4)
		throw DimensionMismatch("plane coefficients need dimension 4, got " + std::to_string(coeffs.dim()));
	return Plane3(std::move(coeffs));
}

bool satisfies(const Ring &ring, const Point3 &pt, RingElem a, RingElem b, RingElem c, RingElem d)
{
	const auto lhs = ring.add(ring.add(ring.mul(a, pt.x1), ring.mul(b, pt.x2)), ring.mul(c, pt.x3));
	return lhs == d;
}

bool is_on(const RingPtr &ring, const Point3 &pt, const Plane3 &h)
{
	if (!(*ring == *h.ring()))
		throw RingMismatch("point and plane live over different rings");
	for (auto x : {pt.x1, pt.x2, pt.x3})
		if (!ring->contains(x))
			throw InvalidElement("point coordinate out of range for " + ring->spec_string());
	const auto &c = h.coeffs();
	std::uint32_t acc = c[3].index();
	acc = ring->add_raw(acc, ring->mul_raw(c[0].index(), pt.x1.index()));
	acc = ring->add_raw(acc, ring->mul_raw(c[1].index(), pt.x2.index()));
	acc = ring->add_raw(acc, ring->mul_raw(c[2].index(), pt.x3.index()));
	return acc == 0;
}

Embedding embed(const RingPtr &ring, std::span<const Point3> points, std::span<const Plane3> planes)
{
	Embedding e;
	e.points.reserve(points.size());
	for (const auto &pt : points)
	{
		const std::array<RingElem, 4> raw{pt.x1, pt.x2, pt.x3, ring->one()};
		e.points.push_back(canonicalize(ring, raw));
	}
	e.planes.reserve(planes.size());
	for (const auto &h : planes)
	{
		if (!(*ring == *h.ring()))
			throw RingMismatch("plane lives over a different ring");
		e.planes.push_back(h.coeffs());
	}
	return e;
}

Fraction incidence_main_coefficient(std::uint64_t q, unsigned r)
{
	return {q * q + q + 1, ipow(q, r - 1) * (q * q * q + q * q + q + 1)};
}

bool incidence_bound_holds(std::uint64_t q, unsigned r, std::uint64_t incidences, std::uint64_t num_points,
                           std::uint64_t num_planes)
{
	const auto [num, den] = incidence_main_coefficient(q, r);
	// (I den - num QP)^2 <= den^2 q^{4r-2} QP
	i128 qp, lhs_a, lhs_b, diff, diff2, den2, scale, rhs;
	bool exact = mul_ok(num_points, num_planes, qp) && mul_ok(incidences, den, lhs_a) && mul_ok(num, qp, lhs_b);
	if (exact)
	{
		diff = lhs_a - lhs_b;
		exact = mul_ok(diff, diff, diff2) && mul_ok(den, den, den2);
	}
	if (exact)
	{
		scale = 1;
		for (unsigned i = 0; i < 4 * r - 2 && exact; ++i)
			exact = mul_ok(scale, q, scale);
		exact = exact && mul_ok(den2, scale, rhs) && mul_ok(rhs, qp, rhs);
	}
	if (exact)
		return diff2 <= rhs;

	const long double main = static_cast<long double>(num) / den * num_points * num_planes;
	const long double bound = std::pow(static_cast<long double>(q), 2.0L * r - 1) *
	                          std::sqrt(static_cast<long double>(num_points) * num_planes);
	return std::fabs(static_cast<long double>(incidences) - main) <= bound;
}

IncidenceReport count_incidences(const RingPtr &ring, std::span<const Point3> points, std::span<const Plane3> planes,
                                 const BipartiteGraph *graph, std::uint64_t max_pairs)
{
	if (!points.empty() && planes.size() > max_pairs / points.size())
		throw CapacityError("|Q||Pi| exceeds the incidence cap " + std::to_string(max_pairs));

	std::vector<kernels::Point> raw_points;
	raw_points.reserve(points.size());
	for (const auto &pt : points)
	{
		for (auto x : {pt.x1, pt.x2, pt.x3})
			if (!ring->contains(x))
				throw InvalidElement("point coordinate out of range for " + ring->spec_string());
		raw_points.push_back({pt.x1.index(), pt.x2.index(), pt.x3.index()});
	}
	std::vector<kernels::PlaneCoeffs> raw_planes;
	raw_planes.reserve(planes.size());
	for (const auto &h : planes)
	{
		if (!(*ring == *h.ring()))
			throw RingMismatch("plane lives over a different ring");
		const auto &c = h.coeffs();
		raw_planes.push_back({c[0].index(), c[1].index(), c[2].index(), c[3].index()});
	}

	IncidenceReport rep;
	rep.num_points = points.size();
	rep.num_planes = planes.size();
	rep.incidences = kernels::omp::count_incidences(*ring, raw_points, raw_planes);

	const auto q = ring->q();
	const auto r = ring->r();
	const auto [num, den] = incidence_main_coefficient(q, r);
	const double qp = static_cast<double>(rep.num_points) * static_cast<double>(rep.num_planes);
	rep.main_term = static_cast<double>(num) / static_cast<double>(den) * qp;
	rep.error_bound = std::pow(static_cast<double>(q), 2.0 * r - 1) * std::sqrt(qp);
	rep.pass = incidence_bound_holds(q, r, rep.incidences, rep.num_points, rep.num_planes);

	const auto emb = embed(ring, points, planes);
	if (graph != nullptr)
	{
		if (graph->d != 4 || !(*graph->ring == *ring))
			throw DimensionMismatch("cross-check graph must be E_{q,4} over the same ring");
		std::vector<std::size_t> rows, cols;
		rows.reserve(emb.points.size());
		cols.reserve(emb.planes.size());
		for (const auto &x : emb.points)
			rows.push_back(*graph->index.find(x));
		for (const auto &y : emb.planes)
			cols.push_back(*graph->index.find(y));
		rep.cross_check_edges =
		    kernels::omp::edges_between(graph->biadjacency, rows, make_mask(cols, graph->part_size()));
	}
	else
	{
		std::uint64_t edges = 0;
		for (const auto &x : emb.points)
			for (const auto &y : emb.planes)
				edges += incident(x, y);
		rep.cross_check_edges = edges;
	}
	return rep;
}

} // namespace valring
