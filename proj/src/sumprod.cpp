#include "valring/sumprod.hpp"

#include "valring/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace valring {

namespace {

using i128 = __int128;

void require_same_ring(const ElemSet &a, const ElemSet &b)
{
	if (!(*a.ring() == *b.ring()))
		throw RingMismatch("sets over different rings: " + a.ring()->spec_string() + " vs " +
		                   b.ring()->spec_string());
}

ElemSet from_flags(const RingPtr &ring, const std::vector<char> &flags)
{
	std::vector<RingElem> out;
	for (std::uint32_t y = 0; y < flags.size(); ++y)
		if (flags[y])
			out.emplace_back(y);
	return ElemSet(ring, std::move(out));
}

i128 ipow128(std::uint64_t b, unsigned e)
{
	i128 acc = 1;
	while (e--)
		acc *= b;
	return acc;
}

} // namespace

ElemSet::ElemSet(RingPtr ring, std::vector<RingElem> members) : ring_(std::move(ring)), members_(std::move(members))
{
	for (auto x : members_)
		if (!ring_->contains(x))
			throw InvalidElement("element index " + std::to_string(x.index()) + " out of range for " +
			                     ring_->spec_string());
	std::sort(members_.begin(), members_.end());
	members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ElemSet::ElemSet(RingPtr ring, std::initializer_list<std::uint32_t> indices)
    : ElemSet(std::move(ring), [&] {
	      std::vector<RingElem> v;
	      for (auto i : indices)
		      v.emplace_back(i);
	      return v;
      }())
{
}

std::vector<std::uint32_t> ElemSet::indices() const
{
	std::vector<std::uint32_t> out;
	out.reserve(members_.size());
	for (auto x : members_)
		out.push_back(x.index());
	return out;
}

bool ElemSet::contains(RingElem x) const noexcept
{
	return std::binary_search(members_.begin(), members_.end(), x);
}

ElemSet sumset(const ElemSet &a, const ElemSet &b)
{
	require_same_ring(a, b);
	const Ring &ring = *a.ring();
	std::vector<char> seen(ring.order(), 0);
	for (auto x : a.members())
		for (auto y : b.members())
			seen[ring.add_raw(x.index(), y.index())] = 1;
	return from_flags(a.ring(), seen);
}

ElemSet productset(const ElemSet &a, const ElemSet &b)
{
	require_same_ring(a, b);
	const Ring &ring = *a.ring();
	std::vector<char> seen(ring.order(), 0);
	for (auto x : a.members())
		for (auto y : b.members())
			seen[ring.mul_raw(x.index(), y.index())] = 1;
	return from_flags(a.ring(), seen);
}

ElemSet powerset_n(const ElemSet &a, unsigned n)
{
	if (n < 1)
		throw Error("power n must be at least 1");
	std::vector<RingElem> out;
	out.reserve(a.size());
	for (auto x : a.members())
		out.push_back(a.ring()->pow(x, n));
	return ElemSet(a.ring(), std::move(out));
}

ElemSet iterated_sumset(const ElemSet &x, const ElemSet &b, unsigned k)
{
	require_same_ring(x, b);
	ElemSet acc = x;
	for (unsigned i = 0; i < k; ++i)
		acc = sumset(acc, b);
	return acc;
}

ElemSet ba_plus_c(const ElemSet &a, const ElemSet &b, const ElemSet &c)
{
	require_same_ring(a, b);
	require_same_ring(a, c);
	const Ring &ring = *a.ring();
	std::vector<char> seen(ring.order(), 0);
	for (auto x : a.members())
		for (auto y : b.members())
		{
			const auto prod = ring.mul_raw(y.index(), x.index());
			for (auto z : c.members())
				seen[ring.add_raw(prod, z.index())] = 1;
		}
	return from_flags(a.ring(), seen);
}

void LineFamily::add(RingElem slope, RingElem intercept, std::uint64_t multiplicity)
{
	if (!ring_->contains(slope) || !ring_->contains(intercept))
		throw InvalidElement("line coefficients out of range for " + ring_->spec_string());
	if (multiplicity == 0)
		return;
	entries_[{slope, intercept}] += multiplicity;
	weight_ += multiplicity;
}

std::uint64_t LineFamily::multiplicity(RingElem slope, RingElem intercept) const
{
	auto it = entries_.find({slope, intercept});
	return it == entries_.end() ? 0 : it->second;
}

std::vector<kernels::WeightedLine> LineFamily::weighted_lines() const
{
	std::vector<kernels::WeightedLine> out;
	out.reserve(entries_.size());
	for (const auto &[key, mult] : entries_)
		out.push_back({key.first.index(), key.second.index(), mult});
	return out;
}

LineFamily lines_from_product(const ElemSet &b, const ElemSet &c)
{
	require_same_ring(b, c);
	LineFamily lines(b.ring());
	for (auto m : b.members())
		for (auto k : c.members())
			lines.add(m, k);
	return lines;
}

LineFamily lines_theorem2(const ElemSet &a)
{
	const Ring &ring = *a.ring();
	const auto two = ring.from_int(2).index();
	LineFamily lines(a.ring());
	const auto sums = sumset(a, a);
	for (auto s : sums.members())
	{
		const auto s2 = ring.mul_raw(s.index(), s.index());
		for (auto c : a.members())
			lines.add(RingElem(ring.mul_raw(two, s.index())),
			          RingElem(ring.sub_raw(ring.mul_raw(c.index(), c.index()), s2)));
	}
	return lines;
}

ElemSet evaluate_lines(const LineFamily &lines, const ElemSet &a)
{
	if (!(*lines.ring() == *a.ring()))
		throw RingMismatch("lines and set over different rings");
	const Ring &ring = *a.ring();
	std::vector<char> seen(ring.order(), 0);
	for (const auto &[key, mult] : lines.entries())
		for (auto x : a.members())
			seen[ring.add_raw(ring.mul_raw(key.first.index(), x.index()), key.second.index())] = 1;
	return from_flags(a.ring(), seen);
}

std::map<RingElem, std::uint64_t> r_function(const LineFamily &lines, const ElemSet &a)
{
	if (!(*lines.ring() == *a.ring()))
		throw RingMismatch("lines and set over different rings");
	const auto hist = kernels::omp::line_histogram(*a.ring(), lines.weighted_lines(), a.indices());
	std::map<RingElem, std::uint64_t> out;
	for (std::uint32_t y = 0; y < hist.size(); ++y)
		if (hist[y])
			out.emplace(RingElem(y), hist[y]);
	return out;
}

bool collision_bound_holds(std::uint64_t q, unsigned r, std::uint64_t energy, std::uint64_t weight,
                           std::uint64_t set_size)
{
	const i128 wa = static_cast<i128>(weight) * set_size;
	return static_cast<i128>(energy) * ipow128(q, r) <= wa * wa + ipow128(q, 3 * r - 1) * wa;
}

EnergyReport energy(const LineFamily &lines, const ElemSet &a, std::uint64_t max_pairs)
{
	if (!(*lines.ring() == *a.ring()))
		throw RingMismatch("lines and set over different rings");
	if (!a.empty() && lines.distinct() > max_pairs / a.size())
		throw CapacityError("|P||A| exceeds the energy cap " + std::to_string(max_pairs));

	const Ring &ring = *a.ring();
	const auto weighted = lines.weighted_lines();
	const auto hist = kernels::omp::line_histogram(ring, weighted, a.indices());

	EnergyReport rep;
	rep.distinct_lines = lines.distinct();
	rep.weight = lines.weight();
	rep.set_size = a.size();
	for (const auto &l : weighted)
		rep.max_multiplicity = std::max(rep.max_multiplicity, l.multiplicity);
	std::uint64_t total = 0;
	for (std::uint32_t y = 0; y < hist.size(); ++y)
	{
		if (!hist[y])
			continue;
		rep.r_histogram.emplace(RingElem(y), hist[y]);
		rep.energy += hist[y] * hist[y];
		total += hist[y];
	}
	rep.evaluation_set_size = rep.r_histogram.size();

	rep.set_energy = rep.energy;
	if (rep.max_multiplicity > 1)
	{
		auto distinct = weighted;
		for (auto &l : distinct)
			l.multiplicity = 1;
		rep.set_energy = 0;
		for (auto v : kernels::omp::line_histogram(ring, distinct, a.indices()))
			rep.set_energy += v * v;
	}

	const auto q = ring.q();
	const auto r = ring.r();
	const double la = static_cast<double>(rep.distinct_lines) * static_cast<double>(rep.set_size);
	rep.rhs = la * la / std::pow(static_cast<double>(q), r) + std::pow(static_cast<double>(q), 2.0 * r - 1) * la;

	const std::uint64_t wa_int = rep.weight * rep.set_size;
	rep.identities_pass = total == wa_int && rep.energy >= wa_int &&
	                      static_cast<i128>(rep.energy) <=
	                          static_cast<i128>(rep.max_multiplicity) * rep.max_multiplicity * rep.set_energy;
	rep.collision_pass = collision_bound_holds(q, r, rep.set_energy, rep.distinct_lines, rep.set_size);
	rep.cauchy_schwarz_pass =
	    static_cast<i128>(rep.evaluation_set_size) * rep.energy >= static_cast<i128>(wa_int) * wa_int;
	return rep;
}

Theorem1Result check_theorem1(const ElemSet &a, const ElemSet &b, const ElemSet &c)
{
	const auto q = a.ring()->q();
	const auto r = a.ring()->r();
	Theorem1Result res;
	res.lhs = ba_plus_c(a, b, c).size();
	const double product = static_cast<double>(a.size()) * static_cast<double>(b.size()) * static_cast<double>(c.size());
	res.rhs = 0.5 * std::min(std::pow(static_cast<double>(q), r), product / std::pow(static_cast<double>(q), 2.0 * r - 1));
	res.ratio = res.rhs > 0 ? static_cast<double>(res.lhs) / res.rhs : 0.0;
	// x >= min(u, v)/2  <=>  2x >= u or 2x q^{2r-1} >= |A||B||C|
	const i128 twice = 2 * static_cast<i128>(res.lhs);
	res.pass = twice >= ipow128(q, r) ||
	           twice * ipow128(q, 2 * r - 1) >= static_cast<i128>(a.size()) * b.size() * c.size();
	return res;
}

std::uint64_t energy_squares(const ElemSet &a, std::size_t max_size)
{
	if (a.size() > max_size)
		throw CapacityError("|A| = " + std::to_string(a.size()) + " exceeds the cap " + std::to_string(max_size));
	const auto hist = kernels::omp::square_form_histogram(*a.ring(), a.indices());
	std::uint64_t e = 0;
	for (auto v : hist)
		e += v * v;
	return e;
}

Theorem2Result check_theorem2(const ElemSet &a, std::size_t max_size)
{
	if (a.empty())
		throw Error("theorem 2 chain needs a nonempty set");
	const Ring &ring = *a.ring();
	const auto q = ring.q();
	const auto r = ring.r();

	Theorem2Result res;
	res.set_size = a.size();
	res.characteristic_two = ring.p() == 2;
	const auto n = static_cast<std::uint64_t>(a.size());
	res.sixth_power = n * n * n * n * n * n;
	res.energy_squares = energy_squares(a, max_size);

	const auto squares = powerset_n(a, 2);
	const auto two_squares = sumset(squares, squares);
	res.square_sumset_size = two_squares.size();
	res.threefold_squares = sumset(two_squares, squares).size();
	res.step_cauchy_schwarz =
	    static_cast<i128>(res.sixth_power) <= static_cast<i128>(res.threefold_squares) * res.energy_squares;

	const auto lines = lines_theorem2(a);
	const auto rep = energy(lines, a, std::numeric_limits<std::uint64_t>::max());
	res.relaxed_energy = rep.energy;
	res.step_relaxation = res.energy_squares <= res.relaxed_energy;

	res.sumset_size = sumset(a, a).size();
	res.line_weight = lines.weight();
	res.step_weight = res.line_weight <= res.sumset_size * n;
	res.step_collision_set = rep.collision_pass;
	res.step_collision = collision_bound_holds(q, r, rep.energy, res.line_weight, n);
	res.max_multiplicity = rep.max_multiplicity;

	res.hypothesis = static_cast<i128>(res.sumset_size) * n * n > ipow128(q, 3 * r - 1);
	if (res.hypothesis)
		res.ratio = static_cast<double>(res.square_sumset_size) * static_cast<double>(res.sumset_size) /
		            (std::pow(static_cast<double>(q), 0.5 * r) * std::pow(static_cast<double>(n), 1.5));
	return res;
}

PlunneckeResult plunnecke_verify(const ElemSet &a, const ElemSet &b, Rational delta, unsigned k)
{
	require_same_ring(a, b);
	if (a.size() > kMaxPlunneckeSize)
		throw CapacityError("exhaustive subset search limited to |A| <= 12, got " + std::to_string(a.size()));
	if (delta.den == 0 || delta.num == 0 || delta.num >= delta.den)
		throw Error("delta must lie strictly between 0 and 1");
	if (a.empty() || b.empty())
		throw Error("Plunnecke check needs nonempty A and B");

	PlunneckeResult res;
	const std::uint64_t n = a.size();
	const std::uint64_t ab = sumset(a, b).size();
	res.growth = static_cast<double>(ab) / static_cast<double>(n);

	// |X + kB| |A|^k num^k < |A+B|^k den^k |X|
	const i128 lhs_scale = ipow128(n, k) * ipow128(delta.num, k);
	const i128 rhs_scale = ipow128(ab, k) * ipow128(delta.den, k);

	// Largest subsets first; the full set is tried before anything else.
	std::vector<std::uint32_t> masks(std::size_t{1} << n);
	for (std::uint32_t m = 0; m < masks.size(); ++m)
		masks[m] = m;
	std::stable_sort(masks.begin(), masks.end(),
	                 [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) > std::popcount(y); });

	for (auto mask : masks)
	{
		const std::uint64_t size = static_cast<std::uint64_t>(std::popcount(mask));
		if (size == 0 || size * delta.den < (delta.den - delta.num) * n)
			continue;
		std::vector<RingElem> members;
		for (std::uint64_t i = 0; i < n; ++i)
			if (mask >> i & 1u)
				members.push_back(a.members()[i]);
		ElemSet x(a.ring(), std::move(members));
		const auto grown = iterated_sumset(x, b, k).size();
		if (static_cast<i128>(grown) * lhs_scale < rhs_scale * static_cast<i128>(size))
		{
			res.witness_sumset = grown;
			res.bound = std::pow(res.growth * static_cast<double>(delta.den) / static_cast<double>(delta.num), k) *
			            static_cast<double>(size);
			res.witness = std::move(x);
			return res;
		}
	}
	return res;
}

} // namespace valring
