#include "valring/projective.hpp"

#include "valring/error.hpp"

#include <algorithm>

namespace valring {

std::uint64_t ProjClass::key() const noexcept
{
	std::uint64_t k = 0;
	for (std::size_t i = coords_.size(); i-- > 0;)
		k = k * ring_->order() + coords_[i].index();
	return k;
}

ProjClass canonicalize(const RingPtr &ring, std::span<const RingElem> raw)
{
	if (raw.empty())
		throw DimensionMismatch("cannot canonicalize an empty vector");
	for (auto x : raw)
		if (!ring->contains(x))
			throw InvalidElement("coordinate index " + std::to_string(x.index()) + " out of range for " +
			                     ring->spec_string());

	const auto lead = std::find_if(raw.begin(), raw.end(), [&](RingElem x) { return ring->is_unit_raw(x.index()); });
	if (lead == raw.end())
		throw DegenerateVector("vector has no unit coordinate");

	const std::uint32_t scale = ring->inverse(*lead).index();
	std::vector<RingElem> coords;
	coords.reserve(raw.size());
	for (auto x : raw)
		coords.emplace_back(ring->mul_raw(scale, x.index()));
	return ProjClass(ring, std::move(coords));
}

std::uint64_t class_count_formula(std::uint64_t q, unsigned r, unsigned d)
{
	std::uint64_t count = 1;
	for (unsigned i = 0; i < (d - 1) * (r - 1); ++i)
		count *= q;
	std::uint64_t geometric = 0, term = 1;
	for (unsigned i = 0; i < d; ++i)
	{
		geometric += term;
		term *= q;
	}
	return count * geometric;
}

std::vector<ProjClass> enumerate_classes(const RingPtr &ring, std::size_t d, std::uint64_t max_vectors)
{
	if (d < 1)
		throw DimensionMismatch("dimension must be positive");
	std::uint64_t total = 1;
	for (std::size_t i = 0; i < d; ++i)
	{
		if (total > max_vectors / ring->order())
			throw CapacityError("|R|^d exceeds the vector cap " + std::to_string(max_vectors));
		total *= ring->order();
	}

	const auto all = ring->elements();
	const auto nonunits = ring->nonunits();
	std::vector<ProjClass> out;
	out.reserve(class_count_formula(ring->q(), ring->r(), static_cast<unsigned>(d)));

	// Leftmost unit at position `lead` is 1; earlier coordinates are nonunits,
	// later ones arbitrary. Odometer over the free coordinates.
	for (std::size_t lead = 0; lead < d; ++lead)
	{
		std::vector<std::size_t> digit(d, 0);
		std::vector<const std::vector<RingElem> *> alphabet(d, nullptr);
		for (std::size_t i = 0; i < d; ++i)
			alphabet[i] = i < lead ? &nonunits : &all;
		while (true)
		{
			std::vector<RingElem> coords(d);
			for (std::size_t i = 0; i < d; ++i)
				coords[i] = i == lead ? ring->one() : (*alphabet[i])[digit[i]];
			out.push_back(ProjClass(ring, std::move(coords)));

			std::size_t i = d;
			while (i-- > 0)
			{
				if (i == lead)
					continue;
				if (++digit[i] < alphabet[i]->size())
					break;
				digit[i] = 0;
			}
			if (i == static_cast<std::size_t>(-1))
				break;
		}
	}
	std::sort(out.begin(), out.end(), [](const ProjClass &a, const ProjClass &b) {
		return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
		                                    b.coords().end());
	});
	return out;
}

RingElem dot(const ProjClass &x, const ProjClass &y)
{
	if (x.dim() != y.dim())
		throw DimensionMismatch("dot of classes with dimensions " + std::to_string(x.dim()) + " and " +
		                        std::to_string(y.dim()));
	if (!(*x.ring() == *y.ring()))
		throw RingMismatch("dot of classes over different rings");
	const Ring &ring = *x.ring();
	std::uint32_t acc = 0;
	for (std::size_t i = 0; i < x.dim(); ++i)
		acc = ring.add_raw(acc, ring.mul_raw(x[i].index(), y[i].index()));
	return RingElem(acc);
}

bool incident(const ProjClass &x, const ProjClass &y)
{
	return dot(x, y).index() == 0;
}

std::string to_string(const ProjClass &x)
{
	std::string out = "[";
	for (std::size_t i = 0; i < x.dim(); ++i)
	{
		if (i)
			out += ':';
		out += x.ring()->format(x[i]);
	}
	return out + "]";
}

ClassIndex::ClassIndex(std::span<const ProjClass> classes)
{
	ordinal_.reserve(classes.size());
	for (std::size_t i = 0; i < classes.size(); ++i)
		ordinal_.emplace(classes[i].key(), i);
}

std::optional<std::size_t> ClassIndex::find(const ProjClass &x) const
{
	auto it = ordinal_.find(x.key());
	if (it == ordinal_.end())
		return std::nullopt;
	return it->second;
}

} // namespace valring
