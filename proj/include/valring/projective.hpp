#pragma once

#include "valring/ring.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace valring {

inline constexpr std::uint64_t kDefaultMaxVectors = 10'000'000;

/// A class [x] of vectors in R^d with at least one unit coordinate, modulo
/// scaling by units. Stored in canonical form: the leftmost unit coordinate
/// is 1.
class ProjClass
{
public:
	const RingPtr &ring() const noexcept { return ring_; }
	std::size_t dim() const noexcept { return coords_.size(); }
	std::span<const RingElem> coords() const noexcept { return coords_; }
	RingElem operator[](std::size_t i) const { return coords_[i]; }

	/// Mixed-radix key sum_i coords[i] * order^i; unique per class for a given (ring, d).
	std::uint64_t key() const noexcept;

	friend bool operator==(const ProjClass &a, const ProjClass &b) noexcept
	{
		return *a.ring_ == *b.ring_ && a.coords_ == b.coords_;
	}

private:
	friend ProjClass canonicalize(const RingPtr &ring, std::span<const RingElem> raw);
	friend std::vector<ProjClass> enumerate_classes(const RingPtr &ring, std::size_t d, std::uint64_t max_vectors);
	ProjClass(RingPtr ring, std::vector<RingElem> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {}

	RingPtr ring_;
	std::vector<RingElem> coords_;
};

/// Scales `raw` so that its leftmost unit coordinate becomes 1.
/// Throws DegenerateVector if no coordinate is a unit.
ProjClass canonicalize(const RingPtr &ring, std::span<const RingElem> raw);

/// All classes of R^d \ (R^0)^d, sorted lexicographically by coordinate index.
/// Throws CapacityError when |R|^d exceeds `max_vectors`.
std::vector<ProjClass> enumerate_classes(const RingPtr &ring, std::size_t d,
                                         std::uint64_t max_vectors = kDefaultMaxVectors);

/// q^{(d-1)(r-1)} (q^d - 1)/(q - 1).
std::uint64_t class_count_formula(std::uint64_t q, unsigned r, unsigned d);

/// Sum of coordinate products on the canonical representatives.
RingElem dot(const ProjClass &x, const ProjClass &y);
/// x . y == 0; independent of the chosen representatives.
bool incident(const ProjClass &x, const ProjClass &y);

/// `[c1:c2:...:cd]` in the ring's element syntax.
std::string to_string(const ProjClass &x);

/// Dense ordinal lookup for a fixed list of classes.
class ClassIndex
{
public:
	ClassIndex() = default;
	explicit ClassIndex(std::span<const ProjClass> classes);

	std::optional<std::size_t> find(const ProjClass &x) const;
	std::size_t size() const noexcept { return ordinal_.size(); }

private:
	std::unordered_map<std::uint64_t, std::size_t> ordinal_;
};

} // namespace valring
