#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valring {

/// Dense encoding of a ring element: an index in [0, order).
///
/// For Z/p^r the index is the residue itself. For F_q[t]/(t^r) it is the
/// base-q digit vector (coefficients of 1, t, ..., t^(r-1)), where each
/// digit is an F_q element written as a base-p coefficient vector over the
/// field modulus.
class RingElem
{
public:
	constexpr RingElem() = default;
	constexpr explicit RingElem(std::uint32_t index) : index_(index) {}

	constexpr std::uint32_t index() const noexcept { return index_; }

	friend constexpr auto operator<=>(RingElem, RingElem) = default;

private:
	std::uint32_t index_ = 0;
};

enum class RingFamily
{
	ZPowerR,
	TruncatedPoly
};

inline constexpr std::uint64_t kDefaultMaxOrder = 1'000'000;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// A finite valuation ring of order q^r, either Z/p^r or F_{p^m}[t]/(t^r).
///
/// Immutable after construction; all member functions are safe to call
/// concurrently.
class Ring
{
public:
	static RingPtr z_power(std::uint64_t p, unsigned r, std::uint64_t max_order = kDefaultMaxOrder);

	/// `modulus` holds the coefficients (constant term first) of a monic
	/// irreducible polynomial of degree m over F_p. When absent, the
	/// lexicographically first monic irreducible of degree m is used.
	static RingPtr truncated_poly(std::uint64_t p, unsigned m, unsigned r,
	                              std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
	                              std::uint64_t max_order = kDefaultMaxOrder);

	/// Parses `Z/p^r`, `Z/n` (n a prime power), `GF(q)[t]/t^r`,
	/// `GF(p^m)[t]/t^r` or `GF(q:poly)[t]/t^r` with an explicit modulus in x.
	static RingPtr parse(std::string_view spec, std::uint64_t max_order = kDefaultMaxOrder);

	/// Canonical spec string; `parse(spec_string())` reproduces this ring.
	std::string spec_string() const;

	RingFamily family() const noexcept { return family_; }
	std::uint64_t p() const noexcept { return p_; }
	unsigned m() const noexcept { return m_; }
	unsigned r() const noexcept { return r_; }
	std::uint64_t q() const noexcept { return q_; }
	std::uint64_t order() const noexcept { return order_; }
	std::uint64_t unit_count() const noexcept { return order_ - order_ / q_; }
	std::uint64_t nonunit_count() const noexcept { return order_ / q_; }
	const std::vector<std::uint32_t> &modulus() const noexcept { return modulus_; }

	bool operator==(const Ring &other) const noexcept;

	RingElem zero() const noexcept { return RingElem(0); }
	RingElem one() const noexcept { return RingElem(1); }
	/// Generator of the maximal ideal: p for Z/p^r, t for F_q[t]/(t^r).
	RingElem uniformizer() const noexcept;

	/// Validates an index; throws InvalidElement when out of range.
	RingElem element(std::uint64_t index) const;
	/// Image of an integer under Z -> R.
	RingElem from_int(std::int64_t n) const noexcept;
	bool contains(RingElem x) const noexcept { return x.index() < order_; }

	RingElem add(RingElem x, RingElem y) const;
	RingElem sub(RingElem x, RingElem y) const;
	RingElem neg(RingElem x) const;
	RingElem mul(RingElem x, RingElem y) const;
	RingElem pow(RingElem x, std::uint64_t e) const;

	bool is_unit(RingElem x) const;
	/// Newton-Hensel lift of the residue-field inverse; throws NotInvertible.
	RingElem inverse(RingElem x) const;
	/// Largest k with x in m^k; valuation(0) == r.
	unsigned valuation(RingElem x) const;

	std::vector<RingElem> elements() const;
	std::vector<RingElem> units() const;
	std::vector<RingElem> nonunits() const;

	std::string format(RingElem x) const;
	RingElem parse_element(std::string_view text) const;

	// Unchecked arithmetic on raw indices for inner loops.
	std::uint32_t add_raw(std::uint32_t x, std::uint32_t y) const noexcept;
	std::uint32_t sub_raw(std::uint32_t x, std::uint32_t y) const noexcept;
	std::uint32_t neg_raw(std::uint32_t x) const noexcept;
	std::uint32_t mul_raw(std::uint32_t x, std::uint32_t y) const noexcept;
	// The residue-field image is the lowest base-q digit in both families.
	bool is_unit_raw(std::uint32_t x) const noexcept { return x % q_ != 0; }

	/// Digit i of x in base q: the F_q coefficient of t^i (TruncatedPoly)
	/// or the i-th base-p digit (ZPowerR).
	std::uint32_t digit(std::uint32_t x, unsigned i) const noexcept;

	// Residue field F_q arithmetic on codes in [0, q).
	std::uint32_t field_add(std::uint32_t a, std::uint32_t b) const noexcept;
	std::uint32_t field_neg(std::uint32_t a) const noexcept;
	std::uint32_t field_mul(std::uint32_t a, std::uint32_t b) const noexcept;
	std::uint32_t field_inv(std::uint32_t a) const;

	// Construction is via the factories; the tag keeps make_shared usable.
	struct Tag
	{
	};
	Ring(Tag, RingFamily family, std::uint64_t p, unsigned m, unsigned r, std::vector<std::uint32_t> modulus);

private:
	std::uint32_t field_mul_slow(std::uint32_t a, std::uint32_t b) const noexcept;
	std::uint32_t trunc_add(std::uint32_t x, std::uint32_t y) const noexcept;
	std::uint32_t trunc_neg(std::uint32_t x) const noexcept;
	std::uint32_t trunc_mul(std::uint32_t x, std::uint32_t y) const noexcept;
	void check(RingElem x) const;
	void build_tables();

	RingFamily family_;
	std::uint64_t p_;
	unsigned m_;
	unsigned r_;
	std::uint64_t q_;
	std::uint64_t order_;
	std::vector<std::uint32_t> modulus_; // monic, degree m, constant term first
	std::vector<std::uint64_t> qpow_;    // q^0 .. q^r

	// F_q tables when q is small.
	std::vector<std::uint32_t> fadd_, fmul_, fneg_, finv_;
	// Full ring tables when the order is small.
	std::vector<std::uint32_t> radd_, rmul_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Exhaustive irreducibility test for a monic polynomial over F_p
/// (coefficients constant term first).
bool is_irreducible(const std::vector<std::uint32_t> &poly, std::uint64_t p);

} // namespace valring
