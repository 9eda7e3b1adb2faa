#pragma once

#include "valring/kernels.hpp"
#include "valring/ring.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace valring {

/// A subset of R: sorted, deduplicated, validated.
class ElemSet
{
public:
	ElemSet(RingPtr ring, std::vector<RingElem> members);
	ElemSet(RingPtr ring, std::initializer_list<std::uint32_t> indices);

	const RingPtr &ring() const noexcept { return ring_; }
	const std::vector<RingElem> &members() const noexcept { return members_; }
	std::vector<std::uint32_t> indices() const;
	std::size_t size() const noexcept { return members_.size(); }
	bool empty() const noexcept { return members_.empty(); }
	bool contains(RingElem x) const noexcept;

	friend bool operator==(const ElemSet &a, const ElemSet &b) noexcept
	{
		return *a.ring_ == *b.ring_ && a.members_ == b.members_;
	}

private:
	RingPtr ring_;
	std::vector<RingElem> members_;
};

ElemSet sumset(const ElemSet &a, const ElemSet &b);
ElemSet productset(const ElemSet &a, const ElemSet &b);
/// {a^n : a in A}
ElemSet powerset_n(const ElemSet &a, unsigned n);
/// X + B + ... + B with k copies of B; k = 0 gives X.
ElemSet iterated_sumset(const ElemSet &x, const ElemSet &b, unsigned k);
/// {b a + c : a in A, b in B, c in C} by the direct triple loop.
ElemSet ba_plus_c(const ElemSet &a, const ElemSet &b, const ElemSet &c);

/// Multiset of lines l_{m,b}(x) = m x + b.
class LineFamily
{
public:
	explicit LineFamily(RingPtr ring) : ring_(std::move(ring)) {}

	void add(RingElem slope, RingElem intercept, std::uint64_t multiplicity = 1);

	const RingPtr &ring() const noexcept { return ring_; }
	std::size_t distinct() const noexcept { return entries_.size(); }
	std::uint64_t weight() const noexcept { return weight_; }
	std::uint64_t multiplicity(RingElem slope, RingElem intercept) const;
	const std::map<std::pair<RingElem, RingElem>, std::uint64_t> &entries() const noexcept { return entries_; }
	std::vector<kernels::WeightedLine> weighted_lines() const;

private:
	RingPtr ring_;
	std::map<std::pair<RingElem, RingElem>, std::uint64_t> entries_;
	std::uint64_t weight_ = 0;
};

/// Lines l_{b,c} for (b, c) in B x C, each with multiplicity 1.
LineFamily lines_from_product(const ElemSet &b, const ElemSet &c);
/// Lines (2s, c^2 - s^2) for s in A + A, c in A, counted with multiplicity.
LineFamily lines_theorem2(const ElemSet &a);

/// L(A) = {m a + b}.
ElemSet evaluate_lines(const LineFamily &lines, const ElemSet &a);
/// r(y) = number of ((m, b), a) with m a + b = y, weighted by multiplicity; nonzero entries only.
std::map<RingElem, std::uint64_t> r_function(const LineFamily &lines, const ElemSet &a);

inline constexpr std::uint64_t kDefaultMaxEnergyPairs = 1'000'000;

/// Energy of a line multiset. The collision theorem is a statement about
/// sets of lines, so the bound is checked on the distinct lines; for a set
/// (all multiplicities 1) the weighted and distinct quantities coincide.
struct EnergyReport
{
	std::uint64_t energy = 0;     ///< sum_y r(y)^2, r weighted by multiplicity
	std::uint64_t set_energy = 0; ///< the same over the distinct lines
	std::size_t distinct_lines = 0;
	std::uint64_t weight = 0;
	std::uint64_t max_multiplicity = 0;
	std::size_t set_size = 0;
	double rhs = 0; ///< |L|^2 |A|^2 / q^r + q^{2r-1} |L| |A| with |L| = distinct lines
	std::size_t evaluation_set_size = 0;
	std::map<RingElem, std::uint64_t> r_histogram; ///< weighted
	bool identities_pass = false;     ///< E = sum r^2, sum r = weight |A|, E >= weight |A|, E <= mult^2 set_energy
	bool collision_pass = false;      ///< set_energy <= rhs (exact)
	bool cauchy_schwarz_pass = false; ///< |L(A)| E >= (weight |A|)^2
	bool pass() const noexcept { return identities_pass && collision_pass && cauchy_schwarz_pass; }
};

EnergyReport energy(const LineFamily &lines, const ElemSet &a, std::uint64_t max_pairs = kDefaultMaxEnergyPairs);

/// Exact E q^r <= W^2 |A|^2 + q^{3r-1} W |A|.
bool collision_bound_holds(std::uint64_t q, unsigned r, std::uint64_t energy, std::uint64_t weight,
                           std::uint64_t set_size);

struct Theorem1Result
{
	std::size_t lhs = 0; ///< |BA + C|
	double rhs = 0;      ///< (1/2) min(q^r, |A||B||C| / q^{2r-1})
	double ratio = 0;
	bool pass = false;
};

Theorem1Result check_theorem1(const ElemSet &a, const ElemSet &b, const ElemSet &c);

inline constexpr std::size_t kDefaultMaxTheorem2Size = 40;

/// sum_v #{(a, b, c) in A^3 : c^2 + a^2 - b^2 = v}^2
std::uint64_t energy_squares(const ElemSet &a, std::size_t max_size = kDefaultMaxTheorem2Size);

struct Theorem2Result
{
	std::size_t set_size = 0;
	std::uint64_t sixth_power = 0; ///< |A|^6
	std::size_t threefold_squares = 0; ///< |A^2 + A^2 + A^2|
	std::uint64_t energy_squares = 0;
	bool step_cauchy_schwarz = false; ///< |A|^6 <= |A^2+A^2+A^2| E
	std::uint64_t relaxed_energy = 0;  ///< weighted E(lines_theorem2(A), A)
	bool step_relaxation = false;      ///< E <= relaxed_energy
	std::uint64_t line_weight = 0;
	bool step_weight = false;    ///< weight(L) <= |A+A||A|
	/// Collision bound applied to the distinct lines of the family.
	bool step_collision_set = false;
	/// Collision bound with |L| := weight(L) applied to the relaxed energy, as
	/// the chain is written. Asserted only in odd characteristic: for p = 2 the
	/// slopes 2s collapse and the family is far from a set of lines.
	bool step_collision = false;
	std::uint64_t max_multiplicity = 0;
	std::size_t sumset_size = 0; ///< |A + A|
	std::size_t square_sumset_size = 0; ///< |A^2 + A^2|
	bool hypothesis = false;             ///< |A+A||A|^2 > q^{3r-1}
	std::optional<double> ratio;         ///< |A^2+A^2||A+A| / (q^{r/2} |A|^{3/2}) when the hypothesis holds
	bool characteristic_two = false;
	bool pass() const noexcept
	{
		return step_cauchy_schwarz && step_relaxation && step_weight && step_collision_set &&
		       (characteristic_two || step_collision);
	}
};

Theorem2Result check_theorem2(const ElemSet &a, std::size_t max_size = kDefaultMaxTheorem2Size);

struct Rational
{
	std::uint64_t num;
	std::uint64_t den;
};

inline constexpr std::size_t kMaxPlunneckeSize = 12;

struct PlunneckeResult
{
	std::optional<ElemSet> witness;
	std::size_t witness_sumset = 0; ///< |X + kB|
	double bound = 0;               ///< (K/delta)^k |X|
	double growth = 0;              ///< K = |A + B| / |A|
	bool found() const noexcept { return witness.has_value(); }
};

/// Exhaustive search for X in A with |X| >= (1 - delta)|A| and
/// |X + kB| < (K/delta)^k |X|. Throws CapacityError for |A| > 12.
PlunneckeResult plunnecke_verify(const ElemSet &a, const ElemSet &b, Rational delta, unsigned k);

} // namespace valring
