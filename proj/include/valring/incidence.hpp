#pragma once

#include "valring/graph.hpp"
#include "valring/projective.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace valring {

struct Point3
{
	RingElem x1, x2, x3;

	friend auto operator<=>(const Point3 &, const Point3 &) = default;
};

/// The plane a x + b y + c z = d, stored as the class [a : b : c : -d].
class Plane3
{
public:
	/// Throws DegenerateVector when all of a, b, c, d are nonunits.
	static Plane3 from_equation(const RingPtr &ring, RingElem a, RingElem b, RingElem c, RingElem d);
	/// Interprets a class of R^4 as coefficients [a : b : c : -d].
	static Plane3 from_class(ProjClass coeffs);

	const ProjClass &coeffs() const noexcept { return coeffs_; }
	const RingPtr &ring() const noexcept { return coeffs_.ring(); }

	friend bool operator==(const Plane3 &, const Plane3 &) = default;

private:
	explicit Plane3(ProjClass c) : coeffs_(std::move(c)) {}
	ProjClass coeffs_;
};

/// Direct evaluation of a x1 + b x2 + c x3 == d for a raw coefficient tuple.
bool satisfies(const Ring &ring, const Point3 &pt, RingElem a, RingElem b, RingElem c, RingElem d);

/// True iff (x1, x2, x3, 1) . coeffs == 0. Throws RingMismatch across rings.
bool is_on(const RingPtr &ring, const Point3 &pt, const Plane3 &h);

/// Vertices of E_{q,4}(R): points map to [x1 : x2 : x3 : 1], planes to their coefficient class.
struct Embedding
{
	std::vector<ProjClass> points;
	std::vector<ProjClass> planes;
};

Embedding embed(const RingPtr &ring, std::span<const Point3> points, std::span<const Plane3> planes);

struct IncidenceReport
{
	std::size_t num_points = 0;
	std::size_t num_planes = 0;
	std::uint64_t incidences = 0;
	double main_term = 0;
	double error_bound = 0;
	bool pass = false;
	std::uint64_t cross_check_edges = 0;
};

inline constexpr std::uint64_t kDefaultMaxIncidencePairs = 100'000'000;

/// (1/q^{r-1}) (q^2+q+1)/(q^3+q^2+q+1) as an exact fraction num/den.
struct Fraction
{
	std::uint64_t num;
	std::uint64_t den;
};
Fraction incidence_main_coefficient(std::uint64_t q, unsigned r);

/// Brute-force incidence count with the two-sided bound
/// |I - main| <= q^{2r-1} sqrt(|Q||Pi|). The cross check counts edges
/// between the embedded vertex sets: through `graph` when given (it must be
/// E_{q,4} of the same ring), otherwise through the dot-product predicate.
IncidenceReport count_incidences(const RingPtr &ring, std::span<const Point3> points, std::span<const Plane3> planes,
                                 const BipartiteGraph *graph = nullptr,
                                 std::uint64_t max_pairs = kDefaultMaxIncidencePairs);

/// Exact form of the two-sided incidence bound.
bool incidence_bound_holds(std::uint64_t q, unsigned r, std::uint64_t incidences, std::uint64_t num_points,
                           std::uint64_t num_planes);

} // namespace valring
