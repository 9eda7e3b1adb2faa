#pragma once

// Data-parallel inner loops. Each kernel exists twice: `serial` is the
// reference implementation kept for testing, `omp` is the OpenMP version
// used by the library. Both produce identical results for any thread count.

#include "valring/ring.hpp"

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace valring {

/// Dense 0/1 matrix packed 64 columns per word.
class BitMatrix
{
public:
	BitMatrix() = default;
	BitMatrix(std::size_t rows, std::size_t cols)
	    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0)
	{
	}

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	std::size_t words_per_row() const noexcept { return words_; }

	bool get(std::size_t i, std::size_t j) const noexcept { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
	void set(std::size_t i, std::size_t j) noexcept { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

	std::span<const std::uint64_t> row(std::size_t i) const noexcept { return {bits_.data() + i * words_, words_}; }
	std::span<std::uint64_t> row(std::size_t i) noexcept { return {bits_.data() + i * words_, words_}; }

	std::size_t row_count(std::size_t i) const noexcept
	{
		std::size_t c = 0;
		for (auto w : row(i))
			c += static_cast<std::size_t>(std::popcount(w));
		return c;
	}

	friend bool operator==(const BitMatrix &, const BitMatrix &) = default;

private:
	std::size_t rows_ = 0, cols_ = 0, words_ = 0;
	std::vector<std::uint64_t> bits_;
};

/// Packed membership mask over `size` vertices.
std::vector<std::uint64_t> make_mask(std::span<const std::size_t> members, std::size_t size);

namespace kernels {

using Point = std::array<std::uint32_t, 3>;
/// Plane coefficients (a, b, c, e) of a x + b y + c z + e = 0, i.e. e = -d.
using PlaneCoeffs = std::array<std::uint32_t, 4>;

struct WeightedLine
{
	std::uint32_t slope;
	std::uint32_t intercept;
	std::uint64_t multiplicity;
};

namespace serial {

/// Entry (i, j) set iff coords_i . coords_j == 0; `coords` holds n rows of d indices.
BitMatrix build_biadjacency(const Ring &ring, std::span<const std::uint32_t> coords, std::size_t d);
/// Row-major B B^T as doubles.
std::vector<double> gram(const BitMatrix &b);
std::uint64_t edges_between(const BitMatrix &b, std::span<const std::size_t> rows,
                            std::span<const std::uint64_t> col_mask);
std::uint64_t count_incidences(const Ring &ring, std::span<const Point> points, std::span<const PlaneCoeffs> planes);
/// r(y) = sum of multiplicities of ((m, b), a) with m a + b = y; dense over the ring.
std::vector<std::uint64_t> line_histogram(const Ring &ring, std::span<const WeightedLine> lines,
                                          std::span<const std::uint32_t> points);
/// Histogram of c^2 + a^2 - b^2 over (a, b, c) in A^3.
std::vector<std::uint64_t> square_form_histogram(const Ring &ring, std::span<const std::uint32_t> set);

} // namespace serial

namespace omp {

BitMatrix build_biadjacency(const Ring &ring, std::span<const std::uint32_t> coords, std::size_t d);
std::vector<double> gram(const BitMatrix &b);
std::uint64_t edges_between(const BitMatrix &b, std::span<const std::size_t> rows,
                            std::span<const std::uint64_t> col_mask);
std::uint64_t count_incidences(const Ring &ring, std::span<const Point> points, std::span<const PlaneCoeffs> planes);
std::vector<std::uint64_t> line_histogram(const Ring &ring, std::span<const WeightedLine> lines,
                                          std::span<const std::uint32_t> points);
std::vector<std::uint64_t> square_form_histogram(const Ring &ring, std::span<const std::uint32_t> set);

} // namespace omp

/// Threads used by the omp kernels; 0 means the OpenMP default.
void set_thread_count(int threads);
int thread_count();

} // namespace kernels
} // namespace valring
