#include "valring/kernels.hpp"

namespace valring {

std::vector<std::uint64_t> make_mask(std::span<const std::size_t> members, std::size_t size)
{
	std::vector<std::uint64_t> mask((size + 63) / 64, 0);
	for (auto i : members)
		mask[i / 64] |= std::uint64_t{1} << (i % 64);
	return mask;
}

namespace kernels::serial {

BitMatrix build_biadjacency(const Ring &ring, std::span<const std::uint32_t> coords, std::size_t d)
{
	const std::size_t n = coords.size() / d;
	BitMatrix b(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
		{
			std::uint32_t acc = 0;
			for (std::size_t k = 0; k < d; ++k)
				acc = ring.add_raw(acc, ring.mul_raw(coords[i * d + k], coords[j * d + k]));
			if (acc == 0)
				b.set(i, j);
		}
	return b;
}

std::vector<double> gram(const BitMatrix &b)
{
	const std::size_t n = b.rows();
	std::vector<double> g(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
		{
			std::uint64_t c = 0;
			auto ri = b.row(i), rj = b.row(j);
			for (std::size_t w = 0; w < ri.size(); ++w)
				c += static_cast<std::uint64_t>(std::popcount(ri[w] & rj[w]));
			g[i * n + j] = static_cast<double>(c);
		}
	return g;
}

std::uint64_t edges_between(const BitMatrix &b, std::span<const std::size_t> rows,
                            std::span<const std::uint64_t> col_mask)
{
	std::uint64_t total = 0;
	for (auto i : rows)
	{
		auto ri = b.row(i);
		for (std::size_t w = 0; w < ri.size(); ++w)
			total += static_cast<std::uint64_t>(std::popcount(ri[w] & col_mask[w]));
	}
	return total;
}

std::uint64_t count_incidences(const Ring &ring, std::span<const Point> points, std::span<const PlaneCoeffs> planes)
{
	std::uint64_t total = 0;
	for (const auto &x : points)
		for (const auto &h : planes)
		{
			std::uint32_t acc = h[3];
			for (std::size_t k = 0; k < 3; ++k)
				acc = ring.add_raw(acc, ring.mul_raw(h[k], x[k]));
			total += acc == 0;
		}
	return total;
}

std::vector<std::uint64_t> line_histogram(const Ring &ring, std::span<const WeightedLine> lines,
                                          std::span<const std::uint32_t> points)
{
	std::vector<std::uint64_t> hist(ring.order(), 0);
	for (const auto &l : lines)
		for (auto a : points)
			hist[ring.add_raw(ring.mul_raw(l.slope, a), l.intercept)] += l.multiplicity;
	return hist;
}

std::vector<std::uint64_t> square_form_histogram(const Ring &ring, std::span<const std::uint32_t> set)
{
	std::vector<std::uint64_t> hist(ring.order(), 0);
	for (auto a : set)
		for (auto b : set)
			for (auto c : set)
			{
				const auto v = ring.sub_raw(ring.add_raw(ring.mul_raw(c, c), ring.mul_raw(a, a)), ring.mul_raw(b, b));
				++hist[v];
			}
	return hist;
}

} // namespace kernels::serial
} // namespace valring
