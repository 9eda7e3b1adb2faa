#include "valring/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace valring::kernels {

namespace {

std::atomic<int> g_threads{0};

int team_size()
{
#ifdef _OPENMP
	const int t = g_threads.load(std::memory_order_relaxed);
	return t > 0 ? t : omp_get_max_threads();
#else
	return 1;
#endif
}

int thread_id()
{
#ifdef _OPENMP
	return omp_get_thread_num();
#else
	return 0;
#endif
}

// Per-thread histograms merged by integer addition, so the result does not
// depend on the schedule.
std::vector<std::uint64_t> merge(const std::vector<std::vector<std::uint64_t>> &parts, std::size_t size)
{
	std::vector<std::uint64_t> out(size, 0);
	for (const auto &part : parts)
		for (std::size_t y = 0; y < size; ++y)
			out[y] += part[y];
	return out;
}

} // namespace

void set_thread_count(int threads)
{
	g_threads.store(threads < 0 ? 0 : threads, std::memory_order_relaxed);
}

int thread_count()
{
	return team_size();
}

namespace omp {

BitMatrix build_biadjacency(const Ring &ring, std::span<const std::uint32_t> coords, std::size_t d)
{
	const auto n = static_cast<std::ptrdiff_t>(coords.size() / d);
	BitMatrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
	// Rows are disjoint word ranges, so row blocks can be written concurrently.
#pragma omp parallel for schedule(static) num_threads(team_size())
	for (std::ptrdiff_t i = 0; i < n; ++i)
		for (std::ptrdiff_t j = 0; j < n; ++j)
		{
			std::uint32_t acc = 0;
			for (std::size_t k = 0; k < d; ++k)
				acc = ring.add_raw(acc, ring.mul_raw(coords[static_cast<std::size_t>(i) * d + k],
				                                     coords[static_cast<std::size_t>(j) * d + k]));
			if (acc == 0)
				b.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
		}
	return b;
}

std::vector<double> gram(const BitMatrix &b)
{
	const auto n = static_cast<std::ptrdiff_t>(b.rows());
	std::vector<double> g(b.rows() * b.rows());
#pragma omp parallel for schedule(dynamic, 8) num_threads(team_size())
	for (std::ptrdiff_t i = 0; i < n; ++i)
	{
		auto ri = b.row(static_cast<std::size_t>(i));
		for (std::ptrdiff_t j = i; j < n; ++j)
		{
			auto rj = b.row(static_cast<std::size_t>(j));
			std::uint64_t c = 0;
			for (std::size_t w = 0; w < ri.size(); ++w)
				c += static_cast<std::uint64_t>(std::popcount(ri[w] & rj[w]));
			g[static_cast<std::size_t>(i * n + j)] = static_cast<double>(c);
			g[static_cast<std::size_t>(j * n + i)] = static_cast<double>(c);
		}
	}
	return g;
}

std::uint64_t edges_between(const BitMatrix &b, std::span<const std::size_t> rows,
                            std::span<const std::uint64_t> col_mask)
{
	std::uint64_t total = 0;
	const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for reduction(+ : total) schedule(static) num_threads(team_size())
	for (std::ptrdiff_t k = 0; k < n; ++k)
	{
		auto ri = b.row(rows[static_cast<std::size_t>(k)]);
		for (std::size_t w = 0; w < ri.size(); ++w)
			total += static_cast<std::uint64_t>(std::popcount(ri[w] & col_mask[w]));
	}
	return total;
}

std::uint64_t count_incidences(const Ring &ring, std::span<const Point> points, std::span<const PlaneCoeffs> planes)
{
	std::uint64_t total = 0;
	const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for reduction(+ : total) schedule(static) num_threads(team_size())
	for (std::ptrdiff_t i = 0; i < n; ++i)
	{
		const auto &x = points[static_cast<std::size_t>(i)];
		for (const auto &h : planes)
		{
			std::uint32_t acc = h[3];
			for (std::size_t k = 0; k < 3; ++k)
				acc = ring.add_raw(acc, ring.mul_raw(h[k], x[k]));
			total += acc == 0;
		}
	}
	return total;
}

std::vector<std::uint64_t> line_histogram(const Ring &ring, std::span<const WeightedLine> lines,
                                          std::span<const std::uint32_t> points)
{
	const int threads = team_size();
	const auto size = static_cast<std::size_t>(ring.order());
	std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(threads));
	const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel num_threads(threads)
	{
		auto &local = parts[static_cast<std::size_t>(thread_id())];
		local.assign(size, 0);
#pragma omp for schedule(static)
		for (std::ptrdiff_t i = 0; i < n; ++i)
		{
			const auto &l = lines[static_cast<std::size_t>(i)];
			for (auto a : points)
				local[ring.add_raw(ring.mul_raw(l.slope, a), l.intercept)] += l.multiplicity;
		}
	}
	for (auto &part : parts)
		part.resize(size, 0);
	return merge(parts, size);
}

std::vector<std::uint64_t> square_form_histogram(const Ring &ring, std::span<const std::uint32_t> set)
{
	const int threads = team_size();
	const auto size = static_cast<std::size_t>(ring.order());
	std::vector<std::uint32_t> squares(set.size());
	for (std::size_t i = 0; i < set.size(); ++i)
		squares[i] = ring.mul_raw(set[i], set[i]);

	std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(threads));
	const auto n = static_cast<std::ptrdiff_t>(squares.size());
#pragma omp parallel num_threads(threads)
	{
		auto &local = parts[static_cast<std::size_t>(thread_id())];
		local.assign(size, 0);
#pragma omp for schedule(static)
		for (std::ptrdiff_t c = 0; c < n; ++c)
			for (auto a2 : squares)
			{
				const auto partial = ring.add_raw(squares[static_cast<std::size_t>(c)], a2);
				for (auto b2 : squares)
					++local[ring.sub_raw(partial, b2)];
			}
	}
	for (auto &part : parts)
		part.resize(size, 0);
	return merge(parts, size);
}

} // namespace omp
} // namespace valring::kernels
