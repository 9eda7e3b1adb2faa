#include "valring/eigensolver.hpp"

#include "valring/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#ifdef VALRING_HAVE_EIGEN
#include <Eigen/Dense>
#endif

namespace valring {

bool eigen_available() noexcept
{
#ifdef VALRING_HAVE_EIGEN
	return true;
#else
	return false;
#endif
}

std::string_view backend_name(EigenBackend b) noexcept
{
	switch (b)
	{
	case EigenBackend::Auto:
		return "auto";
	case EigenBackend::Eigen:
		return "eigen";
	case EigenBackend::Jacobi:
		return "jacobi";
	}
	return "unknown";
}

EigenBackend parse_backend(std::string_view name)
{
	if (name == "auto")
		return EigenBackend::Auto;
	if (name == "eigen")
		return EigenBackend::Eigen;
	if (name == "jacobi")
		return EigenBackend::Jacobi;
	throw ParseError("unknown eigensolver '" + std::string(name) + "'");
}

EigenResult jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tolerance, int max_sweeps)
{
	auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };

	double total = 0;
	for (double v : a)
		total += v * v;
	const double threshold = tolerance * std::sqrt(total);

	EigenResult result;
	result.backend = EigenBackend::Jacobi;
	result.tolerance = tolerance;

	for (int sweep = 0;; ++sweep)
	{
		double off = 0;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i + 1; j < n; ++j)
				off += 2 * at(i, j) * at(i, j);
		result.iterations = sweep;
		if (std::sqrt(off) <= threshold)
			break;
		if (sweep == max_sweeps)
			throw NumericalError("Jacobi eigensolver did not converge after " + std::to_string(sweep) + " sweeps",
			                     sweep);

		for (std::size_t p = 0; p < n; ++p)
			for (std::size_t q = p + 1; q < n; ++q)
			{
				const double apq = at(p, q);
				if (apq == 0)
					continue;
				// Rotation angle annihilating a(p,q), in the stable small-angle form.
				const double theta = (at(q, q) - at(p, p)) / (2 * apq);
				const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
				const double c = 1 / std::sqrt(t * t + 1);
				const double s = t * c;
				for (std::size_t k = 0; k < n; ++k)
				{
					const double akp = at(k, p), akq = at(k, q);
					at(k, p) = c * akp - s * akq;
					at(k, q) = s * akp + c * akq;
				}
				for (std::size_t k = 0; k < n; ++k)
				{
					const double apk = at(p, k), aqk = at(q, k);
					at(p, k) = c * apk - s * aqk;
					at(q, k) = s * apk + c * aqk;
				}
			}
	}

	result.values.resize(n);
	for (std::size_t i = 0; i < n; ++i)
		result.values[i] = at(i, i);
	std::sort(result.values.begin(), result.values.end(), std::greater<>());
	return result;
}

EigenResult symmetric_eigenvalues(std::vector<double> a, std::size_t n, EigenBackend backend, double tolerance)
{
	if (a.size() != n * n)
		throw DimensionMismatch("matrix storage does not match n x n");
	if (backend == EigenBackend::Auto)
		backend = eigen_available() ? EigenBackend::Eigen : EigenBackend::Jacobi;

	if (backend == EigenBackend::Jacobi)
		return jacobi_eigenvalues(std::move(a), n, tolerance);

#ifdef VALRING_HAVE_EIGEN
	Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
	    a.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
	if (solver.info() != Eigen::Success)
		throw NumericalError("Eigen SelfAdjointEigenSolver did not converge", 0);
	EigenResult result;
	result.backend = EigenBackend::Eigen;
	result.tolerance = tolerance;
	const auto &ev = solver.eigenvalues();
	result.values.assign(ev.data(), ev.data() + ev.size());
	std::sort(result.values.begin(), result.values.end(), std::greater<>());
	return result;
#else
	throw Error("this build has no Eigen backend; use the jacobi solver");
#endif
}

} // namespace valring
