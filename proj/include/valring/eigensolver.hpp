#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace valring {

enum class EigenBackend
{
	Auto,  ///< Eigen when compiled in, otherwise Jacobi
	Eigen, ///< Eigen's SelfAdjointEigenSolver (tridiagonal QR)
	Jacobi ///< cyclic Jacobi rotations, no external dependency
};

struct EigenResult
{
	std::vector<double> values; ///< descending
	EigenBackend backend = EigenBackend::Jacobi;
	long iterations = 0; ///< sweeps for Jacobi, 0 for Eigen
	double tolerance = 0;
};

inline constexpr double kEigenTolerance = 1e-8;

bool eigen_available() noexcept;
std::string_view backend_name(EigenBackend b) noexcept;
EigenBackend parse_backend(std::string_view name);

/// Eigenvalues of the symmetric n x n row-major matrix `a`.
/// Throws NumericalError when the solver does not converge.
EigenResult symmetric_eigenvalues(std::vector<double> a, std::size_t n, EigenBackend backend = EigenBackend::Auto,
                                  double tolerance = kEigenTolerance);

/// Cyclic Jacobi. Converged when the off-diagonal Frobenius norm drops below
/// tolerance * ||a||_F.
EigenResult jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tolerance = kEigenTolerance,
                               int max_sweeps = 100);

} // namespace valring
