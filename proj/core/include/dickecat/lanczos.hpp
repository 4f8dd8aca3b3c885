#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace dickecat {

/// y = A x for a real symmetric operator.
using SymmetricOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct LanczosOptions {
  /// Stop once ||A v - lambda v|| <= relative_tolerance * (spectral radius of the Krylov matrix).
  double relative_tolerance = 1e-10;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed'd1c6'e5ca'7001ULL;
  /// Krylov vectors kept before an explicit restart; also capped by max_basis_bytes.
  int max_basis_vectors = 1200;
  std::size_t max_basis_bytes = std::size_t{1} << 30;
};

struct LowestEigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;  ///< ||A v - value v||, recomputed explicitly
  double scale = 0.0;     ///< spectral-radius estimate the tolerance is relative to
  int iterations = 0;     ///< operator applications
};

/// Lowest eigenpair by Lanczos with full (twice-iterated Gram-Schmidt)
/// reorthogonalization and explicit restarts from the current Ritz vector.
/// The start vector comes from a fixed-seed generator, so results are
/// reproducible run to run. Throws ConvergenceError after max_iterations.
LowestEigenpair lanczos_lowest(const SymmetricOperator& op, std::size_t dimension,
                               const LanczosOptions& options = {});

}  // namespace dickecat
