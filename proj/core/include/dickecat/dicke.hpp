#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dickecat/lanczos.hpp"
#include "dickecat/spin.hpp"

namespace dickecat {

/// H = w_cav a^dag a + w_atom (Jz + N/2) + g/sqrt(N) (a^dag + a)(J+ + J-),
/// with the photon mode truncated at photon_cutoff.
struct DickeParams {
  double omega_cav = 1.0;
  double omega_atom = 1.0;
  double coupling = 0.0;
  int atoms = 1;
  int photon_cutoff = 50;

  /// sqrt(w_cav w_atom) / 2
  double critical_coupling() const;
  double coupling_ratio() const { return coupling / critical_coupling(); }
  void validate() const;

  /// w_cav = 1, w_atom = omega_ratio, g = g_over_gc * g_c.
  static DickeParams at_ratio(int atoms, double g_over_gc, double omega_ratio = 1.0,
                              int photon_cutoff = 50);
};

/// Basis of the parity sector (-1)^{n + m + J} = sector of |n> (x) |J,m>,
/// ordered photon-major. Excitation k = m + J runs over one parity per photon
/// number, so the index map is arithmetic and bijective by construction.
class DickeBasis {
 public:
  static constexpr std::size_t kDefaultMaxStates = std::size_t{1} << 26;

  static DickeBasis build(const DickeParams& params, Parity sector,
                          std::size_t max_states = kDefaultMaxStates);

  const DickeParams& params() const noexcept { return params_; }
  Parity sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return offsets_.back(); }
  CollectiveSpin spin() const { return CollectiveSpin(params_.atoms); }

  struct State {
    int photons;
    int excitations;  ///< m + J
  };
  State state(std::size_t index) const;
  std::optional<std::size_t> index_of(int photons, int excitations) const;

  /// Smallest excitation allowed alongside `photons` photons (0 or 1).
  int first_excitation(int photons) const;
  /// Basis indices [offset(n), offset(n+1)) carry n photons.
  std::size_t offset(int photons) const { return offsets_[static_cast<std::size_t>(photons)]; }

 private:
  DickeBasis(DickeParams params, Parity sector);

  DickeParams params_;
  Parity sector_;
  std::vector<std::size_t> offsets_;
};

/// Real symmetric CSR matrix, column indices sorted within each row.
class SparseHamiltonian {
 public:
  explicit SparseHamiltonian(DickeBasis basis);

  const DickeBasis& basis() const noexcept { return basis_; }
  std::size_t rows() const noexcept { return basis_.size(); }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_starts() const { return row_starts_; }
  std::span<const std::size_t> columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  void multiply(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd to_dense() const;
  /// max |H_ij - H_ji| over stored entries
  double max_asymmetry() const;

 private:
  DickeBasis basis_;
  std::vector<std::size_t> row_starts_;
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

SparseHamiltonian build_hamiltonian(const DickeBasis& basis);

struct GroundState {
  DickeBasis basis;
  Eigen::VectorXd amplitudes;
  double energy = 0.0;
  double residual = 0.0;  ///< ||H psi - E psi||
  int iterations = 0;     ///< operator applications (0 for dense solves)
};

struct SolverOptions {
  LanczosOptions lanczos;
  std::size_t max_states = DickeBasis::kDefaultMaxStates;
};

/// Lowest eigenpair of the given sector by Lanczos. Amplitudes are real and
/// the sign is fixed so that the largest-magnitude amplitude is positive.
GroundState ground_state(const SparseHamiltonian& hamiltonian, const LanczosOptions& options = {});

/// Convenience: build basis, Hamiltonian and solve the even sector.
GroundState solve_ground_state(const DickeParams& params, const SolverOptions& options = {});

/// Full dense eigendecomposition; ResourceError above `dense_limit` states.
GroundState dense_ground_state(const DickeParams& params, Parity sector,
                               std::size_t dense_limit = 6000);

struct ConvergenceQuantity {
  std::string name;
  std::function<double(const GroundState&)> evaluate;
};

struct ConvergenceTable {
  std::vector<int> cutoffs;
  std::vector<std::string> names;
  /// values[i][q]: quantity q at cutoffs[i]
  std::vector<std::vector<double>> values;

  /// |values[i+1][q] - values[i][q]|, one row per consecutive pair.
  std::vector<std::vector<double>> successive_differences() const;
};

/// Re-solves the even-sector ground state at every cutoff (strictly increasing)
/// and evaluates each quantity on it.
ConvergenceTable convergence_check(const DickeParams& params,
                                   std::span<const ConvergenceQuantity> quantities,
                                   std::span<const int> cutoffs, const SolverOptions& options = {});

}  // namespace dickecat
