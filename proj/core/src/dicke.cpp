#include "dickecat/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dickecat/errors.hpp"

namespace dickecat {
namespace {

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index largest = 0;
  v.cwiseAbs().maxCoeff(&largest);
  if (v[largest] < 0.0) v = -v;
}

// Count of excitations k in [first, atoms] with step 2.
std::size_t excitation_count(int first, int atoms) {
  return first > atoms ? 0 : static_cast<std::size_t>((atoms - first) / 2 + 1);
}

}  // namespace

double DickeParams::critical_coupling() const { return 0.5 * std::sqrt(omega_cav * omega_atom); }

void DickeParams::validate() const {
  if (!(omega_cav > 0.0) || !(omega_atom > 0.0)) {
    throw DomainError("DickeParams: frequencies must be positive");
  }
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw DomainError("DickeParams: coupling must be finite and non-negative");
  }
  if (atoms < 1) throw DomainError("DickeParams: atom count must be positive");
  if (photon_cutoff < 1) throw DomainError("DickeParams: photon cutoff must be at least 1");
}

DickeParams DickeParams::at_ratio(int atoms, double g_over_gc, double omega_ratio,
                                  int photon_cutoff) {
  DickeParams p;
  p.omega_cav = 1.0;
  p.omega_atom = omega_ratio;
  p.atoms = atoms;
  p.photon_cutoff = photon_cutoff;
  p.coupling = g_over_gc * p.critical_coupling();
  return p;
}

DickeBasis::DickeBasis(DickeParams params, Parity sector) : params_(params), sector_(sector) {
  offsets_.reserve(static_cast<std::size_t>(params_.photon_cutoff) + 2);
  offsets_.push_back(0);
  for (int n = 0; n <= params_.photon_cutoff; ++n) {
    offsets_.push_back(offsets_.back() + excitation_count(first_excitation(n), params_.atoms));
  }
}

DickeBasis DickeBasis::build(const DickeParams& params, Parity sector, std::size_t max_states) {
  params.validate();
  // Each photon number contributes about (N+1)/2 states.
  const double estimate = (params.photon_cutoff + 1.0) * (params.atoms / 2.0 + 1.0);
  if (estimate > static_cast<double>(max_states)) {
    throw ResourceError("DickeBasis: about " + std::to_string(static_cast<long long>(estimate)) +
                        " states exceed the budget of " + std::to_string(max_states));
  }
  DickeBasis basis(params, sector);
  if (basis.size() > max_states) {
    throw ResourceError("DickeBasis: " + std::to_string(basis.size()) +
                        " states exceed the budget of " + std::to_string(max_states));
  }
  return basis;
}

int DickeBasis::first_excitation(int photons) const {
  return (parity_bit(sector_) + photons) % 2;
}

DickeBasis::State DickeBasis::state(std::size_t index) const {
  if (index >= size()) throw DomainError("DickeBasis: index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int n = static_cast<int>(std::distance(offsets_.begin(), it)) - 1;
  const int k = first_excitation(n) + 2 * static_cast<int>(index - offsets_[n]);
  return {n, k};
}

std::optional<std::size_t> DickeBasis::index_of(int photons, int excitations) const {
  if (photons < 0 || photons > params_.photon_cutoff) return std::nullopt;
  if (excitations < 0 || excitations > params_.atoms) return std::nullopt;
  const int first = first_excitation(photons);
  if ((excitations - first) % 2 != 0) return std::nullopt;
  return offsets_[photons] + static_cast<std::size_t>((excitations - first) / 2);
}

SparseHamiltonian::SparseHamiltonian(DickeBasis basis) : basis_(std::move(basis)) {
  const DickeParams& p = basis_.params();
  const int atoms = p.atoms;
  const double scale = p.coupling / std::sqrt(static_cast<double>(atoms));
  // Matrix element between (n, k) and (n+1, k+1) or (n+1, k-1) depends only on
  // the lower photon number and the lower excitation; both rows evaluate the
  // same expression, so the stored matrix is exactly symmetric.
  auto coupling_between = [&](int lower_photons, int lower_excitation) {
    const double ladder = std::sqrt(static_cast<double>(atoms - lower_excitation) *
                                    static_cast<double>(lower_excitation + 1));
    return scale * std::sqrt(static_cast<double>(lower_photons + 1)) * ladder;
  };

  const std::size_t dim = basis_.size();
  row_starts_.reserve(dim + 1);
  columns_.reserve(5 * dim);
  values_.reserve(5 * dim);
  row_starts_.push_back(0);
  for (std::size_t row = 0; row < dim; ++row) {
    const auto [n, k] = basis_.state(row);
    auto push = [&](int photons, int excitation, double value) {
      if (value == 0.0) return;
      const auto col = basis_.index_of(photons, excitation);
      if (!col) return;
      columns_.push_back(*col);
      values_.push_back(value);
    };
    if (scale != 0.0 && n > 0) {
      if (k > 0) push(n - 1, k - 1, coupling_between(n - 1, k - 1));
      if (k < atoms) push(n - 1, k + 1, coupling_between(n - 1, k));
    }
    push(n, k, p.omega_cav * n + p.omega_atom * k);
    if (scale != 0.0 && n < p.photon_cutoff) {
      if (k > 0) push(n + 1, k - 1, coupling_between(n, k - 1));
      if (k < atoms) push(n + 1, k + 1, coupling_between(n, k));
    }
    row_starts_.push_back(columns_.size());
  }
}

void SparseHamiltonian::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t dim = rows();
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (std::size_t e = row_starts_[i]; e < row_starts_[i + 1]; ++e) acc += values_[e] * x[columns_[e]];
    y[i] = acc;
  }
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
  const auto dim = static_cast<Eigen::Index>(rows());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t e = row_starts_[i]; e < row_starts_[i + 1]; ++e) {
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(columns_[e])) = values_[e];
    }
  }
  return h;
}

double SparseHamiltonian::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t e = row_starts_[i]; e < row_starts_[i + 1]; ++e) {
      const std::size_t j = columns_[e];
      const auto begin = columns_.begin() + static_cast<std::ptrdiff_t>(row_starts_[j]);
      const auto end = columns_.begin() + static_cast<std::ptrdiff_t>(row_starts_[j + 1]);
      const auto it = std::lower_bound(begin, end, i);
      const double mirror = (it != end && *it == i) ? values_[static_cast<std::size_t>(it - columns_.begin())] : 0.0;
      worst = std::max(worst, std::abs(values_[e] - mirror));
    }
  }
  return worst;
}

SparseHamiltonian build_hamiltonian(const DickeBasis& basis) { return SparseHamiltonian(basis); }

GroundState ground_state(const SparseHamiltonian& hamiltonian, const LanczosOptions& options) {
  const SymmetricOperator op = [&hamiltonian](std::span<const double> x, std::span<double> y) {
    hamiltonian.multiply(x, y);
  };
  LowestEigenpair pair = lanczos_lowest(op, hamiltonian.rows(), options);
  fix_sign(pair.vector);
  return GroundState{hamiltonian.basis(), std::move(pair.vector), pair.value, pair.residual,
                     pair.iterations};
}

GroundState solve_ground_state(const DickeParams& params, const SolverOptions& options) {
  const DickeBasis basis = DickeBasis::build(params, Parity::kEven, options.max_states);
  return ground_state(build_hamiltonian(basis), options.lanczos);
}

GroundState dense_ground_state(const DickeParams& params, Parity sector, std::size_t dense_limit) {
  const DickeBasis basis = DickeBasis::build(params, sector);
  if (basis.size() > dense_limit) {
    throw ResourceError("dense_ground_state: " + std::to_string(basis.size()) +
                        " states exceed the dense limit of " + std::to_string(dense_limit));
  }
  const SparseHamiltonian h(basis);
  const Eigen::MatrixXd dense = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense_ground_state: eigensolver failed", INFINITY, 0);
  }
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  fix_sign(v);
  const double e = solver.eigenvalues()[0];
  const double residual = (dense * v - e * v).norm();
  return GroundState{basis, std::move(v), e, residual, 0};
}

std::vector<std::vector<double>> ConvergenceTable::successive_differences() const {
  std::vector<std::vector<double>> diffs;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    std::vector<double> row(values[i].size());
    for (std::size_t q = 0; q < row.size(); ++q) row[q] = std::abs(values[i + 1][q] - values[i][q]);
    diffs.push_back(std::move(row));
  }
  return diffs;
}

ConvergenceTable convergence_check(const DickeParams& params,
                                   std::span<const ConvergenceQuantity> quantities,
                                   std::span<const int> cutoffs, const SolverOptions& options) {
  if (cutoffs.empty()) throw DomainError("convergence_check: no cutoffs given");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= cutoffs[i - 1]) {
      throw DomainError("convergence_check: cutoffs must be strictly increasing");
    }
  }
  ConvergenceTable table;
  for (const auto& q : quantities) table.names.push_back(q.name);
  for (int cutoff : cutoffs) {
    DickeParams p = params;
    p.photon_cutoff = cutoff;
    const GroundState g = solve_ground_state(p, options);
    std::vector<double> row;
    row.reserve(quantities.size());
    for (const auto& q : quantities) row.push_back(q.evaluate(g));
    table.cutoffs.push_back(cutoff);
    table.values.push_back(std::move(row));
  }
  return table;
}

}  // namespace dickecat
