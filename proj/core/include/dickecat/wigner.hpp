#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dickecat/spin.hpp"

namespace dickecat {

/// W(theta, phi) sampled on a tensor grid; values(i, j) = W(thetas[i], phis[j]).
struct WignerGrid {
  std::vector<double> thetas;
  std::vector<double> phis;
  Eigen::MatrixXd values;
};

/// Which pole of the sphere theta = 0 refers to.
///
/// kStandard measures theta from +z, so |J,-J> sits at theta = pi.
/// kGroundStatePole measures theta from -z, the convention of coherent_spin_state,
/// so |J,-J> sits at theta = 0 and |theta, phi> peaks at (theta, phi).
enum class SphereFrame { kStandard, kGroundStatePole };

/// Orthonormal spherical harmonics Y_kq(theta, 0) for 0 <= q <= k <= k_max
/// (Condon-Shortley phase), via the stable normalized associated-Legendre recursion.
/// Entry [q][k - q].
std::vector<std::vector<double>> spherical_harmonics_at(int k_max, double theta);

/// Spin Wigner function of a fixed collective spin. Construction tabulates
/// every Clebsch-Gordan coefficient <J m'; k q | J m'+q> with q >= 0, so one
/// transform can evaluate many density matrices of the same N.
class SpinWignerTransform {
 public:
  explicit SpinWignerTransform(CollectiveSpin spin);

  const CollectiveSpin& spin() const noexcept { return spin_; }

  /// Multipoles t_kq for q >= 0, entry [k][q].
  std::vector<std::vector<std::complex<double>>> multipoles(const SpinDensityMatrix& rho) const;

  WignerGrid evaluate(const SpinDensityMatrix& rho, std::span<const double> thetas,
                      std::span<const double> phis,
                      SphereFrame frame = SphereFrame::kStandard) const;

  double value_at(const SpinDensityMatrix& rho, double theta, double phi,
                  SphereFrame frame = SphereFrame::kStandard) const;

 private:
  CollectiveSpin spin_;
  // cg_[k][q][i] = <J, i-J; k, q | J, i-J+q>, i = 0 .. N-q.
  std::vector<std::vector<std::vector<double>>> cg_;
};

/// One-shot convenience over SpinWignerTransform.
WignerGrid spin_wigner(const SpinDensityMatrix& rho, std::span<const double> thetas,
                       std::span<const double> phis, SphereFrame frame = SphereFrame::kStandard);

/// Evenly spaced thetas in [0, theta_max] and phis in [0, 2 pi], both inclusive.
std::pair<std::vector<double>, std::vector<double>> patch_axes(double theta_max, int theta_points,
                                                               int phi_points);

/// Header row of phis (first cell "theta\phi"), then one row per theta:
/// theta followed by the W values. 17 significant digits.
void write_wigner_csv(std::ostream& out, const WignerGrid& grid);
WignerGrid read_wigner_csv(std::istream& in);

}  // namespace dickecat
