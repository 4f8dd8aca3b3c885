#include "dickecat/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dickecat/errors.hpp"

namespace dickecat {

std::vector<std::vector<double>> spherical_harmonics_at(int k_max, double theta) {
  const double x = std::cos(theta);
  const double y = std::sin(theta);
  std::vector<std::vector<double>> table(k_max + 1);
  double diagonal = 1.0 / std::sqrt(4.0 * std::numbers::pi);  // Y_00
  for (int q = 0; q <= k_max; ++q) {
    if (q > 0) diagonal *= -std::sqrt((2.0 * q + 1.0) / (2.0 * q)) * y;
    std::vector<double>& row = table[q];
    row.resize(k_max - q + 1);
    row[0] = diagonal;
    if (q + 1 <= k_max) row[1] = std::sqrt(2.0 * q + 3.0) * x * diagonal;
    for (int k = q + 2; k <= k_max; ++k) {
      const double kk = k;
      const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - q * q));
      const double a_prev =
          std::sqrt((4.0 * (kk - 1) * (kk - 1) - 1.0) / ((kk - 1) * (kk - 1) - q * q));
      row[k - q] = a * (x * row[k - q - 1] - row[k - q - 2] / a_prev);
    }
  }
  return table;
}

namespace {

// Null vector of a symmetric tridiagonal matrix known to be singular, by two
// steps of inverse iteration with a pivoted tridiagonal solve. The null vector
// is isolated by a gap of order the matrix scale, so a tiny shift suffices.
std::vector<double> tridiagonal_null_vector(std::vector<double> diag, const std::vector<double>& off) {
  const std::size_t m = diag.size();
  if (m == 1) return {1.0};
  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (double e : off) scale = std::max(scale, std::abs(e));
  for (double& d : diag) d -= 1e-13 * scale;

  std::vector<double> lower(off), upper(off), upper2(m - 2, 0.0);
  std::vector<bool> swapped(m - 1, false);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(diag[i]) >= std::abs(lower[i])) {
      const double f = lower[i] / diag[i];
      lower[i] = f;
      diag[i + 1] -= f * upper[i];
    } else {
      const double f = diag[i] / lower[i];
      diag[i] = lower[i];
      lower[i] = f;
      const double t = upper[i];
      upper[i] = diag[i + 1];
      diag[i + 1] = t - f * diag[i + 1];
      if (i + 2 < m) {
        upper2[i] = upper[i + 1];
        upper[i + 1] = -f * upper[i + 1];
      }
      swapped[i] = true;
    }
  }
  for (double& d : diag) {
    if (d == 0.0) d = 1e-300;
  }

  std::vector<double> x(m, 1.0);
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (swapped[i]) {
        const double t = x[i];
        x[i] = x[i + 1];
        x[i + 1] = t - lower[i] * x[i];
      } else {
        x[i + 1] -= lower[i] * x[i];
      }
    }
    x[m - 1] /= diag[m - 1];
    x[m - 2] = (x[m - 2] - upper[m - 2] * x[m - 1]) / diag[m - 2];
    for (std::size_t i = m - 2; i-- > 0;) {
      x[i] = (x[i] - upper[i] * x[i + 1] - upper2[i] * x[i + 2]) / diag[i];
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x;
}

// All <J m1; k m2 | J M> for fixed k. For each M the coefficients over m1 form
// the null vector of J^2 - J(J+1) restricted to that M, which is tridiagonal in
// m1; the Condon-Shortley phase is fixed through an edge entry whose sign is
// known in closed form. Levels are indexed by s = M + J and m1 by i = m1 + J.
class CouplingToSameSpin {
 public:
  CouplingToSameSpin(int n, int k) : n_(n), k_(k), levels_(static_cast<std::size_t>(n + 1)) {
    const double odd_sign = k % 2 == 0 ? 1.0 : -1.0;
    for (int s = 0; s <= n; ++s) {
      const int first = lo(s);
      const int size = hi(s) - first + 1;
      std::vector<double> diag(static_cast<std::size_t>(size));
      std::vector<double> off(static_cast<std::size_t>(size - 1));
      for (int i = first; i <= hi(s); ++i) {
        const int m2 = s - i;
        diag[i - first] = double(k) * (k + 1) + double(2 * i - n) * m2;
        if (i < hi(s)) {
          off[i - first] = std::sqrt(double(n - i) * (i + 1) * (k + m2) * (k - m2 + 1));
        }
      }
      std::vector<double> c = tridiagonal_null_vector(std::move(diag), off);
      // Entry at m1 = J is positive; otherwise m2 = k or m1 = -J carry (-1)^k.
      int edge = 0;
      double sign = odd_sign;
      if (s >= n - k) {
        edge = n;
        sign = 1.0;
      } else if (s >= k) {
        edge = s - k;
      }
      const double value = c[static_cast<std::size_t>(edge - first)];
      if (value == 0.0) throw InternalError("SpinWignerTransform: coupling edge entry underflowed");
      if ((value > 0.0) != (sign > 0.0)) {
        for (double& v : c) v = -v;
      }
      levels_[static_cast<std::size_t>(s)] = std::move(c);
    }
  }

  // <J, i-J; k, q | J, i-J+q>
  double operator()(int i, int q) const {
    const int s = i + q;
    if (s < 0 || s > n_ || i < lo(s) || i > hi(s)) return 0.0;
    return levels_[static_cast<std::size_t>(s)][static_cast<std::size_t>(i - lo(s))];
  }

 private:
  int lo(int s) const { return std::max(0, s - k_); }
  int hi(int s) const { return std::min(n_, s + k_); }

  int n_;
  int k_;
  std::vector<std::vector<double>> levels_;
};

}  // namespace

SpinWignerTransform::SpinWignerTransform(CollectiveSpin spin) : spin_(spin) {
  const int n = spin.atoms();
  cg_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const CouplingToSameSpin coupling(n, k);
    cg_[k].resize(k + 1);
    for (int q = 0; q <= k; ++q) {
      std::vector<double>& column = cg_[k][q];
      column.resize(n - q + 1);
      for (int i = 0; i + q <= n; ++i) column[i] = coupling(i, q);
    }
  }
}

std::vector<std::vector<std::complex<double>>> SpinWignerTransform::multipoles(
    const SpinDensityMatrix& rho) const {
  if (!(rho.spin() == spin_)) throw DomainError("SpinWignerTransform: spin mismatch");
  const int n = spin_.atoms();
  const Eigen::MatrixXcd& r = rho.elements();
  std::vector<std::vector<std::complex<double>>> t(n + 1);
  for (int k = 0; k <= n; ++k) {
    t[k].assign(k + 1, 0.0);
    const double weight = std::sqrt((2.0 * k + 1.0) / (n + 1.0));
    for (int q = 0; q <= k; ++q) {
      const std::vector<double>& column = cg_[k][q];
      std::complex<double> acc = 0.0;
      for (int i = 0; i + q <= n; ++i) acc += r(i + q, i) * column[i];
      t[k][q] = weight * acc;
    }
  }
  return t;
}

WignerGrid SpinWignerTransform::evaluate(const SpinDensityMatrix& rho,
                                         std::span<const double> thetas,
                                         std::span<const double> phis, SphereFrame frame) const {
  // W is real exactly when rho is Hermitian: t_{k,-q} Y_{k,-q} = conj(t_kq Y_kq).
  const double asym = (rho.elements() - rho.elements().adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw DomainError("spin_wigner: density matrix is not Hermitian");

  const int n = spin_.atoms();
  const auto t = multipoles(rho);
  const double prefactor = std::sqrt((n + 1.0) / (4.0 * std::numbers::pi));

  std::vector<std::vector<std::complex<double>>> phases(phis.size());
  for (std::size_t j = 0; j < phis.size(); ++j) {
    phases[j].resize(n + 1);
    for (int q = 0; q <= n; ++q) phases[j][q] = std::polar(1.0, q * phis[j]);
  }

  WignerGrid grid;
  grid.thetas.assign(thetas.begin(), thetas.end());
  grid.phis.assign(phis.begin(), phis.end());
  grid.values.resize(static_cast<Eigen::Index>(thetas.size()),
                     static_cast<Eigen::Index>(phis.size()));
  std::vector<std::complex<double>> f(n + 1);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theta = frame == SphereFrame::kStandard ? thetas[i] : std::numbers::pi - thetas[i];
    const auto y = spherical_harmonics_at(n, theta);
    for (int q = 0; q <= n; ++q) {
      std::complex<double> acc = 0.0;
      for (int k = q; k <= n; ++k) acc += t[k][q] * y[q][k - q];
      f[q] = acc;
    }
    for (std::size_t j = 0; j < phis.size(); ++j) {
      double w = f[0].real();
      for (int q = 1; q <= n; ++q) w += 2.0 * (f[q] * phases[j][q]).real();
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = prefactor * w;
    }
  }
  return grid;
}

double SpinWignerTransform::value_at(const SpinDensityMatrix& rho, double theta, double phi,
                                     SphereFrame frame) const {
  const double th[] = {theta};
  const double ph[] = {phi};
  return evaluate(rho, th, ph, frame).values(0, 0);
}

WignerGrid spin_wigner(const SpinDensityMatrix& rho, std::span<const double> thetas,
                       std::span<const double> phis, SphereFrame frame) {
  return SpinWignerTransform(rho.spin()).evaluate(rho, thetas, phis, frame);
}

std::pair<std::vector<double>, std::vector<double>> patch_axes(double theta_max, int theta_points,
                                                               int phi_points) {
  if (theta_points < 2 || phi_points < 2 || !(theta_max > 0.0)) {
    throw DomainError("patch_axes: need >= 2 points per axis and theta_max > 0");
  }
  std::vector<double> thetas(theta_points);
  std::vector<double> phis(phi_points);
  for (int i = 0; i < theta_points; ++i) thetas[i] = theta_max * i / (theta_points - 1);
  for (int j = 0; j < phi_points; ++j) phis[j] = 2.0 * std::numbers::pi * j / (phi_points - 1);
  return {std::move(thetas), std::move(phis)};
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  std::ostringstream buffer;
  buffer << std::setprecision(17);
  buffer << "theta\\phi";
  for (double phi : grid.phis) buffer << ',' << phi;
  buffer << '\n';
  for (std::size_t i = 0; i < grid.thetas.size(); ++i) {
    buffer << grid.thetas[i];
    for (std::size_t j = 0; j < grid.phis.size(); ++j) {
      buffer << ',' << grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    buffer << '\n';
  }
  out << buffer.str();
}

WignerGrid read_wigner_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw FormatError("wigner csv: missing header");
  const auto header = split(line);
  if (header.empty() || header[0] != "theta\\phi") throw FormatError("wigner csv: bad header");
  WignerGrid grid;
  for (std::size_t j = 1; j < header.size(); ++j) grid.phis.push_back(std::stod(header[j]));
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw FormatError("wigner csv: ragged row");
    grid.thetas.push_back(std::stod(cells[0]));
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(std::stod(cells[j]));
    rows.push_back(std::move(row));
  }
  grid.values.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(grid.phis.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return grid;
}

}  // namespace dickecat
