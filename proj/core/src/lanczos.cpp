#include "dickecat/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dickecat/errors.hpp"

namespace dickecat {
namespace {

// Symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e` (size d-1).
struct Tridiagonal {
  std::span<const double> d;
  std::span<const double> e;

  int size() const { return static_cast<int>(d.size()); }

  // Number of eigenvalues strictly below x (Sturm sequence).
  int count_below(double x) const {
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < size(); ++i) {
      const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
      q = (d[i] - x) - (i == 0 ? 0.0 : off / q);
      if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
      if (q < 0.0) ++count;
    }
    return count;
  }

  std::pair<double, double> gershgorin() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(e[i - 1]);
      if (i + 1 < size()) r += std::abs(e[i]);
      lo = std::min(lo, d[i] - r);
      hi = std::max(hi, d[i] + r);
    }
    return {lo, hi};
  }

  // index-th smallest eigenvalue (0-based) by bisection.
  double eigenvalue(int index) const {
    auto [lo, hi] = gershgorin();
    const double pad = 1e-14 * std::max({std::abs(lo), std::abs(hi), 1.0});
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 200 && hi - lo > 2e-16 * std::max(std::abs(lo), std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(mid) > index) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  // Normalized eigenvector for eigenvalue `lambda` by inverse iteration; the
  // tridiagonal solve uses partial pivoting (fill-in of one extra superdiagonal).
  Eigen::VectorXd eigenvector(double lambda) const {
    const int n = size();
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    if (n == 1) return Eigen::VectorXd::Ones(1);
    const double tiny = std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::abs(lambda) + std::abs(gershgorin().second));
    for (int sweep = 0; sweep < 3; ++sweep) {
      std::vector<double> diag(n), upper(n, 0.0), upper2(n, 0.0), lower(n, 0.0);
      for (int i = 0; i < n; ++i) diag[i] = d[i] - lambda;
      for (int i = 0; i + 1 < n; ++i) {
        upper[i] = e[i];
        lower[i] = e[i];
      }
      Eigen::VectorXd b = x;
      // Forward elimination with row swaps.
      for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(diag[i]) >= std::abs(lower[i])) {
          if (diag[i] == 0.0) diag[i] = tiny;
          const double f = lower[i] / diag[i];
          diag[i + 1] -= f * upper[i];
          if (i + 2 < n) upper[i + 1] -= f * upper2[i];
          b[i + 1] -= f * b[i];
        } else {
          const double f = diag[i] / lower[i];
          diag[i] = lower[i];
          const double next_diag = diag[i + 1];
          diag[i + 1] = upper[i] - f * next_diag;
          upper[i] = next_diag;
          if (i + 2 < n) {
            upper2[i] = upper[i + 1];
            upper[i + 1] = -f * upper2[i];
          }
          std::swap(b[i], b[i + 1]);
          b[i + 1] -= f * b[i];
        }
      }
      if (diag[n - 1] == 0.0) diag[n - 1] = tiny;
      Eigen::VectorXd y(n);
      for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        if (i + 1 < n) s -= upper[i] * y[i + 1];
        if (i + 2 < n) s -= upper2[i] * y[i + 2];
        y[i] = s / diag[i];
      }
      x = y / y.norm();
    }
    return x;
  }
};

Eigen::VectorXd seeded_start(std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // 53 random mantissa bits mapped to [-1, 1); independent of the library's distributions.
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    v[i] = 2.0 * u - 1.0;
  }
  return v / v.norm();
}

}  // namespace

LowestEigenpair lanczos_lowest(const SymmetricOperator& op, std::size_t dimension,
                               const LanczosOptions& options) {
  if (dimension == 0) throw DomainError("lanczos_lowest: empty operator");
  const auto n = static_cast<Eigen::Index>(dimension);
  const std::size_t by_memory = options.max_basis_bytes / (sizeof(double) * dimension);
  const Eigen::Index max_vectors = std::max<Eigen::Index>(
      2, std::min<Eigen::Index>({static_cast<Eigen::Index>(options.max_basis_vectors), n,
                                 static_cast<Eigen::Index>(by_memory)}));

  Eigen::MatrixXd basis(n, max_vectors);
  Eigen::VectorXd w(n);
  Eigen::VectorXd start = seeded_start(dimension, options.seed);
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    op(std::span<const double>(x.data(), dimension), std::span<double>(y.data(), dimension));
  };

  int applications = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> alpha;
  std::vector<double> beta;

  while (applications < options.max_iterations) {
    basis.col(0) = start;
    alpha.clear();
    beta.clear();
    bool restart = false;
    for (Eigen::Index j = 0; !restart; ++j) {
      apply(basis.col(j), w);
      ++applications;
      const double a = basis.col(j).dot(w);
      alpha.push_back(a);
      w -= a * basis.col(j);
      if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd h = basis.leftCols(j + 1).transpose() * w;
        w.noalias() -= basis.leftCols(j + 1) * h;
      }
      const double b = w.norm();

      const Tridiagonal t{alpha, beta};
      const double theta = t.eigenvalue(0);
      const double top = t.eigenvalue(t.size() - 1);
      const double scale = std::max({std::abs(theta), std::abs(top),
                                     std::numeric_limits<double>::min()});
      const Eigen::VectorXd s = t.eigenvector(theta);
      const double estimate = std::abs(b * s[s.size() - 1]);
      const double tolerance = options.relative_tolerance * scale;
      const bool exhausted = b <= 1e-14 * scale || j + 1 == n;
      const bool out_of_room = j + 1 == max_vectors;
      const bool out_of_budget = applications >= options.max_iterations;

      if (estimate <= tolerance || exhausted || out_of_room || out_of_budget) {
        Eigen::VectorXd ritz = basis.leftCols(j + 1) * s;
        ritz /= ritz.norm();
        Eigen::VectorXd ar(n);
        apply(ritz, ar);
        ++applications;
        const double rayleigh = ritz.dot(ar);
        const double residual = (ar - rayleigh * ritz).norm();
        best_residual = std::min(best_residual, residual);
        if (residual <= tolerance) {
          LowestEigenpair result;
          result.value = rayleigh;
          result.vector = std::move(ritz);
          result.residual = residual;
          result.scale = scale;
          result.iterations = applications;
          return result;
        }
        start = ritz;
        restart = true;
        continue;
      }
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
  }
  throw ConvergenceError("lanczos_lowest: no convergence after " +
                             std::to_string(applications) + " operator applications",
                         best_residual, applications);
}

}  // namespace dickecat
