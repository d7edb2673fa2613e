#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tbrf/encoder.hpp"

namespace tbrf {

inline double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

// Dense symmetric RBF Gram matrix, row-major.
class KernelMatrix {
 public:
  KernelMatrix(const std::vector<FeatureArray>& points, double gamma) : n_(points.size()), k_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      k_[i * n_ + i] = 1.0;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double v = rbf_kernel(points[i], points[j], gamma);
        k_[i * n_ + j] = v;
        k_[j * n_ + i] = v;
      }
    }
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {k_.data() + i * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<double> k_;
};

struct SmoOptions {
  double c = 100.0;
  double tol = 1e-3;
  long max_iter = 1'000'000;
};

struct BinarySolution {
  std::vector<double> alpha;
  double bias = 0.0;  // decision(x) = sum_i alpha_i y_i K(x_i, x) + bias
  long iterations = 0;
  bool converged = false;
  double dual_objective = 0.0;  // sum(alpha) - 1/2 alpha' Q alpha
};

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
inline double dual_objective(const KernelMatrix& kernel, std::span<const int> y, std::span<const double> alpha) {
  double linear = 0.0;
  double quad = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    linear += alpha[i];
    const auto row = kernel.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] != 0.0) acc += alpha[j] * y[j] * row[j];
    quad += alpha[i] * y[i] * acc;
  }
  return linear - 0.5 * quad;
}

// Sequential minimal optimization for the C-SVC dual with labels y in {-1,+1}.
// The working pair is the maximal KKT violating pair; iteration stops once
// the violation drops below `tol` or after `max_iter` pair updates.
inline BinarySolution solve_smo(const KernelMatrix& kernel, std::span<const int> y, const SmoOptions& opt) {
  constexpr double kTau = 1e-12;
  const std::size_t n = kernel.size();
  const double c = opt.c;
  BinarySolution sol;
  sol.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  auto& alpha = sol.alpha;

  auto in_up = [&](std::size_t t) { return (y[t] == 1 && alpha[t] < c) || (y[t] == -1 && alpha[t] > 0.0); };
  auto in_low = [&](std::size_t t) { return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < c); };

  for (;;) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && -v > gmax2) {
        gmax2 = -v;
        j = t;
      }
    }
    if (i == n || j == n || gmax + gmax2 < opt.tol) {
      sol.converged = true;
      break;
    }
    if (sol.iterations >= opt.max_iter) break;
    ++sol.iterations;

    const double kij = kernel(i, j);
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kij;  // Q_ii + Q_jj + 2 Q_ij with Q_ij = -K_ij
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }

    const double di = (alpha[i] - old_i) * y[i];
    const double dj = (alpha[j] - old_j) * y[j];
    const auto row_i = kernel.row(i);
    const auto row_j = kernel.row(j);
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (row_i[t] * di + row_j[t] * dj);
  }

  // Threshold from free variables, else midpoint of the feasible interval.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] == -1) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] == 1) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  double rho = 0.0;
  if (free_count > 0) rho = free_sum / static_cast<double>(free_count);
  else if (std::isfinite(upper) && std::isfinite(lower)) rho = 0.5 * (upper + lower);
  else if (std::isfinite(upper)) rho = upper;
  else if (std::isfinite(lower)) rho = lower;
  sol.bias = -rho;

  double f = 0.0;
  for (std::size_t t = 0; t < n; ++t) f += alpha[t] * (grad[t] - 1.0);
  sol.dual_objective = -0.5 * f;
  return sol;
}

}  // namespace tbrf
