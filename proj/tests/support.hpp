#pragma once

// Shared test helpers, including an SVM dual solver that shares no code with
// the SMO implementation: accelerated projected gradient (FISTA) over
// {0 <= a <= C, y'a = 0}, with the projection found by bisection.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tbrf/block_model.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/io.hpp"

namespace tbrf::test {

inline std::string fixture_path(const std::string& name) { return std::string(TBRF_FIXTURE_DIR) + "/" + name; }

inline Document load_fixture(const std::string& name = "synth_2col.json") {
  return assign_reading_order(parse_block_dump(read_file(fixture_path(name))));
}

using Matrix = std::vector<std::vector<double>>;

inline Matrix gram(const std::vector<std::vector<double>>& x, double gamma) {
  Matrix k(x.size(), std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      double d = 0;
      for (std::size_t f = 0; f < x[i].size(); ++f) d += (x[i][f] - x[j][f]) * (x[i][f] - x[j][f]);
      k[i][j] = std::exp(-gamma * d);
    }
  return k;
}

struct QpResult {
  std::vector<double> alpha;
  double objective = 0;  // maximized dual: sum(a) - 1/2 a'Qa
  double bias = 0;
};

inline double qp_objective(const Matrix& k, const std::vector<int>& y, const std::vector<double>& a) {
  double lin = 0, quad = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin += a[i];
    for (std::size_t j = 0; j < a.size(); ++j) quad += a[i] * a[j] * y[i] * y[j] * k[i][j];
  }
  return lin - 0.5 * quad;
}

// Euclidean projection of v onto {0 <= a <= c, sum y_i a_i = 0}.
inline std::vector<double> project(const std::vector<double>& v, const std::vector<int>& y, double c) {
  auto at = [&](double lambda) {
    std::vector<double> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
    return a;
  };
  auto balance = [&](double lambda) {
    auto a = at(lambda);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += y[i] * a[i];
    return s;
  };
  double lo = -1.0, hi = 1.0;
  while (balance(lo) < 0) lo *= 2;
  while (balance(hi) > 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (balance(mid) > 0 ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

inline QpResult qp_oracle(const Matrix& k, const std::vector<int>& y, double c, int iterations = 20000) {
  const std::size_t n = y.size();
  Matrix q(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = y[i] * y[j] * k[i][j];

  // Lipschitz constant: largest eigenvalue of Q by power iteration.
  std::vector<double> v(n, 1.0);
  double lmax = 1.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += q[i][j] * v[j];
    const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (norm == 0) break;
    lmax = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  const double step = 1.0 / (lmax * 1.01);

  std::vector<double> a(n, 0.0), z = a, prev = a;
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> g(n, -1.0);  // gradient of 1/2 a'Qa - sum(a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i] += q[i][j] * z[j];
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = z[i] - step * g[i];
    prev = a;
    a = project(target, y, c);
    const double tn = 0.5 * (1 + std::sqrt(1 + 4 * t * t));
    for (std::size_t i = 0; i < n; ++i) z[i] = a[i] + (t - 1) / tn * (a[i] - prev[i]);
    t = tn;
  }

  QpResult r;
  r.alpha = a;
  r.objective = qp_objective(k, y, a);
  // Bias: average over free multipliers of y_i - sum_j a_j y_j K_ij,
  // else the midpoint of the feasible interval.
  const double eps = 1e-6 * c;
  double sum = 0, lo = -1e300, hi = 1e300;
  int free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0;
    for (std::size_t j = 0; j < n; ++j) f += a[j] * y[j] * k[i][j];
    const double b = y[i] - f;
    if (a[i] > eps && a[i] < c - eps) {
      sum += b;
      ++free;
    } else if ((a[i] <= eps && y[i] > 0) || (a[i] >= c - eps && y[i] < 0)) {
      lo = std::max(lo, b);  // needs y f >= 1 -> b bound
    } else {
      hi = std::min(hi, b);
    }
  }
  r.bias = free > 0 ? sum / free : (lo > -1e299 && hi < 1e299 ? 0.5 * (lo + hi) : (lo > -1e299 ? lo : hi));
  return r;
}

inline double oracle_decision(const QpResult& r, const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                              const std::vector<double>& probe, double gamma) {
  double s = r.bias;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (r.alpha[i] == 0) continue;
    double d = 0;
    for (std::size_t f = 0; f < probe.size(); ++f) d += (x[i][f] - probe[f]) * (x[i][f] - probe[f]);
    s += r.alpha[i] * y[i] * std::exp(-gamma * d);
  }
  return s;
}

}  // namespace tbrf::test
