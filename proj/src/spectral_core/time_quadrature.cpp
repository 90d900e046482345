#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "ergorate/spectral_core.hpp"

namespace ergorate {

namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  const auto n = static_cast<std::size_t>(order);
  GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    if (n % 2 == 1 && i == n / 2) {
      x = 0.0;
    } else {
      for (int iter = 0; iter < 100; ++iter) {
        const auto [p, dp] = legendre(n, x);
        const double dx = p / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

SymmetricTimeRule::SymmetricTimeRule(double T, int nodes) : half_span_(T) {
  if (nodes < 2) throw std::invalid_argument("SymmetricTimeRule: at least two nodes required");
  if (!std::isfinite(T) || !(T > 0.0)) {
    throw std::invalid_argument("SymmetricTimeRule: T must be positive and finite");
  }
  const int order = std::min(nodes, 16);
  const int panels = nodes / order;
  total_nodes_ = static_cast<std::size_t>(order) * static_cast<std::size_t>(panels);
  const GaussLegendre base = gauss_legendre(order);
  const double width = 2.0 * T / panels;
  const double half = width / 2.0;

  for (int i = 0; i < panels; ++i) {
    const double center = static_cast<double>(2 * i + 1 - panels) / 2.0 * width;
    if (center < 0.0) continue;
    for (std::size_t j = 0; j < base.nodes.size(); ++j) {
      const double t = center + half * base.nodes[j];
      const double w = half * base.weights[j];
      if (center == 0.0) {
        // middle panel: keep its nonnegative half only
        if (base.nodes[j] > 0.0) {
          t_.push_back(t);
          w_.push_back(w);
        } else if (base.nodes[j] == 0.0) {
          w_zero_ += w;
        }
      } else {
        t_.push_back(t);
        w_.push_back(w);
      }
    }
  }
}

std::complex<double> SymmetricTimeRule::average_phase(double omega) const {
  // nodes come in pairs ±t with equal weights, so the sine terms cancel exactly
  double re = w_zero_;
  for (std::size_t k = 0; k < t_.size(); ++k) re += 2.0 * w_[k] * std::cos(omega * t_[k]);
  return {re / (2.0 * half_span_), 0.0};
}

}  // namespace ergorate
