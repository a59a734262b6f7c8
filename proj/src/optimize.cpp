#include "gsbench/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

// Tracks the best point seen and enforces the evaluation budget.
class Budgeted {
 public:
  Budgeted(const Objective& f, int budget) : f_(f), budget_(budget) {}

  bool exhausted() const noexcept { return used_ >= budget_; }
  int used() const noexcept { return used_; }
  void charge(int n) noexcept { used_ += n; }

  double operator()(std::span<const double> x) {
    ++used_;
    const double v = f_(x);
    if (v < best_value_ || best_x_.empty()) {
      best_value_ = v;
      best_x_.assign(x.begin(), x.end());
    }
    return v;
  }

  OptimizeResult result(bool converged) const { return {best_x_, best_value_, used_, converged}; }

 private:
  const Objective& f_;
  int budget_;
  int used_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

OptimizeResult nelder_mead(const Objective& objective, const std::vector<double>& x0, const OptimizerConfig& cfg) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const std::size_t n = x0.size();
  Budgeted f(objective, cfg.max_evaluations);

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += cfg.simplex_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (f.exhausted()) return f.result(false);
    values[i] = f(simplex[i]);
  }

  std::vector<std::size_t> order(n + 1);
  auto point = [n](const std::vector<double>& a, const std::vector<double>& b, double t) {
    // a + t (b - a)
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n > 0 ? n - 1 : 0];
    double size = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(simplex[order[k]][i] - simplex[best][i]));
    if (values[worst] - values[best] < cfg.spread_tolerance && size < cfg.simplex_tolerance) return f.result(true);
    if (f.exhausted()) return f.result(false);

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);

    const auto reflected = point(centroid, simplex[worst], -kReflect);
    const double fr = f(reflected);
    if (fr < values[best]) {
      if (f.exhausted()) {
        simplex[worst] = reflected;
        values[worst] = fr;
        continue;
      }
      const auto expanded = point(centroid, simplex[worst], -kExpand);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    if (f.exhausted()) continue;
    // Outside contraction when the reflection beat the worst point, inside otherwise.
    const bool outside = fr < values[worst];
    const auto contracted = outside ? point(centroid, reflected, kContract) : point(centroid, simplex[worst], kContract);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      if (f.exhausted()) break;
      const std::size_t idx = order[k];
      simplex[idx] = point(simplex[best], simplex[idx], kShrink);
      values[idx] = f(simplex[idx]);
    }
  }
}

OptimizeResult spsa(const Objective& objective, std::vector<double> x, const OptimizerConfig& cfg) {
  const std::size_t n = x.size();
  Budgeted f(objective, cfg.max_evaluations);
  const double stability = cfg.spsa_stability >= 0.0 ? cfg.spsa_stability : 0.1 * cfg.max_evaluations;
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> delta(n), plus(n), minus(n);
  if (f.exhausted()) return f.result(false);
  f(x);
  for (int k = 0; f.used() + 2 <= cfg.max_evaluations; ++k) {
    const double ak = cfg.spsa_a / std::pow(k + 1 + stability, 0.602);
    const double ck = cfg.spsa_c / std::pow(k + 1, 0.101);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = (rng() & 1U) ? 1.0 : -1.0;
      plus[i] = x[i] + ck * delta[i];
      minus[i] = x[i] - ck * delta[i];
    }
    const double diff = f(plus) - f(minus);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * diff / (2.0 * ck * delta[i]);
  }
  return f.result(false);
}

OptimizeResult gradient_descent(const Objective& objective, std::vector<double> x, const OptimizerConfig& cfg,
                                const Gradient& gradient) {
  const std::size_t n = x.size();
  Budgeted f(objective, cfg.max_evaluations);
  auto grad = [&](std::span<const double> p) {
    if (gradient) {
      int cost = 0;
      auto g = gradient(p, cost);
      f.charge(cost);
      return g;
    }
    constexpr double h = 1e-6;
    std::vector<double> g(n), q(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = p[i] + h;
      const double fp = objective(q);
      q[i] = p[i] - h;
      const double fm = objective(q);
      q[i] = p[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
    f.charge(static_cast<int>(2 * n));
    return g;
  };
  if (f.exhausted()) return f.result(false);
  f(x);
  while (!f.exhausted()) {
    const auto g = grad(x);
    double gmax = 0.0;
    for (double gi : g) gmax = std::max(gmax, std::abs(gi));
    if (gmax < cfg.gradient_tolerance) return f.result(true);
    if (f.exhausted()) break;
    for (std::size_t i = 0; i < n; ++i) x[i] -= cfg.learning_rate * g[i];
    f(x);
  }
  return f.result(false);
}

}  // namespace

OptimizerMethod parse_optimizer(const std::string& name) {
  if (name == "nm" || name == "nelder_mead") return OptimizerMethod::NelderMead;
  if (name == "spsa") return OptimizerMethod::SPSA;
  if (name == "gd" || name == "gradient_descent") return OptimizerMethod::GradientDescent;
  fail(ErrorKind::Usage, fmt::format("unknown optimizer '{}' (expected nm, spsa or gd)", name));
}

std::string to_string(OptimizerMethod m) {
  switch (m) {
    case OptimizerMethod::NelderMead: return "nelder_mead";
    case OptimizerMethod::SPSA: return "spsa";
    case OptimizerMethod::GradientDescent: return "gradient_descent";
  }
  return "unknown";
}

OptimizeResult minimize(const Objective& objective, std::vector<double> x0, const OptimizerConfig& config,
                        const Gradient& gradient) {
  if (config.max_evaluations < 1) fail(ErrorKind::Usage, "evaluation budget must be positive");
  switch (config.method) {
    case OptimizerMethod::NelderMead: return nelder_mead(objective, x0, config);
    case OptimizerMethod::SPSA: return spsa(objective, std::move(x0), config);
    case OptimizerMethod::GradientDescent: return gradient_descent(objective, std::move(x0), config, gradient);
  }
  fail(ErrorKind::Usage, "unknown optimizer");
}

}  // namespace gsbench
