#pragma once

// Fixed-order composite Gauss-Legendre quadrature on panels.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "sphlab/error.hpp"

namespace sphlab {

/// Nodes and weights on [-1, 1]. Supported orders: 7, 10, 15, 20, 25, 30.
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Integral of f over [lo, hi] with a single panel.
  template <class F>
  auto integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    decltype(f(mid)) acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
    return acc * half;
  }

 private:
  template <int N>
  void load();

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

template <int N>
void GaussLegendreRule::load() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();
  // Boost stores the nonnegative half; mirror it.
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0.0) {
      nodes_.push_back(0.0);
      weights_.push_back(weight[i]);
    } else {
      nodes_.push_back(abscissa[i]);
      weights_.push_back(weight[i]);
      nodes_.push_back(-abscissa[i]);
      weights_.push_back(weight[i]);
    }
  }
}

inline GaussLegendreRule::GaussLegendreRule(int order) {
  switch (order) {
    case 7: load<7>(); break;
    case 10: load<10>(); break;
    case 15: load<15>(); break;
    case 20: load<20>(); break;
    case 25: load<25>(); break;
    case 30: load<30>(); break;
    default: throw std::invalid_argument("GaussLegendreRule: unsupported order");
  }
}

/// Splits [lo, hi] into equal panels no wider than max_width and applies the
/// rule on each. Throws ResourceError above panel_budget panels.
template <class F>
auto integrate_panels(const GaussLegendreRule& rule, F&& f, double lo, double hi, double max_width,
                      std::int64_t panel_budget) {
  using Value = decltype(f(lo));
  if (hi <= lo) return Value{};
  const double panels_real = std::ceil((hi - lo) / max_width);
  if (panels_real > static_cast<double>(panel_budget)) {
    throw ResourceError("integrate_panels: panel budget exceeded");
  }
  const auto panels = std::max<std::int64_t>(1, static_cast<std::int64_t>(panels_real));
  const double width = (hi - lo) / static_cast<double>(panels);
  Value acc{};
  for (std::int64_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + width;
    acc += rule.integrate(f, a, b);
  }
  return acc;
}

}  // namespace sphlab
