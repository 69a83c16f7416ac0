#include "rosenau/analytic.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace rosenau {

AnalyticFunction::AnalyticFunction(Fn fn, int max_order) : fn_(std::move(fn)), max_order_(max_order) {
  if (!fn_) {
    throw std::invalid_argument("AnalyticFunction: empty callable");
  }
}

AnalyticFunction AnalyticFunction::from_callables(
    std::function<double(double)> value, std::vector<std::function<double(double)>> derivatives) {
  const int max_order = static_cast<int>(derivatives.size());
  return AnalyticFunction(
      [value = std::move(value), derivatives = std::move(derivatives)](double x, int order) {
        return order == 0 ? value(x) : derivatives[static_cast<std::size_t>(order - 1)](x);
      },
      max_order);
}

double AnalyticFunction::derivative(double x, int order) const {
  if (order < 0 || order > max_order_) {
    throw std::invalid_argument("AnalyticFunction: derivative of order " + std::to_string(order) +
                                " not available (max " + std::to_string(max_order_) + ")");
  }
  return fn_(x, order);
}

void AnalyticFunction::require_order(int order, const char* who) const {
  if (max_order_ < order) {
    throw std::invalid_argument(std::string(who) + ": needs derivatives through order " +
                                std::to_string(order) + ", function provides " +
                                std::to_string(max_order_));
  }
}

SpaceTimeFunction::SpaceTimeFunction(Fn fn, int max_dx, int max_dt)
    : fn_(std::move(fn)), max_dx_(max_dx), max_dt_(max_dt) {}

double SpaceTimeFunction::operator()(double x, double t, int dx, int dt) const {
  if (dx < 0 || dx > max_dx_ || dt < 0 || dt > max_dt_) {
    throw std::invalid_argument("SpaceTimeFunction: derivative (" + std::to_string(dx) + ", " +
                                std::to_string(dt) + ") not available");
  }
  return fn_(x, t, dx, dt);
}

AnalyticFunction SpaceTimeFunction::at(double t, int dt) const {
  if (dt < 0 || dt > max_dt_) {
    throw std::invalid_argument("SpaceTimeFunction::at: time derivative not available");
  }
  return AnalyticFunction([fn = fn_, t, dt](double x, int order) { return fn(x, t, order, dt); },
                          max_dx_);
}

namespace {

// sech^(m) = P_m(s) + tanh * Q_m(s) with s = sech; using s' = -s tanh and
// tanh' = s^2:  P_{m+1} = s^2 Q - s (1 - s^2) Q',  Q_{m+1} = -s P'.
struct SechTables {
  static constexpr int kMaxOrder = 10;
  std::vector<std::vector<double>> p, q;

  SechTables() {
    p.push_back({0.0, 1.0});
    q.push_back({0.0});
    for (int m = 0; m < kMaxOrder; ++m) {
      const auto& pm = p.back();
      const auto& qm = q.back();
      std::vector<double> np(qm.size() + 3, 0.0);
      std::vector<double> nq(pm.size() + 1, 0.0);
      for (std::size_t i = 0; i < qm.size(); ++i) {
        np[i + 2] += qm[i];
        if (i > 0) {
          np[i] -= static_cast<double>(i) * qm[i];
          np[i + 2] += static_cast<double>(i) * qm[i];
        }
      }
      for (std::size_t i = 1; i < pm.size(); ++i) {
        nq[i] -= static_cast<double>(i) * pm[i];
      }
      p.push_back(std::move(np));
      q.push_back(std::move(nq));
    }
  }
};

const SechTables& sech_tables() {
  static const SechTables tables;
  return tables;
}

double horner(const std::vector<double>& c, double s) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    r = r * s + c[i];
  }
  return r;
}

} // namespace

double sech_derivative(double xi, int order) {
  if (order < 0 || order > SechTables::kMaxOrder) {
    throw std::invalid_argument("sech_derivative: order out of range");
  }
  const double e = std::exp(-std::abs(xi));
  const double s = 2.0 * e / (1.0 + e * e);
  const double t = std::tanh(xi);
  const auto& tab = sech_tables();
  return horner(tab.p[order], s) + t * horner(tab.q[order], s);
}

SpaceTimeFunction sech_soliton(double shift, double speed) {
  return SpaceTimeFunction(
      [shift, speed](double x, double t, int dx, int dt) {
        return std::pow(-speed, dt) * sech_derivative(x - speed * t - shift, dx + dt);
      },
      6, 2);
}

AnalyticFunction gaussian_pulse(double amplitude, double center, double width) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("gaussian_pulse: width must be positive");
  }
  // d^m/dx^m exp(-y^2) = (-1)^m H_m(y) exp(-y^2) / width^m, physicists' Hermite.
  return AnalyticFunction(
      [amplitude, center, width](double x, int order) {
        const double y = (x - center) / width;
        double h0 = 1.0, h1 = 2.0 * y;
        double hm = order == 0 ? h0 : h1;
        for (int n = 1; n < order; ++n) {
          const double h2 = 2.0 * y * h1 - 2.0 * n * h0;
          h0 = h1;
          h1 = h2;
          hm = h2;
        }
        const double sign = order % 2 == 0 ? 1.0 : -1.0;
        return amplitude * sign * hm * std::exp(-y * y) / std::pow(width, order);
      },
      6);
}

AnalyticFunction polynomial(std::vector<double> coefficients) {
  return AnalyticFunction(
      [c = std::move(coefficients)](double x, int order) {
        double r = 0.0;
        for (std::size_t i = c.size(); i-- > static_cast<std::size_t>(order);) {
          double falling = 1.0;
          for (int k = 0; k < order; ++k) {
            falling *= static_cast<double>(i) - k;
          }
          r = r * x + c[i] * falling;
        }
        return r;
      },
      8);
}

AnalyticFunction zero_function() {
  return AnalyticFunction([](double, int) { return 0.0; }, 8);
}

SpaceTimeFunction stationary(AnalyticFunction g) {
  const int max_dx = g.max_order();
  return SpaceTimeFunction(
      [g = std::move(g)](double x, double, int dx, int dt) {
        return dt == 0 ? g.derivative(x, dx) : 0.0;
      },
      max_dx, 2);
}

} // namespace rosenau
