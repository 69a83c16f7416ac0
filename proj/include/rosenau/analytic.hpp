#pragma once

// Closed-form functions with analytic derivatives: initial data and exact
// solutions used for projection, error measurement and consistency checks.

#include <functional>
#include <vector>

namespace rosenau {

/// u(x) together with derivatives up to max_order.
class AnalyticFunction {
public:
  using Fn = std::function<double(double x, int order)>;

  AnalyticFunction(Fn fn, int max_order);

  /// Value plus an explicit list of derivative callables u', u'', ...
  static AnalyticFunction from_callables(std::function<double(double)> value,
                                         std::vector<std::function<double(double)>> derivatives);

  double operator()(double x) const { return fn_(x, 0); }
  /// Throws std::invalid_argument if order > max_order().
  double derivative(double x, int order) const;
  int max_order() const noexcept { return max_order_; }
  /// Throws std::invalid_argument unless derivatives through `order` exist.
  void require_order(int order, const char* who) const;

private:
  Fn fn_;
  int max_order_;
};

/// u(x, t) with mixed partial derivatives d^dx/dx^dx d^dt/dt^dt.
class SpaceTimeFunction {
public:
  using Fn = std::function<double(double x, double t, int dx, int dt)>;

  SpaceTimeFunction(Fn fn, int max_dx, int max_dt);

  double operator()(double x, double t, int dx = 0, int dt = 0) const;
  int max_dx() const noexcept { return max_dx_; }
  int max_dt() const noexcept { return max_dt_; }

  /// x -> d^dt u / dt^dt (x, t) with its spatial derivatives.
  AnalyticFunction at(double t, int dt = 0) const;

private:
  Fn fn_;
  int max_dx_;
  int max_dt_;
};

/// m-th derivative of sech at xi.
double sech_derivative(double xi, int order);

/// sech(x - speed * t - shift)
SpaceTimeFunction sech_soliton(double shift = 0.0, double speed = 1.0);

/// amplitude * exp(-((x - center) / width)^2)
AnalyticFunction gaussian_pulse(double amplitude, double center = 0.0, double width = 1.0);

/// sum_i coefficients[i] x^i
AnalyticFunction polynomial(std::vector<double> coefficients);

AnalyticFunction zero_function();

/// Promotes a time-independent function to u(x, t) = g(x).
SpaceTimeFunction stationary(AnalyticFunction g);

} // namespace rosenau
