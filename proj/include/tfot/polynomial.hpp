#ifndef TFOT_POLYNOMIAL_HPP
#define TFOT_POLYNOMIAL_HPP

#include <Eigen/Dense>

namespace tfot {

/// Polynomial trajectory over window-local time u = (t - time_origin) / time_scale.
///
/// Coefficients are stored row-major by power: row i holds the degree-i
/// coefficient for every state dimension, so coeffs is (order+1) x dims.
/// Row 0 is position at the origin, row 1 velocity (per scaled time unit),
/// row 2 acceleration/2, and so on.
struct Polynomial {
  Eigen::MatrixXd coeffs;
  double time_origin = 0.0;
  double time_scale = 1.0;

  Polynomial() = default;
  Polynomial(Eigen::MatrixXd c, double origin, double scale);

  int order() const { return static_cast<int>(coeffs.rows()) - 1; }
  int dims() const { return static_cast<int>(coeffs.cols()); }

  /// Value at absolute time t (length-dims vector). Horner over local time.
  Eigen::VectorXd evaluate(double t) const;

  /// d-th time derivative at absolute time t; zero vector when d > order.
  /// Includes the chain-rule factor time_scale^(-d).
  Eigen::VectorXd derivative_at(int d, double t) const;
};

/// Time window over discrete sampling steps [first_step, last_step].
struct TimeWindow {
  long first_step = 1;
  long last_step = 1;
  double dt = 1.0;
  int capacity = 10;

  TimeWindow() = default;
  TimeWindow(long first, long last, double step_dt, int cap);

  int size() const { return static_cast<int>(last_step - first_step + 1); }
  double time_at(int j) const { return (first_step + j) * dt; }
  double duration() const { return (last_step - first_step) * dt; }
};

/// Design matrix with rows [1, u_j, u_j^2, ..., u_j^order] for the given
/// sample times mapped through (origin, scale). Requires order+1 <= #times.
Eigen::MatrixXd vandermonde(const Eigen::VectorXd& times, int order,
                            double origin, double scale);

/// Convenience overload over a step window.
Eigen::MatrixXd vandermonde(const TimeWindow& window, int order,
                            double origin, double scale);

}  // namespace tfot

#endif
