#include "tfot/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace tfot {

Polynomial::Polynomial(Eigen::MatrixXd c, double origin, double scale)
    : coeffs(std::move(c)), time_origin(origin), time_scale(scale) {
  if (coeffs.rows() < 1 || coeffs.cols() < 1)
    throw std::invalid_argument("Polynomial: empty coefficient matrix");
  if (!(time_scale > 0.0))
    throw std::invalid_argument("Polynomial: time_scale must be positive");
}

Eigen::VectorXd Polynomial::evaluate(double t) const {
  const double u = (t - time_origin) / time_scale;
  const int n = static_cast<int>(coeffs.rows());
  Eigen::VectorXd v = coeffs.row(n - 1).transpose();
  for (int i = n - 2; i >= 0; --i) v = v * u + coeffs.row(i).transpose();
  return v;
}

Eigen::VectorXd Polynomial::derivative_at(int d, double t) const {
  if (d < 0) throw std::invalid_argument("derivative_at: negative order");
  if (d == 0) return evaluate(t);
  const int n = static_cast<int>(coeffs.rows());
  if (d > order()) return Eigen::VectorXd::Zero(dims());
  const double u = (t - time_origin) / time_scale;
  // Horner on the d-th derivative of the local-time polynomial.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dims());
  for (int i = n - 1; i >= d; --i) {
    double fall = 1.0;
    for (int j = 0; j < d; ++j) fall *= static_cast<double>(i - j);
    v = v * u + fall * coeffs.row(i).transpose();
  }
  return v / std::pow(time_scale, d);
}

TimeWindow::TimeWindow(long first, long last, double step_dt, int cap)
    : first_step(first), last_step(last), dt(step_dt), capacity(cap) {
  if (last_step < first_step)
    throw std::invalid_argument("TimeWindow: last_step < first_step");
  if (!(dt > 0.0)) throw std::invalid_argument("TimeWindow: dt must be positive");
  if (capacity < 1) throw std::invalid_argument("TimeWindow: capacity < 1");
  if (size() > capacity)
    throw std::invalid_argument("TimeWindow: size exceeds capacity");
}

Eigen::MatrixXd vandermonde(const Eigen::VectorXd& times, int order,
                            double origin, double scale) {
  const int rows = static_cast<int>(times.size());
  if (rows == 0) throw std::invalid_argument("vandermonde: empty time set");
  if (order < 0) throw std::invalid_argument("vandermonde: negative order");
  if (order + 1 > rows)
    throw std::invalid_argument("vandermonde: order+1 exceeds sample count");
  if (!(scale > 0.0)) throw std::invalid_argument("vandermonde: scale must be positive");
  Eigen::MatrixXd z(rows, order + 1);
  for (int j = 0; j < rows; ++j) {
    const double u = (times[j] - origin) / scale;
    double p = 1.0;
    for (int i = 0; i <= order; ++i) {
      z(j, i) = p;
      p *= u;
    }
  }
  return z;
}

Eigen::MatrixXd vandermonde(const TimeWindow& window, int order,
                            double origin, double scale) {
  Eigen::VectorXd times(window.size());
  for (int j = 0; j < window.size(); ++j) times[j] = window.time_at(j);
  return vandermonde(times, order, origin, scale);
}

}  // namespace tfot
