#include "tfot/orls.hpp"

#include <cmath>
#include <stdexcept>

namespace tfot {

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::FixedOrder: return "fixed";
    case SolverKind::OrderLimited: return "orls";
    case SolverKind::L0Newton: return "l0-newton";
    case SolverKind::L1Admm: return "l1-admm";
  }
  return "unknown";
}

OrlsState orls_init(const WhitenedSystem& sys) {
  if (!sys.shared_design())
    throw std::invalid_argument("orls: requires a design shared across dimensions");
  const Eigen::MatrixXd& z = sys.design[0];
  const int r = sys.dims();
  OrlsState s;
  s.order = 0;
  s.design = z.col(0);
  const double g = z.col(0).squaredNorm();
  if (!(g > 0.0)) throw std::invalid_argument("orls: zero intercept column");
  s.gram_inv = Eigen::MatrixXd::Constant(1, 1, 1.0 / g);
  s.coeffs = (z.col(0).transpose() * sys.data) / g;
  s.dim_errors.resize(r);
  for (int d = 0; d < r; ++d)
    s.dim_errors[d] = (sys.data.col(d) - s.design * s.coeffs.col(d)).squaredNorm();
  return s;
}

std::optional<OrlsState> orls_extend(const OrlsState& state,
                                     const Eigen::VectorXd& new_column,
                                     const Eigen::MatrixXd& data) {
  const Eigen::MatrixXd& z = state.design;
  const Eigen::VectorXd zb = z.transpose() * new_column;      // Z'z
  const Eigen::VectorXd bzb = state.gram_inv * zb;            // B Z'z
  // W z = z - Z B Z' z, the component orthogonal to the current columns.
  const Eigen::VectorXd wz = new_column - z * bzb;
  const double den = new_column.dot(wz);
  if (!(den > 1e-10 * new_column.squaredNorm())) return std::nullopt;

  const Eigen::RowVectorXd num = wz.transpose() * data;       // z'W Y per dim
  const Eigen::RowVectorXd tail = num / den;

  OrlsState next;
  next.order = state.order + 1;
  const int n = state.order + 1, r = static_cast<int>(data.cols());
  next.coeffs.resize(n + 1, r);
  next.coeffs.topRows(n) = state.coeffs - bzb * tail;
  next.coeffs.row(n) = tail;
  next.gram_inv.resize(n + 1, n + 1);
  next.gram_inv.topLeftCorner(n, n) = state.gram_inv + (bzb * bzb.transpose()) / den;
  next.gram_inv.topRightCorner(n, 1) = -bzb / den;
  next.gram_inv.bottomLeftCorner(1, n) = -bzb.transpose() / den;
  next.gram_inv(n, n) = 1.0 / den;
  next.design.resize(z.rows(), n + 1);
  next.design.leftCols(n) = z;
  next.design.col(n) = new_column;
  next.dim_errors.resize(r);
  for (int d = 0; d < r; ++d) {
    const double drop = num[d] * num[d] / den;
    next.dim_errors[d] = state.dim_errors[d] - drop;
  }
  return next;
}

LambdaBounds lambda_bounds(const FitWindow& window) {
  window.validate();
  const int t = window.steps();
  if (t < 3) throw std::invalid_argument("lambda_bounds: needs at least 3 steps");
  const double origin = window.times[0];
  const double scale = (window.times[t - 1] - window.times[0]) / (t - 1);
  const Eigen::MatrixXd z = vandermonde(window.times, 1, origin, scale);
  WhitenedSystem sys = whiten(window, z);
  const Eigen::MatrixXd c = fit_ls(sys);
  LambdaBounds b;
  b.order1_error = data_fit_error(c, sys);
  b.lower = b.order1_error / (t - 2);
  b.upper = b.order1_error;
  return b;
}

double gamma_upper_bound(double d1, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gamma_upper_bound: lambda <= 0");
  return d1 / lambda + 1.0;
}

FitResult fit_order_limited(const FitWindow& window, double lambda,
                            double origin, double scale) {
  window.validate();
  if (!(lambda > 0.0))
    throw std::invalid_argument("fit_order_limited: lambda must be positive");
  const int t = window.steps();
  // Order t-1 would interpolate the window, so the sweep never goes past t-2.
  const Eigen::MatrixXd z_full =
      vandermonde(window.times, std::max(0, t - 2), origin, scale);
  WhitenedSystem sys = whiten(window, z_full);
  const Eigen::MatrixXd& z = sys.design[0];

  OrlsState state = orls_init(sys);
  double d1 = -1.0;
  int iterations = 0;
  while (state.order + 1 < z.cols()) {
    auto next = orls_extend(state, z.col(state.order + 1), sys.data);
    if (!next) break;  // collinear column: normal stop
    ++iterations;
    const double reduction = state.error_total() - next->error_total();
    if (next->order == 1) d1 = next->error_total();
    if (reduction <= lambda) break;  // keep the current order
    state = std::move(*next);
    if (d1 >= 0.0 && state.order >= std::floor(gamma_upper_bound(d1, lambda)))
      break;
  }

  FitResult out;
  out.solver = SolverKind::OrderLimited;
  out.selected_order = state.order;
  out.data_error = state.error_total();
  out.total_cost = out.data_error + lambda * (state.order + 1);
  out.iterations = iterations;
  out.poly = Polynomial(sys.to_raw(state.coeffs), origin, scale);
  return out;
}

FitResult fit_order_limited(const FitWindow& window, double lambda) {
  const int t = window.steps();
  const double origin = window.times[0];
  const double scale =
      t > 1 ? (window.times[t - 1] - window.times[0]) / (t - 1) : 1.0;
  return fit_order_limited(window, lambda, origin, scale);
}

}  // namespace tfot
