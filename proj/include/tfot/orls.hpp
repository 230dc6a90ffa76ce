#ifndef TFOT_ORLS_HPP
#define TFOT_ORLS_HPP

#include <optional>

#include "tfot/fit_result.hpp"
#include "tfot/wls.hpp"

namespace tfot {

/// Running state of the order-recursive least-squares sweep at some order.
/// Requires a design shared across dimensions.
struct OrlsState {
  Eigen::MatrixXd coeffs;       // (order+1) x r, system coordinates
  Eigen::MatrixXd gram_inv;     // ((design'design)^-1)
  Eigen::MatrixXd design;       // columns accepted so far
  Eigen::VectorXd dim_errors;   // residual cost per dimension
  int order = 0;

  double error_total() const { return dim_errors.sum(); }
};

/// Order-0 fit (intercept column only).
OrlsState orls_init(const WhitenedSystem& sys);

/// Rank-one order extension: append one whitened design column, updating
/// coefficients, the Gram inverse, and the residual cost without refactoring.
/// Returns nullopt when the new column is numerically collinear with the
/// current design (|z'Wz| <= 1e-10 |z|^2), which callers treat as a normal
/// stop of the order sweep.
std::optional<OrlsState> orls_extend(const OrlsState& state,
                                     const Eigen::VectorXd& new_column,
                                     const Eigen::MatrixXd& data);

/// Interval of admissible order penalties derived from the order-1 fit error:
/// (d1 / (T - 2), d1]. Requires T >= 3 steps. A zero d1 (noiseless linear
/// data) collapses the interval; callers must treat that as degenerate.
struct LambdaBounds {
  double lower = 0.0;
  double upper = 0.0;
  double order1_error = 0.0;
};
LambdaBounds lambda_bounds(const FitWindow& window);

/// Upper bound on the optimal order for penalty weight lambda: d1/lambda + 1.
double gamma_upper_bound(double d1, double lambda);

/// Grid search over polynomial order with cost D + lambda*(order+1),
/// growing the order recursively from 0 and stopping when the error
/// reduction from one more order is at most lambda, or when the order
/// reaches min(gamma_upper_bound, T-2).
///
/// origin/scale define the local time parameterization of the design.
FitResult fit_order_limited(const FitWindow& window, double lambda,
                            double origin, double scale);

/// Same, with origin = first window time and scale = mean time spacing.
FitResult fit_order_limited(const FitWindow& window, double lambda);

}  // namespace tfot

#endif
