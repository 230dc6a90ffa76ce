#ifndef TFOT_WLS_HPP
#define TFOT_WLS_HPP

#include <Eigen/Dense>
#include <vector>

namespace tfot {

/// One batch of measurements over a sliding window.
///
/// step_cov holds the per-step measurement covariance blocks (m x m, SPD).
/// A single entry means the same covariance at every step. Cross-step
/// correlation is out of scope here; the cost is the block-diagonal
/// Mahalanobis sum.
struct FitWindow {
  Eigen::VectorXd times;              // strictly increasing, length T
  Eigen::MatrixXd measurements;       // T x m
  std::vector<Eigen::MatrixXd> step_cov;  // size 1 or T
  Eigen::VectorXd mean_noise;         // length m; empty means zero

  int steps() const { return static_cast<int>(times.size()); }
  int dims() const { return static_cast<int>(measurements.cols()); }
  const Eigen::MatrixXd& cov_at(int t) const {
    return step_cov.size() == 1 ? step_cov[0] : step_cov[t];
  }
  /// Assembled block-diagonal (T*m x T*m) covariance, for oracle-style checks.
  Eigen::MatrixXd full_variance() const;
  void validate() const;
};

/// Whitened regression system: minimizing |data - design*C|_F^2 over C
/// equals the window's Mahalanobis data-fit cost.
///
/// design has one matrix per state dimension when the per-step covariances
/// are diagonal with unequal entries; a single shared matrix otherwise.
/// When the covariance blocks share a common correlation structure the fit
/// runs in rotated measurement coordinates: coefficients map back to raw
/// coordinates through coeff_untransform (C_raw = C_sys * coeff_untransform).
struct WhitenedSystem {
  std::vector<Eigen::MatrixXd> design;  // size 1 (shared) or r
  Eigen::MatrixXd data;                 // T x r
  Eigen::MatrixXd coeff_untransform;    // r x r, identity unless rotated

  bool shared_design() const { return design.size() == 1; }
  const Eigen::MatrixXd& design_for(int d) const {
    return shared_design() ? design[0] : design[d];
  }
  int steps() const { return static_cast<int>(data.rows()); }
  int dims() const { return static_cast<int>(data.cols()); }
  int cols() const { return static_cast<int>(design[0].cols()); }
  bool rotated() const;

  Eigen::MatrixXd to_raw(const Eigen::MatrixXd& c_sys) const;
  Eigen::MatrixXd to_sys(const Eigen::MatrixXd& c_raw) const;
};

/// z' P^-1 z via Cholesky solve. Throws on non-SPD P.
double mahalanobis_sq(const Eigen::VectorXd& z, const Eigen::MatrixXd& p);

/// Whiten the window against the given design matrix (T x (order+1)).
WhitenedSystem whiten(const FitWindow& window, const Eigen::MatrixXd& design);

/// Least-squares coefficients in raw measurement coordinates, via QR.
/// Throws on rank deficiency.
Eigen::MatrixXd fit_ls(const WhitenedSystem& sys);

/// |data - design*C|_F^2 for raw-coordinate coefficients C.
double data_fit_error(const Eigen::MatrixXd& c_raw, const WhitenedSystem& sys);

/// Smoothness L and strong-convexity l of the quadratic data-fit cost:
/// twice the extreme eigenvalues of design'design (extremes over dimensions
/// when designs differ). l == 0 signals rank deficiency.
struct SmoothnessConstants {
  double smooth = 0.0;   // L
  double convex = 0.0;   // l
};
SmoothnessConstants smoothness_constants(const WhitenedSystem& sys);

}  // namespace tfot

#endif
