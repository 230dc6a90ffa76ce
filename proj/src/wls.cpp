#include "tfot/wls.hpp"

#include <cmath>
#include <stdexcept>

namespace tfot {

namespace {

bool is_diagonal(const Eigen::MatrixXd& m, double tol) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol * (1.0 + std::abs(m(i, i))))
        return false;
  return true;
}

}  // namespace

Eigen::MatrixXd FitWindow::full_variance() const {
  const int t = steps(), m = dims();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t * m, t * m);
  for (int k = 0; k < t; ++k) v.block(k * m, k * m, m, m) = cov_at(k);
  return v;
}

void FitWindow::validate() const {
  const int t = steps();
  if (t == 0) throw std::invalid_argument("FitWindow: empty window");
  if (measurements.rows() != t)
    throw std::invalid_argument("FitWindow: times/measurements mismatch");
  for (int k = 1; k < t; ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("FitWindow: times must be strictly increasing");
  if (step_cov.empty())
    throw std::invalid_argument("FitWindow: missing measurement covariance");
  if (step_cov.size() != 1 && static_cast<int>(step_cov.size()) != t)
    throw std::invalid_argument("FitWindow: step_cov must have 1 or T entries");
  for (const auto& p : step_cov) {
    if (p.rows() != dims() || p.cols() != dims())
      throw std::invalid_argument("FitWindow: covariance block size mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(p);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("FitWindow: covariance block not SPD");
  }
  if (mean_noise.size() != 0 && mean_noise.size() != dims())
    throw std::invalid_argument("FitWindow: mean_noise length mismatch");
}

bool WhitenedSystem::rotated() const {
  return !coeff_untransform.isIdentity(1e-14);
}

Eigen::MatrixXd WhitenedSystem::to_raw(const Eigen::MatrixXd& c_sys) const {
  return rotated() ? Eigen::MatrixXd(c_sys * coeff_untransform) : c_sys;
}

Eigen::MatrixXd WhitenedSystem::to_sys(const Eigen::MatrixXd& c_raw) const {
  if (!rotated()) return c_raw;
  return coeff_untransform.transpose()
      .triangularView<Eigen::Lower>()
      .solve(c_raw.transpose())
      .transpose();
}

double mahalanobis_sq(const Eigen::VectorXd& z, const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols() || p.rows() != z.size())
    throw std::invalid_argument("mahalanobis_sq: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("mahalanobis_sq: matrix not SPD");
  return z.dot(llt.solve(z));
}

WhitenedSystem whiten(const FitWindow& window, const Eigen::MatrixXd& design) {
  window.validate();
  const int t = window.steps(), m = window.dims();
  if (design.rows() != t)
    throw std::invalid_argument("whiten: design row count mismatch");

  Eigen::MatrixXd y = window.measurements;
  if (window.mean_noise.size() == m)
    y.rowwise() -= window.mean_noise.transpose();

  WhitenedSystem sys;
  sys.coeff_untransform = Eigen::MatrixXd::Identity(m, m);

  bool all_diag = true;
  for (const auto& p : window.step_cov)
    if (!is_diagonal(p, 1e-12)) { all_diag = false; break; }

  if (all_diag) {
    // Per-dimension diagonal weights; collapse to a shared design when the
    // weights agree across dimensions (isotropic noise).
    Eigen::MatrixXd w(t, m);
    for (int k = 0; k < t; ++k)
      for (int d = 0; d < m; ++d) w(k, d) = 1.0 / std::sqrt(window.cov_at(k)(d, d));
    bool isotropic = true;
    for (int k = 0; k < t && isotropic; ++k)
      for (int d = 1; d < m; ++d)
        if (std::abs(w(k, d) - w(k, 0)) > 1e-12 * w(k, 0)) { isotropic = false; break; }
    sys.data.resize(t, m);
    for (int d = 0; d < m; ++d) sys.data.col(d) = w.col(d).cwiseProduct(y.col(d));
    if (isotropic) {
      sys.design = {w.col(0).asDiagonal() * design};
    } else {
      sys.design.reserve(m);
      for (int d = 0; d < m; ++d) sys.design.push_back(w.col(d).asDiagonal() * design);
    }
    return sys;
  }

  // Full blocks: require a common correlation structure P_t = s_t * P_0, so a
  // single rotation of the measurement coordinates whitens every step.
  const Eigen::MatrixXd& p0 = window.cov_at(0);
  const double tr0 = p0.trace();
  Eigen::VectorXd scale(t);
  for (int k = 0; k < t; ++k) {
    const Eigen::MatrixXd& pk = window.cov_at(k);
    const double s = pk.trace() / tr0;
    if ((pk - s * p0).norm() > 1e-9 * pk.norm())
      throw std::invalid_argument(
          "whiten: per-step covariance blocks must be diagonal or share a "
          "common correlation structure");
    scale[k] = s;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(p0);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("whiten: covariance not SPD");
  const Eigen::MatrixXd l = llt.matrixL();
  sys.coeff_untransform = l.transpose();  // C_raw = C_sys * L'
  sys.data.resize(t, m);
  Eigen::MatrixXd shared(t, design.cols());
  for (int k = 0; k < t; ++k) {
    const double root = std::sqrt(scale[k]);
    sys.data.row(k) =
        l.triangularView<Eigen::Lower>().solve(y.row(k).transpose()).transpose() / root;
    shared.row(k) = design.row(k) / root;
  }
  sys.design = {std::move(shared)};
  return sys;
}

Eigen::MatrixXd fit_ls(const WhitenedSystem& sys) {
  const int n = sys.cols(), r = sys.dims();
  Eigen::MatrixXd c(n, r);
  if (sys.shared_design()) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.design[0]);
    if (qr.rank() < n) throw std::runtime_error("fit_ls: rank-deficient design");
    c = qr.solve(sys.data);
  } else {
    for (int d = 0; d < r; ++d) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.design_for(d));
      if (qr.rank() < n) throw std::runtime_error("fit_ls: rank-deficient design");
      c.col(d) = qr.solve(sys.data.col(d));
    }
  }
  return sys.to_raw(c);
}

double data_fit_error(const Eigen::MatrixXd& c_raw, const WhitenedSystem& sys) {
  const Eigen::MatrixXd c = sys.to_sys(c_raw);
  if (sys.shared_design()) return (sys.data - sys.design[0] * c).squaredNorm();
  double total = 0.0;
  for (int d = 0; d < sys.dims(); ++d)
    total += (sys.data.col(d) - sys.design_for(d) * c.col(d)).squaredNorm();
  return total;
}

SmoothnessConstants smoothness_constants(const WhitenedSystem& sys) {
  SmoothnessConstants out;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const int blocks = sys.shared_design() ? 1 : sys.dims();
  for (int d = 0; d < blocks; ++d) {
    const Eigen::MatrixXd gram =
        sys.design_for(d).transpose() * sys.design_for(d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  out.smooth = 2.0 * hi;
  out.convex = 2.0 * std::max(0.0, lo);
  return out;
}

}  // namespace tfot
