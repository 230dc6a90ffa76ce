#ifndef TFOT_FIT_RESULT_HPP
#define TFOT_FIT_RESULT_HPP

#include <string>

#include "tfot/polynomial.hpp"

namespace tfot {

enum class SolverKind { FixedOrder, OrderLimited, L0Newton, L1Admm };

const char* solver_name(SolverKind kind);

struct FitResult {
  Polynomial poly;
  int selected_order = 0;
  double data_error = 0.0;   // weighted residual cost at the solution
  double total_cost = 0.0;   // data_error + regularization penalty
  int iterations = 0;
  SolverKind solver = SolverKind::FixedOrder;
  bool converged = true;
  std::string diagnostic;
};

}  // namespace tfot

#endif
