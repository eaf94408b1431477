#pragma once

#include <cstddef>
#include <vector>

#include "contractlearn/model.hpp"

namespace contractlearn {

inline constexpr double kPivotTolerance = 1e-10;

// maximize objective . x  subject to  rows[i] . x <= bounds[i],  x >= 0.
struct LinearProgram {
  Vector objective;
  std::vector<Vector> rows;
  Vector bounds;

  std::size_t dimension() const { return objective.size(); }
  void AddLessEqual(Vector row, double bound);
  void AddGreaterEqual(const Vector& row, double bound);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Vector x;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Dense two-phase simplex with Bland's anti-cycling rule.
LpResult SolveLp(const LinearProgram& lp);

const char* ToString(LpStatus status);

}  // namespace contractlearn
