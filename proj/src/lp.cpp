#include "contractlearn/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace contractlearn {

void LinearProgram::AddLessEqual(Vector row, double bound) {
  if (row.size() != objective.size()) {
    throw std::invalid_argument("constraint row dimension mismatch");
  }
  rows.push_back(std::move(row));
  bounds.push_back(bound);
}

void LinearProgram::AddGreaterEqual(const Vector& row, double bound) {
  Vector negated(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) negated[j] = -row[j];
  AddLessEqual(std::move(negated), -bound);
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Tableau in equality form. Column layout: structural | slack | artificial,
// then the right-hand side in the last column. Row `cost_row` holds reduced
// costs of the objective being maximized (entry j = c_j - z_j).
class Tableau {
 public:
  Tableau(const LinearProgram& lp) : n_(lp.dimension()), m_(lp.rows.size()) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.bounds[i] < 0.0) ++n_art_;
    }
    cols_ = n_ + m_ + n_art_;
    a_.assign(m_, Vector(cols_ + 1, 0.0));
    basis_.resize(m_);
    std::size_t art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.rows[i].size() != n_) {
        throw std::invalid_argument("constraint row dimension mismatch");
      }
      const double sign = lp.bounds[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) a_[i][j] = sign * lp.rows[i][j];
      a_[i][n_ + i] = sign;
      a_[i][cols_] = sign * lp.bounds[i];
      if (sign < 0.0) {
        const std::size_t col = n_ + m_ + art++;
        a_[i][col] = 1.0;
        basis_[i] = col;
      } else {
        basis_[i] = n_ + i;
      }
    }
    allowed_.assign(cols_, true);
  }

  // Loads the reduced-cost row for maximizing `cost` (length cols_).
  void SetObjective(const Vector& cost) {
    reduced_ = cost;
    reduced_.push_back(0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * a_[i][j];
    }
  }

  // Runs simplex iterations; returns false when unbounded.
  bool Optimize() {
    const std::size_t max_iter = 50000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && reduced_[j] > kPivotTolerance) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (a_[i][enter] <= kPivotTolerance) continue;
        const double ratio = a_[i][cols_] / a_[i][enter];
        if (ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && leave < m_ &&
             basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;
      Pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  void Pivot(std::size_t row, std::size_t col) {
    const double pivot = a_[row][col];
    for (double& v : a_[row]) v /= pivot;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double factor = a_[i][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) a_[i][j] -= factor * a_[row][j];
    }
    const double factor = reduced_[col];
    if (factor != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) {
        reduced_[j] -= factor * a_[row][j];
      }
    }
    basis_[row] = col;
  }

  // Phase one: drive artificial variables to zero. Returns feasibility.
  bool PhaseOne() {
    if (n_art_ == 0) return true;
    Vector cost(cols_, 0.0);
    for (std::size_t j = n_ + m_; j < cols_; ++j) cost[j] = -1.0;
    SetObjective(cost);
    Optimize();
    // The objective is -sum(artificials); reduced_[cols_] holds -value.
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (IsArtificial(basis_[i])) infeasibility += a_[i][cols_];
    }
    if (infeasibility > 1e-9) return false;
    // Pivot remaining (degenerate) artificials out of the basis.
    for (std::size_t i = 0; i < m_; ++i) {
      if (!IsArtificial(basis_[i])) continue;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (std::abs(a_[i][j]) > kPivotTolerance) {
          Pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = n_ + m_; j < cols_; ++j) allowed_[j] = false;
    return true;
  }

  bool IsArtificial(std::size_t col) const { return col >= n_ + m_; }

  Vector Solution() const {
    Vector x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = a_[i][cols_];
    }
    return x;
  }

  std::size_t columns() const { return cols_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t n_art_ = 0;
  std::size_t cols_ = 0;
  std::vector<Vector> a_;
  Vector reduced_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
};

}  // namespace

LpResult SolveLp(const LinearProgram& lp) {
  if (lp.rows.size() != lp.bounds.size()) {
    throw std::invalid_argument("LP has mismatched rows and bounds");
  }
  Tableau tableau(lp);
  LpResult result;
  if (!tableau.PhaseOne()) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  Vector cost(tableau.columns(), 0.0);
  for (std::size_t j = 0; j < lp.dimension(); ++j) cost[j] = lp.objective[j];
  tableau.SetObjective(cost);
  if (!tableau.Optimize()) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x = tableau.Solution();
  // Clamp round-off below zero.
  for (double& v : result.x) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
  }
  result.value = Dot(lp.objective, result.x);
  return result;
}

}  // namespace contractlearn
