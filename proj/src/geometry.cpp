#include "contractlearn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "contractlearn/lp.hpp"

namespace contractlearn {

double Halfspace::Slack(std::span<const double> p) const {
  return Dot(normal, p) - offset;
}

bool Halfspace::Contains(std::span<const double> p, double tol) const {
  return Slack(p) >= -tol;
}

bool Halfspace::Degenerate() const {
  for (double v : normal) {
    if (std::abs(v) >= 1e-12) return false;
  }
  return true;
}

ContractSpace ContractSpace::Simplex(std::size_t m, double bound) {
  if (m == 0) throw std::invalid_argument("contract space needs m >= 1");
  if (!(bound >= 1.0)) throw std::invalid_argument("bound B must be >= 1");
  return ContractSpace{Kind::kSimplex, bound, m};
}

ContractSpace ContractSpace::Box(std::size_t m, double bound) {
  if (m == 0) throw std::invalid_argument("contract space needs m >= 1");
  if (!(bound > 0.0)) throw std::invalid_argument("box bound must be > 0");
  return ContractSpace{Kind::kBox, bound, m};
}

std::vector<Halfspace> ContractSpace::Facets() const {
  const std::size_t m = dimension;
  std::vector<Halfspace> facets;
  for (std::size_t w = 0; w < m; ++w) {
    Halfspace h{Vector(m, 0.0), 0.0};
    h.normal[w] = 1.0;
    facets.push_back(std::move(h));
  }
  if (kind == Kind::kSimplex) {
    facets.push_back(
        Halfspace{Vector(m, -1.0), -static_cast<double>(m) * bound});
  } else {
    for (std::size_t w = 0; w < m; ++w) {
      Halfspace h{Vector(m, 0.0), -bound};
      h.normal[w] = -1.0;
      facets.push_back(std::move(h));
    }
  }
  return facets;
}

bool ContractSpace::Contains(std::span<const double> p, double tol) const {
  for (const auto& f : Facets()) {
    if (!f.Contains(p, tol)) return false;
  }
  return true;
}

Polytope::Polytope(ContractSpace base) : base_(base) {}

std::vector<Halfspace> Polytope::Constraints() const {
  auto all = base_.Facets();
  all.insert(all.end(), cuts_.begin(), cuts_.end());
  return all;
}

void Polytope::Intersect(Halfspace h) {
  if (h.normal.size() != dimension()) {
    throw std::invalid_argument("halfspace dimension mismatch");
  }
  cuts_.push_back(std::move(h));
  vertex_cache_.reset();
}

bool Polytope::Contains(std::span<const double> p, double tol) const {
  if (!base_.Contains(p, tol)) return false;
  for (const auto& c : cuts_) {
    if (!c.Contains(p, tol)) return false;
  }
  return true;
}

const std::vector<Vector>& Polytope::Vertices() const {
  if (!vertex_cache_) {
    const auto constraints = Constraints();
    vertex_cache_ = EnumerateVertices(constraints, dimension());
  }
  return *vertex_cache_;
}

Polytope Intersect(Polytope p, Halfspace h) {
  p.Intersect(std::move(h));
  return p;
}

namespace {

// Solves the square system rows . x = rhs with partial pivoting.
std::optional<Vector> SolveSquare(std::vector<Vector> a, Vector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < kSingularPivot) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

bool NextCombination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Vector> EnumerateVertices(std::span<const Halfspace> constraints,
                                      std::size_t dimension) {
  const std::size_t m = dimension;
  const std::size_t k = constraints.size();
  if (k < m) {
    throw std::logic_error("vertex enumeration needs at least m hyperplanes");
  }
  std::vector<Vector> vertices;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  do {
    std::vector<Vector> a;
    Vector rhs;
    a.reserve(m);
    for (std::size_t i : idx) {
      a.push_back(constraints[i].normal);
      rhs.push_back(constraints[i].offset);
    }
    auto x = SolveSquare(std::move(a), std::move(rhs));
    if (!x) continue;
    bool feasible = true;
    for (const auto& h : constraints) {
      if (!h.Contains(*x)) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    bool duplicate = false;
    for (const auto& v : vertices) {
      if (LInfDistance(v, *x) <= kDedupTolerance) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(std::move(*x));
  } while (NextCombination(idx, k));
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

bool PointHull::Add(const Vector& p) {
  if (dimension_ == 0) dimension_ = p.size();
  if (p.size() != dimension_) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (HasGenerator(p)) return false;
  points_.push_back(p);
  return true;
}

bool PointHull::HasGenerator(std::span<const double> p, double tol) const {
  for (const auto& g : points_) {
    if (LInfDistance(g, p) <= tol) return true;
  }
  return false;
}

bool PointHull::Contains(std::span<const double> p, double tol) const {
  if (points_.empty()) return false;
  if (p.size() != dimension_) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (HasGenerator(p, tol)) return true;
  // Variables: lambda_1..lambda_k, t. Minimize t subject to
  // |sum lambda_i g_i - p|_w <= t for each coordinate and sum lambda = 1.
  const std::size_t k = points_.size();
  const std::size_t m = dimension_;
  LinearProgram lp;
  lp.objective.assign(k + 1, 0.0);
  lp.objective[k] = -1.0;
  for (std::size_t w = 0; w < m; ++w) {
    Vector row(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) row[i] = points_[i][w];
    row[k] = -1.0;
    lp.AddLessEqual(row, p[w]);
    for (std::size_t i = 0; i < k; ++i) row[i] = -points_[i][w];
    lp.AddLessEqual(row, -p[w]);
  }
  Vector ones(k + 1, 1.0);
  ones[k] = 0.0;
  lp.AddLessEqual(ones, 1.0);
  lp.AddGreaterEqual(ones, 1.0);
  const LpResult res = SolveLp(lp);
  return res.optimal() && -res.value <= tol;
}

PointHull HullAdd(PointHull hull, const Vector& p) {
  hull.Add(p);
  return hull;
}

bool HullEqualsPolytope(const PointHull& lower, const Polytope& upper) {
  const auto& vertices = upper.Vertices();
  if (vertices.empty()) return false;
  for (const auto& v : vertices) {
    if (!lower.HasGenerator(v)) return false;
  }
  return true;
}

Vector Midpoint(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) / 2.0;
  return out;
}

double L2Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double LInfDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

std::string FormatVector(std::span<const double> v) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace contractlearn
