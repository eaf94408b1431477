#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contractlearn/model.hpp"

namespace contractlearn {

inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kDedupTolerance = 1e-7;
inline constexpr double kSingularPivot = 1e-10;

// {p : normal . p >= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  double Slack(std::span<const double> p) const;
  bool Contains(std::span<const double> p,
                double tol = kFeasibilityTolerance) const;
  bool Degenerate() const;
};

// Base contract region. The simplex form {p >= 0, ||p||_1 <= mB} has m + 1
// facets; the box form [0,B]^m has 2m.
struct ContractSpace {
  enum class Kind { kSimplex, kBox };

  Kind kind = Kind::kSimplex;
  double bound = 1.0;
  std::size_t dimension = 0;

  static ContractSpace Simplex(std::size_t m, double bound);
  static ContractSpace Box(std::size_t m, double bound);

  std::vector<Halfspace> Facets() const;
  bool Contains(std::span<const double> p,
                double tol = kFeasibilityTolerance) const;
};

// H-polytope: a base contract space intersected with extra cuts. Vertices are
// computed lazily and cached on this copy.
class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(ContractSpace base);

  const ContractSpace& base() const { return base_; }
  const std::vector<Halfspace>& cuts() const { return cuts_; }
  std::size_t dimension() const { return base_.dimension; }

  // All bounding halfspaces: base facets followed by cuts.
  std::vector<Halfspace> Constraints() const;

  void Intersect(Halfspace h);
  bool Contains(std::span<const double> p,
                double tol = kFeasibilityTolerance) const;

  // Deduplicated vertices in lexicographic order; empty if the polytope is.
  const std::vector<Vector>& Vertices() const;

 private:
  ContractSpace base_;
  std::vector<Halfspace> cuts_;
  mutable std::optional<std::vector<Vector>> vertex_cache_;
};

Polytope Intersect(Polytope p, Halfspace h);

// Vertex enumeration over all m-subsets of the given hyperplanes.
std::vector<Vector> EnumerateVertices(std::span<const Halfspace> constraints,
                                      std::size_t dimension);

// Convex hull of a finite generator set (stored deduplicated, in insertion
// order).
class PointHull {
 public:
  PointHull() = default;
  explicit PointHull(std::size_t dimension) : dimension_(dimension) {}

  // Returns false when p duplicated an existing generator.
  bool Add(const Vector& p);
  bool HasGenerator(std::span<const double> p,
                    double tol = kDedupTolerance) const;
  // Membership in the convex hull, via an L1-residual LP.
  bool Contains(std::span<const double> p, double tol = 1e-6) const;

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<Vector>& points() const { return points_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<Vector> points_;
};

PointHull HullAdd(PointHull hull, const Vector& p);

// True iff every vertex of `upper` is within kDedupTolerance (L-inf) of some
// generator of `lower`.
bool HullEqualsPolytope(const PointHull& lower, const Polytope& upper);

Vector Midpoint(std::span<const double> a, std::span<const double> b);
double L2Distance(std::span<const double> a, std::span<const double> b);
double LInfDistance(std::span<const double> a, std::span<const double> b);

std::string FormatVector(std::span<const double> v);

}  // namespace contractlearn
