#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "garland/complex.hpp"

namespace garland {

/// Finite metric tree. Edge weights are lengths. All-pairs vertex distances and
/// next-hop tables are precomputed, so the tree is meant to stay modest in size.
class MetricTree {
 public:
  MetricTree(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  double length(std::size_t edge) const { return edges_.at(edge).weight; }
  double vertex_distance(Vertex a, Vertex b) const { return dist_[a * vertex_count() + b]; }
  /// First vertex after `from` on the path to `to` (`from` itself when equal).
  Vertex next_hop(Vertex from, Vertex to) const { return hop_[from * vertex_count() + to]; }
  /// (neighbor, edge index) pairs.
  const std::vector<std::pair<Vertex, std::size_t>>& incident(Vertex v) const { return adjacency_.at(v); }
  std::size_t edge_between(Vertex a, Vertex b) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adjacency_;
  std::vector<double> dist_;
  std::vector<Vertex> hop_;
};

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Canonical point of a metric tree: either a vertex, or an edge with an
/// offset strictly inside (0, length) measured from the edge's `u` endpoint.
struct TreePoint {
  Vertex vertex = kNone;
  std::size_t edge = kNone;
  double offset = 0.0;

  bool at_vertex() const { return vertex != kNone; }
  static TreePoint at(Vertex v) { return TreePoint{v, kNone, 0.0}; }
  /// Canonicalizes offsets at (or within 1e-12·length of) an endpoint to that vertex.
  static TreePoint on(const MetricTree& tree, std::size_t edge, double offset);
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

class TargetSpace;
class TargetPoint;

struct EuclideanSpace {
  std::size_t dim = 1;
};

struct ProductSpace {
  std::vector<TargetSpace> factors;
};

/// CAT(0) model space: Euclidean space, finite metric tree, or a finite product
/// with the ℓ² product metric.
class TargetSpace {
 public:
  using Variant = std::variant<EuclideanSpace, std::shared_ptr<const MetricTree>, ProductSpace>;

  static TargetSpace euclidean(std::size_t dim);
  static TargetSpace tree(std::shared_ptr<const MetricTree> tree);
  static TargetSpace product(std::vector<TargetSpace> factors);

  const Variant& value() const { return value_; }
  const EuclideanSpace* as_euclidean() const { return std::get_if<EuclideanSpace>(&value_); }
  const MetricTree* as_tree() const;
  const ProductSpace* as_product() const { return std::get_if<ProductSpace>(&value_); }

 private:
  explicit TargetSpace(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

class TargetPoint {
 public:
  using Coordinates = std::vector<double>;
  using Members = std::vector<TargetPoint>;
  using Variant = std::variant<Coordinates, TreePoint, Members>;

  TargetPoint() : value_(Coordinates{}) {}
  TargetPoint(Coordinates c) : value_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  TargetPoint(TreePoint p) : value_(p) {}               // NOLINT(google-explicit-constructor)
  TargetPoint(Members m) : value_(std::move(m)) {}      // NOLINT(google-explicit-constructor)

  const Variant& value() const { return value_; }
  const Coordinates& coords() const;
  const TreePoint& tree_point() const;
  const Members& members() const;

  friend bool operator==(const TargetPoint&, const TargetPoint&) = default;

 private:
  Variant value_;
};

struct WeightedPointSet {
  std::vector<TargetPoint> points;
  std::vector<double> weights;

  double total_weight() const;
  std::size_t size() const { return points.size(); }
};

/// Throws if `p` is not a point of `space`.
void check_point(const TargetSpace& space, const TargetPoint& p);

double distance(const TargetSpace& space, const TargetPoint& p, const TargetPoint& q);

/// Point at distance t·d(p, q) from p on the geodesic [p, q], t ∈ [0, 1].
TargetPoint geodesic_point(const TargetSpace& space, const TargetPoint& p, const TargetPoint& q, double t);

/// u(y) = Σ w_i d(z_i, y)².
double barycenter_cost(const TargetSpace& space, const WeightedPointSet& pts, const TargetPoint& y);

/// Unique minimizer of u. Euclidean: affine mean; tree: exact descent (u is a
/// quadratic in arclength on every edge); product: componentwise.
TargetPoint barycenter(const TargetSpace& space, const WeightedPointSet& pts);

/// Direction germ at a tree point: leave along `edge` heading to `toward`.
struct TreeDirection {
  std::size_t edge = kNone;
  Vertex toward = kNone;
  friend bool operator==(const TreeDirection&, const TreeDirection&) = default;
};

/// Tangent cone of a tree at a basepoint, restricted to a weighted point set.
struct StarData {
  static constexpr std::size_t kNullBranch = kNone;

  std::vector<TreeDirection> branches;
  /// a_i: Σ over points in branch i of weight · radius.
  std::vector<double> mass;
  /// Per input point: branch index (or kNullBranch at the basepoint) and radius.
  std::vector<std::size_t> point_branch;
  std::vector<double> point_radius;
  std::vector<double> point_weight;

  std::size_t branch_count() const { return branches.size(); }
  double total_weight() const;
};

StarData tangent_cone_star(const MetricTree& tree, const TreePoint& base, const WeightedPointSet& pts);

/// Barycenter of the star's points inside the star itself: branch index (or
/// kNullBranch for the apex) and distance from the apex.
std::pair<std::size_t, double> star_barycenter(const StarData& star);

/// True iff a_i ≤ Σ_{j≠i} a_j for every branch (relative slack 1e-12).
bool polygon_feasible(std::span<const double> mass);

/// Unit vectors e_i in the plane with Σ a_i e_i = 0, one per branch. Sides are
/// grouped greedily into a triangle (largest side, two balanced groups) that
/// is closed exactly. Throws "barycenter not at apex" if infeasible.
std::vector<std::array<double, 2>> polygon_closing_embedding(const StarData& star);

/// |bar(φ)|² / ‖φ‖² for a candidate φ: Z → ℝ^k. Requires weights summing to 1,
/// |φ(z)| = d(z, bar Z) and φ 1-Lipschitz (tolerance 1e-9). Returns 0 when
/// every point sits at the barycenter.
double izeki_nayatani_ratio(const TargetSpace& space, const WeightedPointSet& pts,
                            const std::vector<std::vector<double>>& phi);

/// (√p − 1)² / (2(p − √p + 1)), the lower bound for the building of SL(3, Q_p).
double in_lower_bound_building(double p);

/// (1 − inBound) · λ.
double gap_bound_from_in(double lambda_scalar, double in_bound);

}  // namespace garland
