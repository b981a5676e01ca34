#include "garland/cat0.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "garland/error.hpp"

namespace garland {

// ------------------------------------------------------------------- MetricTree

MetricTree::MetricTree(std::size_t vertex_count, std::vector<Edge> edges) : edges_(std::move(edges)) {
  require(vertex_count >= 1, ErrorCode::InvalidArgument, "tree needs at least one vertex");
  require(edges_.size() + 1 == vertex_count, ErrorCode::InvalidArgument,
          "tree with " + std::to_string(vertex_count) + " vertices needs " + std::to_string(vertex_count - 1) +
              " edges, got " + std::to_string(edges_.size()));
  adjacency_.assign(vertex_count, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    require(e.u < vertex_count && e.v < vertex_count && e.u != e.v, ErrorCode::InvalidArgument,
            "tree edge #" + std::to_string(i) + " is invalid");
    require(e.weight > 0.0 && std::isfinite(e.weight), ErrorCode::InvalidArgument,
            "tree edge #" + std::to_string(i) + " must have positive length");
    adjacency_[e.u].emplace_back(e.v, i);
    adjacency_[e.v].emplace_back(e.u, i);
  }
  const std::size_t n = vertex_count;
  dist_.assign(n * n, -1.0);
  hop_.assign(n * n, kNone);
  for (Vertex target = 0; target < n; ++target) {
    // BFS from target; hop[v][target] = parent of v in the BFS tree.
    std::queue<Vertex> queue;
    dist_[target * n + target] = 0.0;
    hop_[target * n + target] = target;
    queue.push(target);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (auto [w, idx] : adjacency_[v]) {
        if (dist_[w * n + target] >= 0.0) continue;
        dist_[w * n + target] = dist_[v * n + target] + edges_[idx].weight;
        hop_[w * n + target] = v;
        queue.push(w);
      }
    }
  }
  for (double d : dist_) {
    require(d >= 0.0, ErrorCode::InvalidArgument, "tree is not connected");
  }
}

std::size_t MetricTree::edge_between(Vertex a, Vertex b) const {
  for (auto [w, idx] : adjacency_.at(a)) {
    if (w == b) return idx;
  }
  fail(ErrorCode::InvalidArgument, "vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
}

TreePoint TreePoint::on(const MetricTree& tree, std::size_t edge, double offset) {
  require(edge < tree.edges().size(), ErrorCode::InvalidArgument, "tree point on a missing edge");
  const double len = tree.length(edge);
  require(offset >= -1e-12 * len && offset <= len * (1 + 1e-12), ErrorCode::InvalidArgument,
          "tree point offset outside its edge");
  if (offset <= 1e-12 * len) return TreePoint::at(tree.edges()[edge].u);
  if (offset >= len * (1 - 1e-12)) return TreePoint::at(tree.edges()[edge].v);
  return TreePoint{kNone, edge, offset};
}

// ------------------------------------------------------------------ TargetSpace

TargetSpace TargetSpace::euclidean(std::size_t dim) {
  require(dim >= 1, ErrorCode::InvalidArgument, "Euclidean dimension must be positive");
  return TargetSpace(EuclideanSpace{dim});
}

TargetSpace TargetSpace::tree(std::shared_ptr<const MetricTree> tree) {
  require(tree != nullptr, ErrorCode::InvalidArgument, "null tree");
  return TargetSpace(std::move(tree));
}

TargetSpace TargetSpace::product(std::vector<TargetSpace> factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument, "product space needs at least one factor");
  return TargetSpace(ProductSpace{std::move(factors)});
}

const MetricTree* TargetSpace::as_tree() const {
  const auto* p = std::get_if<std::shared_ptr<const MetricTree>>(&value_);
  return p ? p->get() : nullptr;
}

const TargetPoint::Coordinates& TargetPoint::coords() const {
  const auto* c = std::get_if<Coordinates>(&value_);
  require(c != nullptr, ErrorCode::InvalidArgument, "point is not a Euclidean point");
  return *c;
}

const TreePoint& TargetPoint::tree_point() const {
  const auto* c = std::get_if<TreePoint>(&value_);
  require(c != nullptr, ErrorCode::InvalidArgument, "point is not a tree point");
  return *c;
}

const TargetPoint::Members& TargetPoint::members() const {
  const auto* c = std::get_if<Members>(&value_);
  require(c != nullptr, ErrorCode::InvalidArgument, "point is not a product point");
  return *c;
}

double WeightedPointSet::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void check_point(const TargetSpace& space, const TargetPoint& p) {
  if (const auto* e = space.as_euclidean()) {
    require(p.coords().size() == e->dim, ErrorCode::InvalidArgument, "point dimension does not match the space");
  } else if (const MetricTree* t = space.as_tree()) {
    const TreePoint& tp = p.tree_point();
    if (tp.at_vertex()) {
      require(tp.vertex < t->vertex_count(), ErrorCode::InvalidArgument, "tree point on a missing vertex");
    } else {
      require(tp.edge < t->edges().size() && tp.offset > 0.0 && tp.offset < t->length(tp.edge),
              ErrorCode::InvalidArgument, "tree point is not canonical");
    }
  } else {
    const auto& factors = space.as_product()->factors;
    const auto& members = p.members();
    require(members.size() == factors.size(), ErrorCode::InvalidArgument, "product point arity mismatch");
    for (std::size_t i = 0; i < factors.size(); ++i) check_point(factors[i], members[i]);
  }
}

// ---------------------------------------------------------------- tree geometry

namespace {

struct Anchor {
  Vertex vertex;
  double dist;
};

// Endpoints through which a geodesic must leave p.
std::vector<Anchor> anchors(const MetricTree& tree, const TreePoint& p) {
  if (p.at_vertex()) return {{p.vertex, 0.0}};
  const Edge& e = tree.edges()[p.edge];
  return {{e.u, p.offset}, {e.v, e.weight - p.offset}};
}

double tree_distance(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  if (!p.at_vertex() && !q.at_vertex() && p.edge == q.edge) return std::abs(p.offset - q.offset);
  double best = std::numeric_limits<double>::infinity();
  for (const Anchor& a : anchors(tree, p)) {
    for (const Anchor& b : anchors(tree, q)) {
      best = std::min(best, a.dist + tree.vertex_distance(a.vertex, b.vertex) + b.dist);
    }
  }
  return best;
}

// Offset (from edge.u) of endpoint v of `edge`.
double endpoint_offset(const MetricTree& tree, std::size_t edge, Vertex v) {
  return tree.edges()[edge].u == v ? 0.0 : tree.length(edge);
}

TreePoint tree_geodesic(const MetricTree& tree, const TreePoint& p, const TreePoint& q, double t) {
  if (p == q) return p;
  if (!p.at_vertex() && !q.at_vertex() && p.edge == q.edge) {
    return TreePoint::on(tree, p.edge, p.offset + t * (q.offset - p.offset));
  }
  // Pick the exit/entry endpoints realizing the distance.
  Anchor best_a{}, best_b{};
  double best = std::numeric_limits<double>::infinity();
  for (const Anchor& a : anchors(tree, p)) {
    for (const Anchor& b : anchors(tree, q)) {
      const double d = a.dist + tree.vertex_distance(a.vertex, b.vertex) + b.dist;
      if (d < best) {
        best = d;
        best_a = a;
        best_b = b;
      }
    }
  }
  // Segments (edge, from offset, to offset) along the geodesic.
  struct Segment {
    std::size_t edge;
    double from, to;
  };
  std::vector<Segment> path;
  if (!p.at_vertex()) path.push_back({p.edge, p.offset, endpoint_offset(tree, p.edge, best_a.vertex)});
  for (Vertex v = best_a.vertex; v != best_b.vertex;) {
    const Vertex w = tree.next_hop(v, best_b.vertex);
    const std::size_t e = tree.edge_between(v, w);
    path.push_back({e, endpoint_offset(tree, e, v), endpoint_offset(tree, e, w)});
    v = w;
  }
  if (!q.at_vertex()) path.push_back({q.edge, endpoint_offset(tree, q.edge, best_b.vertex), q.offset});

  double remaining = t * best;
  for (const Segment& s : path) {
    const double len = std::abs(s.to - s.from);
    if (remaining <= len) {
      const double dir = s.to >= s.from ? 1.0 : -1.0;
      return TreePoint::on(tree, s.edge, s.from + dir * remaining);
    }
    remaining -= len;
  }
  return q;
}

// True when point z lies in the branch at vertex v that starts along the edge to w.
bool in_branch(const MetricTree& tree, Vertex v, Vertex w, const TreePoint& z) {
  if (z.at_vertex()) return z.vertex != v && tree.next_hop(v, z.vertex) == w;
  const Edge& e = tree.edges()[z.edge];
  if ((e.u == v && e.v == w) || (e.u == w && e.v == v)) return true;
  const Vertex probe = (e.u == v) ? e.v : e.u;
  return tree.next_hop(v, probe) == w;
}

TreePoint tree_barycenter(const MetricTree& tree, const WeightedPointSet& pts) {
  const double total = pts.total_weight();
  // Start at the vertex closest to the first point.
  const TreePoint& first = pts.points.front().tree_point();
  Vertex v = first.at_vertex() ? first.vertex : tree.edges()[first.edge].u;
  const std::size_t max_steps = tree.vertex_count() + 1;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    std::vector<double> d(pts.size());
    double moment = 0.0;  // Σ w_i d(z_i, v)
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d[i] = tree_distance(tree, TreePoint::at(v), pts.points[i].tree_point());
      moment += pts.weights[i] * d[i];
    }
    bool moved = false;
    for (auto [w, idx] : tree.incident(v)) {
      double inside = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (in_branch(tree, v, w, pts.points[i].tree_point())) inside += pts.weights[i] * d[i];
      }
      const double outside = moment - inside;
      if (inside > outside) {
        // On this edge u(t) = Σ_in w(d−t)² + Σ_out w(d+t)², minimized at t*.
        const double t_star = (inside - outside) / total;
        const double len = tree.length(idx);
        if (t_star < len) {
          return TreePoint::on(tree, idx, endpoint_offset(tree, idx, v) + (tree.edges()[idx].u == v ? t_star : -t_star));
        }
        v = w;
        moved = true;
        break;
      }
    }
    if (!moved) return TreePoint::at(v);
  }
  fail(ErrorCode::Inconsistent, "tree barycenter descent did not terminate");
}

}  // namespace

// ------------------------------------------------------------- space operations

double distance(const TargetSpace& space, const TargetPoint& p, const TargetPoint& q) {
  if (space.as_euclidean()) {
    const auto& a = p.coords();
    const auto& b = q.coords();
    require(a.size() == b.size() && a.size() == space.as_euclidean()->dim, ErrorCode::InvalidArgument,
            "point dimension does not match the space");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }
  if (const MetricTree* tree = space.as_tree()) return tree_distance(*tree, p.tree_point(), q.tree_point());
  const auto& factors = space.as_product()->factors;
  const auto& a = p.members();
  const auto& b = q.members();
  require(a.size() == factors.size() && b.size() == factors.size(), ErrorCode::InvalidArgument,
          "product point arity mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const double d = distance(factors[i], a[i], b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

TargetPoint geodesic_point(const TargetSpace& space, const TargetPoint& p, const TargetPoint& q, double t) {
  require(t >= 0.0 && t <= 1.0, ErrorCode::Domain, "geodesic parameter must lie in [0, 1]");
  if (space.as_euclidean()) {
    const auto& a = p.coords();
    const auto& b = q.coords();
    require(a.size() == b.size(), ErrorCode::InvalidArgument, "point dimension mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  }
  if (const MetricTree* tree = space.as_tree()) return tree_geodesic(*tree, p.tree_point(), q.tree_point(), t);
  const auto& factors = space.as_product()->factors;
  TargetPoint::Members out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out.push_back(geodesic_point(factors[i], p.members().at(i), q.members().at(i), t));
  }
  return out;
}

double barycenter_cost(const TargetSpace& space, const WeightedPointSet& pts, const TargetPoint& y) {
  double u = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(space, pts.points[i], y);
    u += pts.weights[i] * d * d;
  }
  return u;
}

TargetPoint barycenter(const TargetSpace& space, const WeightedPointSet& pts) {
  require(!pts.points.empty(), ErrorCode::InvalidArgument, "barycenter of an empty point set");
  require(pts.points.size() == pts.weights.size(), ErrorCode::InvalidArgument, "point/weight count mismatch");
  for (double w : pts.weights) {
    require(w > 0.0 && std::isfinite(w), ErrorCode::InvalidArgument, "point weights must be positive");
  }
  if (const auto* e = space.as_euclidean()) {
    std::vector<double> mean(e->dim, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& c = pts.points[i].coords();
      require(c.size() == e->dim, ErrorCode::InvalidArgument, "point dimension does not match the space");
      for (std::size_t k = 0; k < e->dim; ++k) mean[k] += pts.weights[i] * c[k];
    }
    const double total = pts.total_weight();
    for (double& m : mean) m /= total;
    return mean;
  }
  if (const MetricTree* tree = space.as_tree()) return tree_barycenter(*tree, pts);
  const auto& factors = space.as_product()->factors;
  TargetPoint::Members out;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    WeightedPointSet component{{}, pts.weights};
    for (const auto& p : pts.points) component.points.push_back(p.members().at(f));
    out.push_back(barycenter(factors[f], component));
  }
  return out;
}

// ------------------------------------------------------------------ star / cone

double StarData::total_weight() const { return std::accumulate(point_weight.begin(), point_weight.end(), 0.0); }

StarData tangent_cone_star(const MetricTree& tree, const TreePoint& base, const WeightedPointSet& pts) {
  StarData star;
  if (base.at_vertex()) {
    for (auto [w, idx] : tree.incident(base.vertex)) star.branches.push_back({idx, w});
  } else {
    const Edge& e = tree.edges()[base.edge];
    star.branches.push_back({base.edge, e.u});
    star.branches.push_back({base.edge, e.v});
  }
  star.mass.assign(star.branches.size(), 0.0);
  // Points within rounding of the basepoint count as the basepoint.
  double length = 0.0;
  for (const Edge& e : tree.edges()) length += e.weight;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const TreePoint& z = pts.points[i].tree_point();
    const double r = tree_distance(tree, base, z);
    std::size_t branch = StarData::kNullBranch;
    if (r > 1e-12 * length) {
      if (base.at_vertex()) {
        for (std::size_t b = 0; b < star.branches.size(); ++b) {
          if (in_branch(tree, base.vertex, star.branches[b].toward, z)) {
            branch = b;
            break;
          }
        }
      } else {
        const Edge& e = tree.edges()[base.edge];
        bool toward_u;
        if (!z.at_vertex() && z.edge == base.edge) {
          toward_u = z.offset < base.offset;
        } else {
          toward_u = tree_distance(tree, TreePoint::at(e.u), z) < tree_distance(tree, TreePoint::at(e.v), z);
        }
        branch = toward_u ? 0 : 1;
      }
    }
    star.point_branch.push_back(branch);
    star.point_radius.push_back(branch == StarData::kNullBranch ? 0.0 : r);
    star.point_weight.push_back(pts.weights[i]);
    if (branch != StarData::kNullBranch) star.mass[branch] += pts.weights[i] * r;
  }
  return star;
}

std::pair<std::size_t, double> star_barycenter(const StarData& star) {
  const double total = star.total_weight();
  const double all = std::accumulate(star.mass.begin(), star.mass.end(), 0.0);
  for (std::size_t b = 0; b < star.branch_count(); ++b) {
    const double rest = all - star.mass[b];
    if (star.mass[b] > rest + 1e-12 * all) return {b, (star.mass[b] - rest) / total};
  }
  return {StarData::kNullBranch, 0.0};
}

bool polygon_feasible(std::span<const double> mass) {
  const double all = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double a : mass) {
    if (a > all - a + 1e-12 * all) return false;
  }
  return true;
}

std::vector<std::array<double, 2>> polygon_closing_embedding(const StarData& star) {
  const std::size_t n = star.branch_count();
  for (double a : star.mass) require(a >= 0.0, ErrorCode::InvalidArgument, "branch masses must be nonnegative");
  require(polygon_feasible(star.mass), ErrorCode::Domain,
          "barycenter not at apex: some a_i exceeds the sum of the others");
  std::vector<std::array<double, 2>> dirs(n, {1.0, 0.0});
  if (n == 0) return dirs;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return star.mass[a] > star.mass[b]; });

  // Largest side alone; the rest split greedily so that |B − C| ≤ A.
  const double big = star.mass[order[0]];
  double group_sum[2] = {0.0, 0.0};
  std::vector<int> group(n, -1);
  for (std::size_t k = 1; k < n; ++k) {
    const int g = group_sum[0] <= group_sum[1] ? 0 : 1;
    group[order[k]] = g;
    group_sum[g] += star.mass[order[k]];
  }
  if (big <= 0.0) return dirs;

  // Triangle A e_A + B e_B + C e_C = 0 with e_A = (1, 0): the vertex P2 after
  // the B side satisfies |P2 − (A, 0)| = B and |P2| = C.
  const double A = big, B = group_sum[0], C = group_sum[1];
  const double x = (A * A + C * C - B * B) / (2.0 * A);
  const double y = std::sqrt(std::max(0.0, C * C - x * x));
  std::array<double, 2> e_b{1.0, 0.0}, e_c{1.0, 0.0};
  if (B > 0.0) e_b = {(x - A) / B, y / B};
  if (C > 0.0) e_c = {-x / C, -y / C};
  // Renormalize against rounding in the degenerate (y ≈ 0) case.
  for (auto* e : {&e_b, &e_c}) {
    const double len = std::hypot((*e)[0], (*e)[1]);
    (*e)[0] /= len;
    (*e)[1] /= len;
  }
  dirs[order[0]] = {1.0, 0.0};
  for (std::size_t k = 1; k < n; ++k) dirs[order[k]] = group[order[k]] == 0 ? e_b : e_c;
  return dirs;
}

double izeki_nayatani_ratio(const TargetSpace& space, const WeightedPointSet& pts,
                            const std::vector<std::vector<double>>& phi) {
  require(!pts.points.empty(), ErrorCode::InvalidArgument, "empty point set");
  require(phi.size() == pts.size(), ErrorCode::InvalidArgument, "phi must assign a vector to every point");
  require(std::abs(pts.total_weight() - 1.0) <= 1e-9, ErrorCode::InvalidArgument, "weights must sum to 1");
  const std::size_t dim = phi.front().size();
  for (const auto& v : phi) require(v.size() == dim, ErrorCode::InvalidArgument, "phi vectors differ in dimension");
  const TargetPoint bar = barycenter(space, pts);
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = distance(space, pts.points[i], bar);
    if (std::abs(norm(phi[i]) - r) > 1e-9) {
      std::ostringstream os;
      os << "infeasible phi: norm constraint violated at point " << i << " (|phi| = " << norm(phi[i])
         << ", d(z, bar) = " << r << ")";
      fail(ErrorCode::Domain, os.str());
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::vector<double> diff(dim);
      for (std::size_t k = 0; k < dim; ++k) diff[k] = phi[i][k] - phi[j][k];
      const double d = distance(space, pts.points[i], pts.points[j]);
      if (norm(diff) > d + 1e-9) {
        std::ostringstream os;
        os << "infeasible phi: pair (" << i << ", " << j << ") is stretched (" << norm(diff) << " > " << d << ")";
        fail(ErrorCode::Domain, os.str());
      }
    }
  }
  std::vector<double> mean(dim, 0.0);
  double sq = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) mean[k] += pts.weights[i] * phi[i][k];
    const double r = norm(phi[i]);
    sq += pts.weights[i] * r * r;
  }
  if (sq <= 0.0) return 0.0;
  const double m = norm(mean);
  return m * m / sq;
}

double in_lower_bound_building(double p) {
  require(p >= 2.0, ErrorCode::Domain, "building bound needs p >= 2");
  const double s = std::sqrt(p);
  return (s - 1.0) * (s - 1.0) / (2.0 * (p - s + 1.0));
}

double gap_bound_from_in(double lambda_scalar, double in_bound) {
  require(in_bound >= 0.0 && in_bound < 1.0, ErrorCode::Domain, "IN bound must lie in [0, 1)");
  require(lambda_scalar >= 0.0, ErrorCode::Domain, "spectral gap must be nonnegative");
  return (1.0 - in_bound) * lambda_scalar;
}

}  // namespace garland
