#include "garland/harmonic.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "garland/error.hpp"
#include "garland/parallel.hpp"
#include "garland/spectral.hpp"

namespace garland {

std::vector<double> EdgeCocycle::at(const WeightedComplex& complex, Vertex from, Vertex to) const {
  const auto idx = complex.edge_index(from, to);
  require(idx.has_value(), ErrorCode::InvalidArgument,
          "cocycle queried on a non-edge " + std::to_string(from) + "-" + std::to_string(to));
  std::vector<double> v = values.at(*idx);
  if (complex.edges()[*idx].u != from) {
    for (double& x : v) x = -x;
  }
  return v;
}

EdgeCocycle coboundary(const WeightedComplex& complex, const std::vector<std::vector<double>>& h) {
  require(h.size() == complex.vertex_count() && !h.empty(), ErrorCode::InvalidArgument,
          "coboundary needs one vector per vertex");
  EdgeCocycle c{h.front().size(), {}};
  for (const Edge& e : complex.edges()) {
    require(h[e.u].size() == c.dim && h[e.v].size() == c.dim, ErrorCode::InvalidArgument,
            "coboundary vectors differ in dimension");
    std::vector<double> v(c.dim);
    for (std::size_t k = 0; k < c.dim; ++k) v[k] = h[e.v][k] - h[e.u][k];
    c.values.push_back(std::move(v));
  }
  return c;
}

double closure_defect(const WeightedComplex& complex, const EdgeCocycle& cocycle) {
  double worst = 0.0;
  for (const Face& f : complex.faces()) {
    const auto [a, b, c] = f.vertices;
    const auto ab = cocycle.at(complex, a, b), bc = cocycle.at(complex, b, c), ca = cocycle.at(complex, c, a);
    double s = 0.0;
    for (std::size_t k = 0; k < cocycle.dim; ++k) {
      const double t = ab[k] + bc[k] + ca[k];
      s += t * t;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

void check_cocycle(const WeightedComplex& complex, const EdgeCocycle& cocycle) {
  require(cocycle.dim >= 1, ErrorCode::InvalidArgument, "cocycle dimension must be positive");
  require(cocycle.values.size() == complex.edges().size(), ErrorCode::InvalidArgument,
          "cocycle has " + std::to_string(cocycle.values.size()) + " values for " +
              std::to_string(complex.edges().size()) + " edges");
  for (const auto& v : cocycle.values) {
    require(v.size() == cocycle.dim, ErrorCode::InvalidArgument, "cocycle vectors differ in dimension");
  }
  const double defect = closure_defect(complex, cocycle);
  require(defect <= 1e-10, ErrorCode::Domain,
          "cocycle is not closed on faces (defect " + std::to_string(defect) + ")");
}

EdgeCocycle torus_lattice_cocycle(std::size_t rows, std::size_t cols) {
  const WeightedComplex torus = torus_triangulation(rows, cols);
  auto step = [](std::size_t from, std::size_t to, std::size_t period) {
    const std::size_t d = (to + period - from) % period;
    return d == 0 ? 0.0 : (d == 1 ? 1.0 : -1.0);
  };
  const double a[2] = {1.0, 0.0};
  const double b[2] = {-0.5, std::sqrt(3.0) / 2.0};
  EdgeCocycle c{2, {}};
  for (const Edge& e : torus.edges()) {
    const double di = step(e.u / cols, e.v / cols, rows);
    const double dj = step(e.u % cols, e.v % cols, cols);
    c.values.push_back({di * a[0] + dj * b[0], di * a[1] + dj * b[1]});
  }
  return c;
}

namespace {

void check_twisted(const VertexMap& f, const EdgeCocycle* cocycle) {
  if (cocycle == nullptr) return;
  const auto* e = f.space.as_euclidean();
  require(e != nullptr, ErrorCode::InvalidArgument, "cocycles require a Euclidean target");
  require(e->dim == cocycle->dim, ErrorCode::InvalidArgument, "cocycle and target dimensions differ");
}

TargetPoint translated(const TargetPoint& p, const std::vector<double>& shift) {
  std::vector<double> out = p.coords();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += shift[k];
  return out;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Barycenter of `pts` pushed into the tangent cone at `base`.
TangentVector tangent_barycenter(const TargetSpace& space, const TargetPoint& base, const WeightedPointSet& pts) {
  if (space.as_euclidean()) {
    std::vector<double> v = barycenter(space, pts).coords();
    const auto& b = base.coords();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b[k];
    const double m = norm(v);
    return {std::move(v), m};
  }
  if (const MetricTree* tree = space.as_tree()) {
    const StarData star = tangent_cone_star(*tree, base.tree_point(), pts);
    const auto [branch, radius] = star_barycenter(star);
    TreeTangent t;
    if (branch != StarData::kNullBranch) t.direction = star.branches[branch];
    t.radius = radius;
    return {t, radius};
  }
  const auto& factors = space.as_product()->factors;
  std::vector<TangentVector> members;
  double sq = 0.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    WeightedPointSet component{{}, pts.weights};
    for (const auto& p : pts.points) component.points.push_back(p.members().at(i));
    members.push_back(tangent_barycenter(factors[i], base.members().at(i), component));
    sq += members.back().magnitude * members.back().magnitude;
  }
  return {std::move(members), std::sqrt(sq)};
}

WeightedPointSet as_point_set(const LocalData& local) {
  return {local.positions.points, local.link.graph.vertex_weights()};
}

}  // namespace

double energy(const WeightedComplex& complex, const VertexMap& f, const EdgeCocycle* cocycle) {
  check_map(f, complex.vertex_count());
  check_twisted(f, cocycle);
  double e = 0.0;
  for (std::size_t i = 0; i < complex.edges().size(); ++i) {
    const Edge& edge = complex.edges()[i];
    double d;
    if (cocycle != nullptr) {
      d = distance(f.space, translated(f.points[edge.v], cocycle->values.at(i)), f.points[edge.u]);
    } else {
      d = distance(f.space, f.points[edge.u], f.points[edge.v]);
    }
    e += edge.weight * d * d;
  }
  return e;
}

LocalData local_data(const WeightedComplex& complex, const VertexMap& f, Vertex x, const EdgeCocycle* cocycle) {
  check_twisted(f, cocycle);
  require(f.points.size() == complex.vertex_count(), ErrorCode::InvalidArgument, "map size does not match the complex");
  LocalData local{link_of(complex, x), VertexMap{f.space, {}}, 0.0};
  for (std::size_t i = 0; i < local.link.members.size(); ++i) {
    const Vertex y = local.link.members[i];
    TargetPoint p = cocycle != nullptr ? translated(f.points[y], cocycle->at(complex, x, y)) : f.points[y];
    const double d = distance(f.space, p, f.points[x]);
    local.ed += 0.5 * local.link.graph.vertex_weight(i) * d * d;
    local.positions.points.push_back(std::move(p));
  }
  return local;
}

TangentVector minus_laplacian(const WeightedComplex& complex, const VertexMap& f, Vertex x,
                              const EdgeCocycle* cocycle) {
  const LocalData local = local_data(complex, f, x, cocycle);
  require(!local.positions.points.empty(), ErrorCode::Domain, "vertex " + std::to_string(x) + " has an empty link");
  return tangent_barycenter(f.space, f.points[x], as_point_set(local));
}

double laplacian_norm_squared(const WeightedComplex& complex, const VertexMap& f, const EdgeCocycle* cocycle) {
  double s = 0.0;
  for (Vertex x = 0; x < complex.vertex_count(); ++x) {
    if (complex.vertex_weight(x) == 0.0) continue;  // isolated vertex
    const double m = minus_laplacian(complex, f, x, cocycle).magnitude;
    s += complex.vertex_weight(x) * m * m;
  }
  return s;
}

double map_distance(const WeightedComplex& complex, const VertexMap& f, const VertexMap& g) {
  check_map(f, complex.vertex_count());
  check_map(g, complex.vertex_count());
  double s = 0.0;
  for (Vertex x = 0; x < complex.vertex_count(); ++x) {
    const double d = distance(f.space, f.points[x], g.points[x]);
    s += complex.vertex_weight(x) * d * d;
  }
  return std::sqrt(s);
}

FlowTrace mayer_flow(const WeightedComplex& complex, const VertexMap& start, const FlowOptions& options,
                     const EdgeCocycle* cocycle) {
  require(options.eta > 0.0 && options.eta <= 1.0, ErrorCode::Domain, "step size must lie in (0, 1]");
  check_map(start, complex.vertex_count());
  check_twisted(start, cocycle);
  if (cocycle != nullptr) check_cocycle(complex, *cocycle);
  const std::size_t n = complex.vertex_count();

  FlowTrace trace{{}, start, 0.0};
  VertexMap& f = trace.final_map;
  std::vector<TargetPoint> targets(n);
  std::vector<double> magnitudes(n);

  // Barycenters of all link restrictions and the Laplacian magnitudes, in one pass.
  auto sweep_data = [&](const VertexMap& map) {
    parallel_for(n, options.jobs, [&](std::size_t x) {
      const LocalData local = local_data(complex, map, x, cocycle);
      if (local.positions.points.empty()) {  // isolated vertex stays put
        targets[x] = map.points[x];
        magnitudes[x] = 0.0;
        return;
      }
      const WeightedPointSet pts = as_point_set(local);
      targets[x] = barycenter(map.space, pts);
      magnitudes[x] = tangent_barycenter(map.space, map.points[x], pts).magnitude;
    });
    double s = 0.0;
    for (Vertex x = 0; x < n; ++x) s += complex.vertex_weight(x) * magnitudes[x] * magnitudes[x];
    return std::sqrt(s);
  };

  double e = energy(complex, f, cocycle);
  trace.steps.push_back({0, e, sweep_data(f), options.eta});
  for (std::size_t step = 1; step <= options.iterations && e > options.energy_floor; ++step) {
    if (trace.steps.back().laplacian_norm == 0.0) break;
    double eta = options.eta;
    VertexMap next = f;
    double e_next = e;
    for (int halving = 0; halving < 40; ++halving) {
      for (Vertex x = 0; x < n; ++x) next.points[x] = geodesic_point(f.space, f.points[x], targets[x], eta);
      e_next = energy(complex, next, cocycle);
      if (e_next <= e) break;
      eta *= 0.5;
    }
    if (e_next > e) {
      next = f;
      e_next = e;
      eta = 0.0;
    }
    f = std::move(next);
    e = e_next;
    trace.steps.push_back({step, e, sweep_data(f), eta});
    if (eta == 0.0) break;
  }

  std::vector<std::pair<double, double>> samples;
  for (const auto& s : trace.steps) {
    if (s.energy > 0.0) samples.emplace_back(static_cast<double>(s.step), std::log(s.energy));
  }
  if (samples.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : samples) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(samples.size());
    my /= static_cast<double>(samples.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [x, y] : samples) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    trace.decay_rate = -sxy / sxx;
  }
  return trace;
}

VertexMap solve_twisted_harmonic(const WeightedComplex& complex, const EdgeCocycle& cocycle) {
  check_cocycle(complex, cocycle);
  const std::size_t n = complex.vertex_count();
  require(n >= 1, ErrorCode::InvalidArgument, "empty complex");
  require(complex.connected(), ErrorCode::Domain, "twisted harmonic solve needs a connected complex");
  const std::size_t dim = cocycle.dim;

  // L f = b with b(x) = Σ_{x'} m(x, x') c(x → x'); vertex 0 is pinned to 0.
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < complex.edges().size(); ++i) {
    const Edge& e = complex.edges()[i];
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    for (std::size_t k = 0; k < dim; ++k) {
      const double c = cocycle.values[i][k];
      rhs(u, static_cast<Eigen::Index>(k)) += e.weight * c;
      rhs(v, static_cast<Eigen::Index>(k)) -= e.weight * c;
    }
    if (u > 0) triplets.emplace_back(u - 1, u - 1, e.weight);
    if (v > 0) triplets.emplace_back(v - 1, v - 1, e.weight);
    if (u > 0 && v > 0) {
      triplets.emplace_back(u - 1, v - 1, -e.weight);
      triplets.emplace_back(v - 1, u - 1, -e.weight);
    }
  }
  VertexMap f{TargetSpace::euclidean(dim), std::vector<TargetPoint>(n, std::vector<double>(dim, 0.0))};
  if (n == 1) return f;
  const auto m = static_cast<Eigen::Index>(n - 1);
  Eigen::SparseMatrix<double> lap(m, m);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
  require(solver.info() == Eigen::Success, ErrorCode::Inconsistent, "Laplacian factorization failed");
  const Eigen::MatrixXd sol = solver.solve(rhs.bottomRows(m));
  require(solver.info() == Eigen::Success, ErrorCode::Inconsistent, "Laplacian solve failed");
  for (std::size_t x = 1; x < n; ++x) {
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = sol(static_cast<Eigen::Index>(x - 1), static_cast<Eigen::Index>(k));
    f.points[x] = std::move(p);
  }
  return f;
}

double relative_residual(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return a == b ? 0.0 : std::abs(a - b) / scale;
}

GarlandIdentityReport garland_identity_check(const WeightedComplex& complex, const VertexMap& f,
                                             const EdgeCocycle* cocycle) {
  GarlandIdentityReport r;
  r.energy = energy(complex, f, cocycle);
  for (Vertex x = 0; x < complex.vertex_count(); ++x) {
    const LocalData local = local_data(complex, f, x, cocycle);
    if (local.positions.points.empty()) {  // isolated vertex contributes nothing
      r.link_rq.emplace_back(std::nullopt);
      continue;
    }
    const double link_energy = graph_energy(local.link.graph, local.positions);
    r.link_energy_sum += link_energy;
    r.ed_sum += local.ed;
    const WeightedPointSet pts = as_point_set(local);
    r.max_laplacian = std::max(r.max_laplacian, tangent_barycenter(f.space, f.points[x], pts).magnitude);
    const double spread = barycenter_cost(f.space, pts, barycenter(f.space, pts));
    if (spread > 0.0) {
      const double rq = link_energy / spread;
      r.link_rq.emplace_back(rq);
      r.rq_ed_sum += 2.0 * rq * local.ed;
    } else {
      r.link_rq.emplace_back(std::nullopt);
    }
  }
  r.residual_links = relative_residual(r.energy, r.link_energy_sum);
  r.residual_ed = relative_residual(r.energy, r.ed_sum);
  r.residual_harmonic = relative_residual(r.energy, r.rq_ed_sum);
  r.harmonic = r.max_laplacian < 1e-8;
  r.label = r.harmonic ? "harmonic" : "non-harmonic, identity not asserted";
  return r;
}

GarlandInequalityReport garland_inequality_check(const WeightedComplex& complex, const VertexMap& f, double lambda,
                                                 const EdgeCocycle* cocycle) {
  GarlandInequalityReport r;
  r.lambda = lambda;
  r.energy = energy(complex, f, cocycle);
  r.laplacian_norm_squared = laplacian_norm_squared(complex, f, cocycle);
  r.lhs = (2.0 * lambda - 1.0) * (2.0 * lambda - 1.0) * r.energy;
  r.rhs = 8.0 * lambda * lambda * r.laplacian_norm_squared;
  r.slack = r.rhs - r.lhs;
  return r;
}

CertificateReport fixed_point_certificate(const WeightedComplex& complex, TargetClass target, double delta,
                                          unsigned jobs) {
  require(delta >= 0.0 && delta < 1.0, ErrorCode::Domain, "delta must lie in [0, 1)");
  require(complex.vertex_count() >= 1, ErrorCode::InvalidArgument, "empty complex");
  CertificateReport r;
  r.target = target;
  r.delta = target == TargetClass::Hilbert ? 0.0 : delta;
  r.threshold = 1.0 / (2.0 * (1.0 - r.delta));
  r.link_gaps.assign(complex.vertex_count(), 0.0);
  parallel_for(complex.vertex_count(), jobs, [&](std::size_t x) {
    const VertexLink link = link_of(complex, x);
    r.link_gaps[x] = link.graph.vertex_count() >= 2 ? scalar_spectral_gap(link.graph).lambda : 0.0;
  });
  const auto it = std::min_element(r.link_gaps.begin(), r.link_gaps.end());
  r.min_gap = *it;
  r.binding_vertex = static_cast<Vertex>(it - r.link_gaps.begin());
  r.granted = r.min_gap > r.threshold;
  r.property_t = r.granted && target == TargetClass::Hilbert;
  return r;
}

}  // namespace garland
