#include "garland/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "garland/error.hpp"
#include "garland/rng.hpp"

namespace garland {

std::string to_string(SpectralMethod method) {
  switch (method) {
    case SpectralMethod::Dense: return "dense";
    case SpectralMethod::Lanczos: return "lanczos";
    case SpectralMethod::TraceBound: return "trace-bound";
  }
  return "unknown";
}

namespace {

// Row of the normalized operator S = D^{-1/2} (A + 2·loops) D^{-1/2}.
struct SparseEntry {
  std::size_t col;
  double value;
};
using SparseRows = std::vector<std::vector<SparseEntry>>;

void check_weights(const WeightedGraph& graph) {
  for (Vertex c = 0; c < graph.vertex_count(); ++c) {
    const double m = graph.vertex_weight(c);
    require(std::isfinite(m) && m >= 0.0, ErrorCode::InvalidArgument,
            "vertex " + std::to_string(c) + " has invalid weight");
    require(m > 0.0 || graph.incident(c).empty(), ErrorCode::InvalidArgument,
            "vertex " + std::to_string(c) + " has weight 0 but incident edges");
  }
  for (const Edge& e : graph.edges()) {
    require(std::isfinite(e.weight) && e.weight > 0.0, ErrorCode::InvalidArgument, "edge weights must be positive");
  }
}

// Positive-weight vertices, renumbered.
std::vector<std::size_t> active_vertices(const WeightedGraph& graph, std::vector<std::size_t>& index) {
  std::vector<std::size_t> active;
  index.assign(graph.vertex_count(), kNone);
  for (Vertex c = 0; c < graph.vertex_count(); ++c) {
    if (graph.vertex_weight(c) > 0.0) {
      index[c] = active.size();
      active.push_back(c);
    }
  }
  return active;
}

SparseRows normalized_adjacency(const WeightedGraph& graph, const std::vector<std::size_t>& index,
                                std::size_t n) {
  SparseRows rows(n);
  for (const Edge& e : graph.edges()) {
    const std::size_t a = index[e.u], b = index[e.v];
    const double s = e.weight / std::sqrt(graph.vertex_weight(e.u) * graph.vertex_weight(e.v));
    if (a == b) {
      rows[a].push_back({a, 2.0 * s});
    } else {
      rows[a].push_back({b, s});
      rows[b].push_back({a, s});
    }
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const SparseEntry& x, const SparseEntry& y) { return x.col < y.col; });
    std::vector<SparseEntry> merged;
    for (const auto& entry : row) {
      if (!merged.empty() && merged.back().col == entry.col) {
        merged.back().value += entry.value;
      } else {
        merged.push_back(entry);
      }
    }
    row = std::move(merged);
  }
  return rows;
}

Eigen::MatrixXd normalized_laplacian(const SparseRows& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& entry : rows[r]) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(entry.col)) -= entry.value;
  }
  return m;
}

void multiply(const SparseRows& rows, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double s = 0.0;
    for (const auto& entry : rows[r]) s += entry.value * x[static_cast<Eigen::Index>(entry.col)];
    y[static_cast<Eigen::Index>(r)] = s;
  }
}

// Largest eigenvalue of S on the complement of the known top eigenvector √D,
// by Lanczos with full reorthogonalization.
double lanczos_second_eigenvalue(const SparseRows& rows, const Eigen::VectorXd& top) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index max_steps = std::min<Eigen::Index>(n - 1, 600);
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;

  const Eigen::VectorXd unit_top = top.normalized();
  auto deflate = [&](Eigen::VectorXd& v) {
    v -= unit_top.dot(v) * unit_top;
    for (const auto& q : basis) v -= q.dot(v) * q;
  };

  SplitMix64 rng(0x5eed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  deflate(v);
  v.normalize();

  double estimate = 0.0;
  Eigen::VectorXd w;
  for (Eigen::Index step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    multiply(rows, v, w);
    alpha.push_back(v.dot(w));
    deflate(w);
    deflate(w);  // second pass keeps the basis orthogonal to working precision
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    estimate = solver.eigenvalues()[m - 1];
    const double residual = b * std::abs(solver.eigenvectors()(m - 1, m - 1));
    if (residual < 1e-10 || b < 1e-14) return estimate;
    beta.push_back(b);
    v = w / b;
  }
  fail(ErrorCode::Inconsistent, "Lanczos iteration did not converge");
}

}  // namespace

SpectralReport scalar_spectral_gap(const WeightedGraph& graph) {
  require(graph.vertex_count() >= 2, ErrorCode::InvalidArgument, "spectral gap needs at least 2 vertices");
  check_weights(graph);
  std::vector<std::size_t> index;
  const auto active = active_vertices(graph, index);
  const std::size_t isolated = graph.vertex_count() - active.size();
  const std::size_t n = active.size();

  SpectralReport report;
  report.connected = graph.connected() && isolated == 0;
  const SparseRows rows = normalized_adjacency(graph, index, n);

  if (n <= kDenseLimit) {
    report.method = SpectralMethod::Dense;
    if (n > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(rows), Eigen::EigenvaluesOnly);
      require(solver.info() == Eigen::Success, ErrorCode::Inconsistent, "dense eigensolver failed");
      for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) report.spectrum.push_back(solver.eigenvalues()[i]);
    }
    report.spectrum.insert(report.spectrum.begin(), isolated, 0.0);
    std::sort(report.spectrum.begin(), report.spectrum.end());
    report.lambda = report.connected ? std::max(0.0, report.spectrum[1]) : 0.0;
    return report;
  }

  report.method = SpectralMethod::Lanczos;
  if (!report.connected) {
    report.lambda = 0.0;
    report.spectrum = {0.0, 0.0};
    return report;
  }
  Eigen::VectorXd top(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) top[static_cast<Eigen::Index>(i)] = std::sqrt(graph.vertex_weight(active[i]));
  report.lambda = std::max(0.0, 1.0 - lanczos_second_eigenvalue(rows, top));
  report.spectrum = {0.0, report.lambda};
  return report;
}

std::vector<double> gap_eigenvector(const WeightedGraph& graph) {
  require(graph.vertex_count() >= 2 && graph.vertex_count() <= kDenseLimit, ErrorCode::InvalidArgument,
          "gap eigenvector needs 2 to " + std::to_string(kDenseLimit) + " vertices");
  check_weights(graph);
  require(graph.connected(), ErrorCode::Domain, "gap eigenvector needs a connected graph");
  std::vector<std::size_t> index;
  active_vertices(graph, index);
  const SparseRows rows = normalized_adjacency(graph, index, graph.vertex_count());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(rows));
  require(solver.info() == Eigen::Success, ErrorCode::Inconsistent, "dense eigensolver failed");
  // Undo the symmetrization: g = D^{-1/2} y.
  std::vector<double> g(graph.vertex_count());
  for (std::size_t c = 0; c < g.size(); ++c) {
    g[c] = solver.eigenvectors()(static_cast<Eigen::Index>(c), 1) / std::sqrt(graph.vertex_weight(c));
  }
  return g;
}

double cycle_gap_closed_form(std::size_t k) {
  require(k >= 3, ErrorCode::Domain, "cycle length must be at least 3");
  return 1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(k));
}

double graph_energy(const WeightedGraph& graph, const VertexMap& g) {
  check_map(g, graph.vertex_count());
  double e = 0.0;
  for (const Edge& edge : graph.edges()) {
    if (edge.u == edge.v) continue;
    const double d = distance(g.space, g.points[edge.u], g.points[edge.v]);
    e += edge.weight * d * d;
  }
  return e;
}

namespace {

void require_nonconstant(const VertexMap& g) {
  for (const auto& p : g.points) {
    if (!(p == g.points.front()) && distance(g.space, p, g.points.front()) > 0.0) return;
  }
  fail(ErrorCode::Domain, "zero denominator: map is constant");
}

}  // namespace

double rayleigh_quotient(const WeightedGraph& graph, const VertexMap& g) {
  const double e = graph_energy(graph, g);
  require_nonconstant(g);
  WeightedPointSet pts;
  for (Vertex c = 0; c < graph.vertex_count(); ++c) {
    if (graph.vertex_weight(c) <= 0.0) continue;
    pts.points.push_back(g.points[c]);
    pts.weights.push_back(graph.vertex_weight(c));
  }
  require(!pts.points.empty(), ErrorCode::Domain, "zero denominator: graph has no weighted vertices");
  const double denom = barycenter_cost(g.space, pts, barycenter(g.space, pts));
  require(denom > 0.0, ErrorCode::Domain, "zero denominator: map is constant on weighted vertices");
  return e / denom;
}

double gromov_rayleigh(const WeightedGraph& graph, const VertexMap& g) {
  const double e = graph_energy(graph, g);
  require_nonconstant(g);
  const std::size_t n = graph.vertex_count();
  double f = 0.0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const double d = distance(g.space, g.points[a], g.points[b]);
      f += 2.0 * graph.vertex_weight(a) * graph.vertex_weight(b) * d * d;
    }
  }
  f /= 2.0 * graph.total_weight();
  require(f > 0.0, ErrorCode::Domain, "zero denominator: map is constant on weighted vertices");
  return e / f;
}

double trace_method_gap_bound(const WeightedGraph& graph, unsigned k) {
  require(k >= 1, ErrorCode::InvalidArgument, "trace method needs k >= 1");
  require(graph.vertex_count() >= 2, ErrorCode::InvalidArgument, "trace method needs at least 2 vertices");
  check_weights(graph);
  require(graph.connected(), ErrorCode::Domain, "trace method needs a connected graph");
  std::vector<std::size_t> index;
  active_vertices(graph, index);
  const std::size_t n = graph.vertex_count();
  const SparseRows rows = normalized_adjacency(graph, index, n);
  // tr P^{2k} − 1 = ‖(S − uuᵀ)^k‖_F² with u = √D/‖√D‖, the eigenvector of
  // eigenvalue 1. Deflating u avoids cancellation in the subtraction.
  Eigen::VectorXd u(static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) u[static_cast<Eigen::Index>(c)] = std::sqrt(graph.vertex_weight(c));
  u.normalize();
  double excess = 0.0;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n)), y;
  for (std::size_t j = 0; j < n; ++j) {
    x = -u[static_cast<Eigen::Index>(j)] * u;
    x[static_cast<Eigen::Index>(j)] += 1.0;
    for (unsigned step = 0; step < k; ++step) {
      multiply(rows, x, y);
      x.swap(y);
      x -= u.dot(x) * u;
    }
    excess += x.squaredNorm();
  }
  return std::max(0.0, 1.0 - std::pow(excess, 1.0 / (2.0 * k)));
}

}  // namespace garland
