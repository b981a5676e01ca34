#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace garland {

using Vertex = std::size_t;

/// Weighted edge. In a graph, u == v is a loop and repeated pairs are parallel
/// edges; in a simplicial complex edges are stored with u < v and are unique.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;
};

/// 1-dimensional weighted complex, allowing loops and parallel edges.
///
/// The vertex weight m(c) normally equals the sum of incident edge weights
/// (loops counted twice). Both constructors store exactly what they are given;
/// `validate` reports whether the weighting is consistent.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Vertex weights derived from the edges.
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);
  /// Vertex weights supplied by the caller (e.g. inherited by a link).
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges, std::vector<double> vertex_weights);

  std::size_t vertex_count() const { return vertex_weights_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& vertex_weights() const { return vertex_weights_; }
  double vertex_weight(Vertex c) const { return vertex_weights_.at(c); }
  /// m(∅) = Σ_c m(c).
  double total_weight() const;

  /// Incident (neighbor, edge index) pairs; a loop appears once.
  const std::vector<std::pair<Vertex, std::size_t>>& incident(Vertex c) const { return adjacency_.at(c); }

  /// Weight-summed adjacency over distinct neighbors (parallel edges merged,
  /// loops excluded).
  std::vector<std::vector<std::pair<Vertex, double>>> merged_neighbors() const;

  /// Unweighted BFS distances from `source`; unreachable vertices get SIZE_MAX.
  std::vector<std::size_t> bfs_distances(Vertex source) const;
  bool connected() const;
  std::size_t max_degree() const;

 private:
  void build_adjacency();

  std::vector<Edge> edges_;
  std::vector<double> vertex_weights_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adjacency_;
};

using Triple = std::array<Vertex, 3>;

struct Face {
  Triple vertices{};
  double weight = 1.0;
};

/// Simplicial complex of dimension ≤ 2 with a weight on every simplex.
class WeightedComplex {
 public:
  WeightedComplex() = default;
  /// Stores the simplices as given (edge and face vertex lists are sorted).
  /// Structural problems are left for `validate` to report.
  WeightedComplex(std::vector<double> vertex_weights, std::vector<Edge> edges, std::vector<Face> faces);

  std::size_t vertex_count() const { return vertex_weights_.size(); }
  const std::vector<double>& vertex_weights() const { return vertex_weights_; }
  double vertex_weight(Vertex x) const { return vertex_weights_.at(x); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
  /// Faces containing vertex x, by index.
  const std::vector<std::size_t>& faces_at(Vertex x) const { return faces_at_.at(x); }
  /// Neighbors of x with the edge index joining them.
  const std::vector<std::pair<Vertex, std::size_t>>& neighbors(Vertex x) const { return neighbors_.at(x); }

  /// Edges and weights as a graph (the 1-skeleton).
  WeightedGraph skeleton() const;
  bool connected() const { return skeleton().connected(); }

 private:
  std::vector<double> vertex_weights_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> neighbors_;
  std::vector<std::vector<std::size_t>> faces_at_;
};

/// Builds the complex spanned by `faces` on vertices 0..vertex_count-1 and
/// propagates weights downward: each edge receives the sum of the weights of
/// the faces containing it, each vertex the sum over its edges.
/// Throws on duplicate faces, degenerate triples, out-of-range vertices and
/// non-positive weights.
WeightedComplex propagate_weights(std::size_t vertex_count, std::vector<Face> faces);

/// A vertex link together with the complex vertices its vertices stand for.
struct VertexLink {
  WeightedGraph graph;
  std::vector<Vertex> members;
};

/// Link of x: vertices are the neighbors of x, edges the pairs {x', x''} with
/// {x, x', x''} a face (weight inherited from the face), vertex weight the
/// weight of the edge {x, x'}. Throws "link weights inconsistent" when an
/// inherited vertex weight disagrees with the link's incident edge weights.
VertexLink link_of(const WeightedComplex& complex, Vertex x);

/// Human-readable list of violated invariants; empty means valid.
std::vector<std::string> validate(const WeightedComplex& complex);
std::vector<std::string> validate(const WeightedGraph& graph);

/// Relative comparison used by validation (1e-9 relative, absolute floor 1e-12).
bool weights_agree(double a, double b);

// Catalog of small complexes used by examples, tests and the CLI.

/// rows×cols equilateral torus triangulation; vertex (i, j) has index i*cols + j.
/// Requires rows, cols ≥ 3.
WeightedComplex torus_triangulation(std::size_t rows = 3, std::size_t cols = 3);
WeightedComplex tetrahedron_boundary();
WeightedComplex octahedron_boundary();
/// Icosahedron boundary: every vertex link is a 5-cycle.
WeightedComplex icosahedron_boundary();
/// Cycle graph C_k with unit edge weights.
WeightedGraph cycle_graph(std::size_t k);

}  // namespace garland
