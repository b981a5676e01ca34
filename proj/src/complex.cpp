#include "garland/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "garland/error.hpp"

namespace garland {

namespace {

std::string face_name(const Triple& t) {
  std::ostringstream os;
  os << '{' << t[0] << ',' << t[1] << ',' << t[2] << '}';
  return os.str();
}

std::string edge_name(Vertex a, Vertex b) {
  std::ostringstream os;
  os << '{' << a << ',' << b << '}';
  return os.str();
}

Triple sorted(Triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

bool weights_agree(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-3});
  return std::abs(a - b) <= 1e-9 * scale;
}

// ---------------------------------------------------------------- WeightedGraph

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), vertex_weights_(vertex_count, 0.0) {
  for (const Edge& e : edges_) {
    require(e.u < vertex_count && e.v < vertex_count, ErrorCode::InvalidArgument,
            "edge " + edge_name(e.u, e.v) + " references a missing vertex");
    vertex_weights_[e.u] += e.weight;
    vertex_weights_[e.v] += e.weight;
  }
  build_adjacency();
}

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges,
                             std::vector<double> vertex_weights)
    : edges_(std::move(edges)), vertex_weights_(std::move(vertex_weights)) {
  require(vertex_weights_.size() == vertex_count, ErrorCode::InvalidArgument,
          "vertex weight count does not match vertex count");
  for (const Edge& e : edges_) {
    require(e.u < vertex_count && e.v < vertex_count, ErrorCode::InvalidArgument,
            "edge " + edge_name(e.u, e.v) + " references a missing vertex");
  }
  build_adjacency();
}

void WeightedGraph::build_adjacency() {
  adjacency_.assign(vertex_weights_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[e.u].emplace_back(e.v, i);
    if (e.u != e.v) adjacency_[e.v].emplace_back(e.u, i);
  }
}

double WeightedGraph::total_weight() const {
  return std::accumulate(vertex_weights_.begin(), vertex_weights_.end(), 0.0);
}

std::vector<std::vector<std::pair<Vertex, double>>> WeightedGraph::merged_neighbors() const {
  std::vector<std::vector<std::pair<Vertex, double>>> out(vertex_count());
  for (Vertex c = 0; c < vertex_count(); ++c) {
    std::map<Vertex, double> acc;
    for (auto [other, idx] : adjacency_[c]) {
      if (other != c) acc[other] += edges_[idx].weight;
    }
    out[c].assign(acc.begin(), acc.end());
  }
  return out;
}

std::vector<std::size_t> WeightedGraph::bfs_distances(Vertex source) const {
  std::vector<std::size_t> dist(vertex_count(), std::numeric_limits<std::size_t>::max());
  std::queue<Vertex> queue;
  dist.at(source) = 0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex c = queue.front();
    queue.pop();
    for (auto [other, idx] : adjacency_[c]) {
      (void)idx;
      if (dist[other] == std::numeric_limits<std::size_t>::max()) {
        dist[other] = dist[c] + 1;
        queue.push(other);
      }
    }
  }
  return dist;
}

bool WeightedGraph::connected() const {
  if (vertex_count() == 0) return false;
  const auto dist = bfs_distances(0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

std::size_t WeightedGraph::max_degree() const {
  std::size_t best = 0;
  for (Vertex c = 0; c < vertex_count(); ++c) {
    std::size_t degree = 0;
    for (auto [other, idx] : adjacency_[c]) {
      (void)idx;
      degree += (other == c) ? 2 : 1;
    }
    best = std::max(best, degree);
  }
  return best;
}

// -------------------------------------------------------------- WeightedComplex

WeightedComplex::WeightedComplex(std::vector<double> vertex_weights, std::vector<Edge> edges,
                                 std::vector<Face> faces)
    : vertex_weights_(std::move(vertex_weights)), edges_(std::move(edges)), faces_(std::move(faces)) {
  const std::size_t n = vertex_weights_.size();
  neighbors_.assign(n, {});
  faces_at_.assign(n, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < n && e.v < n && e.u != e.v) {
      neighbors_[e.u].emplace_back(e.v, i);
      neighbors_[e.v].emplace_back(e.u, i);
    }
  }
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    faces_[i].vertices = sorted(faces_[i].vertices);
    for (Vertex v : faces_[i].vertices) {
      if (v < n) faces_at_[v].push_back(i);
    }
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

std::optional<std::size_t> WeightedComplex::edge_index(Vertex a, Vertex b) const {
  if (a >= vertex_count() || b >= vertex_count()) return std::nullopt;
  for (auto [other, idx] : neighbors_[a]) {
    if (other == b) return idx;
  }
  return std::nullopt;
}

WeightedGraph WeightedComplex::skeleton() const {
  return WeightedGraph(vertex_count(), edges_, vertex_weights_);
}

WeightedComplex propagate_weights(std::size_t vertex_count, std::vector<Face> faces) {
  std::set<Triple> seen;
  std::map<std::pair<Vertex, Vertex>, double> edge_weight;
  for (Face& f : faces) {
    f.vertices = sorted(f.vertices);
    const Triple& t = f.vertices;
    require(t[2] < vertex_count, ErrorCode::InvalidArgument,
            "face " + face_name(t) + " references a missing vertex");
    require(t[0] != t[1] && t[1] != t[2], ErrorCode::InvalidArgument,
            "face " + face_name(t) + " is degenerate");
    require(f.weight > 0.0 && std::isfinite(f.weight), ErrorCode::InvalidArgument,
            "face " + face_name(t) + " has non-positive weight");
    require(seen.insert(t).second, ErrorCode::InvalidArgument, "duplicate face " + face_name(t));
    edge_weight[{t[0], t[1]}] += f.weight;
    edge_weight[{t[0], t[2]}] += f.weight;
    edge_weight[{t[1], t[2]}] += f.weight;
  }
  std::vector<Edge> edges;
  std::vector<double> vertex_weights(vertex_count, 0.0);
  edges.reserve(edge_weight.size());
  for (const auto& [key, w] : edge_weight) {
    edges.push_back({key.first, key.second, w});
    vertex_weights[key.first] += w;
    vertex_weights[key.second] += w;
  }
  return WeightedComplex(std::move(vertex_weights), std::move(edges), std::move(faces));
}

VertexLink link_of(const WeightedComplex& complex, Vertex x) {
  require(x < complex.vertex_count(), ErrorCode::InvalidArgument,
          "vertex " + std::to_string(x) + " is not in the complex");
  VertexLink link;
  std::map<Vertex, std::size_t> local;
  std::vector<double> weights;
  for (auto [other, idx] : complex.neighbors(x)) {
    local[other] = link.members.size();
    link.members.push_back(other);
    weights.push_back(complex.edges()[idx].weight);
  }
  std::vector<Edge> edges;
  std::vector<double> incident(link.members.size(), 0.0);
  for (std::size_t fi : complex.faces_at(x)) {
    const Face& f = complex.faces()[fi];
    std::array<Vertex, 2> rest{};
    std::size_t k = 0;
    for (Vertex v : f.vertices) {
      if (v != x) rest[k++] = v;
    }
    const auto a = local.find(rest[0]);
    const auto b = local.find(rest[1]);
    require(a != local.end() && b != local.end(), ErrorCode::Inconsistent,
            "link weights inconsistent: face " + face_name(f.vertices) + " has an edge missing at vertex " +
                std::to_string(x));
    edges.push_back({a->second, b->second, f.weight});
    incident[a->second] += f.weight;
    incident[b->second] += f.weight;
  }
  for (std::size_t i = 0; i < link.members.size(); ++i) {
    require(weights_agree(incident[i], weights[i]), ErrorCode::Inconsistent,
            "link weights inconsistent at vertex " + std::to_string(x) + ": edge " +
                edge_name(x, link.members[i]) + " has weight " + std::to_string(weights[i]) +
                " but its faces sum to " + std::to_string(incident[i]));
  }
  link.graph = WeightedGraph(link.members.size(), std::move(edges), std::move(weights));
  return link;
}

// ------------------------------------------------------------------- validation

std::vector<std::string> validate(const WeightedGraph& graph) {
  std::vector<std::string> report;
  const std::size_t n = graph.vertex_count();
  std::vector<double> incident(n, 0.0);
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    const Edge& e = graph.edges()[i];
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      report.push_back("edge #" + std::to_string(i) + " " + edge_name(e.u, e.v) + " has non-positive weight");
    }
    incident[e.u] += e.weight;
    incident[e.v] += e.weight;
  }
  for (Vertex c = 0; c < n; ++c) {
    if (!weights_agree(graph.vertex_weight(c), incident[c])) {
      std::ostringstream os;
      os << "vertex " << c << " weight " << graph.vertex_weight(c) << " differs from incident edge sum "
         << incident[c];
      report.push_back(os.str());
    }
  }
  // m(∅) > 0 on every connected component.
  std::vector<int> component(n, -1);
  int components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const auto dist = graph.bfs_distances(s);
    double mass = 0.0;
    std::vector<Vertex> members;
    for (Vertex c = 0; c < n; ++c) {
      if (dist[c] != std::numeric_limits<std::size_t>::max()) {
        component[c] = components;
        mass += graph.vertex_weight(c);
        members.push_back(c);
      }
    }
    if (!(mass > 0.0)) {
      report.push_back("m(∅)>0 per component violated: component containing vertex " + std::to_string(s) +
                       " has total weight " + std::to_string(mass));
    }
    ++components;
  }
  if (n == 0) report.push_back("m(∅)>0 violated: graph has no vertices");
  return report;
}

std::vector<std::string> validate(const WeightedComplex& complex) {
  std::vector<std::string> report;
  const std::size_t n = complex.vertex_count();
  std::set<std::pair<Vertex, Vertex>> edge_set;
  std::map<std::pair<Vertex, Vertex>, double> from_faces;
  std::vector<double> from_edges(n, 0.0);
  std::vector<bool> in_edge(n, false);
  for (Vertex x = 0; x < n; ++x) {
    if (!(complex.vertex_weight(x) > 0.0)) {
      report.push_back("vertex " + std::to_string(x) + " has non-positive weight");
    }
  }
  for (const Edge& e : complex.edges()) {
    if (e.v >= n) {
      report.push_back("edge " + edge_name(e.u, e.v) + " references a missing vertex");
      continue;
    }
    if (e.u == e.v) report.push_back("edge " + edge_name(e.u, e.v) + " is a loop");
    if (!edge_set.insert({e.u, e.v}).second) report.push_back("duplicate edge " + edge_name(e.u, e.v));
    if (!(e.weight > 0.0)) report.push_back("edge " + edge_name(e.u, e.v) + " has non-positive weight");
    from_edges[e.u] += e.weight;
    from_edges[e.v] += e.weight;
    in_edge[e.u] = in_edge[e.v] = true;
  }
  std::set<Triple> face_set;
  for (const Face& f : complex.faces()) {
    const Triple& t = f.vertices;
    if (t[2] >= n) {
      report.push_back("face " + face_name(t) + " references a missing vertex");
      continue;
    }
    if (!face_set.insert(t).second) report.push_back("duplicate face " + face_name(t));
    if (!(f.weight > 0.0)) report.push_back("face " + face_name(t) + " has non-positive weight");
    const std::array<std::pair<Vertex, Vertex>, 3> sides{{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
    for (const auto& side : sides) {
      if (!edge_set.count(side)) {
        report.push_back("face " + face_name(t) + " is missing edge " + edge_name(side.first, side.second));
      }
      from_faces[side] += f.weight;
    }
  }
  for (const Edge& e : complex.edges()) {
    const auto it = from_faces.find({e.u, e.v});
    if (it == from_faces.end()) continue;  // top-dimensional edge: no constraint
    if (!weights_agree(e.weight, it->second)) {
      std::ostringstream os;
      os << "edge " << edge_name(e.u, e.v) << " weight " << e.weight << " differs from containing face sum "
         << it->second;
      report.push_back(os.str());
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    if (in_edge[x] && !weights_agree(complex.vertex_weight(x), from_edges[x])) {
      std::ostringstream os;
      os << "vertex " << x << " weight " << complex.vertex_weight(x) << " differs from containing edge sum "
         << from_edges[x];
      report.push_back(os.str());
    }
  }
  return report;
}

// ---------------------------------------------------------------------- catalog

WeightedComplex torus_triangulation(std::size_t rows, std::size_t cols) {
  require(rows >= 3 && cols >= 3, ErrorCode::InvalidArgument, "torus triangulation needs at least 3x3 vertices");
  auto id = [&](std::size_t i, std::size_t j) { return (i % rows) * cols + (j % cols); };
  std::vector<Face> faces;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      faces.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, 1.0});
      faces.push_back({{id(i, j), id(i, j + 1), id(i + 1, j + 1)}, 1.0});
    }
  }
  return propagate_weights(rows * cols, std::move(faces));
}

WeightedComplex tetrahedron_boundary() {
  return propagate_weights(4, {{{0, 1, 2}, 1.0}, {{0, 1, 3}, 1.0}, {{0, 2, 3}, 1.0}, {{1, 2, 3}, 1.0}});
}

WeightedComplex octahedron_boundary() {
  std::vector<Face> faces;
  for (Vertex a : {0, 1}) {
    for (Vertex b : {2, 3}) {
      for (Vertex c : {4, 5}) faces.push_back({{a, b, c}, 1.0});
    }
  }
  return propagate_weights(6, std::move(faces));
}

WeightedComplex icosahedron_boundary() {
  // 0 = north pole, 1..5 upper ring, 6..10 lower ring, 11 = south pole.
  std::vector<Face> faces;
  auto up = [](std::size_t i) { return 1 + i % 5; };
  auto low = [](std::size_t i) { return 6 + i % 5; };
  for (std::size_t i = 0; i < 5; ++i) {
    faces.push_back({{0, up(i), up(i + 1)}, 1.0});
    faces.push_back({{11, low(i), low(i + 1)}, 1.0});
    faces.push_back({{up(i), up(i + 1), low(i)}, 1.0});
    faces.push_back({{low(i), low(i + 1), up(i + 1)}, 1.0});
  }
  return propagate_weights(12, std::move(faces));
}

WeightedGraph cycle_graph(std::size_t k) {
  require(k >= 3, ErrorCode::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k, 1.0});
  return WeightedGraph(k, std::move(edges));
}

}  // namespace garland
