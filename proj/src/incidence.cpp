#include "garland/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "garland/error.hpp"
#include "garland/spectral.hpp"
#include "garland/wirtinger.hpp"

namespace garland {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

IncidenceGraph projective_plane_incidence(unsigned p) {
  require(is_prime(p), ErrorCode::Domain, std::to_string(p) + " is not prime");
  require(p <= 1000, ErrorCode::Domain, "p is too large for an explicit incidence graph");
  // Normalized nonzero vectors of F_p³: first nonzero coordinate equal to 1.
  std::vector<std::array<unsigned, 3>> reps;
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      for (unsigned c = 0; c < p; ++c) {
        const std::array<unsigned, 3> v{a, b, c};
        const auto first = std::find_if(v.begin(), v.end(), [](unsigned x) { return x != 0; });
        if (first != v.end() && *first == 1) reps.push_back(v);
      }
    }
  }
  IncidenceGraph g;
  g.p = p;
  g.points = reps.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      const unsigned long dot = static_cast<unsigned long>(reps[i][0]) * reps[j][0] +
                                static_cast<unsigned long>(reps[i][1]) * reps[j][1] +
                                static_cast<unsigned long>(reps[i][2]) * reps[j][2];
      if (dot % p == 0) edges.push_back({i, g.points + j, 1.0});
    }
  }
  g.coordinates = reps;
  g.coordinates.insert(g.coordinates.end(), reps.begin(), reps.end());
  g.graph = WeightedGraph(2 * g.points, std::move(edges));
  return g;
}

std::vector<Vertex> shortest_cycle(const WeightedGraph& graph) {
  for (const Edge& e : graph.edges()) {
    if (e.u == e.v) return {e.u};
  }
  const auto merged = graph.merged_neighbors();
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    std::vector<Vertex> seen;
    for (auto [w, idx] : graph.incident(v)) {
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) return {v, w};
      seen.push_back(w);
    }
  }
  // BFS from every vertex; a non-tree edge closes a cycle through the root
  // of length dist(a) + dist(b) + 1, and the minimum over roots is the girth.
  std::vector<Vertex> best;
  const std::size_t n = graph.vertex_count();
  for (Vertex root = 0; root < n; ++root) {
    std::vector<std::size_t> dist(n, kNone);
    std::vector<Vertex> parent(n, kNone);
    std::queue<Vertex> queue;
    dist[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const Vertex a = queue.front();
      queue.pop();
      if (!best.empty() && 2 * dist[a] + 1 >= best.size()) break;
      for (auto [b, w] : merged[a]) {
        if (dist[b] == kNone) {
          dist[b] = dist[a] + 1;
          parent[b] = a;
          queue.push(b);
        } else if (parent[a] != b) {
          const std::size_t len = dist[a] + dist[b] + 1;
          if (best.empty() || len < best.size()) {
            std::vector<Vertex> left, right;
            for (Vertex x = a; x != kNone; x = parent[x]) left.push_back(x);
            for (Vertex x = b; x != kNone; x = parent[x]) right.push_back(x);
            // Trim the shared tail above the branching point.
            while (left.size() >= 2 && right.size() >= 2 && left[left.size() - 2] == right[right.size() - 2]) {
              left.pop_back();
              right.pop_back();
            }
            std::vector<Vertex> cycle(left.begin(), left.end());
            for (auto it = right.rbegin() + 1; it != right.rend(); ++it) cycle.push_back(*it);
            if (cycle.size() >= 3 && (best.empty() || cycle.size() < best.size())) best = cycle;
          }
        }
      }
    }
  }
  return best;
}

GeneralizedTriangleReport generalized_triangle_check(const WeightedGraph& graph, std::size_t vertex_cap) {
  GeneralizedTriangleReport r;
  const auto cycle = shortest_cycle(graph);
  r.girth = cycle.size();
  if (!cycle.empty() && cycle.size() < 6) {
    r.witness = cycle;
    r.reason = "cycle of length " + std::to_string(cycle.size());
    return r;
  }
  const auto& edges = graph.edges();
  const std::size_t m = edges.size();
  auto edge_id = [&](Vertex a, Vertex b) {
    for (auto [w, idx] : graph.incident(a)) {
      if (w == b) return idx;
    }
    return kNone;
  };
  std::vector<char> covered(m * m, 0);
  for (const auto& hexagon : enumerate_cycles(graph, 6, vertex_cap)) {
    std::size_t ids[6];
    for (std::size_t s = 0; s < 6; ++s) ids[s] = edge_id(hexagon[s], hexagon[(s + 1) % 6]);
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) covered[ids[a] * m + ids[b]] = 1;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!covered[a * m + b]) {
        r.witness = {edges[a].u, edges[a].v, edges[b].u, edges[b].v};
        r.reason = "edges " + std::to_string(a) + " and " + std::to_string(b) + " lie in no common 6-cycle";
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

BuildingCensus building_embedding_rq(unsigned p) {
  const IncidenceGraph inc = projective_plane_incidence(p);
  const WeightedGraph& g = inc.graph;
  BuildingCensus c;
  c.p = p;
  c.n = g.vertex_count();
  c.d = p + 1;
  for (Vertex v = 0; v < c.n; ++v) {
    for (std::size_t dist : g.bfs_distances(v)) {
      if (dist == 1) ++c.pairs_at_1;
      else if (dist == 2) ++c.pairs_at_2;
      else if (dist == 3) ++c.pairs_at_3;
      else require(dist == 0, ErrorCode::Inconsistent, "incidence graph has diameter above 3");
    }
  }
  // Uniform edge weight 1, so m(c) = d and every edge has building length 1.
  c.energy = static_cast<double>(g.edge_count());
  const double m = static_cast<double>(c.d);
  const double weighted = 1.0 * static_cast<double>(c.pairs_at_1) + 3.0 * static_cast<double>(c.pairs_at_2) +
                          4.0 * static_cast<double>(c.pairs_at_3);
  c.dispersion = m * m * weighted / (2.0 * g.total_weight());
  c.rq_gromov = c.energy / c.dispersion;
  const double q = p;
  c.closed_form = 2.0 * (q * q + q + 1.0) / (7.0 * q * q + 4.0 * q + 1.0);
  c.rq_standard = c.energy / (g.total_weight() * 1.0);
  return c;
}

FeitHigmanReport feit_higman_compare(unsigned p) {
  const IncidenceGraph inc = projective_plane_incidence(p);
  FeitHigmanReport r;
  r.p = p;
  r.eigensolved = scalar_spectral_gap(inc.graph).lambda;
  const double q = p;
  r.reference = 1.0 - std::sqrt(q) / (q + 1.0);
  r.formula_field_order = 1.0 - std::sqrt(q - 2.0) / (q - 1.0);
  r.formula_valence = 1.0 - std::sqrt(q - 1.0) / q;
  r.diff_field_order = std::abs(r.eigensolved - r.formula_field_order);
  r.diff_valence = std::abs(r.eigensolved - r.formula_valence);
  return r;
}

}  // namespace garland
