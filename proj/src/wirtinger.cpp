#include "garland/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "garland/error.hpp"
#include "garland/spectral.hpp"

namespace garland {

double wirtinger_constant(std::size_t k, std::size_t j) {
  require(k >= 1 && j >= 1 && j <= k, ErrorCode::Domain, "W(k, j) needs 1 <= j <= k");
  const double s = std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(k));
  return 4.0 * static_cast<double>(k) * s * s;
}

namespace {

std::size_t cycle_length(const VertexMap& g) {
  require(g.points.size() >= 3, ErrorCode::InvalidArgument, "cycle maps need at least 3 points");
  for (const auto& p : g.points) check_point(g.space, p);
  return g.points.size();
}

double squared_distance(const VertexMap& g, std::size_t a, std::size_t b) {
  const double d = distance(g.space, g.points[a], g.points[b]);
  return d * d;
}

// Residual of the best fit p + u cos θ_c + w sin θ_c, relative to the spread of g.
bool is_affine_circle(const VertexMap& g) {
  const auto* e = g.space.as_euclidean();
  if (e == nullptr) return false;
  const std::size_t k = g.points.size();
  const std::size_t dim = e->dim;
  double worst = 0.0, scale = 0.0;
  for (std::size_t t = 0; t < dim; ++t) {
    double mean = 0.0, cs = 0.0, sn = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
      const double x = g.points[c].coords()[t];
      mean += x;
      cs += x * std::cos(theta);
      sn += x * std::sin(theta);
    }
    mean /= static_cast<double>(k);
    cs *= 2.0 / static_cast<double>(k);
    sn *= 2.0 / static_cast<double>(k);
    for (std::size_t c = 0; c < k; ++c) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
      const double x = g.points[c].coords()[t];
      worst = std::max(worst, std::abs(x - mean - cs * std::cos(theta) - sn * std::sin(theta)));
      scale = std::max(scale, std::abs(x - mean));
    }
  }
  return scale > 0.0 && worst <= 1e-9 * scale;
}

}  // namespace

double distance_j_energy(const VertexMap& g, std::size_t j) {
  const std::size_t k = cycle_length(g);
  require(j >= 1 && j <= k / 2, ErrorCode::Domain, "distance j must lie in 1..k/2");
  double e = 0.0;
  const std::size_t pairs = 2 * j == k ? k / 2 : k;
  for (std::size_t c = 0; c < pairs; ++c) e += squared_distance(g, c, (c + j) % k);
  return e;
}

double shift_energy(const VertexMap& g, std::size_t j) {
  const std::size_t k = cycle_length(g);
  double e = 0.0;
  for (std::size_t c = 0; c < k; ++c) e += squared_distance(g, c, (c + j) % k);
  return e;
}

WirtingerReport wir_check(const VertexMap& g) {
  const std::size_t k = cycle_length(g);
  require(k >= 4, ErrorCode::Domain, "Wirtinger check needs k >= 4");
  WirtingerReport report;
  report.k = k;
  const double e1 = shift_energy(g, 1);
  require(e1 > 0.0, ErrorCode::Domain, "Wirtinger check needs a nonconstant map");
  report.all_pass = true;
  for (std::size_t j = 2; j <= k / 2; ++j) {
    WirtingerTerm t;
    t.j = j;
    t.e1 = e1;
    t.ej = shift_energy(g, j);
    t.bound = wirtinger_constant(k, 1) / wirtinger_constant(k, j);
    if (t.ej > 0.0) {
      t.ratio = e1 / t.ej;
      t.pass = *t.ratio >= t.bound - 1e-9;
      t.equality = std::abs(*t.ratio - t.bound) <= 1e-9 * std::max(1.0, t.bound);
    } else {
      t.pass = true;
    }
    report.all_pass = report.all_pass && t.pass;
    report.terms.push_back(t);
  }
  report.affine_circle = is_affine_circle(g);
  return report;
}

double gromov_cycle_bound(std::size_t k) {
  require(k >= 4, ErrorCode::Domain, "cycle bound needs k >= 4");
  return cycle_gap_closed_form(k);
}

std::size_t check_loop_family(const WeightedGraph& host, const LoopFamily& family) {
  require(!family.loops.empty(), ErrorCode::InvalidArgument, "loop family is empty");
  const auto adjacency = host.merged_neighbors();
  auto adjacent = [&](Vertex a, Vertex b) {
    return std::any_of(adjacency[a].begin(), adjacency[a].end(), [&](const auto& nb) { return nb.first == b; });
  };
  std::size_t longest = 0;
  for (std::size_t i = 0; i < family.loops.size(); ++i) {
    const auto& loop = family.loops[i];
    require(loop.size() >= 3, ErrorCode::InvalidArgument, "loop #" + std::to_string(i) + " is shorter than 3");
    for (std::size_t s = 0; s < loop.size(); ++s) {
      const Vertex a = loop[s], b = loop[(s + 1) % loop.size()];
      require(a < host.vertex_count() && b < host.vertex_count(), ErrorCode::InvalidArgument,
              "loop #" + std::to_string(i) + " leaves the host graph");
      require(adjacent(a, b), ErrorCode::InvalidArgument,
              "loop #" + std::to_string(i) + " steps along a non-edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    longest = std::max(longest, loop.size());
  }
  if (family.k != 0) {
    require(longest <= family.k, ErrorCode::InvalidArgument, "loop longer than the family bound k");
    return family.k;
  }
  return longest;
}

LoopCertificate loop_family_certificate(const WeightedGraph& host, const LoopFamily& family) {
  LoopCertificate c;
  c.k = check_loop_family(host, family);
  const std::size_t n = host.vertex_count();
  c.a = host.edge_count();
  c.v = host.max_degree();

  std::vector<std::size_t> together(n * n, 0);
  std::map<std::pair<Vertex, Vertex>, std::size_t> traversals;
  for (const auto& loop : family.loops) {
    std::set<Vertex> members(loop.begin(), loop.end());
    for (auto a = members.begin(); a != members.end(); ++a) {
      for (auto b = std::next(a); b != members.end(); ++b) ++together[*a * n + *b];
    }
    for (std::size_t s = 0; s < loop.size(); ++s) {
      const Vertex a = loop[s], b = loop[(s + 1) % loop.size()];
      ++traversals[{std::min(a, b), std::max(a, b)}];
    }
  }
  c.r = std::numeric_limits<std::size_t>::max();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (together[a * n + b] < c.r) {
        c.r = together[a * n + b];
        c.sparsest_pair = {a, b};
      }
    }
  }
  if (n < 2) c.r = 0;
  for (const auto& [edge, count] : traversals) c.q = std::max(c.q, count);
  c.vacuous = c.r == 0 || c.q == 0 || c.v == 0;
  if (!c.vacuous) {
    const double scale = 4.0 * static_cast<double>(c.a) * static_cast<double>(c.r) /
                         (static_cast<double>(c.q) * static_cast<double>(c.k) * static_cast<double>(c.v * c.v));
    c.bound = scale * cycle_gap_closed_form(c.k);
  }
  c.above_half = c.bound > 0.5;
  return c;
}

std::vector<std::vector<Vertex>> enumerate_cycles(const WeightedGraph& graph, std::size_t length,
                                                  std::size_t vertex_cap) {
  require(length >= 3, ErrorCode::InvalidArgument, "cycle length must be at least 3");
  require(graph.vertex_count() <= vertex_cap, ErrorCode::InvalidArgument,
          "cycle enumeration is capped at " + std::to_string(vertex_cap) + " vertices");
  const auto merged = graph.merged_neighbors();
  std::vector<std::vector<Vertex>> adjacency(graph.vertex_count());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    for (const auto& [w, weight] : merged[v]) adjacency[v].push_back(w);
    std::sort(adjacency[v].begin(), adjacency[v].end());
  }
  std::vector<std::vector<Vertex>> cycles;
  std::vector<Vertex> path;
  std::vector<char> on_path(graph.vertex_count(), 0);

  // Paths start at their minimum vertex; only larger vertices are visited.
  auto extend = [&](auto&& self, Vertex start) -> void {
    const Vertex tail = path.back();
    if (path.size() == length) {
      if (std::binary_search(adjacency[tail].begin(), adjacency[tail].end(), start) && path[1] < path.back()) {
        cycles.push_back(path);
      }
      return;
    }
    for (Vertex w : adjacency[tail]) {
      if (w <= start || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, start);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (Vertex s = 0; s < graph.vertex_count(); ++s) {
    path = {s};
    on_path[s] = 1;
    extend(extend, s);
    on_path[s] = 0;
  }
  return cycles;
}

AveragedCertificate averaged_regular_certificate(const WeightedGraph& graph,
                                                 const std::vector<std::vector<Vertex>>& cycles,
                                                 std::vector<std::size_t> counts) {
  require(!cycles.empty(), ErrorCode::InvalidArgument, "cycle family is empty");
  const std::size_t k = cycles.front().size();
  require(k >= 3, ErrorCode::InvalidArgument, "cycles must have length at least 3");
  const std::size_t half = k / 2;
  const std::size_t n = graph.vertex_count();

  std::vector<std::vector<std::size_t>> dist(n);
  for (Vertex v = 0; v < n; ++v) dist[v] = graph.bfs_distances(v);

  std::vector<std::size_t> together(n * n, 0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& cyc = cycles[i];
    require(cyc.size() == k, ErrorCode::InvalidArgument, "cycles in the family differ in length");
    for (std::size_t a = 0; a < k; ++a) {
      require(cyc[a] < n, ErrorCode::InvalidArgument, "cycle #" + std::to_string(i) + " leaves the graph");
      for (std::size_t b = a + 1; b < k; ++b) {
        const std::size_t along = std::min(b - a, k - (b - a));
        if (dist[cyc[a]][cyc[b]] != along) {
          std::ostringstream os;
          os << "cycle #" << i << " is not isometrically embedded: vertices " << cyc[a] << " and " << cyc[b]
             << " are at distance " << dist[cyc[a]][cyc[b]] << " in the graph but " << along << " along the cycle";
          fail(ErrorCode::Domain, os.str());
        }
        const Vertex lo = std::min(cyc[a], cyc[b]), hi = std::max(cyc[a], cyc[b]);
        ++together[lo * n + hi];
      }
    }
  }

  const bool given = !counts.empty();
  if (given) {
    require(counts.size() == half, ErrorCode::InvalidArgument,
            "expected " + std::to_string(half) + " counts N_1..N_" + std::to_string(half));
  } else {
    counts.assign(half, std::numeric_limits<std::size_t>::max());
  }
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const std::size_t j = dist[a][b];
      if (j == 0 || j > half) continue;
      std::size_t& expected = counts[j - 1];
      if (expected == std::numeric_limits<std::size_t>::max()) expected = together[a * n + b];
      if (together[a * n + b] != expected) {
        std::ostringstream os;
        os << "family is not distance-regular: pair (" << a << ", " << b << ") at distance " << j << " lies in "
           << together[a * n + b] << " cycles, expected N_" << j << " = " << expected;
        fail(ErrorCode::Domain, os.str());
      }
    }
  }
  for (std::size_t j = 1; j <= half; ++j) {
    require(counts[j - 1] != std::numeric_limits<std::size_t>::max() && counts[j - 1] > 0, ErrorCode::Domain,
            "no vertex pair at distance " + std::to_string(j) + " is covered by the family");
  }

  AveragedCertificate cert;
  cert.k = k;
  cert.v = graph.max_degree();
  cert.total_weight = graph.total_weight();
  cert.counts = counts;
  const double w1 = wirtinger_constant(k, 1);
  double sum = 0.0;
  for (std::size_t j = 1; j <= half; ++j) {
    const double tilde = (2 * j == k ? 2.0 : 1.0) * static_cast<double>(counts[j - 1]);
    sum += wirtinger_constant(k, j) * static_cast<double>(counts[0]) / (tilde * w1);
  }
  const double v = static_cast<double>(cert.v);
  cert.bound = 1.0 / (v * v / cert.total_weight * sum);
  return cert;
}

}  // namespace garland
