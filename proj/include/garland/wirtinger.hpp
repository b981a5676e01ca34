#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "garland/complex.hpp"
#include "garland/vertex_map.hpp"

namespace garland {

/// W(k, j) = 4k sin²(πj/k).
double wirtinger_constant(std::size_t k, std::size_t j);

/// E_j(g) = ½ Σ_c Σ_{d(c,c')=j} d(g(c), g(c'))² for a map of the k-cycle
/// (c ↦ g.points[c]): each unordered pair at cyclic distance j counted once.
double distance_j_energy(const VertexMap& g, std::size_t j);

/// Σ_c d(g(c), g(c + j))². Equals E_j for j < k/2 and 2E_{k/2} at the antipode.
double shift_energy(const VertexMap& g, std::size_t j);

struct WirtingerTerm {
  std::size_t j = 0;
  double e1 = 0.0;
  double ej = 0.0;  // shift energy at j
  /// E₁/E_j (empty when E_j = 0, which passes trivially).
  std::optional<double> ratio;
  double bound = 0.0;  // W(k,1)/W(k,j)
  bool pass = false;
  bool equality = false;
};

struct WirtingerReport {
  std::size_t k = 0;
  std::vector<WirtingerTerm> terms;  // j = 2 .. ⌊k/2⌋
  bool all_pass = false;
  /// g is the restriction of an affine map to the k-th roots of unity
  /// (Euclidean targets only).
  bool affine_circle = false;
};

/// Checks E₁/E_j ≥ W(k,1)/W(k,j) − 1e-9 for every j in 2..⌊k/2⌋.
WirtingerReport wir_check(const VertexMap& g);

/// ½|1 − e^{2iπ/k}|², the certified λ^Gro lower bound for k-cycles.
double gromov_cycle_bound(std::size_t k);

/// Closed walks in a host graph, given without repeating the first vertex.
struct LoopFamily {
  std::vector<std::vector<Vertex>> loops;
  /// Length cap; 0 means the longest loop.
  std::size_t k = 0;
};

/// Throws unless every loop has length ≥ 3 (and ≤ k) with consecutive vertices adjacent.
std::size_t check_loop_family(const WeightedGraph& host, const LoopFamily& family);

struct LoopCertificate {
  std::size_t a = 0;  // edge count of the host
  std::size_t v = 0;  // max valence
  std::size_t r = 0;  // min over vertex pairs of loops containing both
  std::size_t q = 0;  // max over edges of traversals
  std::size_t k = 0;
  double bound = 0.0;
  bool vacuous = false;
  bool above_half = false;
  /// A vertex pair realizing r.
  std::pair<Vertex, Vertex> sparsest_pair{0, 0};
};

/// (4Ar / (q k v²)) · ½|1 − e^{2iπ/k}|², a lower bound on λ^Gro for every CAT(0) target.
LoopCertificate loop_family_certificate(const WeightedGraph& host, const LoopFamily& family);

/// All simple cycles of the given length, each listed once starting at its
/// smallest vertex and oriented so the second vertex is below the last.
/// Parallel edges and loops are ignored. Throws above `vertex_cap` vertices.
std::vector<std::vector<Vertex>> enumerate_cycles(const WeightedGraph& graph, std::size_t length,
                                                  std::size_t vertex_cap = 200);

struct AveragedCertificate {
  std::size_t k = 0;
  std::size_t v = 0;
  double total_weight = 0.0;
  std::vector<std::size_t> counts;  // N_1 .. N_{⌊k/2⌋}
  double bound = 0.0;
};

/// Averaging bound for a family of isometric k-cycles in which every vertex
/// pair at distance j ≤ k/2 lies in exactly N_j cycles:
///   λ = 1 / ((v²/m(∅)) Σ_j W(k,j) N_1 / (Ñ_j W(k,1))), Ñ_j = N_j (j < k/2), 2N_{k/2}.
/// `counts` may be empty, in which case they are read off the family. Throws
/// on non-isometric cycles or a pair violating the counts.
AveragedCertificate averaged_regular_certificate(const WeightedGraph& graph,
                                                 const std::vector<std::vector<Vertex>>& cycles,
                                                 std::vector<std::size_t> counts = {});

}  // namespace garland
