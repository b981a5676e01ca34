#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "garland/complex.hpp"

namespace garland {

/// Point-line incidence graph of the projective plane over F_p. Vertices
/// 0..N−1 are points, N..2N−1 lines, N = p² + p + 1.
struct IncidenceGraph {
  WeightedGraph graph;
  unsigned p = 0;
  std::size_t points = 0;
  std::vector<std::array<unsigned, 3>> coordinates;  // normalized representative per vertex

  bool is_line(Vertex v) const { return v >= points; }
};

bool is_prime(unsigned p);

IncidenceGraph projective_plane_incidence(unsigned p);

struct GeneralizedTriangleReport {
  bool ok = false;
  std::size_t girth = 0;  // 0 when acyclic
  /// Shortest cycle when the girth is below 6, else an uncovered edge pair
  /// (as four vertices u1 v1 u2 v2); empty on success.
  std::vector<Vertex> witness;
  std::string reason;
};

/// Girth ≥ 6 and every two edges lie in a common 6-cycle.
GeneralizedTriangleReport generalized_triangle_check(const WeightedGraph& graph, std::size_t vertex_cap = 200);

/// Shortest cycle (vertex list) of a graph, treating loops as length 1 and
/// parallel edges as length 2. Empty for forests.
std::vector<Vertex> shortest_cycle(const WeightedGraph& graph);

struct BuildingCensus {
  unsigned p = 0;
  std::size_t n = 0;  // vertices of the link
  std::size_t d = 0;  // valence
  std::size_t pairs_at_1 = 0, pairs_at_2 = 0, pairs_at_3 = 0;  // ordered pairs
  double energy = 0.0;      // ½ n d
  double dispersion = 0.0;  // F(ι)
  double rq_gromov = 0.0;
  double closed_form = 0.0;  // 2(p²+p+1)/(7p²+4p+1)
  double rq_standard = 0.0;  // barycenter is the apex, every vertex at distance 1
};

/// Distance census of the incidence graph and the Rayleigh quotients of its
/// embedding as the unit sphere around a vertex of the Ã₂ building, where
/// graph distances 1, 2, 3 become squared distances 1, 3, 4.
BuildingCensus building_embedding_rq(unsigned p);

struct FeitHigmanReport {
  unsigned p = 0;
  double eigensolved = 0.0;
  double reference = 0.0;          // 1 − √p/(p+1)
  double formula_field_order = 0.0;  // q = p
  double formula_valence = 0.0;      // q = p + 1
  double diff_field_order = 0.0;
  double diff_valence = 0.0;
};

/// 1 − √(q−2)/(q−1) under both readings of q, next to the eigensolved gap.
FeitHigmanReport feit_higman_compare(unsigned p);

}  // namespace garland
