#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "garland/complex.hpp"
#include "garland/vertex_map.hpp"

namespace garland {

enum class SpectralMethod { Dense, Lanczos, TraceBound };

std::string to_string(SpectralMethod method);

/// Generalized problem L g = λ D g. `spectrum` is the full sorted spectrum for
/// the dense method and the computed bottom of it otherwise.
struct SpectralReport {
  double lambda = 0.0;
  std::vector<double> spectrum;
  bool connected = false;
  SpectralMethod method = SpectralMethod::Dense;
};

/// Graphs up to this many vertices are solved densely.
inline constexpr std::size_t kDenseLimit = 4096;

/// Second-smallest eigenvalue of L g = λ D g. Loops add to D but not to L;
/// parallel edges are summed. Disconnected graphs give λ = 0. Isolated
/// vertices of weight 0 are allowed (they disconnect the graph).
SpectralReport scalar_spectral_gap(const WeightedGraph& graph);

/// A nonconstant g with L g = λ D g for λ = the spectral gap (connected graphs, dense sizes).
std::vector<double> gap_eigenvector(const WeightedGraph& graph);

/// ½|1 − e^{2iπ/k}|² = 1 − cos(2π/k).
double cycle_gap_closed_form(std::size_t k);

/// E(g) = Σ_e m(e) d(g(u), g(v))².
double graph_energy(const WeightedGraph& graph, const VertexMap& g);

/// E(g) / d(g, bar g)², the distance weighted by m(c).
double rayleigh_quotient(const WeightedGraph& graph, const VertexMap& g);

/// E(g) / F(g) with F(g) = 1/(2m(∅)) Σ_{c,c'} m(c) m(c') d(g(c), g(c'))².
double gromov_rayleigh(const WeightedGraph& graph, const VertexMap& g);

/// 1 − (tr P^{2k} − 1)^{1/2k}, clamped at 0, where P is the random-walk matrix.
/// A lower bound on the spectral gap computed without any eigensolver.
double trace_method_gap_bound(const WeightedGraph& graph, unsigned k);

}  // namespace garland
