#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "garland/complex.hpp"
#include "garland/spectral.hpp"

namespace garland {

struct PermutationModelParams {
  std::size_t n = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;
};

/// 2d-regular multigraph: d uniform permutations σ_i (Fisher-Yates on
/// SplitMix64(seed)), one edge {s, σ_i(s)} per i and s, loops at fixed points.
WeightedGraph permutation_model_graph(const PermutationModelParams& params);

struct SpectralStatistics {
  PermutationModelParams params;
  std::size_t samples = 0;
  double friedman_c = 0.0;
  std::vector<double> lambdas;        // per sample
  std::vector<double> trace_bounds;   // per sample, when requested
  unsigned trace_k = 0;
  double mean = 0.0, min = 0.0, max = 0.0, variance = 0.0;
  /// 1 − (√(2d−1)/d + log(2d)/(2d) + c/d).
  double friedman_threshold = 0.0;
  double fraction_above_threshold = 0.0;
  /// 1 − 2√(2d−1)/(2d).
  double tree_reference = 0.0;
};

/// Sample i uses seed SplitMix64::substream(params.seed, i). With trace_k > 0
/// the trace-method bound is computed for every sample as well.
SpectralStatistics spectral_statistics(const PermutationModelParams& params, std::size_t samples, double friedman_c,
                                       unsigned trace_k = 0, unsigned jobs = 1);

/// Letters are ±(i+1) for generator s_i and its inverse.
using Letter = int;
using Relator = std::array<Letter, 3>;

struct Presentation {
  std::size_t m = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::vector<Relator> relators;  // sorted
};

/// Cyclically reduced words of length 3 over m generators, in lexicographic
/// letter order (−m..−1, 1..m).
std::vector<Relator> cyclically_reduced_words(std::size_t m);

/// round((2m/(2m−1))·(2m−1)^{3d}), ties rounded up.
std::size_t relator_count(std::size_t m, double density);

/// N distinct cyclically reduced words drawn uniformly without replacement.
Presentation density_presentation(std::size_t m, double density, std::uint64_t seed);

/// Throws unless every relator is reduced, cyclically reduced and distinct.
void check_presentation(const Presentation& pres);

std::string letter_name(Letter x, std::size_t m);
std::string relator_name(const Relator& r, std::size_t m);

/// Vertex of L(S,R) for a letter: s_i ↦ 2i, s_i⁻¹ ↦ 2i + 1.
Vertex letter_vertex(Letter x);

/// How a relator xyz contributes edges to L(S,R).
///   Geometric: the three corners of the relator triangle, {x⁻¹, y}, {y⁻¹, z}, {z⁻¹, x}
///              (the pattern z⁻¹z'z'' matched against every cyclic rotation).
///   Literal:   the three patterns z⁻¹z'z'', z'⁻¹z''z, z''⁻¹zz' matched against
///              the word as written, giving {x⁻¹, y}, {z, x⁻¹}, {y, z}.
enum class LinkRule { Geometric, Literal };

std::string to_string(LinkRule rule);

/// Link graph L(S,R) on S ∪ S⁻¹; multiplicities accumulate across relators.
WeightedGraph link_graph_of_presentation(const Presentation& pres, LinkRule rule = LinkRule::Geometric);

struct ZukVerdict {
  std::size_t m = 0;
  std::size_t relators = 0;
  bool connected = false;
  double lambda = 0.0;
  bool certified = false;  // connected and λ > ½
};

ZukVerdict zuk_verdict(const Presentation& pres, LinkRule rule = LinkRule::Geometric);

}  // namespace garland
