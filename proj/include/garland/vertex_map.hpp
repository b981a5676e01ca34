#pragma once

#include <vector>

#include "garland/cat0.hpp"
#include "garland/rng.hpp"

namespace garland {

/// Assignment vertex → point of a fixed target space. The vertex set is that
/// of whatever graph or complex the map is evaluated on.
struct VertexMap {
  TargetSpace space;
  std::vector<TargetPoint> points;

  std::size_t size() const { return points.size(); }
};

/// Throws unless every point belongs to `map.space` and there are `vertex_count` of them.
void check_map(const VertexMap& map, std::size_t vertex_count);

/// Random point: standard normal coordinates, a uniform edge and offset of a
/// tree, componentwise for products.
TargetPoint random_point(const TargetSpace& space, SplitMix64& rng);
VertexMap random_map(const TargetSpace& space, std::size_t vertex_count, SplitMix64& rng);

/// Random recursive tree with `edge_count` edges and lengths uniform in [0.5, 2].
MetricTree random_tree(std::size_t edge_count, SplitMix64& rng);

}  // namespace garland
