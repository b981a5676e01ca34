#include "garland/vertex_map.hpp"

#include <string>

#include "garland/error.hpp"

namespace garland {

void check_map(const VertexMap& map, std::size_t vertex_count) {
  require(map.points.size() == vertex_count, ErrorCode::InvalidArgument,
          "map assigns " + std::to_string(map.points.size()) + " points to " + std::to_string(vertex_count) +
              " vertices");
  for (const auto& p : map.points) check_point(map.space, p);
}

TargetPoint random_point(const TargetSpace& space, SplitMix64& rng) {
  if (const auto* e = space.as_euclidean()) {
    std::vector<double> c(e->dim);
    for (double& x : c) x = rng.normal();
    return c;
  }
  if (const MetricTree* tree = space.as_tree()) {
    if (tree->edges().empty()) return TreePoint::at(0);
    const auto edge = static_cast<std::size_t>(rng.below(tree->edges().size()));
    return TreePoint::on(*tree, edge, rng.uniform() * tree->length(edge));
  }
  TargetPoint::Members members;
  for (const auto& factor : space.as_product()->factors) members.push_back(random_point(factor, rng));
  return members;
}

VertexMap random_map(const TargetSpace& space, std::size_t vertex_count, SplitMix64& rng) {
  VertexMap map{space, {}};
  for (std::size_t i = 0; i < vertex_count; ++i) map.points.push_back(random_point(space, rng));
  return map;
}

MetricTree random_tree(std::size_t edge_count, SplitMix64& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= edge_count; ++v) {
    edges.push_back({static_cast<Vertex>(rng.below(v)), v, rng.uniform(0.5, 2.0)});
  }
  return MetricTree(edge_count + 1, std::move(edges));
}

}  // namespace garland
