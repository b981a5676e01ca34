#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "garland/cat0.hpp"
#include "garland/complex.hpp"
#include "garland/harmonic.hpp"
#include "garland/incidence.hpp"
#include "garland/randomgen.hpp"
#include "garland/spectral.hpp"
#include "garland/wirtinger.hpp"

namespace garland {

using Json = nlohmann::ordered_json;

// Line-oriented text format, `#` starts a comment:
//   graph | complex | tree      header
//   v N                         vertices 0..N-1
//   e u v [w]                   edge (graph, tree); w is a weight or a length
//   t u v x [w]                 face (complex); lower weights are propagated
// Errors carry "<source>:<line>: ".

struct TextInput {
  enum class Kind { Graph, Complex, Tree } kind = Kind::Graph;
  WeightedGraph graph;
  WeightedComplex complex;
  std::shared_ptr<const MetricTree> tree;
};

TextInput parse_text(const std::string& text, const std::string& source = "<input>");
TextInput read_text_file(const std::string& path);
std::string read_file(const std::string& path);

WeightedGraph parse_graph(const std::string& text, const std::string& source = "<input>");
WeightedComplex parse_complex(const std::string& text, const std::string& source = "<input>");
MetricTree parse_tree(const std::string& text, const std::string& source = "<input>");

std::string to_text(const WeightedGraph& graph);
std::string to_text(const WeightedComplex& complex);
std::string to_text(const MetricTree& tree);

// JSON. Spaces: {"type": "euclidean", "dim": n} | {"type": "tree", "vertices": N,
// "edges": [[u, v, length], ...]} | {"type": "product", "factors": [...]}.
// Points are tagged: {"euclidean": [...]}, {"tree": {"vertex": v}} or
// {"tree": {"edge": e, "offset": t}}, {"product": [...]}; a bare number array
// is accepted as a Euclidean point.

Json to_json(const TargetSpace& space);
TargetSpace space_from_json(const Json& j);
Json to_json(const TargetPoint& point);
TargetPoint point_from_json(const TargetSpace& space, const Json& j);

/// {"space": ..., "points": [...]}
Json to_json(const VertexMap& map);
VertexMap map_from_json(const Json& j);

/// {"dim": n, "values": [[...] per edge in stored order]} or
/// {"dim": n, "edges": [{"from": u, "to": v, "value": [...]}, ...]}.
Json to_json(const WeightedComplex& complex, const EdgeCocycle& cocycle);
EdgeCocycle cocycle_from_json(const WeightedComplex& complex, const Json& j);

/// {"k": k, "loops": [[...], ...]} or a bare list of loops.
LoopFamily family_from_json(const Json& j);

Json to_json(const WeightedGraph& graph);
Json to_json(const WeightedComplex& complex);

Json to_json(const SpectralReport& report);
Json to_json(const GarlandIdentityReport& report);
Json to_json(const GarlandInequalityReport& report);
Json to_json(const CertificateReport& report);
Json to_json(const FlowTrace& trace);
Json to_json(const WirtingerReport& report);
Json to_json(const LoopCertificate& report);
Json to_json(const AveragedCertificate& report);
Json to_json(const GeneralizedTriangleReport& report);
Json to_json(const BuildingCensus& report);
Json to_json(const FeitHigmanReport& report);
Json to_json(const SpectralStatistics& report);
Json to_json(const Presentation& pres);
Json to_json(const ZukVerdict& verdict);

}  // namespace garland
