#include "garland/io.hpp"

#include <fstream>
#include <sstream>

#include "garland/error.hpp"

namespace garland {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
  fail(ErrorCode::Parse, source + ":" + std::to_string(line) + ": " + what);
}

std::size_t parse_index(const std::string& token, const std::string& source, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &pos);
  } catch (const std::exception&) {
    parse_fail(source, line, "expected a vertex index, got '" + token + "'");
  }
  if (pos != token.size() || token.front() == '-') parse_fail(source, line, "expected a vertex index, got '" + token + "'");
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& token, const std::string& source, std::size_t line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    parse_fail(source, line, "expected a number, got '" + token + "'");
  }
  if (pos != token.size() || !std::isfinite(value)) parse_fail(source, line, "expected a number, got '" + token + "'");
  return value;
}

}  // namespace

TextInput parse_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::optional<std::size_t> vertex_count;
  TextInput out;
  std::vector<Edge> edges;
  std::vector<Face> faces;

  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 1) parse_fail(source, line_no, "expected a header line 'graph', 'complex' or 'tree'");
      if (tok[0] == "graph") out.kind = TextInput::Kind::Graph;
      else if (tok[0] == "complex") out.kind = TextInput::Kind::Complex;
      else if (tok[0] == "tree") out.kind = TextInput::Kind::Tree;
      else parse_fail(source, line_no, "unknown header '" + tok[0] + "'");
      have_header = true;
      continue;
    }
    const std::string& key = tok[0];
    if (key == "v") {
      if (tok.size() != 2) parse_fail(source, line_no, "expected 'v N'");
      if (vertex_count) parse_fail(source, line_no, "vertex count declared twice");
      vertex_count = parse_index(tok[1], source, line_no);
      continue;
    }
    if (!vertex_count) parse_fail(source, line_no, "'" + key + "' before the 'v N' line");
    auto vertex = [&](const std::string& t) {
      const std::size_t v = parse_index(t, source, line_no);
      if (v >= *vertex_count) {
        parse_fail(source, line_no, "vertex " + std::to_string(v) + " out of range (v " + std::to_string(*vertex_count) + ")");
      }
      return v;
    };
    if (key == "e") {
      if (out.kind == TextInput::Kind::Complex) {
        parse_fail(source, line_no, "complex files list faces only; edge weights are derived from them");
      }
      if (tok.size() != 3 && tok.size() != 4) parse_fail(source, line_no, "expected 'e u v [w]'");
      const double w = tok.size() == 4 ? parse_real(tok[3], source, line_no) : 1.0;
      if (w <= 0.0) parse_fail(source, line_no, "edge weight must be positive");
      edges.push_back({vertex(tok[1]), vertex(tok[2]), w});
    } else if (key == "t") {
      if (out.kind != TextInput::Kind::Complex) parse_fail(source, line_no, "faces are only allowed in complex files");
      if (tok.size() != 4 && tok.size() != 5) parse_fail(source, line_no, "expected 't u v x [w]'");
      const double w = tok.size() == 5 ? parse_real(tok[4], source, line_no) : 1.0;
      if (w <= 0.0) parse_fail(source, line_no, "face weight must be positive");
      faces.push_back({{vertex(tok[1]), vertex(tok[2]), vertex(tok[3])}, w});
    } else {
      parse_fail(source, line_no, "unknown record '" + key + "'");
    }
  }
  if (!have_header) parse_fail(source, line_no, "empty input");
  if (!vertex_count) parse_fail(source, line_no, "missing 'v N' line");

  try {
    switch (out.kind) {
      case TextInput::Kind::Graph: out.graph = WeightedGraph(*vertex_count, std::move(edges)); break;
      case TextInput::Kind::Complex: out.complex = propagate_weights(*vertex_count, std::move(faces)); break;
      case TextInput::Kind::Tree: out.tree = std::make_shared<const MetricTree>(*vertex_count, std::move(edges)); break;
    }
  } catch (const Error& e) {
    fail(ErrorCode::Parse, source + ": " + e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TextInput read_text_file(const std::string& path) { return parse_text(read_file(path), path); }

WeightedGraph parse_graph(const std::string& text, const std::string& source) {
  TextInput in = parse_text(text, source);
  if (in.kind == TextInput::Kind::Complex) return in.complex.skeleton();
  if (in.kind == TextInput::Kind::Tree) return WeightedGraph(in.tree->vertex_count(), in.tree->edges());
  return in.graph;
}

WeightedComplex parse_complex(const std::string& text, const std::string& source) {
  TextInput in = parse_text(text, source);
  require(in.kind == TextInput::Kind::Complex, ErrorCode::Parse, source + ": expected a 'complex' file");
  return in.complex;
}

MetricTree parse_tree(const std::string& text, const std::string& source) {
  TextInput in = parse_text(text, source);
  require(in.kind == TextInput::Kind::Tree, ErrorCode::Parse, source + ": expected a 'tree' file");
  return *in.tree;
}

namespace {

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string to_text(const WeightedGraph& graph) {
  std::ostringstream os;
  os << "graph\nv " << graph.vertex_count() << "\n";
  for (const Edge& e : graph.edges()) os << "e " << e.u << " " << e.v << " " << number(e.weight) << "\n";
  return os.str();
}

std::string to_text(const WeightedComplex& complex) {
  std::ostringstream os;
  os << "complex\nv " << complex.vertex_count() << "\n";
  for (const Face& f : complex.faces()) {
    os << "t " << f.vertices[0] << " " << f.vertices[1] << " " << f.vertices[2] << " " << number(f.weight) << "\n";
  }
  return os.str();
}

std::string to_text(const MetricTree& tree) {
  std::ostringstream os;
  os << "tree\nv " << tree.vertex_count() << "\n";
  for (const Edge& e : tree.edges()) os << "e " << e.u << " " << e.v << " " << number(e.weight) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------- JSON

namespace {

[[noreturn]] void json_fail(const std::string& what) { fail(ErrorCode::Parse, what); }

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) json_fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    json_fail(std::string("field '") + key + "' has the wrong type");
  }
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

Json to_json(const TargetSpace& space) {
  if (const auto* e = space.as_euclidean()) return {{"type", "euclidean"}, {"dim", e->dim}};
  if (const MetricTree* t = space.as_tree()) {
    Json edges = Json::array();
    for (const Edge& e : t->edges()) edges.push_back({e.u, e.v, e.weight});
    return {{"type", "tree"}, {"vertices", t->vertex_count()}, {"edges", edges}};
  }
  Json factors = Json::array();
  for (const auto& f : space.as_product()->factors) factors.push_back(to_json(f));
  return {{"type", "product"}, {"factors", factors}};
}

TargetSpace space_from_json(const Json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "euclidean") return TargetSpace::euclidean(get<std::size_t>(j, "dim"));
  if (type == "tree") {
    std::vector<Edge> edges;
    for (const auto& e : get<Json>(j, "edges")) {
      if (!e.is_array() || e.size() != 3) json_fail("tree edges must be [u, v, length]");
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    }
    return TargetSpace::tree(std::make_shared<const MetricTree>(get<std::size_t>(j, "vertices"), std::move(edges)));
  }
  if (type == "product") {
    std::vector<TargetSpace> factors;
    for (const auto& f : get<Json>(j, "factors")) factors.push_back(space_from_json(f));
    return TargetSpace::product(std::move(factors));
  }
  json_fail("unknown space type '" + type + "'");
}

Json to_json(const TargetPoint& point) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TargetPoint::Coordinates>) {
          return {{"euclidean", v}};
        } else if constexpr (std::is_same_v<T, TreePoint>) {
          if (v.at_vertex()) return {{"tree", {{"vertex", v.vertex}}}};
          return {{"tree", {{"edge", v.edge}, {"offset", v.offset}}}};
        } else {
          Json members = Json::array();
          for (const auto& m : v) members.push_back(to_json(m));
          return {{"product", members}};
        }
      },
      point.value());
}

TargetPoint point_from_json(const TargetSpace& space, const Json& j) {
  TargetPoint p;
  if (space.as_euclidean()) {
    const Json& c = j.is_array() ? j : get<Json>(j, "euclidean");
    try {
      p = c.get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      json_fail("Euclidean point must be a list of numbers");
    }
  } else if (const MetricTree* tree = space.as_tree()) {
    const Json t = get<Json>(j, "tree");
    if (t.contains("vertex")) {
      p = TreePoint::at(get<std::size_t>(t, "vertex"));
    } else {
      p = TreePoint::on(*tree, get<std::size_t>(t, "edge"), get<double>(t, "offset"));
    }
  } else {
    const auto& factors = space.as_product()->factors;
    const Json m = get<Json>(j, "product");
    if (!m.is_array() || m.size() != factors.size()) json_fail("product point arity mismatch");
    TargetPoint::Members members;
    for (std::size_t i = 0; i < factors.size(); ++i) members.push_back(point_from_json(factors[i], m[i]));
    p = std::move(members);
  }
  check_point(space, p);
  return p;
}

Json to_json(const VertexMap& map) {
  Json points = Json::array();
  for (const auto& p : map.points) points.push_back(to_json(p));
  return {{"space", to_json(map.space)}, {"points", points}};
}

VertexMap map_from_json(const Json& j) {
  VertexMap map{space_from_json(get<Json>(j, "space")), {}};
  for (const auto& p : get<Json>(j, "points")) map.points.push_back(point_from_json(map.space, p));
  return map;
}

Json to_json(const WeightedComplex& complex, const EdgeCocycle& cocycle) {
  Json edges = Json::array();
  for (std::size_t i = 0; i < complex.edges().size(); ++i) {
    edges.push_back({{"from", complex.edges()[i].u}, {"to", complex.edges()[i].v}, {"value", cocycle.values.at(i)}});
  }
  return {{"dim", cocycle.dim}, {"edges", edges}};
}

EdgeCocycle cocycle_from_json(const WeightedComplex& complex, const Json& j) {
  EdgeCocycle c{get<std::size_t>(j, "dim"), {}};
  if (j.contains("values")) {
    c.values = get<std::vector<std::vector<double>>>(j, "values");
  } else {
    c.values.assign(complex.edges().size(), {});
    for (const auto& e : get<Json>(j, "edges")) {
      const auto from = get<std::size_t>(e, "from"), to = get<std::size_t>(e, "to");
      const auto idx = complex.edge_index(from, to);
      if (!idx) json_fail("cocycle names a non-edge " + std::to_string(from) + "-" + std::to_string(to));
      if (!c.values[*idx].empty()) json_fail("cocycle lists edge " + std::to_string(from) + "-" + std::to_string(to) + " twice");
      auto v = get<std::vector<double>>(e, "value");
      if (complex.edges()[*idx].u != from) {
        for (double& x : v) x = -x;
      }
      c.values[*idx] = std::move(v);
    }
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      if (c.values[i].empty()) {
        json_fail("cocycle misses edge " + std::to_string(complex.edges()[i].u) + "-" + std::to_string(complex.edges()[i].v));
      }
    }
  }
  check_cocycle(complex, c);
  return c;
}

LoopFamily family_from_json(const Json& j) {
  LoopFamily f;
  try {
    if (j.is_array()) {
      f.loops = j.get<std::vector<std::vector<Vertex>>>();
    } else {
      f.loops = get<std::vector<std::vector<Vertex>>>(j, "loops");
      if (j.contains("k")) f.k = get<std::size_t>(j, "k");
    }
  } catch (const nlohmann::json::exception&) {
    json_fail("loop family must be a list of vertex lists");
  }
  // Accept loops written with the first vertex repeated at the end.
  for (auto& loop : f.loops) {
    if (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
  }
  return f;
}

Json to_json(const WeightedGraph& graph) {
  Json edges = Json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v, e.weight});
  return {{"vertices", graph.vertex_count()}, {"edges", edges}, {"vertex_weights", graph.vertex_weights()}};
}

Json to_json(const WeightedComplex& complex) {
  Json faces = Json::array();
  for (const Face& f : complex.faces()) faces.push_back({f.vertices[0], f.vertices[1], f.vertices[2], f.weight});
  Json edges = Json::array();
  for (const Edge& e : complex.edges()) edges.push_back({e.u, e.v, e.weight});
  return {{"vertices", complex.vertex_count()},
          {"faces", faces},
          {"edges", edges},
          {"vertex_weights", complex.vertex_weights()}};
}

Json to_json(const SpectralReport& r) {
  return {{"lambda", r.lambda}, {"connected", r.connected}, {"method", to_string(r.method)}, {"spectrum", r.spectrum}};
}

Json to_json(const GarlandIdentityReport& r) {
  Json rqs = Json::array();
  for (const auto& x : r.link_rq) rqs.push_back(optional_number(x));
  return {{"energy", r.energy},
          {"link_energy_sum", r.link_energy_sum},
          {"ed_sum", r.ed_sum},
          {"rq_ed_sum", r.rq_ed_sum},
          {"residual_links", r.residual_links},
          {"residual_ed", r.residual_ed},
          {"residual_harmonic", r.residual_harmonic},
          {"max_laplacian", r.max_laplacian},
          {"harmonic", r.harmonic},
          {"label", r.label},
          {"link_rq", rqs}};
}

Json to_json(const GarlandInequalityReport& r) {
  return {{"lambda", r.lambda},
          {"energy", r.energy},
          {"laplacian_norm_squared", r.laplacian_norm_squared},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"slack", r.slack}};
}

Json to_json(const CertificateReport& r) {
  return {{"target", r.target == TargetClass::Hilbert ? "hilbert" : "in-bounded"},
          {"delta", r.delta},
          {"threshold", r.threshold},
          {"min_gap", r.min_gap},
          {"binding_vertex", r.binding_vertex},
          {"granted", r.granted},
          {"property_t", r.property_t},
          {"verdict", r.granted ? (r.property_t ? "fixed point certified; property (T) certified" : "fixed point certified")
                                : "refused"},
          {"link_gaps", r.link_gaps}};
}

Json to_json(const FlowTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"step", s.step}, {"energy", s.energy}, {"laplacian_norm", s.laplacian_norm}, {"eta", s.eta}});
  }
  return {{"steps", steps}, {"decay_rate", t.decay_rate}, {"final_map", to_json(t.final_map)}};
}

Json to_json(const WirtingerReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"j", t.j},
                     {"e1", t.e1},
                     {"ej", t.ej},
                     {"ratio", optional_number(t.ratio)},
                     {"bound", t.bound},
                     {"pass", t.pass},
                     {"equality", t.equality}});
  }
  return {{"k", r.k}, {"all_pass", r.all_pass}, {"affine_circle", r.affine_circle}, {"terms", terms}};
}

Json to_json(const LoopCertificate& c) {
  return {{"A", c.a},
          {"v", c.v},
          {"r", c.r},
          {"q", c.q},
          {"k", c.k},
          {"bound", c.bound},
          {"vacuous", c.vacuous},
          {"above_half", c.above_half},
          {"sparsest_pair", {c.sparsest_pair.first, c.sparsest_pair.second}}};
}

Json to_json(const AveragedCertificate& c) {
  return {{"k", c.k}, {"v", c.v}, {"total_weight", c.total_weight}, {"counts", c.counts}, {"bound", c.bound}};
}

Json to_json(const GeneralizedTriangleReport& r) {
  return {{"ok", r.ok}, {"girth", r.girth}, {"witness", r.witness}, {"reason", r.reason}};
}

Json to_json(const BuildingCensus& c) {
  return {{"p", c.p},
          {"n", c.n},
          {"d", c.d},
          {"pairs_at_distance", {c.pairs_at_1, c.pairs_at_2, c.pairs_at_3}},
          {"squared_building_distances", {1, 3, 4}},
          {"energy", c.energy},
          {"dispersion", c.dispersion},
          {"rq_gromov", c.rq_gromov},
          {"closed_form", c.closed_form},
          {"rq_standard", c.rq_standard}};
}

Json to_json(const FeitHigmanReport& r) {
  return {{"p", r.p},
          {"eigensolved", r.eigensolved},
          {"reference", r.reference},
          {"formula_q_field_order", r.formula_field_order},
          {"formula_q_valence", r.formula_valence},
          {"diff_q_field_order", r.diff_field_order},
          {"diff_q_valence", r.diff_valence}};
}

Json to_json(const SpectralStatistics& s) {
  Json j = {{"n", s.params.n},
            {"d", s.params.d},
            {"seed", s.params.seed},
            {"samples", s.samples},
            {"friedman_c", s.friedman_c},
            {"mean", s.mean},
            {"min", s.min},
            {"max", s.max},
            {"variance", s.variance},
            {"friedman_threshold", s.friedman_threshold},
            {"fraction_above_threshold", s.fraction_above_threshold},
            {"tree_reference", s.tree_reference},
            {"lambdas", s.lambdas}};
  if (s.trace_k > 0) {
    j["trace_k"] = s.trace_k;
    j["trace_bounds"] = s.trace_bounds;
  }
  return j;
}

Json to_json(const Presentation& pres) {
  Json names = Json::array();
  for (const auto& r : pres.relators) names.push_back(relator_name(r, pres.m));
  return {{"m", pres.m}, {"density", pres.density}, {"seed", pres.seed}, {"relators", pres.relators}, {"words", names}};
}

Json to_json(const ZukVerdict& v) {
  return {{"m", v.m},
          {"relators", v.relators},
          {"connected", v.connected},
          {"lambda", v.lambda},
          {"certified", v.certified},
          {"verdict", v.certified ? "(T) certified" : "not certified"}};
}

}  // namespace garland
