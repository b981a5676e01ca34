#include "garland_lab.h"

#include <cmath>
#include <cstring>
#include <string>

#include "garland/error.hpp"
#include "garland/io.hpp"
#include "garland/parallel.hpp"

using namespace garland;

struct gl_graph {
  WeightedGraph value;
};

struct gl_complex {
  WeightedComplex value;
};

namespace {

constexpr const char* kVersion = "1.0.0";

thread_local std::string last_error;

gl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GL_ERR_INVALID_ARGUMENT;
    case ErrorCode::Domain: return GL_ERR_DOMAIN;
    case ErrorCode::Parse: return GL_ERR_PARSE;
    case ErrorCode::Inconsistent: return GL_ERR_INCONSISTENT;
    case ErrorCode::Io: return GL_ERR_IO;
  }
  return GL_ERR_INTERNAL;
}

template <class Fn>
gl_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return GL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return GL_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return GL_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = copy_string(j.dump()); }

template <class T>
void need(T* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string("null ") + what);
}

Json parse_json(const char* text, const char* what) {
  need(text, what);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

template <class T>
T option(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::Parse, std::string("option '") + key + "' has the wrong type");
  }
}

std::optional<EdgeCocycle> optional_cocycle(const WeightedComplex& complex, const char* cocycle_json) {
  if (cocycle_json == nullptr) return std::nullopt;
  return cocycle_from_json(complex, parse_json(cocycle_json, "cocycle"));
}

VertexMap map_or_harmonic(const WeightedComplex& complex, const char* map_json,
                          const std::optional<EdgeCocycle>& cocycle) {
  if (map_json != nullptr) return map_from_json(parse_json(map_json, "map"));
  require(cocycle.has_value(), ErrorCode::InvalidArgument, "need a map or a cocycle");
  return solve_twisted_harmonic(complex, *cocycle);
}

LinkRule link_rule_of(const std::string& name) {
  if (name == "geometric") return LinkRule::Geometric;
  if (name == "literal") return LinkRule::Literal;
  fail(ErrorCode::InvalidArgument, "unknown link rule '" + name + "'");
}

}  // namespace

extern "C" {

const char* gl_version(void) { return kVersion; }

const char* gl_last_error(void) { return last_error.c_str(); }

const char* gl_status_name(gl_status status) {
  switch (status) {
    case GL_OK: return "ok";
    case GL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GL_ERR_DOMAIN: return "domain error";
    case GL_ERR_PARSE: return "parse error";
    case GL_ERR_INCONSISTENT: return "inconsistent data";
    case GL_ERR_IO: return "i/o error";
    case GL_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void gl_string_free(char* s) { std::free(s); }

gl_status gl_graph_parse(const char* text, gl_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output");
    *out = new gl_graph{parse_graph(text)};
  });
}

gl_status gl_graph_load(const char* path, gl_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    *out = new gl_graph{parse_graph(read_file(path), path)};
  });
}

gl_status gl_graph_catalog(const char* name, size_t param, gl_graph** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    const std::string n = name;
    if (n == "cycle") {
      *out = new gl_graph{cycle_graph(param)};
    } else if (n == "incidence") {
      *out = new gl_graph{projective_plane_incidence(static_cast<unsigned>(param)).graph};
    } else {
      fail(ErrorCode::InvalidArgument, "unknown graph '" + n + "'");
    }
  });
}

gl_status gl_graph_to_text(const gl_graph* graph, char** out) {
  return guarded([&] {
    need(graph, "graph");
    *out = copy_string(to_text(graph->value));
  });
}

size_t gl_graph_vertex_count(const gl_graph* graph) { return graph ? graph->value.vertex_count() : 0; }

void gl_graph_free(gl_graph* graph) { delete graph; }

gl_status gl_complex_parse(const char* text, gl_complex** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output");
    *out = new gl_complex{parse_complex(text)};
  });
}

gl_status gl_complex_load(const char* path, gl_complex** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    *out = new gl_complex{parse_complex(read_file(path), path)};
  });
}

gl_status gl_complex_catalog(const char* name, gl_complex** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    const std::string n = name;
    if (n == "torus") *out = new gl_complex{torus_triangulation()};
    else if (n == "tetrahedron") *out = new gl_complex{tetrahedron_boundary()};
    else if (n == "octahedron") *out = new gl_complex{octahedron_boundary()};
    else if (n == "icosahedron") *out = new gl_complex{icosahedron_boundary()};
    else fail(ErrorCode::InvalidArgument, "unknown complex '" + n + "'");
  });
}

gl_status gl_complex_to_text(const gl_complex* complex, char** out) {
  return guarded([&] {
    need(complex, "complex");
    *out = copy_string(to_text(complex->value));
  });
}

size_t gl_complex_vertex_count(const gl_complex* complex) { return complex ? complex->value.vertex_count() : 0; }

gl_status gl_complex_link(const gl_complex* complex, size_t x, gl_graph** out) {
  return guarded([&] {
    need(complex, "complex");
    require(x < complex->value.vertex_count(), ErrorCode::InvalidArgument, "vertex out of range");
    *out = new gl_graph{link_of(complex->value, x).graph};
  });
}

void gl_complex_free(gl_complex* complex) { delete complex; }

gl_status gl_graph_validate(const gl_graph* graph, char** out) {
  return guarded([&] {
    need(graph, "graph");
    emit(Json{{"violations", validate(graph->value)}}, out);
  });
}

gl_status gl_complex_validate(const gl_complex* complex, char** out) {
  return guarded([&] {
    need(complex, "complex");
    emit(Json{{"violations", validate(complex->value)}}, out);
  });
}

gl_status gl_spectral_gap(const gl_graph* graph, char** out) {
  return guarded([&] {
    need(graph, "graph");
    emit(to_json(scalar_spectral_gap(graph->value)), out);
  });
}

gl_status gl_cycle_gap_closed_form(size_t k, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = cycle_gap_closed_form(k);
  });
}

gl_status gl_trace_bound(const gl_graph* graph, unsigned k, double* out) {
  return guarded([&] {
    need(graph, "graph");
    need(out, "output");
    *out = trace_method_gap_bound(graph->value, k);
  });
}

gl_status gl_rayleigh(const gl_graph* graph, const char* map_json, char** out) {
  return guarded([&] {
    need(graph, "graph");
    const VertexMap g = map_from_json(parse_json(map_json, "map"));
    emit(Json{{"energy", graph_energy(graph->value, g)},
              {"rayleigh", rayleigh_quotient(graph->value, g)},
              {"gromov_rayleigh", gromov_rayleigh(graph->value, g)}},
         out);
  });
}

gl_status gl_certify(const gl_complex* complex, const char* target, double delta, unsigned jobs, char** out,
                     int* granted) {
  return guarded([&] {
    need(complex, "complex");
    need(target, "target");
    const std::string t = target;
    TargetClass cls;
    if (t == "hilbert") cls = TargetClass::Hilbert;
    else if (t == "in") cls = TargetClass::InBounded;
    else fail(ErrorCode::InvalidArgument, "unknown target class '" + t + "'");
    const CertificateReport r = fixed_point_certificate(complex->value, cls, delta, jobs);
    if (granted) *granted = r.granted ? 1 : 0;
    emit(to_json(r), out);
  });
}

gl_status gl_solve_harmonic(const gl_complex* complex, const char* cocycle_json, char** out) {
  return guarded([&] {
    need(complex, "complex");
    const EdgeCocycle c = cocycle_from_json(complex->value, parse_json(cocycle_json, "cocycle"));
    emit(to_json(solve_twisted_harmonic(complex->value, c)), out);
  });
}

gl_status gl_torus_lattice_cocycle(char** out) {
  return guarded([&] { emit(to_json(torus_triangulation(), torus_lattice_cocycle()), out); });
}

gl_status gl_garland_identity(const gl_complex* complex, const char* map_json, const char* cocycle_json, char** out) {
  return guarded([&] {
    need(complex, "complex");
    const auto cocycle = optional_cocycle(complex->value, cocycle_json);
    const VertexMap f = map_or_harmonic(complex->value, map_json, cocycle);
    emit(to_json(garland_identity_check(complex->value, f, cocycle ? &*cocycle : nullptr)), out);
  });
}

gl_status gl_garland_inequality(const gl_complex* complex, const char* map_json, const char* cocycle_json,
                                double lambda, char** out) {
  return guarded([&] {
    need(complex, "complex");
    const auto cocycle = optional_cocycle(complex->value, cocycle_json);
    const VertexMap f = map_or_harmonic(complex->value, map_json, cocycle);
    if (std::isnan(lambda)) lambda = fixed_point_certificate(complex->value, TargetClass::Hilbert).min_gap;
    emit(to_json(garland_inequality_check(complex->value, f, lambda, cocycle ? &*cocycle : nullptr)), out);
  });
}

gl_status gl_random_map(const char* space_json, size_t vertex_count, uint64_t seed, char** out) {
  return guarded([&] {
    const TargetSpace space = space_from_json(parse_json(space_json, "space"));
    SplitMix64 rng(seed);
    emit(to_json(random_map(space, vertex_count, rng)), out);
  });
}

gl_status gl_flow(const gl_complex* complex, const char* map_json, const char* cocycle_json,
                  const char* options_json, char** out) {
  return guarded([&] {
    need(complex, "complex");
    const auto cocycle = optional_cocycle(complex->value, cocycle_json);
    const VertexMap start = map_from_json(parse_json(map_json, "map"));
    const Json opts = options_json ? parse_json(options_json, "options") : Json::object();
    FlowOptions o;
    o.eta = option(opts, "eta", o.eta);
    o.iterations = option(opts, "iterations", o.iterations);
    o.energy_floor = option(opts, "energy_floor", o.energy_floor);
    o.jobs = option(opts, "jobs", o.jobs);
    emit(to_json(mayer_flow(complex->value, start, o, cocycle ? &*cocycle : nullptr)), out);
  });
}

gl_status gl_wirtinger_check(const char* map_json, char** out, int* all_pass) {
  return guarded([&] {
    const WirtingerReport r = wir_check(map_from_json(parse_json(map_json, "map")));
    if (all_pass) *all_pass = r.all_pass ? 1 : 0;
    emit(to_json(r), out);
  });
}

gl_status gl_regular_polygon_map(size_t k, char** out) {
  return guarded([&] {
    require(k >= 3, ErrorCode::Domain, "polygon needs k >= 3");
    VertexMap g{TargetSpace::euclidean(2), {}};
    for (size_t c = 0; c < k; ++c) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
      g.points.push_back(std::vector<double>{std::cos(theta), std::sin(theta)});
    }
    emit(to_json(g), out);
  });
}

gl_status gl_wirtinger_constant(size_t k, size_t j, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = wirtinger_constant(k, j);
  });
}

gl_status gl_loop_certificate(const gl_graph* graph, const char* family_json, char** out, int* above_half) {
  return guarded([&] {
    need(graph, "graph");
    const LoopCertificate c = loop_family_certificate(graph->value, family_from_json(parse_json(family_json, "family")));
    if (above_half) *above_half = c.above_half ? 1 : 0;
    emit(to_json(c), out);
  });
}

gl_status gl_averaged_certificate(const gl_graph* graph, const char* family_json, char** out) {
  return guarded([&] {
    need(graph, "graph");
    const LoopFamily f = family_from_json(parse_json(family_json, "family"));
    emit(to_json(averaged_regular_certificate(graph->value, f.loops)), out);
  });
}

gl_status gl_enumerate_cycles(const gl_graph* graph, size_t length, char** out) {
  return guarded([&] {
    need(graph, "graph");
    emit(Json{{"k", length}, {"loops", enumerate_cycles(graph->value, length)}}, out);
  });
}

gl_status gl_incidence_summary(unsigned p, char** out) {
  return guarded([&] {
    const IncidenceGraph inc = projective_plane_incidence(p);
    const SpectralReport s = scalar_spectral_gap(inc.graph);
    const GeneralizedTriangleReport gt = generalized_triangle_check(inc.graph, 1u << 20);
    emit(Json{{"p", p},
              {"vertices", inc.graph.vertex_count()},
              {"edges", inc.graph.edge_count()},
              {"valence", inc.graph.max_degree()},
              {"lambda", s.lambda},
              {"generalized_triangle", to_json(gt)}},
         out);
  });
}

gl_status gl_incidence_census(unsigned p, char** out) {
  return guarded([&] { emit(to_json(building_embedding_rq(p)), out); });
}

gl_status gl_feit_higman(unsigned p, char** out) {
  return guarded([&] { emit(to_json(feit_higman_compare(p)), out); });
}

gl_status gl_generalized_triangle_check(const gl_graph* graph, char** out) {
  return guarded([&] {
    need(graph, "graph");
    emit(to_json(generalized_triangle_check(graph->value)), out);
  });
}

gl_status gl_random_graph(const char* options_json, char** out) {
  return guarded([&] {
    const Json o = parse_json(options_json, "options");
    PermutationModelParams params{option<size_t>(o, "n", 0), option<size_t>(o, "d", 0), option<uint64_t>(o, "seed", 0)};
    const SpectralStatistics s =
        spectral_statistics(params, option<size_t>(o, "samples", 1), option(o, "c", 0.0),
                            option<unsigned>(o, "trace_k", 0), option<unsigned>(o, "jobs", 1));
    emit(to_json(s), out);
  });
}

gl_status gl_random_graph_sample(size_t n, size_t d, uint64_t seed, gl_graph** out) {
  return guarded([&] {
    need(out, "output");
    *out = new gl_graph{permutation_model_graph({n, d, seed})};
  });
}

gl_status gl_random_group(const char* options_json, char** out) {
  return guarded([&] {
    const Json o = parse_json(options_json, "options");
    const auto m = option<size_t>(o, "m", 0);
    const double density = option(o, "density", 0.0);
    const auto samples = option<size_t>(o, "samples", 1);
    const auto seed = option<uint64_t>(o, "seed", 0);
    const LinkRule rule = link_rule_of(option<std::string>(o, "link_rule", "geometric"));
    require(samples >= 1, ErrorCode::InvalidArgument, "need at least one sample");
    std::vector<Json> rows(samples);
    std::vector<char> certified(samples, 0);
    parallel_for(samples, option<unsigned>(o, "jobs", 1), [&](size_t i) {
      const uint64_t sub = SplitMix64::substream(seed, i);
      const Presentation pres = density_presentation(m, density, sub);
      const ZukVerdict v = zuk_verdict(pres, rule);
      certified[i] = v.certified;
      Json row = to_json(v);
      row["sample"] = i;
      row["seed"] = sub;
      if (o.value("include_relators", false)) row["presentation"] = to_json(pres);
      rows[i] = std::move(row);
    });
    size_t count = 0;
    for (char c : certified) count += c ? 1 : 0;
    emit(Json{{"m", m},
              {"density", density},
              {"relator_count", relator_count(m, density)},
              {"pool_size", cyclically_reduced_words(m).size()},
              {"link_rule", to_string(rule)},
              {"samples", samples},
              {"certified", count},
              {"certified_fraction", static_cast<double>(count) / static_cast<double>(samples)},
              {"per_sample", rows}},
         out);
  });
}

gl_status gl_presentation_link(const char* presentation_json, const char* link_rule, gl_graph** out) {
  return guarded([&] {
    const Json j = parse_json(presentation_json, "presentation");
    Presentation pres;
    pres.m = option<size_t>(j, "m", 0);
    pres.relators = option<std::vector<Relator>>(j, "relators", {});
    *out = new gl_graph{link_graph_of_presentation(pres, link_rule_of(link_rule ? link_rule : "geometric"))};
  });
}

gl_status gl_in_bounds(const char* options_json, char** out) {
  return guarded([&] {
    const Json o = parse_json(options_json, "options");
    Json r = Json::object();
    if (o.contains("p")) {
      const double p = option(o, "p", 0.0);
      r["p"] = p;
      r["in_lower_bound"] = in_lower_bound_building(p);
    }
    if (o.contains("in")) {
      const double in = option(o, "in", 0.0);
      require(in >= 0.0 && in < 1.0, ErrorCode::Domain, "IN bound must lie in [0, 1)");
      r["in"] = in;
      r["fixed_point_threshold"] = 1.0 / (2.0 * (1.0 - in));
      if (o.contains("lambda")) {
        const double lambda = option(o, "lambda", 0.0);
        r["lambda"] = lambda;
        r["gap_bound"] = gap_bound_from_in(lambda, in);
      }
    }
    if (o.contains("space")) {
      const TargetSpace space = space_from_json(o.at("space"));
      WeightedPointSet pts;
      for (const auto& p : o.at("points")) pts.points.push_back(point_from_json(space, p));
      pts.weights = option<std::vector<double>>(o, "weights", std::vector<double>(pts.size(), 1.0 / pts.size()));
      std::vector<std::vector<double>> phi;
      if (o.contains("phi") && o.at("phi").is_array()) {
        phi = o.at("phi").get<std::vector<std::vector<double>>>();
      } else {
        // Polygon-closing re-embedding (tree targets).
        const MetricTree* tree = space.as_tree();
        require(tree != nullptr, ErrorCode::InvalidArgument, "phi must be given unless the space is a tree");
        const TargetPoint bar = barycenter(space, pts);
        const StarData star = tangent_cone_star(*tree, bar.tree_point(), pts);
        const auto dirs = polygon_closing_embedding(star);
        for (size_t i = 0; i < pts.size(); ++i) {
          const size_t b = star.point_branch[i];
          const double rad = star.point_radius[i];
          phi.push_back(b == StarData::kNullBranch ? std::vector<double>{0.0, 0.0}
                                                   : std::vector<double>{rad * dirs[b][0], rad * dirs[b][1]});
        }
        r["phi"] = phi;
      }
      r["ratio"] = izeki_nayatani_ratio(space, pts, phi);
    }
    require(!r.empty(), ErrorCode::InvalidArgument, "nothing to evaluate: give p, in (and lambda), or space/points");
    emit(r, out);
  });
}

}  // extern "C"
