#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <limits>
#include <string>

#include "garland_lab.h"

using Json = nlohmann::json;

namespace {

// Takes ownership of a returned string.
Json take(char* s) {
  REQUIRE(s != nullptr);
  Json j = Json::parse(s);
  gl_string_free(s);
  return j;
}

std::string take_text(char* s) {
  std::string out(s);
  gl_string_free(s);
  return out;
}

struct Complex {
  gl_complex* h = nullptr;
  explicit Complex(const char* name) { REQUIRE(gl_complex_catalog(name, &h) == GL_OK); }
  ~Complex() { gl_complex_free(h); }
};

struct Graph {
  gl_graph* h = nullptr;
  ~Graph() { gl_graph_free(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(gl_version()) > 0);
  CHECK(std::string(gl_status_name(GL_OK)) == "ok");
  CHECK(std::string(gl_status_name(GL_ERR_PARSE)) != std::string(gl_status_name(GL_ERR_DOMAIN)));
}

TEST_CASE("errors set a status and a message") {
  gl_graph* g = nullptr;
  CHECK(gl_graph_parse("graph\nv 2\ne 0 7\n", &g) == GL_ERR_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(gl_last_error()).find("<input>:3:") != std::string::npos);
  CHECK(gl_graph_parse(nullptr, &g) == GL_ERR_INVALID_ARGUMENT);
  CHECK(gl_graph_load("/nonexistent/graph", &g) == GL_ERR_IO);
  gl_complex* c = nullptr;
  CHECK(gl_complex_catalog("klein bottle", &c) == GL_ERR_INVALID_ARGUMENT);
  CHECK(gl_graph_catalog("incidence", 4, &g) == GL_ERR_DOMAIN);
  double v = 0.0;
  CHECK(gl_cycle_gap_closed_form(2, &v) != GL_OK);
  // A successful call clears the message.
  CHECK(gl_cycle_gap_closed_form(6, &v) == GL_OK);
  CHECK(std::string(gl_last_error()).empty());
  CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("graphs through the C API") {
  Graph g;
  REQUIRE(gl_graph_catalog("cycle", 6, &g.h) == GL_OK);
  CHECK(gl_graph_vertex_count(g.h) == 6);
  char* out = nullptr;
  REQUIRE(gl_spectral_gap(g.h, &out) == GL_OK);
  const Json s = take(out);
  CHECK(s["lambda"].get<double>() == doctest::Approx(0.5));  // 1 − cos(π/3)
  CHECK(s["connected"] == true);
  CHECK(s["spectrum"].size() == 6);

  REQUIRE(gl_graph_to_text(g.h, &out) == GL_OK);
  Graph back;
  REQUIRE(gl_graph_parse(take_text(out).c_str(), &back.h) == GL_OK);
  CHECK(gl_graph_vertex_count(back.h) == 6);

  REQUIRE(gl_graph_validate(g.h, &out) == GL_OK);
  CHECK(take(out)["violations"].empty());

  double t = 0.0;
  CHECK(gl_trace_bound(g.h, 3, &t) == GL_OK);
  CHECK(t == 0.0);  // bipartite

  REQUIRE(gl_rayleigh(g.h, R"({"space": {"type": "euclidean", "dim": 1}, "points": [[1],[-1],[1],[-1],[1],[-1]]})",
                      &out) == GL_OK);
  const Json rq = take(out);
  CHECK(rq["rayleigh"].get<double>() == doctest::Approx(2.0));
  CHECK(rq["gromov_rayleigh"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("complexes, links and certificates") {
  Complex torus("torus"), ico("icosahedron");
  CHECK(gl_complex_vertex_count(torus.h) == 9);
  Graph link;
  REQUIRE(gl_complex_link(ico.h, 0, &link.h) == GL_OK);
  CHECK(gl_graph_vertex_count(link.h) == 5);

  char* out = nullptr;
  int granted = -1;
  REQUIRE(gl_certify(torus.h, "hilbert", 0.0, 1, &out, &granted) == GL_OK);
  CHECK(granted == 0);
  const Json refused = take(out);
  CHECK(refused["min_gap"].get<double>() == doctest::Approx(0.5));
  CHECK(refused["verdict"] == "refused");

  REQUIRE(gl_certify(ico.h, "hilbert", 0.0, 2, &out, &granted) == GL_OK);
  CHECK(granted == 1);
  CHECK(take(out)["min_gap"].get<double>() == doctest::Approx(0.690983).epsilon(1e-6));

  // δ = 0.4122 puts the IN threshold above the icosahedron's links.
  REQUIRE(gl_certify(ico.h, "in", 0.4122, 1, &out, &granted) == GL_OK);
  CHECK(granted == 0);
  CHECK(take(out)["threshold"].get<double>() == doctest::Approx(1.0 / (2.0 * (1.0 - 0.4122))));
  CHECK(gl_certify(ico.h, "banach", 0.0, 1, &out, &granted) == GL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("harmonic maps, identity and flow") {
  Complex torus("torus"), ico("icosahedron");
  char* out = nullptr;
  REQUIRE(gl_torus_lattice_cocycle(&out) == GL_OK);
  const std::string cocycle = take_text(out);

  REQUIRE(gl_garland_identity(torus.h, nullptr, cocycle.c_str(), &out) == GL_OK);
  const Json id = take(out);
  CHECK(id["energy"].get<double>() == doctest::Approx(54.0));
  CHECK(std::abs(id["residual_links"].get<double>()) < 1e-9);
  for (const auto& rq : id["link_rq"]) CHECK(rq.get<double>() == doctest::Approx(0.5));

  REQUIRE(gl_random_map(R"({"type": "euclidean", "dim": 2})", 12, 5, &out) == GL_OK);
  const std::string map = take_text(out);
  REQUIRE(gl_garland_inequality(ico.h, map.c_str(), nullptr, std::numeric_limits<double>::quiet_NaN(), &out) ==
          GL_OK);
  const Json in = take(out);
  CHECK(in["lhs"].get<double>() <= in["rhs"].get<double>() + 1e-9);
  CHECK(in["lambda"].get<double>() == doctest::Approx(0.690983).epsilon(1e-6));

  REQUIRE(gl_flow(ico.h, map.c_str(), nullptr, R"({"eta": 0.5, "iterations": 300})", &out) == GL_OK);
  const Json flow = take(out);
  const auto& steps = flow["steps"];
  CHECK(steps.back()["energy"].get<double>() < 1e-6 * steps.front()["energy"].get<double>());

  CHECK(gl_flow(ico.h, map.c_str(), nullptr, R"({"eta": 3.0})", &out) != GL_OK);
  CHECK(gl_garland_identity(torus.h, "{not json", nullptr, &out) == GL_ERR_PARSE);
}

TEST_CASE("Wirtinger and loop certificates") {
  char* out = nullptr;
  REQUIRE(gl_regular_polygon_map(7, &out) == GL_OK);
  const std::string heptagon = take_text(out);
  int pass = -1;
  REQUIRE(gl_wirtinger_check(heptagon.c_str(), &out, &pass) == GL_OK);
  CHECK(pass == 1);
  for (const auto& t : take(out)["terms"]) CHECK(t["equality"] == true);
  double c = 0.0;
  REQUIRE(gl_wirtinger_constant(6, 3, &c) == GL_OK);
  CHECK(c == doctest::Approx(24.0));  // 4k sin²(π/2)

  Graph heawood;
  REQUIRE(gl_graph_catalog("incidence", 2, &heawood.h) == GL_OK);
  REQUIRE(gl_enumerate_cycles(heawood.h, 6, &out) == GL_OK);
  const std::string hexagons = take_text(out);
  CHECK(Json::parse(hexagons)["loops"].size() == 28);
  int above = -1;
  REQUIRE(gl_loop_certificate(heawood.h, hexagons.c_str(), &out, &above) == GL_OK);
  CHECK(take(out)["bound"].get<double>() == doctest::Approx(0.291667).epsilon(1e-6));
  CHECK(above == 0);
  REQUIRE(gl_averaged_certificate(heawood.h, hexagons.c_str(), &out) == GL_OK);
  CHECK(take(out)["bound"].get<double>() == doctest::Approx(14.0 / 37.0));
}

TEST_CASE("incidence, random models and IN bounds") {
  char* out = nullptr;
  REQUIRE(gl_incidence_census(3, &out) == GL_OK);
  const Json census = take(out);
  CHECK(census["rq_gromov"].get<double>() == doctest::Approx(2.0 * 13.0 / (7.0 * 9.0 + 12.0 + 1.0)));
  CHECK(census["rq_standard"].get<double>() == doctest::Approx(0.5));
  REQUIRE(gl_incidence_summary(2, &out) == GL_OK);
  CHECK(take(out)["generalized_triangle"]["ok"] == true);

  REQUIRE(gl_random_graph(R"({"n": 200, "d": 2, "samples": 4, "seed": 3, "jobs": 2})", &out) == GL_OK);
  const std::string a = take_text(out);
  REQUIRE(gl_random_graph(R"({"n": 200, "d": 2, "samples": 4, "seed": 3, "jobs": 1})", &out) == GL_OK);
  CHECK(take_text(out) == a);

  REQUIRE(gl_random_group(R"({"m": 2, "density": 0.3, "samples": 3, "seed": 1})", &out) == GL_OK);
  const Json group = take(out);
  CHECK(group["pool_size"] == 28);
  CHECK(group["per_sample"].size() == 3);

  Graph link;
  REQUIRE(gl_presentation_link(R"({"m": 3, "relators": [[1, 2, 3]]})", "geometric", &link.h) == GL_OK);
  CHECK(gl_graph_vertex_count(link.h) == 6);
  CHECK(gl_presentation_link(R"({"m": 3, "relators": [[1, 2, 3]]})", "sideways", &link.h) != GL_OK);

  REQUIRE(gl_in_bounds(R"({"p": 2})", &out) == GL_OK);
  CHECK(take(out)["in_lower_bound"].get<double>() == doctest::Approx(0.0540971).epsilon(1e-6));
  REQUIRE(gl_in_bounds(R"({"in": 0.25, "lambda": 0.9})", &out) == GL_OK);
  CHECK(take(out)["fixed_point_threshold"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(gl_in_bounds("{}", &out) == GL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("gl_string_free accepts null") { gl_string_free(nullptr); }
