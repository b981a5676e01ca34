#include <doctest.h>

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>

#include "garland/error.hpp"
#include "garland/incidence.hpp"
#include "garland/spectral.hpp"
#include "garland/vertex_map.hpp"
#include "garland/wirtinger.hpp"
#include "oracles.hpp"

using namespace garland;

namespace {

VertexMap regular_polygon(std::size_t k) {
  VertexMap g{TargetSpace::euclidean(2), {}};
  for (std::size_t c = 0; c < k; ++c) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
    g.points.push_back(euclid({std::cos(a), std::sin(a)}));
  }
  return g;
}

// Brute-force E_j: all unordered pairs at cyclic distance j.
double brute_ej(const VertexMap& g, std::size_t j) {
  const std::size_t k = g.size();
  double s = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (std::min(b - a, k - (b - a)) != j) continue;
      const double d = distance(g.space, g.points[a], g.points[b]);
      s += d * d;
    }
  }
  return s;
}

WeightedGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) edges.push_back({a, b, 1.0});
  return WeightedGraph(n, edges);
}

// Counts simple cycles of a given length by trying every vertex sequence.
std::size_t brute_cycle_count(const WeightedGraph& g, std::size_t length) {
  const auto nbrs = g.merged_neighbors();
  auto adjacent = [&](Vertex a, Vertex b) {
    for (auto [w, _] : nbrs[a])
      if (w == b) return true;
    return false;
  };
  std::size_t count = 0;
  std::vector<Vertex> path;
  std::vector<bool> used(g.vertex_count(), false);
  std::function<void()> extend = [&] {
    if (path.size() == length) {
      if (adjacent(path.back(), path.front())) ++count;
      return;
    }
    for (Vertex v = path.front() + 1; v < g.vertex_count(); ++v) {
      if (used[v] || !adjacent(path.back(), v)) continue;
      used[v] = true;
      path.push_back(v);
      extend();
      path.pop_back();
      used[v] = false;
    }
  };
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    path = {s};
    used[s] = true;
    extend();
    used[s] = false;
  }
  return count / 2;  // each cycle is found in both directions from its minimum
}

}  // namespace

TEST_CASE("Wirtinger constants") {
  CHECK(wirtinger_constant(6, 1) == doctest::Approx(6.0));
  CHECK(wirtinger_constant(6, 2) == doctest::Approx(18.0));
  CHECK(wirtinger_constant(6, 3) == doctest::Approx(24.0));
  CHECK(wirtinger_constant(4, 1) == doctest::Approx(8.0));
  for (std::size_t k = 1; k < 20; ++k) CHECK(std::abs(wirtinger_constant(k, k)) < 1e-12);
  CHECK_THROWS_AS(wirtinger_constant(5, 6), Error);
}

TEST_CASE("distance-j energies") {
  for (std::size_t k = 3; k <= 12; ++k) {
    const auto g = regular_polygon(k);
    for (std::size_t j = 1; j <= k / 2; ++j) {
      CHECK(distance_j_energy(g, j) == doctest::Approx(brute_ej(g, j)));
      // The antipodal class has one partner per vertex, so it carries half of W.
      const double expected = (2 * j == k ? 0.5 : 1.0) * wirtinger_constant(k, j);
      CHECK(distance_j_energy(g, j) == doctest::Approx(expected));
      CHECK(shift_energy(g, j) == doctest::Approx(wirtinger_constant(k, j)));
    }
  }
  VertexMap alt{TargetSpace::euclidean(1), {}};
  for (int c = 0; c < 6; ++c) alt.points.push_back(euclid({static_cast<double>(c % 2)}));
  CHECK(distance_j_energy(alt, 1) == doctest::Approx(6.0));
  CHECK(distance_j_energy(alt, 2) == doctest::Approx(0.0).scale(1.0));
  CHECK(distance_j_energy(alt, 3) == doctest::Approx(3.0));
  VertexMap flat{TargetSpace::euclidean(1), std::vector<TargetPoint>(7, euclid({2.0}))};
  for (std::size_t j = 1; j <= 3; ++j) CHECK(distance_j_energy(flat, j) == 0.0);
}

TEST_CASE("Wirtinger check") {
  for (std::size_t k = 4; k <= 12; ++k) {
    const auto r = wir_check(regular_polygon(k));
    CHECK(r.all_pass);
    CHECK(r.affine_circle);
    for (const auto& t : r.terms) {
      CHECK(t.equality);
      CHECK(std::abs(*t.ratio - t.bound) < 1e-9);
    }
  }
  // An affine image of the polygon is still an equality case.
  auto skew = regular_polygon(8);
  for (auto& p : skew.points) p = euclid({2 * p.coords()[0] + p.coords()[1] + 3, 0.5 * p.coords()[1] - 1});
  CHECK(wir_check(skew).affine_circle);

  SplitMix64 rng(53);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 4 + rng.below(9);
    auto tree = std::make_shared<MetricTree>(random_tree(1 + rng.below(10), rng));
    const TargetSpace spaces[] = {TargetSpace::euclidean(1 + rng.below(4)), TargetSpace::tree(tree)};
    for (const auto& space : spaces) {
      const auto g = random_map(space, k, rng);
      try {
        const auto r = wir_check(g);
        CHECK(r.all_pass);
        if (space.as_tree()) CHECK(!r.affine_circle);
      } catch (const Error&) {
        // constant draw on a tiny tree
      }
    }
  }
  CHECK_THROWS_AS(wir_check(regular_polygon(3)), Error);
  VertexMap flat{TargetSpace::euclidean(1), std::vector<TargetPoint>(6, euclid({2.0}))};
  CHECK_THROWS_AS(wir_check(flat), Error);
}

TEST_CASE("Gromov cycle bound") {
  CHECK(gromov_cycle_bound(6) == doctest::Approx(0.5));
  CHECK(gromov_cycle_bound(4) == doctest::Approx(1.0));
  CHECK(gromov_cycle_bound(12) == doctest::Approx(0.133975).epsilon(1e-5));
  for (std::size_t k = 4; k < 40; ++k) CHECK(gromov_cycle_bound(k) == doctest::Approx(cycle_gap_closed_form(k)));
  CHECK_THROWS_AS(gromov_cycle_bound(3), Error);
}

TEST_CASE("cycle enumeration matches a brute-force count") {
  CHECK(enumerate_cycles(complete_graph(4), 3).size() == 4);
  CHECK(enumerate_cycles(complete_graph(4), 4).size() == 3);
  CHECK(enumerate_cycles(complete_graph(5), 5).size() == brute_cycle_count(complete_graph(5), 5));
  const auto heawood = projective_plane_incidence(2).graph;
  const auto hexagons = enumerate_cycles(heawood, 6);
  CHECK(hexagons.size() == 28);
  CHECK(hexagons.size() == brute_cycle_count(heawood, 6));
  for (const auto& c : hexagons) {
    CHECK(c.front() == *std::min_element(c.begin(), c.end()));
    CHECK(c[1] < c.back());
  }
  SplitMix64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const auto g = oracle::random_connected_graph(4 + rng.below(6), rng.below(10), rng);
    for (std::size_t len = 3; len <= 6; ++len) CHECK(enumerate_cycles(g, len).size() == brute_cycle_count(g, len));
  }
}

TEST_CASE("loop-family certificate") {
  const auto c6 = cycle_graph(6);
  const auto single = loop_family_certificate(c6, {{{0, 1, 2, 3, 4, 5}}, 0});
  CHECK(single.a == 6);
  CHECK(single.r == 1);
  CHECK(single.q == 1);
  CHECK(single.v == 2);
  CHECK(single.k == 6);
  CHECK(single.bound == doctest::Approx(0.5));
  CHECK(!single.above_half);

  // A single triangle of K4 never visits vertex 3.
  const auto k4 = complete_graph(4);
  const auto sparse = loop_family_certificate(k4, {{{0, 1, 2}}, 0});
  CHECK(sparse.r == 0);
  CHECK(sparse.vacuous);
  CHECK(sparse.bound == 0.0);

  const auto heawood = projective_plane_incidence(2).graph;
  LoopFamily hex{enumerate_cycles(heawood, 6), 0};
  const auto cert = loop_family_certificate(heawood, hex);
  CHECK(cert.a == 21);
  CHECK(cert.v == 3);
  CHECK(cert.q == 8);
  CHECK(cert.r == 3);
  const double expected = 4.0 * 21 * 3 / (8.0 * 6 * 9) * 0.5;
  CHECK(cert.bound == doctest::Approx(expected));
  CHECK(cert.bound <= scalar_spectral_gap(heawood).lambda);

  CHECK_THROWS_AS(loop_family_certificate(c6, {{{0, 2, 4}}, 0}), Error);
}

TEST_CASE("averaged certificate") {
  const auto heawood = projective_plane_incidence(2).graph;
  const auto hexagons = enumerate_cycles(heawood, 6);
  const auto cert = averaged_regular_certificate(heawood, hexagons);
  CHECK(cert.counts == std::vector<std::size_t>{8, 4, 3});
  // λ = 1 / ((v²/m∅) Σ_j W(6,j) N_1 / (Ñ_j W(6,1))), Ñ_3 = 2 N_3.
  const double sum = 6.0 * 8 / (8 * 6.0) + 18.0 * 8 / (4 * 6.0) + 24.0 * 8 / (6 * 6.0);
  CHECK(cert.bound == doctest::Approx(1.0 / (9.0 / 42.0 * sum)));
  CHECK(cert.bound == doctest::Approx(14.0 / 37.0));
  CHECK(cert.bound <= scalar_spectral_gap(heawood).lambda);

  const auto c6 = averaged_regular_certificate(cycle_graph(6), {{0, 1, 2, 3, 4, 5}});
  CHECK(c6.bound == doctest::Approx(0.5));

  // Dropping a hexagon breaks distance-regularity of the counts.
  auto partial = hexagons;
  partial.pop_back();
  CHECK_THROWS_AS(averaged_regular_certificate(heawood, partial), Error);
  CHECK_THROWS_AS(averaged_regular_certificate(heawood, hexagons, {8, 4, 4}), Error);
}
