#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "garland/error.hpp"
#include "garland/harmonic.hpp"
#include "garland/spectral.hpp"
#include "garland/vertex_map.hpp"
#include "oracles.hpp"

using namespace garland;

namespace {

VertexMap constant_map(std::size_t n, std::size_t dim, double value) {
  return VertexMap{TargetSpace::euclidean(dim), std::vector<TargetPoint>(n, TargetPoint{std::vector<double>(dim, value)})};
}

std::vector<std::vector<double>> random_vectors(std::size_t n, std::size_t dim, SplitMix64& rng) {
  std::vector<std::vector<double>> h(n, std::vector<double>(dim));
  for (auto& v : h)
    for (double& x : v) x = rng.normal();
  return h;
}

VertexMap from_vectors(const std::vector<std::vector<double>>& h) {
  VertexMap f{TargetSpace::euclidean(h.front().size()), {}};
  for (const auto& v : h) f.points.push_back(TargetPoint{v});
  return f;
}

// Lattice cocycle plus an exact perturbation: cohomologous, so same minimum energy.
EdgeCocycle perturbed_lattice(const WeightedComplex& torus, SplitMix64& rng) {
  auto c = torus_lattice_cocycle();
  const auto extra = coboundary(torus, random_vectors(torus.vertex_count(), 2, rng));
  for (std::size_t i = 0; i < c.values.size(); ++i)
    for (std::size_t k = 0; k < 2; ++k) c.values[i][k] += extra.values[i][k];
  return c;
}

std::vector<WeightedComplex> test_complexes(SplitMix64& rng) {
  return {torus_triangulation(), icosahedron_boundary(), octahedron_boundary(), oracle::random_complex(9, 14, rng)};
}

std::vector<TargetSpace> test_spaces(SplitMix64& rng) {
  auto tree = std::make_shared<MetricTree>(random_tree(1 + rng.below(9), rng));
  return {TargetSpace::euclidean(1 + rng.below(3)), TargetSpace::tree(tree),
          TargetSpace::product({TargetSpace::euclidean(1), TargetSpace::tree(tree)})};
}

}  // namespace

TEST_CASE("energy examples") {
  const auto torus = torus_triangulation();
  CHECK(energy(torus, constant_map(9, 2, 3.0)) == 0.0);

  WeightedComplex c4({2, 2, 2, 2}, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}}, {});
  VertexMap g{TargetSpace::euclidean(1), {euclid({1.0}), euclid({0.0}), euclid({-1.0}), euclid({0.0})}};
  CHECK(energy(c4, g) == doctest::Approx(4.0));

  SplitMix64 rng(1);
  const auto h = random_vectors(9, 2, rng);
  const auto cob = coboundary(torus, h);
  auto minus_h = h;
  for (auto& v : minus_h)
    for (double& x : v) x = -x;
  CHECK(energy(torus, from_vectors(minus_h), &cob) == doctest::Approx(0.0).scale(1.0));

  auto tree = std::make_shared<MetricTree>(random_tree(3, rng));
  const auto tmap = random_map(TargetSpace::tree(tree), 9, rng);
  CHECK_THROWS_AS(energy(torus, tmap, &cob), Error);
}

TEST_CASE("cocycle checks") {
  const auto torus = torus_triangulation();
  const auto lattice = torus_lattice_cocycle();
  CHECK(closure_defect(torus, lattice) < 1e-14);
  CHECK_NOTHROW(check_cocycle(torus, lattice));
  auto broken = lattice;
  broken.values[0][0] += 0.1;
  CHECK_THROWS_AS(check_cocycle(torus, broken), Error);
  CHECK_THROWS_AS(solve_twisted_harmonic(torus, broken), Error);
  // Reading against the stored orientation negates.
  const auto& e = torus.edges()[3];
  const auto fwd = lattice.at(torus, e.u, e.v), back = lattice.at(torus, e.v, e.u);
  CHECK(fwd[0] == -back[0]);
  CHECK(fwd[1] == -back[1]);
}

TEST_CASE("local data") {
  const auto torus = torus_triangulation();
  const auto flat = local_data(torus, constant_map(9, 2, 1.5), 4);
  CHECK(flat.ed == 0.0);
  for (const auto& p : flat.positions.points) CHECK(p.coords() == std::vector<double>{1.5, 1.5});

  // Zero map with the lattice cocycle: neighbors sit on a regular unit hexagon.
  const auto lattice = torus_lattice_cocycle();
  const auto local = local_data(torus, constant_map(9, 2, 0.0), 4, &lattice);
  REQUIRE(local.positions.size() == 6);
  std::vector<double> angles;
  for (const auto& p : local.positions.points) {
    CHECK(std::hypot(p.coords()[0], p.coords()[1]) == doctest::Approx(1.0));
    angles.push_back(std::atan2(p.coords()[1], p.coords()[0]));
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 1; i < 6; ++i) CHECK(angles[i] - angles[i - 1] == doctest::Approx(std::numbers::pi / 3.0));
  CHECK(local.ed == doctest::Approx(6.0));  // ½ · 6 neighbors · weight 2 · 1²
}

TEST_CASE("unconditional identities: E = Σ link energies = Σ ED") {
  SplitMix64 rng(17);
  for (int round = 0; round < 40; ++round) {
    for (const auto& complex : test_complexes(rng)) {
      for (const auto& space : test_spaces(rng)) {
        const auto f = random_map(space, complex.vertex_count(), rng);
        const auto report = garland_identity_check(complex, f);
        CHECK(report.residual_links < 1e-10);
        CHECK(report.residual_ed < 1e-10);
        CHECK(report.link_energy_sum == doctest::Approx(energy(complex, f)).epsilon(1e-10));
        if (!report.harmonic) CHECK(report.label == "non-harmonic, identity not asserted");
      }
    }
  }
}

TEST_CASE("minus Laplacian examples") {
  // Vertex 0 with neighbors 1 at −1 and 2 at +1 (one face), f(0) = 0.2.
  const auto tri = propagate_weights(3, {{{0, 1, 2}, 1.0}});
  VertexMap f{TargetSpace::euclidean(1), {euclid({0.2}), euclid({-1.0}), euclid({1.0})}};
  const auto lap = minus_laplacian(tri, f, 0);
  CHECK(std::get<std::vector<double>>(lap.value)[0] == doctest::Approx(-0.2));
  CHECK(lap.magnitude == doctest::Approx(0.2));

  const auto torus = torus_triangulation();
  CHECK(laplacian_norm_squared(torus, constant_map(9, 3, 7.0)) == 0.0);
}

TEST_CASE("gradient of the energy is −2 m(x) times the Laplacian displacement") {
  SplitMix64 rng(23);
  const double h = 1e-5;
  for (int round = 0; round < 10; ++round) {
    const auto complexes = test_complexes(rng);
    for (std::size_t which = 0; which < complexes.size(); ++which) {
      const auto& complex = complexes[which];
      // The torus comes first and gets the lattice cocycle.
      const std::size_t dim = which == 0 ? 2 : 1 + rng.below(3);
      const EdgeCocycle lattice = torus_lattice_cocycle();
      const EdgeCocycle* cocycle = which == 0 ? &lattice : nullptr;
      auto vecs = random_vectors(complex.vertex_count(), dim, rng);
      const auto f = from_vectors(vecs);
      for (Vertex x = 0; x < complex.vertex_count(); ++x) {
        if (complex.neighbors(x).empty()) continue;
        const auto disp = std::get<std::vector<double>>(minus_laplacian(complex, f, x, cocycle).value);
        for (std::size_t k = 0; k < dim; ++k) {
          auto plus = vecs, minus = vecs;
          plus[x][k] += h;
          minus[x][k] -= h;
          const double fd =
              (energy(complex, from_vectors(plus), cocycle) - energy(complex, from_vectors(minus), cocycle)) / (2 * h);
          const double expected = -2.0 * complex.vertex_weight(x) * disp[k];
          CHECK(fd == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("convexity bound: E(f) − E(g) <= 2 |−Δf| d(f, g)") {
  SplitMix64 rng(29);
  for (int round = 0; round < 200; ++round) {
    const auto complexes = test_complexes(rng);
    const auto& complex = complexes[rng.below(complexes.size())];
    const std::size_t dim = 1 + rng.below(3);
    const auto f = from_vectors(random_vectors(complex.vertex_count(), dim, rng));
    const auto g = from_vectors(random_vectors(complex.vertex_count(), dim, rng));
    const double lhs = energy(complex, f) - energy(complex, g);
    const double rhs = 2.0 * std::sqrt(laplacian_norm_squared(complex, f)) * map_distance(complex, f, g);
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("without the factor 2 the convexity bound fails for a small step down the gradient") {
  // g = f + ε·(−Δf): E(f) − E(g) ≈ 2ε|−Δf|², while |−Δf| d(f, g) = ε|−Δf|².
  const auto complex = icosahedron_boundary();
  SplitMix64 rng(31);
  const auto vecs = random_vectors(complex.vertex_count(), 2, rng);
  const auto f = from_vectors(vecs);
  auto moved = vecs;
  const double eps = 1e-4;
  for (Vertex x = 0; x < complex.vertex_count(); ++x) {
    const auto d = std::get<std::vector<double>>(minus_laplacian(complex, f, x).value);
    for (std::size_t k = 0; k < 2; ++k) moved[x][k] += eps * d[k];
  }
  const auto g = from_vectors(moved);
  const double drop = energy(complex, f) - energy(complex, g);
  const double lap = std::sqrt(laplacian_norm_squared(complex, f));
  const double dist = map_distance(complex, f, g);
  CHECK(drop > lap * dist);
  CHECK(drop <= 2.0 * lap * dist + 1e-12);
}

TEST_CASE("twisted harmonic solutions") {
  SplitMix64 rng(37);
  const auto torus = torus_triangulation();
  const auto lattice = torus_lattice_cocycle();
  const auto f = solve_twisted_harmonic(torus, lattice);
  CHECK(f.points[0].coords() == std::vector<double>{0.0, 0.0});
  for (Vertex x = 0; x < 9; ++x) CHECK(minus_laplacian(torus, f, x, &lattice).magnitude < 1e-10);
  // Every edge difference is a lattice generator of length 1.
  for (const auto& e : torus.edges()) {
    const auto c = lattice.at(torus, e.u, e.v);
    const auto& a = f.points[e.u].coords();
    const auto& b = f.points[e.v].coords();
    CHECK(std::hypot(b[0] - a[0] + c[0], b[1] - a[1] + c[1]) == doctest::Approx(1.0));
  }
  CHECK(energy(torus, f, &lattice) == doctest::Approx(54.0));

  // Exact cocycles have zero minimum energy.
  const auto ico = icosahedron_boundary();
  const auto exact = coboundary(ico, random_vectors(12, 3, rng));
  CHECK(energy(ico, solve_twisted_harmonic(ico, exact), &exact) < 1e-8);
  const auto tri = propagate_weights(3, {{{0, 1, 2}, 1.0}});
  const auto tri_cocycle = coboundary(tri, random_vectors(3, 2, rng));
  CHECK(energy(tri, solve_twisted_harmonic(tri, tri_cocycle), &tri_cocycle) < 1e-12);

  // A cohomologous cocycle gives the same minimum.
  const auto pert = perturbed_lattice(torus, rng);
  CHECK(energy(torus, solve_twisted_harmonic(torus, pert), &pert) == doctest::Approx(54.0).epsilon(1e-10));
}

TEST_CASE("Garland identity on the torus") {
  const auto torus = torus_triangulation();
  const auto lattice = torus_lattice_cocycle();
  const auto f = solve_twisted_harmonic(torus, lattice);
  const auto r = garland_identity_check(torus, f, &lattice);
  CHECK(r.harmonic);
  CHECK(r.label == "harmonic");
  CHECK(r.max_laplacian < 1e-8);
  CHECK(r.residual_links < 1e-8);
  CHECK(r.residual_ed < 1e-8);
  CHECK(r.residual_harmonic < 1e-8);
  CHECK(r.energy == doctest::Approx(54.0));
  REQUIRE(r.link_rq.size() == 9);
  for (const auto& rq : r.link_rq) {
    REQUIRE(rq.has_value());
    CHECK(std::abs(*rq - 0.5) < 1e-8);
  }

  const auto flat = garland_identity_check(torus, constant_map(9, 2, 0.0));
  CHECK(flat.energy == 0.0);
  CHECK(flat.link_energy_sum == 0.0);
}

TEST_CASE("Garland inequality") {
  const auto ico = icosahedron_boundary();
  const auto zero = garland_inequality_check(ico, constant_map(12, 2, 1.0), 0.6);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  const auto torus = torus_triangulation();
  const auto lattice = torus_lattice_cocycle();
  const auto harmonic = solve_twisted_harmonic(torus, lattice);
  const auto edge = garland_inequality_check(torus, harmonic, 0.5, &lattice);
  CHECK(edge.lhs == 0.0);
  CHECK(edge.rhs >= 0.0);

  SplitMix64 rng(41);
  const double lambda = fixed_point_certificate(ico, TargetClass::Hilbert).min_gap;
  for (int i = 0; i < 200; ++i) {
    for (const auto& space : test_spaces(rng)) {
      const auto r = garland_inequality_check(ico, random_map(space, 12, rng), lambda);
      CHECK(r.slack >= -1e-9);
      CHECK(r.slack == doctest::Approx(r.rhs - r.lhs));
    }
  }
}

TEST_CASE("flow") {
  SplitMix64 rng(43);
  const auto torus = torus_triangulation();
  const auto lattice = torus_lattice_cocycle();

  // A harmonic start stays put.
  const auto harmonic = solve_twisted_harmonic(torus, lattice);
  const auto still = mayer_flow(torus, harmonic, {0.5, 10, 0.0, 1}, &lattice);
  for (const auto& s : still.steps) CHECK(s.energy == doctest::Approx(54.0).epsilon(1e-12));

  // Non-exact cocycle: the energy tends to the least-squares optimum.
  const auto pert = perturbed_lattice(torus, rng);
  const auto start = from_vectors(random_vectors(9, 2, rng));
  const auto trace = mayer_flow(torus, start, {0.5, 2000, 0.0, 1}, &pert);
  CHECK(trace.steps.back().energy == doctest::Approx(54.0).epsilon(1e-6));

  // All links C5: the energy decays to zero geometrically, for every target.
  const auto ico = icosahedron_boundary();
  for (int i = 0; i < 5; ++i) {
    for (const auto& space : test_spaces(rng)) {
      const auto t = mayer_flow(ico, random_map(space, 12, rng), {0.5, 500, 0.0, 1});
      const double e0 = t.steps.front().energy;
      for (std::size_t s = 1; s < t.steps.size(); ++s) CHECK(t.steps[s].energy <= t.steps[s - 1].energy + 1e-12);
      CHECK(t.steps.back().energy <= 1e-12 * e0);
      CHECK(t.decay_rate > 0.05);
    }
  }
  CHECK_THROWS_AS(mayer_flow(ico, constant_map(12, 1, 0.0), {0.0, 5, 0.0, 1}), Error);
  CHECK_THROWS_AS(mayer_flow(ico, constant_map(12, 1, 0.0), {1.5, 5, 0.0, 1}), Error);
}

TEST_CASE("flow is identical for any number of jobs") {
  SplitMix64 rng(47);
  const auto ico = icosahedron_boundary();
  for (const auto& space : test_spaces(rng)) {
    const auto start = random_map(space, 12, rng);
    const auto a = mayer_flow(ico, start, {0.5, 60, 0.0, 1});
    const auto b = mayer_flow(ico, start, {0.5, 60, 0.0, 4});
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t s = 0; s < a.steps.size(); ++s) CHECK(a.steps[s].energy == b.steps[s].energy);
    CHECK(a.final_map.points == b.final_map.points);
  }
}

TEST_CASE("fixed-point certificates") {
  const auto ico = fixed_point_certificate(icosahedron_boundary(), TargetClass::Hilbert);
  CHECK(ico.granted);
  CHECK(ico.property_t);
  CHECK(ico.min_gap == doctest::Approx(1.0 - std::cos(2.0 * std::numbers::pi / 5.0)));

  const auto torus = fixed_point_certificate(torus_triangulation(), TargetClass::Hilbert);
  CHECK(!torus.granted);
  CHECK(!torus.property_t);
  CHECK(torus.min_gap == doctest::Approx(0.5));

  const auto in = fixed_point_certificate(icosahedron_boundary(), TargetClass::InBounded, 0.4122);
  CHECK(in.threshold == doctest::Approx(1.0 / (2.0 * (1.0 - 0.4122))));
  CHECK(in.threshold == doctest::Approx(0.850629).epsilon(1e-6));
  CHECK(!in.granted);
  CHECK(!in.property_t);
  CHECK_THROWS_AS(fixed_point_certificate(icosahedron_boundary(), TargetClass::InBounded, 1.0), Error);

  // Gaps agree with an independent eigensolve of each link.
  const auto complex = octahedron_boundary();
  const auto oct = fixed_point_certificate(complex, TargetClass::Hilbert);
  for (Vertex x = 0; x < complex.vertex_count(); ++x)
    CHECK(oct.link_gaps[x] == doctest::Approx(oracle::gap(link_of(complex, x).graph)).epsilon(1e-10));
}
