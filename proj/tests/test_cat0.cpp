#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "garland/cat0.hpp"
#include "garland/error.hpp"
#include "garland/vertex_map.hpp"
#include "oracles.hpp"

using namespace garland;

namespace {

// Center 0, tips 1, 2, 3, unit legs.
std::shared_ptr<const MetricTree> tripod() {
  return std::make_shared<MetricTree>(4, std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
}

StarData star_with_mass(std::vector<double> mass) {
  StarData s;
  for (std::size_t i = 0; i < mass.size(); ++i) s.branches.push_back({i, i + 1});
  s.mass = std::move(mass);
  return s;
}

double angle_between(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::acos(std::clamp(a[0] * b[0] + a[1] * b[1], -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

std::vector<TargetSpace> model_spaces(SplitMix64& rng) {
  auto tree = std::make_shared<MetricTree>(random_tree(1 + rng.below(10), rng));
  return {TargetSpace::euclidean(1 + rng.below(3)), TargetSpace::tree(tree),
          TargetSpace::product({TargetSpace::euclidean(2), TargetSpace::tree(tree)})};
}

}  // namespace

TEST_CASE("distances in the model spaces") {
  const auto e2 = TargetSpace::euclidean(2);
  CHECK(distance(e2, euclid({0.0, 0.0}), euclid({3.0, 4.0})) == doctest::Approx(5.0));
  const auto t = TargetSpace::tree(tripod());
  CHECK(distance(t, TreePoint::at(1), TreePoint::at(2)) == doctest::Approx(2.0));
  const auto prod = TargetSpace::product({TargetSpace::euclidean(1), t});
  const TargetPoint p{TargetPoint::Members{euclid({0.0}), TreePoint::at(1)}};
  const TargetPoint q{TargetPoint::Members{euclid({1.0}), TreePoint::at(2)}};
  CHECK(distance(prod, p, q) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("geodesic points") {
  const auto e2 = TargetSpace::euclidean(2);
  const TargetPoint a = euclid({0.0, 0.0}), b = euclid({2.0, 0.0});
  CHECK(geodesic_point(e2, a, b, 0.0) == a);
  CHECK(geodesic_point(e2, a, b, 1.0) == b);
  CHECK(geodesic_point(e2, a, b, 0.5).coords() == std::vector<double>{1.0, 0.0});
  const auto t = TargetSpace::tree(tripod());
  CHECK(geodesic_point(t, TreePoint::at(1), TreePoint::at(2), 0.5) == TargetPoint{TreePoint::at(0)});
  CHECK_THROWS_AS(geodesic_point(e2, a, b, 1.5), Error);
}

TEST_CASE("tree point canonical form") {
  auto tree = tripod();
  CHECK(TreePoint::on(*tree, 0, 0.0) == TreePoint::at(0));
  CHECK(TreePoint::on(*tree, 0, 1.0) == TreePoint::at(1));
  CHECK(TreePoint::on(*tree, 0, 1e-14) == TreePoint::at(0));
  const auto mid = TreePoint::on(*tree, 0, 0.25);
  CHECK(!mid.at_vertex());
  CHECK(mid.offset == 0.25);
}

TEST_CASE("barycenter examples") {
  const auto e1 = TargetSpace::euclidean(1);
  WeightedPointSet two{{euclid({0.0}), euclid({4.0})}, {1.0, 1.0}};
  CHECK(barycenter(e1, two).coords()[0] == doctest::Approx(2.0));

  const auto t = TargetSpace::tree(tripod());
  WeightedPointSet tips{{TreePoint::at(1), TreePoint::at(2), TreePoint::at(3)}, {1.0, 1.0, 1.0}};
  CHECK(barycenter(t, tips) == TargetPoint{TreePoint::at(0)});

  // Path A-B-C with unit edges, weight 3 at A and 1 at C: minimize 3t² + (2 − t)².
  auto path = std::make_shared<MetricTree>(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
  const auto ps = TargetSpace::tree(path);
  WeightedPointSet ac{{TreePoint::at(0), TreePoint::at(2)}, {3.0, 1.0}};
  const auto bar = barycenter(ps, ac);
  CHECK(distance(ps, bar, TreePoint::at(0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(barycenter(e1, WeightedPointSet{}), Error);
}

TEST_CASE("CAT(0) comparison inequality on random triangles") {
  SplitMix64 rng(2024);
  std::size_t checked = 0;
  for (int round = 0; round < 500; ++round) {
    for (const auto& space : model_spaces(rng)) {
      for (int k = 0; k < 7; ++k) {
        const auto p = random_point(space, rng), q = random_point(space, rng), r = random_point(space, rng);
        const double t = rng.uniform();
        const auto m = geodesic_point(space, q, r, t);
        const double dpq = distance(space, p, q), dpr = distance(space, p, r), dqr = distance(space, q, r);
        // Stewart's theorem in the comparison triangle.
        const double comparison = std::sqrt(std::max(0.0, (1 - t) * dpq * dpq + t * dpr * dpr - t * (1 - t) * dqr * dqr));
        CHECK(distance(space, p, m) <= comparison + 1e-9);
        CHECK(distance(space, q, m) == doctest::Approx(t * dqr).epsilon(1e-9).scale(1.0));
        ++checked;
      }
    }
  }
  CHECK(checked >= 10000);
}

TEST_CASE("barycenter strong convexity: u(y) >= u(bar) + W d(y, bar)^2") {
  SplitMix64 rng(8);
  for (int round = 0; round < 100; ++round) {
    for (const auto& space : model_spaces(rng)) {
      WeightedPointSet pts;
      const std::size_t count = 1 + rng.below(7);
      for (std::size_t i = 0; i < count; ++i) {
        pts.points.push_back(random_point(space, rng));
        pts.weights.push_back(rng.uniform(0.1, 2.0));
      }
      const auto bar = barycenter(space, pts);
      const double u0 = barycenter_cost(space, pts, bar);
      for (int k = 0; k < 5; ++k) {
        const auto y = random_point(space, rng);
        const double d = distance(space, y, bar);
        CHECK(barycenter_cost(space, pts, y) >= u0 + pts.total_weight() * d * d - 1e-9 * (1 + u0));
      }
    }
  }
}

TEST_CASE("tree barycenter against a grid search") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto tree = std::make_shared<MetricTree>(random_tree(1 + rng.below(8), rng));
    const auto space = TargetSpace::tree(tree);
    WeightedPointSet pts;
    std::vector<oracle::EdgePoint> raw;
    const std::size_t count = 1 + rng.below(6);
    for (std::size_t i = 0; i < count; ++i) {
      pts.points.push_back(random_point(space, rng));
      pts.weights.push_back(rng.uniform(0.1, 2.0));
      raw.push_back(oracle::as_edge_point(*tree, pts.points.back().tree_point()));
    }
    const auto bar = barycenter(space, pts);
    const auto grid = oracle::grid_barycenter(*tree, raw, pts.weights, 1e-3);
    const auto D = oracle::all_pairs(tree->vertex_count(), tree->edges());
    CHECK(oracle::tree_distance(tree->edges(), D, oracle::as_edge_point(*tree, bar.tree_point()), grid.point) < 1e-2);
    CHECK(barycenter_cost(space, pts, bar) <= grid.cost + 1e-12);
  }
}

TEST_CASE("tangent cone star") {
  auto tree = tripod();
  WeightedPointSet tips{{TreePoint::at(1), TreePoint::at(2), TreePoint::at(3)}, {1.0, 1.0, 1.0}};
  const auto at_apex = tangent_cone_star(*tree, TreePoint::at(0), tips);
  CHECK(at_apex.branch_count() == 3);
  for (double r : at_apex.point_radius) CHECK(r == doctest::Approx(1.0));
  const auto inside = tangent_cone_star(*tree, TreePoint::on(*tree, 0, 0.5), tips);
  CHECK(inside.branch_count() == 2);

  WeightedPointSet with_center{{TreePoint::at(0), TreePoint::at(1)}, {1.0, 1.0}};
  const auto s = tangent_cone_star(*tree, TreePoint::at(0), with_center);
  CHECK(s.point_branch[0] == StarData::kNullBranch);
  CHECK(s.point_radius[0] == 0.0);
}

TEST_CASE("at the barycenter the branch masses satisfy the polygon inequality") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    auto tree = std::make_shared<MetricTree>(random_tree(1 + rng.below(10), rng));
    const auto space = TargetSpace::tree(tree);
    WeightedPointSet pts;
    const std::size_t count = 1 + rng.below(8);
    for (std::size_t i = 0; i < count; ++i) {
      pts.points.push_back(random_point(space, rng));
      pts.weights.push_back(rng.uniform(0.1, 2.0));
    }
    const auto bar = barycenter(space, pts).tree_point();
    const auto star = tangent_cone_star(*tree, bar, pts);
    std::string masses;
    for (double a : star.mass) masses += std::to_string(a) + " ";
    INFO("masses ", masses, "at vertex ", bar.at_vertex());
    CHECK(polygon_feasible(star.mass));
    CHECK(star_barycenter(star).first == StarData::kNullBranch);
  }
}

TEST_CASE("polygon closing examples") {
  const auto even = polygon_closing_embedding(star_with_mass({1.0, 1.0, 1.0}));
  CHECK(angle_between(even[0], even[1]) == doctest::Approx(120.0));
  CHECK(angle_between(even[0], even[2]) == doctest::Approx(120.0));
  CHECK(angle_between(even[1], even[2]) == doctest::Approx(120.0));

  const auto flat = polygon_closing_embedding(star_with_mass({2.0, 1.0, 1.0}));
  CHECK(angle_between(flat[0], flat[1]) == doctest::Approx(180.0).epsilon(1e-6));
  CHECK(angle_between(flat[0], flat[2]) == doctest::Approx(180.0).epsilon(1e-6));

  try {
    polygon_closing_embedding(star_with_mass({3.0, 1.0, 1.0}));
    FAIL("infeasible polygon closed");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("barycenter not at apex") != std::string::npos);
  }
}

TEST_CASE("polygon closing feasibility is exactly the polygon inequality and closes to 1e-9") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> mass(1 + rng.below(7));
    for (double& a : mass) a = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 3.0);
    double all = 0.0, top = 0.0;
    for (double a : mass) {
      all += a;
      top = std::max(top, a);
    }
    const bool expect = top <= all - top + 1e-12 * all;
    CHECK(polygon_feasible(mass) == expect);
    if (!expect) {
      CHECK_THROWS_AS(polygon_closing_embedding(star_with_mass(mass)), Error);
      continue;
    }
    const auto dirs = polygon_closing_embedding(star_with_mass(mass));
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      CHECK(std::hypot(dirs[i][0], dirs[i][1]) == doctest::Approx(1.0).epsilon(1e-12));
      sx += mass[i] * dirs[i][0];
      sy += mass[i] * dirs[i][1];
    }
    CHECK(std::hypot(sx, sy) <= 1e-9 * std::max(all, 1e-300) + 1e-300);
  }
}

TEST_CASE("Izeki-Nayatani ratios of candidate embeddings") {
  SplitMix64 rng(12);
  // Euclidean: φ = z − bar has mean zero.
  const auto e3 = TargetSpace::euclidean(3);
  WeightedPointSet pts;
  std::vector<std::vector<double>> phi;
  for (int i = 0; i < 6; ++i) {
    pts.points.push_back(random_point(e3, rng));
    pts.weights.push_back(1.0 / 6.0);
  }
  const auto bar = barycenter(e3, pts).coords();
  for (const auto& p : pts.points) phi.push_back({p.coords()[0] - bar[0], p.coords()[1] - bar[1], p.coords()[2] - bar[2]});
  CHECK(izeki_nayatani_ratio(e3, pts, phi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // Tree: the polygon-closing embedding at the barycenter.
  auto tree = std::make_shared<MetricTree>(random_tree(6, rng));
  const auto ts = TargetSpace::tree(tree);
  WeightedPointSet tp;
  for (int i = 0; i < 5; ++i) {
    tp.points.push_back(random_point(ts, rng));
    tp.weights.push_back(0.2);
  }
  const auto tbar = barycenter(ts, tp).tree_point();
  const auto star = tangent_cone_star(*tree, tbar, tp);
  const auto dirs = polygon_closing_embedding(star);
  std::vector<std::vector<double>> tphi;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    const std::size_t b = star.point_branch[i];
    const double r = star.point_radius[i];
    tphi.push_back(b == StarData::kNullBranch ? std::vector<double>{0.0, 0.0}
                                              : std::vector<double>{r * dirs[b][0], r * dirs[b][1]});
  }
  CHECK(izeki_nayatani_ratio(ts, tp, tphi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // Two points collapsed onto one unit vector violate the norm constraint.
  const auto e1 = TargetSpace::euclidean(1);
  WeightedPointSet pair{{euclid({-1.0}), euclid({1.0})}, {0.5, 0.5}};
  CHECK_THROWS_AS(izeki_nayatani_ratio(e1, pair, {{2.0}, {2.0}}), Error);
  // Norms right but stretched: d = 0.2, |φ1 − φ2| = 2.
  WeightedPointSet close{{euclid({0.9}), euclid({1.1})}, {0.5, 0.5}};
  try {
    izeki_nayatani_ratio(e1, close, {{0.1}, {-0.1}});
  } catch (const Error&) {
    FAIL("feasible phi rejected");
  }
  // Points on the same side of the barycenter sent to opposite sides: stretched.
  WeightedPointSet three{{euclid({0.0}), euclid({0.05}), euclid({0.4})}, {0.25, 0.25, 0.5}};
  const double b = 0.2125;
  try {
    izeki_nayatani_ratio(e1, three, {{b}, {-(b - 0.05)}, {0.4 - b}});
    FAIL("stretched phi accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("pair (0, 1)") != std::string::npos);
  }
}

TEST_CASE("building lower bound and the gap from IN") {
  CHECK(in_lower_bound_building(2) == doctest::Approx(std::pow(std::sqrt(2.0) - 1, 2) / (2 * (3 - std::sqrt(2.0)))));
  CHECK(in_lower_bound_building(2) == doctest::Approx(0.0540971).epsilon(1e-6));
  CHECK(in_lower_bound_building(4) == doctest::Approx(1.0 / 6.0));
  double prev = in_lower_bound_building(2);
  for (double p = 3; p <= 1e6; p *= 1.5) {
    const double v = in_lower_bound_building(p);
    CHECK(v > prev);
    CHECK(v < 0.5);
    prev = v;
  }
  CHECK(in_lower_bound_building(1e12) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK_THROWS_AS(in_lower_bound_building(1), Error);

  CHECK(gap_bound_from_in(0.8, 0.4122) == doctest::Approx(0.47024));
  CHECK(gap_bound_from_in(0.7, 0.0) == 0.7);
  CHECK(gap_bound_from_in(0.6910, 0.4122) == doctest::Approx(0.40617).epsilon(1e-5));
  CHECK_THROWS_AS(gap_bound_from_in(0.5, 1.0), Error);
}
