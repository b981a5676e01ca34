#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "garland/complex.hpp"
#include "garland/vertex_map.hpp"

namespace garland {

/// Euclidean translation cocycle: one vector per complex edge, read in the
/// edge's stored orientation u → v (u < v). The reverse orientation carries
/// the negated vector.
struct EdgeCocycle {
  std::size_t dim = 1;
  std::vector<std::vector<double>> values;

  /// c(from → to); throws if {from, to} is not an edge.
  std::vector<double> at(const WeightedComplex& complex, Vertex from, Vertex to) const;
};

/// Coboundary of h: c(x → x') = h(x') − h(x).
EdgeCocycle coboundary(const WeightedComplex& complex, const std::vector<std::vector<double>>& h);

/// Largest |c(x→x') + c(x'→x'') + c(x''→x)| over the faces.
double closure_defect(const WeightedComplex& complex, const EdgeCocycle& cocycle);

/// Throws unless the cocycle has one vector of the right size per edge and is
/// closed on every face (tolerance 1e-10).
void check_cocycle(const WeightedComplex& complex, const EdgeCocycle& cocycle);

/// Translation-by-lattice cocycle on torus_triangulation(rows, cols): the edge
/// with grid step (di, dj) carries di·a + dj·b, a = (1, 0), b = (−½, √3/2).
EdgeCocycle torus_lattice_cocycle(std::size_t rows = 3, std::size_t cols = 3);

/// Σ_e m(e) d(f(u), f(v))², or with a cocycle Σ_e m(e) |f(v) − f(u) + c(u→v)|².
double energy(const WeightedComplex& complex, const VertexMap& f, const EdgeCocycle* cocycle = nullptr);

/// Restriction of f to the link of x, placed as seen from f(x): neighbor x'
/// sits at f(x') (+ c(x→x') with a cocycle) with weight m(x, x').
struct LocalData {
  VertexLink link;
  VertexMap positions;
  /// ½ Σ_{x'} m(x, x') d(position(x'), f(x))².
  double ed = 0.0;
};

LocalData local_data(const WeightedComplex& complex, const VertexMap& f, Vertex x,
                     const EdgeCocycle* cocycle = nullptr);

/// Point of a tangent cone: a Euclidean displacement, a ray in the star of a
/// tree point (direction edge kNone at the apex), or a tuple for products.
struct TreeTangent {
  TreeDirection direction;
  double radius = 0.0;
};

struct TangentVector {
  std::variant<std::vector<double>, TreeTangent, std::vector<TangentVector>> value;
  double magnitude = 0.0;
};

/// −Δf(x): barycenter of the link restriction pushed into the tangent cone at f(x).
TangentVector minus_laplacian(const WeightedComplex& complex, const VertexMap& f, Vertex x,
                              const EdgeCocycle* cocycle = nullptr);

/// |−Δf|² = Σ_x m(x) |−Δf(x)|².
double laplacian_norm_squared(const WeightedComplex& complex, const VertexMap& f,
                              const EdgeCocycle* cocycle = nullptr);

/// Weighted ℓ² distance √(Σ_x m(x) d(f(x), g(x))²).
double map_distance(const WeightedComplex& complex, const VertexMap& f, const VertexMap& g);

struct FlowOptions {
  double eta = 0.5;
  std::size_t iterations = 500;
  /// Stop early once the energy is at or below this value.
  double energy_floor = 0.0;
  unsigned jobs = 1;
};

struct FlowStep {
  std::size_t step = 0;
  double energy = 0.0;
  double laplacian_norm = 0.0;
  /// Step fraction actually used (halved when a full step would raise the energy).
  double eta = 0.0;
};

struct FlowTrace {
  std::vector<FlowStep> steps;
  VertexMap final_map;
  /// −slope of a least-squares fit of log(energy) against the step index
  /// (0 when fewer than two positive energies were recorded).
  double decay_rate = 0.0;
};

/// Synchronous descent: every sweep moves each f(x) by the fraction η along
/// the geodesic towards the barycenter of its link restriction.
FlowTrace mayer_flow(const WeightedComplex& complex, const VertexMap& start, const FlowOptions& options,
                     const EdgeCocycle* cocycle = nullptr);

/// Minimizer of the twisted energy into ℝ^dim (vertex 0 pinned at the origin).
VertexMap solve_twisted_harmonic(const WeightedComplex& complex, const EdgeCocycle& cocycle);

struct GarlandIdentityReport {
  double energy = 0.0;
  double link_energy_sum = 0.0;  // Σ_x E(f|link x)
  double ed_sum = 0.0;           // Σ_x ED(f, x)
  double rq_ed_sum = 0.0;        // 2 Σ_x RQ(f|link x) ED(f, x)
  double residual_links = 0.0;   // relative, E vs Σ link energies
  double residual_ed = 0.0;      // relative, E vs Σ ED
  double residual_harmonic = 0.0;
  double max_laplacian = 0.0;
  bool harmonic = false;  // max_x |−Δf(x)| < 1e-8
  /// RQ of each link restriction; empty when the restriction is constant.
  std::vector<std::optional<double>> link_rq;
  std::string label;
};

GarlandIdentityReport garland_identity_check(const WeightedComplex& complex, const VertexMap& f,
                                             const EdgeCocycle* cocycle = nullptr);

struct GarlandInequalityReport {
  double lambda = 0.0;
  double energy = 0.0;
  double laplacian_norm_squared = 0.0;
  double lhs = 0.0;  // (2λ − 1)² E(f)
  double rhs = 0.0;  // 8λ² |−Δf|²
  double slack = 0.0;
};

GarlandInequalityReport garland_inequality_check(const WeightedComplex& complex, const VertexMap& f, double lambda,
                                                 const EdgeCocycle* cocycle = nullptr);

enum class TargetClass { Hilbert, InBounded };

struct CertificateReport {
  TargetClass target = TargetClass::Hilbert;
  double delta = 0.0;
  double threshold = 0.5;
  std::vector<double> link_gaps;
  double min_gap = 0.0;
  Vertex binding_vertex = 0;
  bool granted = false;
  /// Hilbert certificate granted, which also certifies property (T).
  bool property_t = false;
};

/// Link gaps of every vertex against ½ (Hilbert) or 1/(2(1−δ)) (targets with IN ≤ δ).
CertificateReport fixed_point_certificate(const WeightedComplex& complex, TargetClass target, double delta = 0.0,
                                          unsigned jobs = 1);

double relative_residual(double a, double b);

}  // namespace garland
