#include "garland/randomgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "garland/error.hpp"
#include "garland/parallel.hpp"
#include "garland/rng.hpp"

namespace garland {

WeightedGraph permutation_model_graph(const PermutationModelParams& params) {
  require(params.n >= 1 && params.d >= 1, ErrorCode::InvalidArgument, "permutation model needs n >= 1 and d >= 1");
  SplitMix64 rng(params.seed);
  std::vector<Edge> edges;
  edges.reserve(params.n * params.d);
  std::vector<Vertex> sigma(params.n);
  for (std::size_t i = 0; i < params.d; ++i) {
    std::iota(sigma.begin(), sigma.end(), Vertex{0});
    rng.shuffle(sigma);
    for (Vertex s = 0; s < params.n; ++s) edges.push_back({s, sigma[s], 1.0});
  }
  return WeightedGraph(params.n, std::move(edges));
}

SpectralStatistics spectral_statistics(const PermutationModelParams& params, std::size_t samples, double friedman_c,
                                       unsigned trace_k, unsigned jobs) {
  require(samples >= 1, ErrorCode::InvalidArgument, "need at least one sample");
  require(params.n >= 2, ErrorCode::InvalidArgument, "spectral statistics need n >= 2");
  SpectralStatistics s;
  s.params = params;
  s.samples = samples;
  s.friedman_c = friedman_c;
  s.trace_k = trace_k;
  s.lambdas.assign(samples, 0.0);
  if (trace_k > 0) s.trace_bounds.assign(samples, 0.0);
  parallel_for(samples, jobs, [&](std::size_t i) {
    const WeightedGraph g = permutation_model_graph({params.n, params.d, SplitMix64::substream(params.seed, i)});
    const SpectralReport report = scalar_spectral_gap(g);
    s.lambdas[i] = report.lambda;
    if (trace_k > 0) s.trace_bounds[i] = report.connected ? trace_method_gap_bound(g, trace_k) : 0.0;
  });
  const double d = static_cast<double>(params.d);
  s.friedman_threshold = 1.0 - (std::sqrt(2.0 * d - 1.0) / d + std::log(2.0 * d) / (2.0 * d) + friedman_c / d);
  s.tree_reference = 1.0 - 2.0 * std::sqrt(2.0 * d - 1.0) / (2.0 * d);
  s.min = *std::min_element(s.lambdas.begin(), s.lambdas.end());
  s.max = *std::max_element(s.lambdas.begin(), s.lambdas.end());
  s.mean = std::accumulate(s.lambdas.begin(), s.lambdas.end(), 0.0) / static_cast<double>(samples);
  double var = 0.0;
  std::size_t above = 0;
  for (double l : s.lambdas) {
    var += (l - s.mean) * (l - s.mean);
    if (l >= s.friedman_threshold) ++above;
  }
  s.variance = samples > 1 ? var / static_cast<double>(samples - 1) : 0.0;
  s.fraction_above_threshold = static_cast<double>(above) / static_cast<double>(samples);
  return s;
}

namespace {

std::vector<Letter> alphabet(std::size_t m) {
  std::vector<Letter> letters;
  for (int i = -static_cast<int>(m); i <= static_cast<int>(m); ++i) {
    if (i != 0) letters.push_back(i);
  }
  return letters;
}

}  // namespace

std::vector<Relator> cyclically_reduced_words(std::size_t m) {
  require(m >= 1 && m <= 10000, ErrorCode::InvalidArgument, "generator count out of range");
  const auto letters = alphabet(m);
  std::vector<Relator> words;
  for (Letter x : letters) {
    for (Letter y : letters) {
      if (y == -x) continue;
      for (Letter z : letters) {
        if (z == -y || z == -x) continue;
        words.push_back({x, y, z});
      }
    }
  }
  return words;
}

std::size_t relator_count(std::size_t m, double density) {
  require(m >= 2, ErrorCode::Domain, "density model needs m >= 2");
  require(density > 0.0 && density < 1.0, ErrorCode::Domain, "density must lie in (0, 1)");
  const double base = 2.0 * static_cast<double>(m) - 1.0;
  const double n = (2.0 * static_cast<double>(m) / base) * std::pow(base, 3.0 * density);
  return static_cast<std::size_t>(std::floor(n + 0.5));
}

Presentation density_presentation(std::size_t m, double density, std::uint64_t seed) {
  const std::size_t count = relator_count(m, density);
  std::vector<Relator> pool = cyclically_reduced_words(m);
  require(count <= pool.size(), ErrorCode::Domain,
          "N = " + std::to_string(count) + " exceeds the " + std::to_string(pool.size()) +
              " cyclically reduced words of length 3");
  // Partial Fisher-Yates: the first `count` slots become a uniform sample.
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  Presentation pres{m, density, seed, std::vector<Relator>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count))};
  std::sort(pres.relators.begin(), pres.relators.end());
  return pres;
}

void check_presentation(const Presentation& pres) {
  require(pres.m >= 1, ErrorCode::InvalidArgument, "presentation needs at least one generator");
  std::set<Relator> seen;
  for (const Relator& r : pres.relators) {
    const std::string name = relator_name(r, pres.m);
    for (Letter x : r) {
      require(x != 0 && static_cast<std::size_t>(std::abs(x)) <= pres.m, ErrorCode::InvalidArgument,
              "relator " + name + " uses an unknown letter");
    }
    require(r[1] != -r[0] && r[2] != -r[1], ErrorCode::InvalidArgument, "relator " + name + " is not reduced");
    require(r[0] != -r[2], ErrorCode::InvalidArgument, "relator " + name + " is not cyclically reduced");
    require(seen.insert(r).second, ErrorCode::InvalidArgument, "duplicate relator " + name);
  }
}

std::string letter_name(Letter x, std::size_t m) {
  const auto i = static_cast<std::size_t>(std::abs(x));
  std::string base = m <= 26 ? std::string(1, static_cast<char>('a' + i - 1)) : "s" + std::to_string(i);
  return x < 0 ? base + "^-1" : base;
}

std::string relator_name(const Relator& r, std::size_t m) {
  return letter_name(r[0], m) + " " + letter_name(r[1], m) + " " + letter_name(r[2], m);
}

Vertex letter_vertex(Letter x) {
  const auto i = static_cast<Vertex>(std::abs(x) - 1);
  return x > 0 ? 2 * i : 2 * i + 1;
}

std::string to_string(LinkRule rule) { return rule == LinkRule::Geometric ? "geometric" : "literal"; }

WeightedGraph link_graph_of_presentation(const Presentation& pres, LinkRule rule) {
  check_presentation(pres);
  std::vector<Edge> edges;
  for (const Relator& r : pres.relators) {
    const auto [x, y, z] = r;
    if (rule == LinkRule::Geometric) {
      edges.push_back({letter_vertex(-x), letter_vertex(y), 1.0});
      edges.push_back({letter_vertex(-y), letter_vertex(z), 1.0});
      edges.push_back({letter_vertex(-z), letter_vertex(x), 1.0});
    } else {
      edges.push_back({letter_vertex(-x), letter_vertex(y), 1.0});
      edges.push_back({letter_vertex(z), letter_vertex(-x), 1.0});
      edges.push_back({letter_vertex(y), letter_vertex(z), 1.0});
    }
  }
  return WeightedGraph(2 * pres.m, std::move(edges));
}

ZukVerdict zuk_verdict(const Presentation& pres, LinkRule rule) {
  const WeightedGraph link = link_graph_of_presentation(pres, rule);
  const SpectralReport report = scalar_spectral_gap(link);
  ZukVerdict v;
  v.m = pres.m;
  v.relators = pres.relators.size();
  v.connected = report.connected;
  v.lambda = report.lambda;
  v.certified = v.connected && v.lambda > 0.5;
  return v;
}

}  // namespace garland
