#include "xorcert/generate.hpp"

#include <algorithm>
#include <string>

#include "xorcert/error.hpp"
#include "xorcert/rng.hpp"

namespace xorcert {

namespace {

constexpr std::uint64_t kGraphStreamSalt = 0x6A09E667F3BCC909ULL;

// Sorted uniform subset of `size` distinct values from [lo, lo + range).
std::vector<Vertex> random_subset(Xoshiro256& rng, std::size_t size, Vertex lo,
                                  std::size_t range) {
  std::vector<Vertex> out;
  out.reserve(size);
  while (out.size() < size) {
    const auto v = static_cast<Vertex>(lo + rng.bounded(range));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t graph_source(const GenSpec& spec) {
  return (spec.family == "random" ? spec.seed : spec.graph_seed) ^ kGraphStreamSalt;
}

std::size_t cluster_size(const GenSpec& spec, std::size_t min_size) {
  std::size_t c = spec.cluster_size != 0 ? spec.cluster_size
                                         : std::max(min_size, spec.n / 3);
  require(c >= min_size && c <= spec.n, ErrorCode::kInvalidArgument,
          "cluster size must lie in [" + std::to_string(min_size) + ", n]");
  return c;
}

void check_common(const GenSpec& spec) {
  require(spec.m >= 1, ErrorCode::kInvalidArgument, "m must be at least 1");
  require(spec.n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
}

// Hypergraph of the requested k-XOR family, without signs.
std::vector<std::vector<Vertex>> kxor_hypergraph(const GenSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t k = spec.k_or_ell;
  Xoshiro256 rng(graph_source(spec));
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(spec.m);
  if (spec.family == "random" || spec.family == "semi-random") {
    for (std::size_t e = 0; e < spec.m; ++e) edges.push_back(random_subset(rng, k, 0, n));
  } else if (spec.family == "star") {
    for (std::size_t e = 0; e < spec.m; ++e) {
      auto rest = random_subset(rng, k - 1, 1, n - 1);
      rest.insert(rest.begin(), 0);
      edges.push_back(std::move(rest));
    }
  } else if (spec.family == "cluster") {
    const std::size_t c = cluster_size(spec, k + 1);
    for (std::size_t e = 0; e < spec.m; ++e) edges.push_back(random_subset(rng, k, 0, c));
  } else if (spec.family == "heavy-group") {
    // Odd k: clause = {0} + F_j + R with F_j fixed per group; even k: F_j + R.
    const bool odd = k % 2 == 1;
    const std::size_t half = odd ? (k - 1) / 2 : k / 2;
    require(half >= 1, ErrorCode::kInvalidArgument, "heavy-group needs k >= 2");
    const std::size_t first = odd ? 1 : 0;
    const std::size_t pool_lo = first + spec.groups * half;
    require(pool_lo + half <= n, ErrorCode::kInvalidArgument,
            "heavy-group family needs n >= " + std::to_string(pool_lo + half));
    require(spec.groups * spec.group_size <= spec.m, ErrorCode::kInvalidArgument,
            "heavy-group family needs m >= groups * group_size");
    for (std::size_t j = 0; j < spec.groups; ++j) {
      for (std::size_t g = 0; g < spec.group_size; ++g) {
        std::vector<Vertex> clause;
        if (odd) clause.push_back(0);
        for (std::size_t h = 0; h < half; ++h) {
          clause.push_back(static_cast<Vertex>(first + j * half + h));
        }
        auto tail = random_subset(rng, half, static_cast<Vertex>(pool_lo), n - pool_lo);
        clause.insert(clause.end(), tail.begin(), tail.end());
        edges.push_back(std::move(clause));
      }
    }
    while (edges.size() < spec.m) edges.push_back(random_subset(rng, k, 0, n));
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown generator family '" + spec.family + "'");
  }
  return edges;
}

struct PartEdge {
  std::uint32_t part;
  Vertex u;
  Vertex v;
};

std::vector<PartEdge> partitioned_graph(const GenSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t ell = spec.k_or_ell;
  Xoshiro256 rng(graph_source(spec));
  std::vector<PartEdge> edges;
  edges.reserve(spec.m);
  auto random_pair = [&](std::size_t range) {
    auto p = random_subset(rng, 2, 0, range);
    return std::pair{p[0], p[1]};
  };
  if (spec.family == "random" || spec.family == "semi-random") {
    for (std::size_t e = 0; e < spec.m; ++e) {
      const auto part = static_cast<std::uint32_t>(rng.bounded(ell));
      auto [u, v] = random_pair(n);
      edges.push_back({part, u, v});
    }
  } else if (spec.family == "star") {
    for (std::size_t e = 0; e < spec.m; ++e) {
      edges.push_back({0, 0, static_cast<Vertex>(1 + rng.bounded(n - 1))});
    }
  } else if (spec.family == "cluster") {
    const std::size_t c = cluster_size(spec, 3);
    for (std::size_t e = 0; e < spec.m; ++e) {
      const auto part = static_cast<std::uint32_t>(rng.bounded(ell));
      auto [u, v] = random_pair(c);
      edges.push_back({part, u, v});
    }
  } else if (spec.family == "heavy-group") {
    require(spec.groups + 1 <= n, ErrorCode::kInvalidArgument,
            "heavy-group family needs n > groups");
    require(spec.groups * spec.group_size <= spec.m, ErrorCode::kInvalidArgument,
            "heavy-group family needs m >= groups * group_size");
    const std::size_t pool = n - spec.groups;
    for (std::size_t j = 0; j < spec.groups; ++j) {
      for (std::size_t g = 0; g < spec.group_size; ++g) {
        const auto u = static_cast<Vertex>(spec.groups + rng.bounded(pool));
        edges.push_back({static_cast<std::uint32_t>(j % ell), static_cast<Vertex>(j), u});
      }
    }
    while (edges.size() < spec.m) {
      const auto part = static_cast<std::uint32_t>(rng.bounded(ell));
      auto [u, v] = random_pair(n);
      edges.push_back({part, u, v});
    }
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown generator family '" + spec.family + "'");
  }
  return edges;
}

}  // namespace

const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> families = {"random", "semi-random", "star",
                                                    "cluster", "heavy-group"};
  return families;
}

KXorInstance gen_random_kxor(const GenSpec& spec) {
  require(spec.family == "random" || spec.family == "semi-random",
          ErrorCode::kInvalidArgument, "gen_random_kxor expects a random family");
  check_common(spec);
  require(spec.k_or_ell >= 2 && spec.k_or_ell <= spec.n, ErrorCode::kInvalidArgument,
          "arity k must satisfy 2 <= k <= n");
  auto edges = kxor_hypergraph(spec);
  Xoshiro256 signs(spec.seed);
  std::vector<Clause> clauses;
  clauses.reserve(edges.size());
  for (auto& e : edges) clauses.push_back({std::move(e), static_cast<Sign>(signs.sign())});
  return KXorInstance(spec.n, spec.k_or_ell, std::move(clauses));
}

KXorInstance gen_adversarial_hypergraph(const GenSpec& spec) {
  check_common(spec);
  require(spec.k_or_ell >= 2 && spec.k_or_ell <= spec.n, ErrorCode::kInvalidArgument,
          "arity k must satisfy 2 <= k <= n");
  auto edges = kxor_hypergraph(spec);
  Xoshiro256 signs(spec.seed);
  std::vector<Clause> clauses;
  clauses.reserve(edges.size());
  for (auto& e : edges) clauses.push_back({std::move(e), static_cast<Sign>(signs.sign())});
  return KXorInstance(spec.n, spec.k_or_ell, std::move(clauses));
}

PartitionedInstance gen_partitioned(const GenSpec& spec) {
  check_common(spec);
  require(spec.n >= 2, ErrorCode::kInvalidArgument, "partitioned instances need n >= 2");
  require(spec.k_or_ell >= 1, ErrorCode::kInvalidArgument, "part count must be >= 1");
  auto edges = partitioned_graph(spec);
  Xoshiro256 signs(spec.seed);
  std::vector<PartConstraint> constraints;
  constraints.reserve(edges.size());
  for (const PartEdge& e : edges) {
    constraints.push_back({e.part, e.u, e.v, static_cast<Sign>(signs.sign())});
  }
  return PartitionedInstance(spec.n, spec.k_or_ell, std::move(constraints));
}

AnyInstance generate(const GenSpec& spec) {
  if (spec.target == Target::kPartitioned) return gen_partitioned(spec);
  if (spec.family == "random" || spec.family == "semi-random") return gen_random_kxor(spec);
  return gen_adversarial_hypergraph(spec);
}

}  // namespace xorcert
