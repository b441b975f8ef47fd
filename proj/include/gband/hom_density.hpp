#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gband/errors.hpp"
#include "gband/graphon.hpp"
#include "gband/numeric.hpp"
#include "gband/rng.hpp"

namespace gband {

/// Exact enumeration budget shared by hom_count and t_step_exact.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000ull;

/// base^exp with saturation just above the budget, so guards never overflow.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > kEnumerationBudget) return kEnumerationBudget + 1;
        r *= base;
    }
    return r;
}

struct DensityEstimate {
    enum class Method { exact_blocks, exact_hom, monte_carlo };

    double value = 0.0;
    double std_error = 0.0;
    long samples = 0; // 0 for exact methods
    Method method = Method::exact_blocks;
};

inline const char* method_name(DensityEstimate::Method m) {
    switch (m) {
        case DensityEstimate::Method::exact_blocks: return "exact-blocks";
        case DensityEstimate::Method::exact_hom: return "exact-hom";
        case DensityEstimate::Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

namespace detail {

// Edges of F grouped by their larger endpoint (0-based), so a DFS over vertex
// images can check exactly the edges into already-assigned vertices.
inline std::vector<std::vector<int>> earlier_neighbors(const SimpleGraph& f) {
    std::vector<std::vector<int>> by_vertex(f.vertex_count());
    for (auto [a, b] : f.edges()) {
        by_vertex[static_cast<std::size_t>(b) - 1].push_back(a - 1);
    }
    return by_vertex;
}

inline std::uint64_t hom_count_rec(const SimpleGraph& g,
                                   const std::vector<std::vector<int>>& nbrs,
                                   std::vector<int>& image, std::size_t depth) {
    const std::size_t kf = nbrs.size();
    const std::size_t n = g.vertex_count();
    if (depth == kf) return 1;
    std::uint64_t total = 0;
    for (std::size_t v = 1; v <= n; ++v) {
        bool ok = true;
        for (int u : nbrs[depth]) {
            if (!g.adjacent(image[static_cast<std::size_t>(u)], static_cast<int>(v))) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        image[depth] = static_cast<int>(v);
        total += hom_count_rec(g, nbrs, image, depth + 1);
    }
    return total;
}

} // namespace detail

/// Number of (not necessarily injective) maps V(F) -> V(G) carrying every edge
/// of F to an edge of G. Enumerates images in mixed-radix (lexicographic)
/// order with subtree pruning, which does not change the count.
inline std::uint64_t hom_count(const SimpleGraph& f, const SimpleGraph& g) {
    if (checked_pow(g.vertex_count(), f.vertex_count()) > kEnumerationBudget) {
        throw GuardExceeded("hom_count: |V(G)|^|V(F)| exceeds the exact budget; "
                            "use t_monte_carlo_graph");
    }
    const auto nbrs = detail::earlier_neighbors(f);
    std::vector<int> image(f.vertex_count(), 0);
    return detail::hom_count_rec(g, nbrs, image, 0);
}

/// t(F,G) = hom(F,G) / |V(G)|^|V(F)| as a reduced rational, then one division.
inline DensityEstimate t_graph(const SimpleGraph& f, const SimpleGraph& g) {
    const std::uint64_t num = hom_count(f, g);
    const std::uint64_t den = checked_pow(g.vertex_count(), f.vertex_count());
    const std::uint64_t d = std::gcd(num == 0 ? den : num, den);
    DensityEstimate e;
    e.value = static_cast<double>(num / d) / static_cast<double>(den / d);
    e.std_error = 0.0;
    e.samples = 0;
    e.method = DensityEstimate::Method::exact_hom;
    return e;
}

namespace detail {

inline void t_blocks_rec(const Graphon& w,
                         const std::vector<std::vector<int>>& nbrs,
                         std::vector<std::size_t>& block, std::size_t depth,
                         double partial, CompensatedSum& sum) {
    const std::size_t kf = nbrs.size();
    const std::size_t k = w.partition().block_count();
    if (depth == kf) {
        sum.add(partial);
        return;
    }
    for (std::size_t b = 0; b < k; ++b) {
        double term = partial * w.partition().width(b);
        for (int u : nbrs[depth]) {
            term *= w.carrier().value(block[static_cast<std::size_t>(u)], b);
            if (term == 0.0) break;
        }
        if (term == 0.0) continue; // zero subtree contributes nothing
        block[depth] = b;
        t_blocks_rec(w, nbrs, block, depth + 1, term, sum);
    }
}

} // namespace detail

/// t(F,W) for a step graphon: the defining integral collapses to the finite
/// sum over block assignments phi of prod_v p_phi(v) * prod_{ij in E} B_{phi(i)phi(j)}.
/// Assignments are enumerated in mixed-radix order; terms go through a
/// compensated accumulator.
inline DensityEstimate t_step_exact(const SimpleGraph& f, const Graphon& w) {
    if (checked_pow(w.partition().block_count(), f.vertex_count()) >
        kEnumerationBudget) {
        throw GuardExceeded("t_step_exact: k^|V(F)| exceeds the exact budget; "
                            "use t_monte_carlo");
    }
    const auto nbrs = detail::earlier_neighbors(f);
    std::vector<std::size_t> block(f.vertex_count(), 0);
    CompensatedSum sum;
    detail::t_blocks_rec(w, nbrs, block, 0, 1.0, sum);
    DensityEstimate e;
    e.value = clamp01(sum.value());
    e.std_error = 0.0;
    e.samples = 0;
    e.method = DensityEstimate::Method::exact_blocks;
    return e;
}

/// Monte-Carlo t(F,W): per sample, positions for the vertices of F are drawn
/// in vertex order, then the edge product is evaluated. Welford mean/variance;
/// std_error = sample standard deviation / sqrt(samples).
inline DensityEstimate t_monte_carlo(const SimpleGraph& f, const Graphon& w,
                                     long samples, std::uint64_t seed) {
    if (samples < 2) throw InvalidInput("t_monte_carlo: samples must be >= 2");
    Rng rng(seed);
    const std::size_t kf = f.vertex_count();
    std::vector<double> xs(kf);
    double mean = 0.0;
    double m2 = 0.0;
    for (long s = 0; s < samples; ++s) {
        for (std::size_t v = 0; v < kf; ++v) xs[v] = rng.uniform01();
        double prod = 1.0;
        for (auto [a, b] : f.edges()) {
            prod *= w.carrier().value_at(xs[static_cast<std::size_t>(a) - 1],
                                         xs[static_cast<std::size_t>(b) - 1]);
        }
        const double delta = prod - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (prod - mean);
    }
    DensityEstimate e;
    e.value = clamp01(mean);
    e.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) /
                            static_cast<double>(samples));
    e.samples = samples;
    e.method = DensityEstimate::Method::monte_carlo;
    return e;
}

/// Monte-Carlo t(F,G): fraction of uniformly random maps V(F) -> V(G) that are
/// homomorphisms, with the binomial standard error. Vertex images are drawn in
/// vertex order. This is the escape hatch when the hom_count guard trips.
inline DensityEstimate t_monte_carlo_graph(const SimpleGraph& f,
                                           const SimpleGraph& g, long samples,
                                           std::uint64_t seed) {
    if (samples < 2) throw InvalidInput("t_monte_carlo_graph: samples must be >= 2");
    Rng rng(seed);
    const std::size_t kf = f.vertex_count();
    const std::uint64_t n = g.vertex_count();
    std::vector<int> image(kf);
    long hits = 0;
    for (long s = 0; s < samples; ++s) {
        for (std::size_t v = 0; v < kf; ++v) {
            image[v] = static_cast<int>(rng.below(n)) + 1;
        }
        bool hom = true;
        for (auto [a, b] : f.edges()) {
            if (!g.adjacent(image[static_cast<std::size_t>(a) - 1],
                            image[static_cast<std::size_t>(b) - 1])) {
                hom = false;
                break;
            }
        }
        if (hom) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    DensityEstimate e;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    e.samples = samples;
    e.method = DensityEstimate::Method::monte_carlo;
    return e;
}

enum class GraphKind { complete, cycle, path, star };

inline SimpleGraph make_graph(GraphKind kind, std::size_t n) {
    std::vector<std::pair<int, int>> edges;
    switch (kind) {
        case GraphKind::complete:
            if (n < 1) throw InvalidInput("complete graph needs n >= 1");
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = i + 1; j <= n; ++j) {
                    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
                }
            }
            break;
        case GraphKind::cycle:
            if (n < 3) throw InvalidInput("cycle needs n >= 3");
            for (std::size_t i = 1; i < n; ++i) {
                edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
            }
            edges.emplace_back(1, static_cast<int>(n));
            break;
        case GraphKind::path:
            if (n < 1) throw InvalidInput("path needs n >= 1");
            for (std::size_t i = 1; i < n; ++i) {
                edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
            }
            break;
        case GraphKind::star:
            if (n < 1) throw InvalidInput("star needs n >= 1");
            for (std::size_t i = 2; i <= n; ++i) {
                edges.emplace_back(1, static_cast<int>(i));
            }
            break;
    }
    return SimpleGraph(n, std::move(edges));
}

/// Graph from an explicit edge list; n is the largest endpoint. Simplicity
/// (no loops, no duplicates) is validated by SimpleGraph.
inline SimpleGraph graph_from_edges(const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty()) throw InvalidInput("edge list is empty");
    int n = 0;
    for (auto [a, b] : edges) n = std::max({n, a, b});
    return SimpleGraph(static_cast<std::size_t>(n), edges);
}

/// CLI pattern syntax: a named family ("k3", "c5", "p4", "star6") or an inline
/// edge list "1-2,2-3,1-3".
inline SimpleGraph parse_pattern(const std::string& spec) {
    if (spec.empty()) throw InvalidInput("empty pattern spec");
    if (spec.find('-') != std::string::npos) {
        std::vector<std::pair<int, int>> edges;
        std::size_t pos = 0;
        while (pos < spec.size()) {
            std::size_t comma = spec.find(',', pos);
            if (comma == std::string::npos) comma = spec.size();
            const std::string item = spec.substr(pos, comma - pos);
            const std::size_t dash = item.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == item.size()) {
                throw InvalidInput("bad edge '" + item + "' in pattern spec");
            }
            try {
                edges.emplace_back(std::stoi(item.substr(0, dash)),
                                   std::stoi(item.substr(dash + 1)));
            } catch (const std::exception&) {
                throw InvalidInput("bad edge '" + item + "' in pattern spec");
            }
            pos = comma + 1;
        }
        return graph_from_edges(edges);
    }
    const std::size_t split = spec.find_first_of("0123456789");
    if (split == std::string::npos || split == 0) {
        throw InvalidInput("unknown pattern spec '" + spec + "'");
    }
    const std::string name = spec.substr(0, split);
    std::size_t n = 0;
    try {
        n = static_cast<std::size_t>(std::stoul(spec.substr(split)));
    } catch (const std::exception&) {
        throw InvalidInput("bad size in pattern spec '" + spec + "'");
    }
    if (name == "k") return make_graph(GraphKind::complete, n);
    if (name == "c") return make_graph(GraphKind::cycle, n);
    if (name == "p") return make_graph(GraphKind::path, n);
    if (name == "star") return make_graph(GraphKind::star, n);
    throw InvalidInput("unknown pattern family '" + name + "'");
}

} // namespace gband
