#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gband/band.hpp"
#include "gband/errors.hpp"
#include "gband/rng.hpp"
#include "gband/step_fuzzy.hpp"

namespace gband {

class Graphon;
Graphon validate_graphon(const StepFuzzy2D& f);

/// Symmetric step fuzzy set of [0,1]^2. Construction goes through
/// validate_graphon, so a Graphon value is always exactly symmetric.
class Graphon {
public:
    const StepFuzzy2D& carrier() const { return carrier_; }
    const Partition& partition() const { return carrier_.partition(); }
    double sup() const { return sup_value(carrier_); }

    bool operator==(const Graphon& other) const { return carrier_ == other.carrier_; }

private:
    explicit Graphon(StepFuzzy2D f) : carrier_(std::move(f)) {}
    friend Graphon validate_graphon(const StepFuzzy2D& f);

    StepFuzzy2D carrier_;
};

inline Graphon validate_graphon(const StepFuzzy2D& f) {
    const std::size_t k = f.block_count();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (f.value(i, j) != f.value(j, i)) {
                throw InvalidInput("not symmetric: blocks (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") and (" + std::to_string(j) +
                                   "," + std::to_string(i) + ") differ");
            }
        }
    }
    return Graphon(f);
}

/// Composition action of an arbitrary fuzzy set on a graphon. The result is
/// again a graphon (graphons are a left ideal); a validation failure here
/// would be a library defect, not a caller error.
inline Graphon left_act(const StepFuzzy2D& f, const Graphon& w) {
    try {
        return validate_graphon(compose(f, w.carrier()));
    } catch (const InvalidInput& e) {
        throw InvariantViolation(std::string("left_act produced a non-graphon: ") +
                                 e.what());
    }
}

/// sigma (a.e. equality) and eta (equal sups) both hold.
inline bool sigma_eta_related(const Graphon& w1, const Graphon& w2) {
    return ae_equal(w1.carrier(), w2.carrier()) &&
           eta_related(w1.carrier(), w2.carrier());
}

struct CongruenceReport {
    bool right_side = false; // W1 o W  ~  W2 o W
    bool left_side = false;  // W o W1  ~  W o W2
    bool both() const { return right_side && left_side; }
};

/// For sigma-eta-related W1, W2 and any W, composing on either side must land
/// in the same sigma-eta class again.
inline CongruenceReport congruence_check(const Graphon& w1, const Graphon& w2,
                                         const Graphon& w) {
    if (!sigma_eta_related(w1, w2)) {
        throw InvalidInput("congruence_check requires sigma-eta-related operands");
    }
    CongruenceReport r;
    r.right_side = sigma_eta_related(left_act(w1.carrier(), w),
                                     left_act(w2.carrier(), w));
    r.left_side = sigma_eta_related(left_act(w.carrier(), w1),
                                    left_act(w.carrier(), w2));
    return r;
}

/// Labelled finite simple graph, vertices 1..n. Edges are stored normalized
/// (i < j, sorted); adjacency is O(1) for the graph sizes the guards allow.
class SimpleGraph {
public:
    SimpleGraph(std::size_t n, std::vector<std::pair<int, int>> edge_list)
        : n_(n) {
        if (n_ == 0) throw InvalidInput("graph needs at least one vertex");
        edges_.reserve(edge_list.size());
        for (auto [a, b] : edge_list) {
            if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n_ ||
                static_cast<std::size_t>(b) > n_) {
                throw InvalidInput("edge endpoint out of range");
            }
            if (a == b) throw InvalidInput("loops are not allowed");
            edges_.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
            throw InvalidInput("duplicate edge");
        }
        // O(1) adjacency matrix for the sizes the exact guards allow; larger
        // hosts (Monte-Carlo territory) fall back to binary search.
        if (n_ <= 4096) {
            adj_.assign(n_ * n_, 0);
            for (auto [a, b] : edges_) {
                adj_[index(a, b)] = 1;
                adj_[index(b, a)] = 1;
            }
        }
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool adjacent(int a, int b) const {
        if (!adj_.empty()) return adj_[index(a, b)] != 0;
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        return std::binary_search(edges_.begin(), edges_.end(), key);
    }

private:
    std::size_t index(int a, int b) const {
        return (static_cast<std::size_t>(a) - 1) * n_ +
               (static_cast<std::size_t>(b) - 1);
    }

    std::size_t n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint8_t> adj_;
};

/// W-random graph G(n, W): latent positions x_1..x_n are drawn first (uniform,
/// in vertex order), then one coin per pair {i,j} in lexicographic order with
/// edge probability W(x_i, x_j). The draw order is the reproducibility
/// contract for this sampler.
inline SimpleGraph sample_w_random_graph(const Graphon& w, std::size_t n,
                                         std::uint64_t seed) {
    if (n == 0) throw InvalidInput("sample_w_random_graph: n must be >= 1");
    Rng rng(seed);
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.uniform01();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = w.carrier().value_at(xs[i], xs[j]);
            if (rng.uniform01() < p) {
                edges.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
            }
        }
    }
    return SimpleGraph(n, std::move(edges));
}

/// Associated step graphon W_G: uniform n-block partition, value 1 on blocks
/// of edges, 0 elsewhere (diagonal 0 since simple graphs have no loops).
inline Graphon graph_to_graphon(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<double> v(n * n, 0.0);
    for (auto [a, b] : g.edges()) {
        v[(static_cast<std::size_t>(a) - 1) * n + (static_cast<std::size_t>(b) - 1)] = 1.0;
        v[(static_cast<std::size_t>(b) - 1) * n + (static_cast<std::size_t>(a) - 1)] = 1.0;
    }
    return validate_graphon(StepFuzzy2D(Partition::uniform(n), std::move(v)));
}

} // namespace gband
