#include "uxlens/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]]; // path halving
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Smaller root wins so components stay keyed by first member.
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

} // namespace

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension())
        throw DimensionMismatchError("cosine: dimensions differ (" +
                                     std::to_string(a.dimension()) + " vs " +
                                     std::to_string(b.dimension()) + ")");

    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        dot += a.components[i] * b.components[i];
        norm_a += a.components[i] * a.components[i];
        norm_b += b.components[i] * b.components[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0) throw ZeroVectorError("cosine: zero-magnitude vector");

    const double value = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    return std::clamp(value, -1.0, 1.0);
}

std::vector<IndexGroup> group_indices_by_similarity(const std::vector<EmbeddingVector>& vectors,
                                                    double threshold) {
    const std::size_t n = vectors.size();
    if (n == 0) return {};

    std::map<std::pair<std::size_t, std::size_t>, double> sims;
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sim = cosine(vectors[i], vectors[j]);
            sims[{i, j}] = sim;
            if (sim >= threshold) uf.unite(i, j);
        }
    }

    // Collect members per root; roots are the smallest index of their
    // component, so iterating in index order yields groups ordered by
    // smallest member and members in original order.
    std::map<std::size_t, IndexGroup> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].members.push_back(i);

    std::vector<IndexGroup> groups;
    groups.reserve(by_root.size());
    for (auto& [root, group] : by_root) {
        for (std::size_t x = 0; x < group.members.size(); ++x) {
            for (std::size_t y = x + 1; y < group.members.size(); ++y) {
                const auto key = std::make_pair(group.members[x], group.members[y]);
                group.pair_similarities[key] = sims.at(key);
            }
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

} // namespace uxlens
