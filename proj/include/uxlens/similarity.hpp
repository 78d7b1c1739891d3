#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace uxlens {

struct EmbeddingVector {
    std::vector<double> components;

    std::size_t dimension() const { return components.size(); }
};

// dot(a,b) / (|a|·|b|), clamped to [-1, 1] against rounding drift.
// Throws DimensionMismatchError on unequal dimensions and ZeroVectorError
// when either vector has zero magnitude.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// One connected component of the thresholded similarity graph, as indices
// into the input vector list. Members keep their original order and groups
// are ordered by smallest member index. pair_similarities holds the cosine
// of every within-group pair, keyed by (smaller index, larger index).
struct IndexGroup {
    std::vector<std::size_t> members;
    std::map<std::pair<std::size_t, std::size_t>, double> pair_similarities;
};

// Partition of the vectors into connected components of the graph whose
// edges are pairs with cosine >= threshold.
std::vector<IndexGroup> group_indices_by_similarity(const std::vector<EmbeddingVector>& vectors,
                                                    double threshold);

} // namespace uxlens
