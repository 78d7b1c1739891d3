#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uxlens/errors.hpp"
#include "uxlens/similarity.hpp"

using namespace uxlens;

namespace {

// Independent brute-force oracle: depth-first components over the
// thresholded similarity graph, computed pairwise from scratch.
std::vector<std::vector<std::size_t>> oracle_components(const std::vector<EmbeddingVector>& vs,
                                                        double threshold) {
    const std::size_t n = vs.size();
    std::vector<bool> visited(n, false);
    std::vector<std::vector<std::size_t>> components;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        std::vector<std::size_t> stack = {start};
        std::vector<std::size_t> component;
        visited[start] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (std::size_t w = 0; w < n; ++w) {
                if (visited[w] || w == v) continue;
                if (cosine(vs[v], vs[w]) >= threshold) {
                    visited[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    std::sort(components.begin(), components.end());
    return components;
}

std::vector<std::vector<std::size_t>> as_sorted_partition(const std::vector<IndexGroup>& groups) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& group : groups) {
        auto members = group.members;
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("cosine basics") {
    const EmbeddingVector v{{0.3, -0.7, 2.0}};
    CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine({{1, 0}}, {{0, 1}}) == doctest::Approx(0.0));
    CHECK(cosine({{1, 0}}, {{1, 1}}) == doctest::Approx(0.70710678).epsilon(1e-9));

    CHECK_THROWS_AS(cosine({{1, 0}}, {{1, 0, 0}}), DimensionMismatchError);
    CHECK_THROWS_AS(cosine({{0, 0}}, {{1, 0}}), ZeroVectorError);
}

TEST_CASE("cosine is scale invariant and clamped") {
    std::mt19937 rng(5);
    const auto vectors = uxtest::random_vectors(rng, 50, 6);
    std::uniform_real_distribution<double> scale(0.001, 900.0);
    for (std::size_t i = 0; i + 1 < vectors.size(); i += 2) {
        const double a = scale(rng);
        EmbeddingVector scaled = vectors[i];
        for (auto& c : scaled.components) c *= a;
        CHECK(cosine(scaled, vectors[i + 1]) ==
              doctest::Approx(cosine(vectors[i], vectors[i + 1])).epsilon(1e-9));
        const double self = cosine(vectors[i], scaled);
        CHECK(self == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(self <= 1.0); // clamp holds even under rounding drift
    }
}

TEST_CASE("documented grouping example: chain closes transitively") {
    // sims: A-B 0.9, B-C ~0.8, A-C < 0.7 -> one component
    const std::vector<EmbeddingVector> vs = {
        {{1.0, 0.0}},
        {{0.9, std::sqrt(1 - 0.81)}},
        {{0.436, 0.9}},
    };
    CHECK(cosine(vs[0], vs[1]) == doctest::Approx(0.9));
    CHECK(cosine(vs[1], vs[2]) > 0.7);
    CHECK(cosine(vs[0], vs[2]) < 0.7);

    const auto groups = group_indices_by_similarity(vs, 0.7);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].members == std::vector<std::size_t>{0, 1, 2});
    CHECK(groups[0].pair_similarities.size() == 3);
}

TEST_CASE("all pairs below threshold yield singletons in input order") {
    const std::vector<EmbeddingVector> vs = {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}};
    const auto groups = group_indices_by_similarity(vs, 0.7);
    REQUIRE(groups.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(groups[i].members == std::vector<std::size_t>{i});
}

TEST_CASE("empty input yields empty output") {
    CHECK(group_indices_by_similarity({}, 0.7).empty());
}

TEST_CASE("threshold 1.0 groups only identical directions") {
    const std::vector<EmbeddingVector> vs = {{{1, 0}}, {{2, 0}}, {{0.9999, 0.01}}};
    const auto groups = group_indices_by_similarity(vs, 1.0);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].members == std::vector<std::size_t>{0, 1});
    CHECK(groups[1].members == std::vector<std::size_t>{2});
}

TEST_CASE("grouping equals the brute-force oracle on random instances") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> count(0, 12);
    std::uniform_int_distribution<std::size_t> dims(2, 16);
    for (int trial = 0; trial < 300; ++trial) {
        const auto vectors = uxtest::random_vectors(rng, count(rng), dims(rng));
        for (double threshold : {0.5, 0.7, 0.9}) {
            const auto groups = group_indices_by_similarity(vectors, threshold);
            CHECK(as_sorted_partition(groups) == oracle_components(vectors, threshold));
        }
    }
}

TEST_CASE("raising the threshold never merges groups") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<std::size_t> count(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto vectors = uxtest::random_vectors(rng, count(rng), 4);
        std::size_t previous = 0;
        for (double threshold : {0.3, 0.5, 0.7, 0.9, 1.0}) {
            const std::size_t groups = group_indices_by_similarity(vectors, threshold).size();
            CHECK(groups >= previous);
            previous = groups;
        }
    }
}

TEST_CASE("groups are ordered by smallest member with members in input order") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto vectors = uxtest::random_vectors(rng, 10, 3);
        const auto groups = group_indices_by_similarity(vectors, 0.8);
        std::size_t last_first = 0;
        bool first_group = true;
        for (const auto& group : groups) {
            REQUIRE(!group.members.empty());
            CHECK(std::is_sorted(group.members.begin(), group.members.end()));
            if (!first_group) CHECK(group.members.front() > last_first);
            last_first = group.members.front();
            first_group = false;
        }
    }
}
