#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace uxlens {

enum class OrderVerdictKind { valid, repaired, unrepairable };

struct OrderVerdict {
    OrderVerdictKind kind = OrderVerdictKind::unrepairable;
    std::vector<int> order; // a valid permutation of 0..n-1 unless unrepairable
};

// True iff `order` is a permutation of 0..n-1.
bool order_is_valid(const std::vector<std::int64_t>& order, int n);

// Keeps the first occurrence of each in-range index in the given order,
// drops duplicates and out-of-range entries, then appends the missing
// indices in ascending order. Always yields a valid permutation.
std::vector<int> repair_order(const std::vector<std::int64_t>& order, int n);

// List path: the verdict is valid or repaired, never unrepairable.
OrderVerdict validate_order(const std::vector<std::int64_t>& order, int n);

// JSON path: unrepairable iff `order_field` is absent (null) or not an array
// of integers.
OrderVerdict validate_order(const nlohmann::json& order_field, int n);

} // namespace uxlens
