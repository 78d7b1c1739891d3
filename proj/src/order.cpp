#include "uxlens/order.hpp"

#include <nlohmann/json.hpp>

#include "uxlens/errors.hpp"

namespace uxlens {

bool order_is_valid(const std::vector<std::int64_t>& order, int n) {
    if (order.size() != static_cast<std::size_t>(n)) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const std::int64_t v : order) {
        if (v < 0 || v >= n) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::vector<int> repair_order(const std::vector<std::int64_t>& order, int n) {
    std::vector<int> repaired;
    repaired.reserve(static_cast<std::size_t>(n));
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    for (const std::int64_t v : order) {
        if (v < 0 || v >= n) continue;
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = true;
        repaired.push_back(static_cast<int>(v));
    }
    for (int i = 0; i < n; ++i) {
        if (!used[static_cast<std::size_t>(i)]) repaired.push_back(i);
    }
    return repaired;
}

OrderVerdict validate_order(const std::vector<std::int64_t>& order, int n) {
    if (n < 1) throw Error("validate_order: n must be >= 1");
    if (order_is_valid(order, n)) {
        std::vector<int> out(order.begin(), order.end());
        return {OrderVerdictKind::valid, std::move(out)};
    }
    return {OrderVerdictKind::repaired, repair_order(order, n)};
}

OrderVerdict validate_order(const nlohmann::json& order_field, int n) {
    if (n < 1) throw Error("validate_order: n must be >= 1");
    if (!order_field.is_array()) return {OrderVerdictKind::unrepairable, {}};

    // Non-index entries map to -1 so the repair pass drops them like any
    // other out-of-range value.
    std::vector<std::int64_t> order;
    order.reserve(order_field.size());
    for (const auto& v : order_field) {
        if (v.is_number_integer())
            order.push_back(v.get<std::int64_t>());
        else
            order.push_back(-1);
    }
    return validate_order(order, n);
}

} // namespace uxlens
