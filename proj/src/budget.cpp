#include "uxlens/budget.hpp"

#include <cmath>

#include "uxlens/errors.hpp"

namespace uxlens {

std::int64_t estimate_video_tokens(double duration_seconds, double fps, int tokens_per_frame) {
    if (duration_seconds < 0.0 || !std::isfinite(duration_seconds))
        throw Error("duration_seconds must be a non-negative finite number");
    if (fps <= 0.0 || !std::isfinite(fps))
        throw Error("fps must be positive");
    if (tokens_per_frame <= 0)
        throw Error("tokens_per_frame must be positive");

    const auto frames = static_cast<std::int64_t>(std::ceil(duration_seconds * fps));
    return frames * tokens_per_frame;
}

BudgetVerdict check_context_budget(std::int64_t estimated_tokens, std::int64_t context_limit,
                                   std::int64_t text_reserve) {
    if (context_limit <= 0)
        throw Error("context_limit must be positive");

    const std::int64_t needed = estimated_tokens + text_reserve;
    if (needed <= context_limit) return {true, 0};
    return {false, needed - context_limit};
}

} // namespace uxlens
