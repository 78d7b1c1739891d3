#pragma once

#include <cstdint>

namespace uxlens {

inline constexpr double kDefaultFramesPerSecond = 1.0;
inline constexpr int kDefaultTokensPerFrame = 258;
inline constexpr std::int64_t kDefaultTextReserveTokens = 4096;
inline constexpr std::int64_t kDefaultContextLimitTokens = 1048576;

// Estimated context consumption of a video: ceil(duration * fps) frames,
// each contributing a fixed token count.
std::int64_t estimate_video_tokens(double duration_seconds,
                                   double fps = kDefaultFramesPerSecond,
                                   int tokens_per_frame = kDefaultTokensPerFrame);

struct BudgetVerdict {
    bool ok = false;
    std::int64_t excess = 0; // tokens over the limit; 0 when ok
};

BudgetVerdict check_context_budget(std::int64_t estimated_tokens,
                                   std::int64_t context_limit,
                                   std::int64_t text_reserve = kDefaultTextReserveTokens);

} // namespace uxlens
