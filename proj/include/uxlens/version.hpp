#pragma once

namespace uxlens {

inline constexpr const char* kPipelineVersion = "0.1.0";

} // namespace uxlens
