#include "uxlens/log.hpp"

#include <cstdio>

namespace uxlens {

void log_info(const std::string& scenario_id, const std::string& message) {
    std::fprintf(stderr, "[%s] %s\n", scenario_id.c_str(), message.c_str());
}

void log_warn(const std::string& scenario_id, const std::string& message) {
    std::fprintf(stderr, "[%s] warning: %s\n", scenario_id.c_str(), message.c_str());
}

} // namespace uxlens
