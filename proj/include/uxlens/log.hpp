#pragma once

#include <string>

namespace uxlens {

// Progress and warnings go to standard error, prefixed per scenario;
// reports only ever go to files.
void log_info(const std::string& scenario_id, const std::string& message);
void log_warn(const std::string& scenario_id, const std::string& message);

} // namespace uxlens
