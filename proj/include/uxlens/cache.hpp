#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace uxlens {

// Content-addressed response store: one file per entry named by the request
// digest, with a small JSON sidecar describing the request. Reads are
// lock-free; writes are serialized and atomic (temp file + rename).
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    bool contains(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, std::string_view value,
             const nlohmann::json& request_summary);

private:
    std::filesystem::path entry_path(const std::string& key) const;

    std::filesystem::path dir_;
    mutable std::mutex write_mutex_;
};

} // namespace uxlens
