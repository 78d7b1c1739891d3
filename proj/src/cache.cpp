#include "uxlens/cache.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

void write_atomically(const std::filesystem::path& target, std::string_view bytes) {
    const auto tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file: " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error("short write on cache file: " + tmp);
    }
    std::filesystem::rename(tmp, target);
}

} // namespace

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path DiskCache::entry_path(const std::string& key) const {
    return dir_ / key;
}

bool DiskCache::contains(const std::string& key) const {
    return std::filesystem::exists(entry_path(key));
}

std::optional<std::string> DiskCache::get(const std::string& key) const {
    std::ifstream in(entry_path(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void DiskCache::put(const std::string& key, std::string_view value,
                    const nlohmann::json& request_summary) {
    std::lock_guard<std::mutex> lock(write_mutex_);
    write_atomically(entry_path(key), value);

    nlohmann::json sidecar = {
        {"request", request_summary},
        {"created_at", iso8601_now()},
    };
    const auto meta = entry_path(key);
    write_atomically(meta.string() + ".meta.json", sidecar.dump(2) + "\n");
}

} // namespace uxlens
