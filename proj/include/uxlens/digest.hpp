#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace uxlens {

// Streaming SHA-256. Self-contained so content digests stay identical across
// platforms and build configurations.
class Sha256 {
public:
    Sha256();

    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes and returns the lowercase hex digest. The object must not be
    // updated afterwards.
    std::string hex_digest();

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffer_len_ = 0;
    std::uint64_t total_len_ = 0;
};

std::string sha256_hex(std::string_view bytes);

// Digest of a file's contents. Throws AttachmentUnreadableError if the file
// cannot be opened or read.
std::string sha256_file(const std::filesystem::path& path);

} // namespace uxlens
