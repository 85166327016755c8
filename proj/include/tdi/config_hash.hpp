#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace tdi {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a, stable across platforms and builds so CSV headers reproduce.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash_hex(const std::string& canonical_config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_config)));
    return std::string(buf);
}

}  // namespace tdi
