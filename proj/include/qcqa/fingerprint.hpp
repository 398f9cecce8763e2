#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qcqa {

/// Incremental 64-bit FNV-1a. Used for build metadata, not for security.
class Fingerprint {
public:
    Fingerprint& add(std::string_view bytes) noexcept
    {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }

    std::uint64_t value() const noexcept { return state_; }

    /// 16 lowercase hex digits.
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace qcqa
