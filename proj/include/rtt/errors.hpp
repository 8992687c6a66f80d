#pragma once

#include <stdexcept>
#include <string>

namespace rtt {

/// Invalid configuration, dataset, or argument. The CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ProviderFault {
    Unavailable,  // network failure, unexpected status, bad payload
    RateLimited,  // throttled; retryable
    TextTooLong,  // provider rejected the payload size
    AuthFailure,  // missing or rejected credentials
};

const char* to_string(ProviderFault fault);

/// Failure of an upstream service (translation provider or target model).
/// The CLI maps this to exit 3.
class ProviderError : public std::runtime_error {
public:
    ProviderError(ProviderFault fault, const std::string& message, int hop_index = -1)
        : std::runtime_error(message), fault_(fault), hop_index_(hop_index) {}

    ProviderFault fault() const noexcept { return fault_; }

    /// Index of the round-trip hop that failed, or -1 when not hop-specific.
    int hop_index() const noexcept { return hop_index_; }

    bool retryable() const noexcept {
        return fault_ == ProviderFault::RateLimited || fault_ == ProviderFault::Unavailable;
    }

private:
    ProviderFault fault_;
    int hop_index_;
};

inline const char* to_string(ProviderFault fault) {
    switch (fault) {
        case ProviderFault::Unavailable: return "unavailable";
        case ProviderFault::RateLimited: return "rate_limited";
        case ProviderFault::TextTooLong: return "text_too_long";
        case ProviderFault::AuthFailure: return "auth_failure";
    }
    return "unknown";
}

}  // namespace rtt
