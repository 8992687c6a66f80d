#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>
#include <type_traits>

#include "rtt/errors.hpp"

namespace rtt {

/// Exponential backoff applied to retryable provider faults
/// (RateLimited, Unavailable). Defaults: 500 ms base, factor 2, 5 attempts.
struct RetryPolicy {
    std::chrono::milliseconds base_delay{500};
    double factor = 2.0;
    int max_attempts = 5;
    /// Injectable sleeper; tests swap it out to avoid real waiting.
    std::function<void(std::chrono::milliseconds)> sleep_fn;

    /// Delay after the n-th consecutive failure (1-based): base * factor^(n-1).
    std::chrono::milliseconds delay_for_failure(int failure_count) const {
        const double scaled = static_cast<double>(base_delay.count()) *
                              std::pow(factor, failure_count - 1);
        return std::chrono::milliseconds(static_cast<long long>(scaled));
    }
};

/// Run fn, retrying retryable ProviderErrors per the policy. Non-retryable
/// faults and the final failure propagate unchanged.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& fn) -> std::invoke_result_t<Fn&> {
    int attempt = 0;
    for (;;) {
        ++attempt;
        try {
            return fn();
        } catch (const ProviderError& err) {
            if (!err.retryable() || attempt >= policy.max_attempts) throw;
            const auto delay = policy.delay_for_failure(attempt);
            if (policy.sleep_fn) {
                policy.sleep_fn(delay);
            } else {
                std::this_thread::sleep_for(delay);
            }
        }
    }
}

/// Serializes call starts so at most `requests_per_second` begin per second.
/// A limit <= 0 disables throttling. Safe for concurrent use.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_second) {
        if (requests_per_second > 0) {
            interval_ = std::chrono::nanoseconds(
                static_cast<long long>(1e9 / requests_per_second));
        }
    }

    void acquire() {
        if (interval_.count() == 0) return;
        std::chrono::steady_clock::time_point wake;
        {
            std::lock_guard<std::mutex> lock(mu_);
            const auto now = std::chrono::steady_clock::now();
            if (next_slot_ < now) next_slot_ = now;
            wake = next_slot_;
            next_slot_ += interval_;
        }
        std::this_thread::sleep_until(wake);
    }

private:
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_slot_{};
    std::chrono::nanoseconds interval_{0};
};

}  // namespace rtt
