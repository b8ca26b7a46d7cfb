#pragma once

// Cooperative cancellation. Long-running eliminations call check_cancelled()
// between pivots; a CancelScope installs a deadline for the current thread.

#include <chrono>
#include <optional>

#include "errors.hpp"

namespace toric {

namespace detail {
inline thread_local std::optional<std::chrono::steady_clock::time_point> cancel_deadline;
}

class CancelScope {
public:
    explicit CancelScope(std::chrono::steady_clock::duration budget)
        : saved_(detail::cancel_deadline) {
        auto d = std::chrono::steady_clock::now() + budget;
        if (!saved_ || d < *saved_) detail::cancel_deadline = d;
    }
    CancelScope(const CancelScope&) = delete;
    CancelScope& operator=(const CancelScope&) = delete;
    ~CancelScope() { detail::cancel_deadline = saved_; }

private:
    std::optional<std::chrono::steady_clock::time_point> saved_;
};

inline void check_cancelled() {
    if (detail::cancel_deadline && std::chrono::steady_clock::now() > *detail::cancel_deadline)
        throw Cancelled();
}

}  // namespace toric
