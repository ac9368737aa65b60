#pragma once

#include <chrono>
#include <optional>
#include <utility>

namespace steinerforge {

/// Wall-clock limit for the exact searches. Unlimited by default.
class Budget {
public:
    Budget() = default;

    static Budget unlimited() { return Budget(); }

    static Budget seconds(double s) {
        Budget b;
        b.deadline_ = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(s));
        return b;
    }

    bool limited() const { return deadline_.has_value(); }

    bool expired() const {
        return deadline_ && std::chrono::steady_clock::now() >= *deadline_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

/// Cheap periodic budget probe for tight search loops.
class BudgetTicker {
public:
    explicit BudgetTicker(const Budget& budget) : budget_(budget) {}

    bool expired() {
        if (hit_) return true;
        if ((++count_ & 0x3FFu) == 0u && budget_.expired()) hit_ = true;
        return hit_;
    }

private:
    const Budget& budget_;
    unsigned count_ = 0;
    bool hit_ = false;
};

enum class SearchStatus { found, none, timeout };

/// Result of an exact search: a witness, a proof of absence, or an honest
/// timeout. Timeout is never conflated with absence.
template <typename T>
struct Outcome {
    SearchStatus status = SearchStatus::none;
    std::optional<T> value;

    static Outcome found(T v) {
        return {SearchStatus::found, std::move(v)};
    }
    static Outcome none() { return {SearchStatus::none, std::nullopt}; }
    static Outcome timeout() { return {SearchStatus::timeout, std::nullopt}; }

    explicit operator bool() const { return status == SearchStatus::found; }
    bool timed_out() const { return status == SearchStatus::timeout; }
};

}  // namespace steinerforge
