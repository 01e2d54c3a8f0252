#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aplab {

/// Thrown when an operation would exceed its configured work budget.
/// The message names the limit that was hit.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::int64_t requested, std::int64_t cap)
        : std::runtime_error(what + ": requested " + std::to_string(requested) +
                             " elementary products, cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}
    std::int64_t requested() const { return requested_; }
    std::int64_t cap() const { return cap_; }

private:
    std::int64_t requested_;
    std::int64_t cap_;
};

// Global operation cap for the heavy enumeration/scan paths.  Default 1e9
// elementary products; overridable programmatically or via APLAB_BUDGET_CAP.
std::int64_t budget_cap();
void set_budget_cap(std::int64_t cap);

inline void check_budget(const char* op, double requested) {
    const auto cap = budget_cap();
    if (requested > static_cast<double>(cap))
        throw budget_error(op, static_cast<std::int64_t>(requested), cap);
}

}  // namespace aplab
