#pragma once

// Orbit computation with cycle detection, attractor extraction, and
// Collatz-like classification of rules under pure iteration.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ivt/core.hpp"

namespace ivt::dynamics {

enum class OrbitStatus { kConvergedToCycle, kDiverged, kIterationCapHit };

const char* to_string(OrbitStatus status);

/// Trajectory split at the first repeated value: `transient` holds the
/// values before the terminal cycle, `cycle` the cycle in first-visit
/// order. The two are disjoint and cycle elements are pairwise distinct.
struct Orbit {
    Value start = 0;
    std::vector<Value> transient;
    std::vector<Value> cycle;
    OrbitStatus status = OrbitStatus::kIterationCapHit;
};

using StepFn = std::function<Value(Value)>;

/// Iterates `step` from `start` until a value repeats, a value exceeds
/// `value_cap` (status diverged), or `max_iter` steps elapse. Arithmetic
/// overflow inside `step` is reported as divergence, never an exception.
Orbit iterate_orbit(const StepFn& step, Value start, std::uint64_t max_iter, Value value_cap);

/// Canonical attractor summary: representative = min(cycle).
struct AttractorInfo {
    Value representative = 0;
    std::uint64_t cycle_length = 0;
    std::pair<Value, Value> basin_checked{0, 0};  // inclusive range of verified starts
};

/// Requires a converged orbit; throws std::domain_error otherwise.
AttractorInfo attractor_of(const Orbit& orbit);

struct CollatzVerdict {
    IvtIndex rule;
    bool is_collatz_like = false;
    std::optional<AttractorInfo> attractor;  // the shared attractor, when one exists
    std::vector<Value> attractor_cycle;      // sorted cycle elements
    std::optional<Value> witness;            // start demonstrating failure
};

/// Classifies an arbitrary step map over starts [0, scan_limit]: Collatz-like
/// iff every start converges to one and the same terminal cycle. With
/// `strict`, the shared cycle must additionally be a fixed point.
CollatzVerdict classify_step(const StepFn& step, const IvtIndex& tag, Value scan_limit,
                             std::uint64_t max_iter, Value value_cap, bool strict = false);

/// Pure-iteration classification of a rule. Requires scan_limit >= p^2.
CollatzVerdict classify_collatz_like(const LocalRule& rule, Value scan_limit,
                                     std::uint64_t max_iter, bool strict = false);

/// Sorted indices of the Collatz-like rules of T^{p,1}.
std::vector<Value> enumerate_collatz_like(unsigned base, Value scan_limit,
                                          std::uint64_t max_iter, bool strict = false);

}  // namespace ivt::dynamics
