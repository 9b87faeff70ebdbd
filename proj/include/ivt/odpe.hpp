#pragma once

// Three-layer distributed-scheduling topology induced by a rule whose
// iteration funnels every node to 0: the SCA (node 0), the stations
// (0's one-step preimages), and the sub-stations (everything else),
// with hop routing, average-hopping statistics, a capacity policy, and
// best-rule selection.

#include <cstdint>
#include <map>
#include <vector>

#include "ivt/adds.hpp"
#include "ivt/core.hpp"

namespace ivt::odpe {

struct Topology {
    unsigned base = 2;
    Value rule_index = 0;
    unsigned digit_budget = 1;
    Value node_count = 0;  // p^digit_budget, nodes 0..node_count-1
    Value sca = 0;
    std::vector<Value> stations;     // ascending
    std::vector<Value> substations;  // ascending
    // Sub-station -> hop path ending at the first station reached.
    std::map<Value, std::vector<Value>> routes;
};

/// All nodes of [1, p^n) that the rule maps to 0 in one application.
/// The rule must be Collatz-like with attractor representative 0;
/// otherwise std::domain_error.
std::vector<Value> stations_of(const LocalRule& rule, unsigned digit_budget);

Topology build_topology(const LocalRule& rule, unsigned digit_budget);

/// Rule applications from `node` until first membership in
/// stations-or-SCA; stations (and the SCA) have hop count 0.
std::uint64_t hop_count(const LocalRule& rule, Value node);

/// How one node's hopping contribution is counted.
enum class HopMetric {
    kHopsToStation,  // applications until a station or the SCA is reached
    kHopsToSca,      // applications until the SCA is reached
    kOrbitLength,    // values visited until the terminal repeat, i.e. hops-to-SCA + 2
};

const char* to_string(HopMetric metric);

struct HopConvention {
    HopMetric metric = HopMetric::kHopsToStation;
    bool include_zero = false;  // count node 0 in the horizon range
};

/// Convention pinned by calibration against the bundled reference
/// averages (rule 7 -> 6.46, rule 8 -> 4.73 at horizon 100, base 3),
/// which it reproduces exactly.
inline constexpr HopConvention kPinnedHopConvention{HopMetric::kOrbitLength, false};

struct HopStats {
    Value rule_index = 0;
    Value horizon = 0;  // naturals checked: [1, horizon] (or [0, horizon])
    HopConvention convention;
    std::uint64_t total_hops = 0;
    Ratio average{0, 1};  // total_hops / horizon
    std::map<Value, std::uint64_t> per_node;
};

HopStats average_hopping(const LocalRule& rule, Value horizon,
                         HopConvention convention = kPinnedHopConvention);

struct CalibrationEntry {
    HopConvention convention;
    std::map<Value, double> averages;  // rule index -> measured average
    double max_residual = 0.0;         // vs the reference averages
};

struct CalibrationResult {
    std::vector<CalibrationEntry> entries;
    HopConvention chosen;  // minimal residual, first on ties
};

/// Reference averages the calibration targets (rule -> value).
const std::map<Value, double>& reference_average_hops();

/// Evaluates every candidate convention (the four to-station/to-SCA range
/// variants plus the orbit-length variants) at the given horizon.
CalibrationResult calibrate_hop_convention(unsigned base, Value horizon);

struct CapacityPolicy {
    Value capacity = 0;
    std::vector<Value> excluded_nodes;  // forward orbit exceeds the capacity
};

CapacityPolicy capacity_check(const LocalRule& rule, Value capacity);

struct BestRuleSelection {
    Value rule_index = 0;
    std::vector<Value> candidates;  // attractor-0 rules with exactly one digit mapping to 0
    std::map<Value, Ratio> average_hops;
};

/// Filters the Collatz-like attractor-0 rules to those with exactly one
/// digit mapping to 0 (minimal direct-to-SCA preimages) and picks the
/// minimal average hopping at the given horizon.
BestRuleSelection select_best_rule(unsigned base, Value horizon);

}  // namespace ivt::odpe
