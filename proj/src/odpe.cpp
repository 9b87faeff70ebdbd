#include "ivt/odpe.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "ivt/dynamics.hpp"

namespace ivt::odpe {

namespace {

constexpr std::uint64_t kMaxIter = 10000;

void require_attractor_zero(const LocalRule& rule, Value scan_limit) {
    const Value p = rule.base();
    Value scan = std::max<Value>(scan_limit, static_cast<Value>(p) * p);
    auto verdict = dynamics::classify_collatz_like(rule, scan, kMaxIter);
    if (!verdict.is_collatz_like)
        throw std::domain_error("rule is not Collatz-like");
    if (verdict.attractor->representative != 0)
        throw std::domain_error("rule attractor is not 0");
}

std::uint64_t hops_to_sca(const LocalRule& rule, Value node) {
    std::uint64_t hops = 0;
    while (node != 0) {
        if (hops >= kMaxIter) throw std::domain_error("hop walk did not reach the SCA");
        node = apply(rule, node);
        ++hops;
    }
    return hops;
}

std::uint64_t node_hops(const LocalRule& rule, Value node, HopMetric metric) {
    switch (metric) {
        case HopMetric::kHopsToStation: return hop_count(rule, node);
        case HopMetric::kHopsToSca: return hops_to_sca(rule, node);
        case HopMetric::kOrbitLength: return hops_to_sca(rule, node) + 2;
    }
    return 0;
}

}  // namespace

std::vector<Value> stations_of(const LocalRule& rule, unsigned digit_budget) {
    if (digit_budget < 1) throw std::invalid_argument("stations_of: digit budget must be >= 1");
    Value node_count = checked_pow(rule.base(), digit_budget);
    require_attractor_zero(rule, node_count - 1);
    std::vector<Value> stations;
    for (Value x = 1; x < node_count; ++x)
        if (apply(rule, x) == 0) stations.push_back(x);
    return stations;
}

Topology build_topology(const LocalRule& rule, unsigned digit_budget) {
    Topology topo;
    topo.base = rule.base();
    topo.rule_index = index_from_rule(rule);
    topo.digit_budget = digit_budget;
    topo.node_count = checked_pow(rule.base(), digit_budget);
    topo.sca = 0;
    topo.stations = stations_of(rule, digit_budget);

    std::unordered_set<Value> station_set(topo.stations.begin(), topo.stations.end());
    for (Value node = 1; node < topo.node_count; ++node) {
        if (station_set.contains(node)) continue;
        topo.substations.push_back(node);
        std::vector<Value> path{node};
        Value current = node;
        while (!station_set.contains(current)) {
            if (path.size() > topo.node_count)
                throw std::domain_error("build_topology: route did not reach a station");
            current = apply(rule, current);
            path.push_back(current);
        }
        topo.routes.emplace(node, std::move(path));
    }
    return topo;
}

std::uint64_t hop_count(const LocalRule& rule, Value node) {
    std::uint64_t hops = 0;
    while (node != 0 && apply(rule, node) != 0) {
        if (hops >= kMaxIter) throw std::domain_error("hop walk did not reach a station");
        node = apply(rule, node);
        ++hops;
    }
    return hops;
}

const char* to_string(HopMetric metric) {
    switch (metric) {
        case HopMetric::kHopsToStation: return "hops-to-station";
        case HopMetric::kHopsToSca: return "hops-to-sca";
        case HopMetric::kOrbitLength: return "orbit-length";
    }
    return "unknown";
}

HopStats average_hopping(const LocalRule& rule, Value horizon, HopConvention convention) {
    const Value p = rule.base();
    if (horizon < checked_pow(p, 3))
        throw std::invalid_argument("average_hopping: horizon must be >= p^3");
    require_attractor_zero(rule, horizon);

    HopStats stats;
    stats.rule_index = index_from_rule(rule);
    stats.horizon = horizon;
    stats.convention = convention;
    for (Value node = convention.include_zero ? 0 : 1; node <= horizon; ++node) {
        std::uint64_t hops = node_hops(rule, node, convention.metric);
        stats.per_node.emplace(node, hops);
        stats.total_hops += hops;
    }
    stats.average = Ratio{stats.total_hops, horizon};
    return stats;
}

const std::map<Value, double>& reference_average_hops() {
    static const std::map<Value, double> kReference{{7, 6.46}, {8, 4.73}};
    return kReference;
}

CalibrationResult calibrate_hop_convention(unsigned base, Value horizon) {
    const auto& reference = reference_average_hops();
    CalibrationResult result;
    for (HopMetric metric :
         {HopMetric::kHopsToStation, HopMetric::kHopsToSca, HopMetric::kOrbitLength}) {
        for (bool include_zero : {false, true}) {
            CalibrationEntry entry;
            entry.convention = {metric, include_zero};
            for (const auto& [rule_index, expected] : reference) {
                LocalRule rule = rule_from_index(base, 1, rule_index);
                double avg = average_hopping(rule, horizon, entry.convention).average.to_double();
                entry.averages[rule_index] = avg;
                entry.max_residual = std::max(entry.max_residual, std::abs(avg - expected));
            }
            result.entries.push_back(std::move(entry));
        }
    }
    const CalibrationEntry* best = &result.entries.front();
    for (const auto& entry : result.entries)
        if (entry.max_residual < best->max_residual) best = &entry;
    result.chosen = best->convention;
    return result;
}

CapacityPolicy capacity_check(const LocalRule& rule, Value capacity) {
    CapacityPolicy policy;
    policy.capacity = capacity;
    for (Value node = 0; node <= capacity; ++node) {
        std::unordered_set<Value> seen;
        Value current = node;
        bool exceeds = false;
        while (!seen.contains(current)) {
            seen.insert(current);
            current = apply(rule, current);
            if (current > capacity) {
                exceeds = true;
                break;
            }
        }
        if (exceeds) policy.excluded_nodes.push_back(node);
    }
    return policy;
}

BestRuleSelection select_best_rule(unsigned base, Value horizon) {
    if (base != 2 && base != 3 && base != 5)
        throw std::invalid_argument("select_best_rule: base must be 2, 3, or 5");
    // Exhaustive classification: full p^5 horizon through base 3, one power
    // lower for base 5 to stay at desk scale.
    Value scan = base <= 3 ? checked_pow(base, 5) - 1 : checked_pow(base, 4) - 1;

    BestRuleSelection selection;
    for (Value j : dynamics::enumerate_collatz_like(base, scan, kMaxIter)) {
        LocalRule rule = rule_from_index(base, 1, j);
        auto verdict = dynamics::classify_collatz_like(rule, scan, kMaxIter);
        if (verdict.attractor->representative != 0) continue;
        auto zero_images = std::count(rule.table().begin(), rule.table().end(), 0);
        if (zero_images != 1) continue;
        selection.candidates.push_back(j);
        selection.average_hops.emplace(j, average_hopping(rule, horizon).average);
    }
    if (selection.candidates.empty())
        throw std::domain_error("select_best_rule: no candidate rule");

    Value best = selection.candidates.front();
    for (Value j : selection.candidates)
        if (selection.average_hops.at(j).less_than(selection.average_hops.at(best))) best = j;
    selection.rule_index = best;
    return selection;
}

}  // namespace ivt::odpe
