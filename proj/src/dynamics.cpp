#include "ivt/dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ivt::dynamics {

const char* to_string(OrbitStatus status) {
    switch (status) {
        case OrbitStatus::kConvergedToCycle: return "converged-to-cycle";
        case OrbitStatus::kDiverged: return "diverged";
        case OrbitStatus::kIterationCapHit: return "iteration-cap-hit";
    }
    return "unknown";
}

Orbit iterate_orbit(const StepFn& step, Value start, std::uint64_t max_iter, Value value_cap) {
    if (max_iter < 1) throw std::invalid_argument("iterate_orbit: max_iter must be >= 1");
    Orbit orbit;
    orbit.start = start;

    std::vector<Value> seq{start};
    std::unordered_map<Value, std::size_t> first_seen{{start, 0}};
    if (start > value_cap) {
        orbit.transient = std::move(seq);
        orbit.status = OrbitStatus::kDiverged;
        return orbit;
    }

    Value current = start;
    for (std::uint64_t i = 0; i < max_iter; ++i) {
        Value next;
        try {
            next = step(current);
        } catch (const std::overflow_error&) {
            orbit.transient = std::move(seq);
            orbit.status = OrbitStatus::kDiverged;
            return orbit;
        }
        if (next > value_cap) {
            seq.push_back(next);
            orbit.transient = std::move(seq);
            orbit.status = OrbitStatus::kDiverged;
            return orbit;
        }
        auto it = first_seen.find(next);
        if (it != first_seen.end()) {
            orbit.transient.assign(seq.begin(), seq.begin() + it->second);
            orbit.cycle.assign(seq.begin() + it->second, seq.end());
            orbit.status = OrbitStatus::kConvergedToCycle;
            return orbit;
        }
        first_seen.emplace(next, seq.size());
        seq.push_back(next);
        current = next;
    }
    orbit.transient = std::move(seq);
    orbit.status = OrbitStatus::kIterationCapHit;
    return orbit;
}

AttractorInfo attractor_of(const Orbit& orbit) {
    if (orbit.status != OrbitStatus::kConvergedToCycle)
        throw std::domain_error("attractor_of: orbit did not converge to a cycle");
    AttractorInfo info;
    info.representative = *std::min_element(orbit.cycle.begin(), orbit.cycle.end());
    info.cycle_length = orbit.cycle.size();
    info.basin_checked = {orbit.start, orbit.start};
    return info;
}

CollatzVerdict classify_step(const StepFn& step, const IvtIndex& tag, Value scan_limit,
                             std::uint64_t max_iter, Value value_cap, bool strict) {
    CollatzVerdict verdict;
    verdict.rule = tag;

    std::vector<Value> shared_cycle;  // sorted
    for (Value start = 0; start <= scan_limit; ++start) {
        Orbit orbit = iterate_orbit(step, start, max_iter, value_cap);
        if (orbit.status != OrbitStatus::kConvergedToCycle) {
            verdict.is_collatz_like = false;
            verdict.witness = start;
            return verdict;
        }
        std::vector<Value> cycle = orbit.cycle;
        std::sort(cycle.begin(), cycle.end());
        if (start == 0) {
            shared_cycle = std::move(cycle);
        } else if (cycle != shared_cycle) {
            verdict.is_collatz_like = false;
            verdict.witness = start;
            return verdict;
        }
    }

    verdict.attractor = AttractorInfo{shared_cycle.front(), shared_cycle.size(), {0, scan_limit}};
    verdict.attractor_cycle = shared_cycle;
    verdict.is_collatz_like = !strict || shared_cycle.size() == 1;
    return verdict;
}

CollatzVerdict classify_collatz_like(const LocalRule& rule, Value scan_limit,
                                     std::uint64_t max_iter, bool strict) {
    const Value p = rule.base();
    if (scan_limit < p * p)
        throw std::invalid_argument("classify_collatz_like: scan_limit must be >= p^2");
    // Pure orbits stay below p^digit_count(start), so no cap is needed beyond
    // overflow protection.
    const Value cap = ~Value{0};
    return classify_step([&rule](Value y) { return apply(rule, y); }, rule.id(), scan_limit,
                         max_iter, cap, strict);
}

std::vector<Value> enumerate_collatz_like(unsigned base, Value scan_limit,
                                          std::uint64_t max_iter, bool strict) {
    auto count = rule_count(base, 1);
    if (!count) throw std::invalid_argument("enumerate_collatz_like: base too large");
    std::vector<Value> out;
    for (Value j = 0; j < *count; ++j) {
        LocalRule rule = rule_from_index(base, 1, j);
        if (classify_collatz_like(rule, scan_limit, max_iter, strict).is_collatz_like)
            out.push_back(j);
    }
    return out;
}

}  // namespace ivt::dynamics
