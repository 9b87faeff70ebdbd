#pragma once

// Affine systems built on digit-wise rules:
//   type-I   Y(t+1) = A * rule(Y(t)) + B
//   type-II  y(t+1) = rule(a * y(t) + b)
// with stepping, steady states, empirical local/global stability via
// pairwise difference quotients, contraction tests, attractor tables,
// and the correspondence checks between the two types.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ivt/core.hpp"
#include "ivt/dynamics.hpp"

namespace ivt::adds {

enum class Variant { kTypeI, kTypeII };

const char* to_string(Variant variant);

/// One affine system. Coefficients satisfy 1 <= mul < p and 0 <= add < p;
/// mul == 0 is accepted but flags a degenerate constant system.
struct AddsSpec {
    Variant variant;
    LocalRule rule;
    Value mul = 1;
    Value add = 0;

    AddsSpec(Variant variant, LocalRule rule, Value mul, Value add);

    bool degenerate() const { return mul == 0; }
};

AddsSpec make_spec(Variant variant, unsigned base, Value rule_index, Value mul, Value add);

/// One application of the affine step map. Overflow raises
/// std::overflow_error; nothing wraps silently.
Value step(const AddsSpec& spec, Value y);

dynamics::Orbit adds_orbit(const AddsSpec& spec, Value start, std::uint64_t max_iter,
                           Value value_cap);

dynamics::CollatzVerdict classify(const AddsSpec& spec, Value scan_limit, std::uint64_t max_iter,
                                  Value value_cap, bool strict = false);

struct SteadyStateReport {
    AddsSpec spec;
    Value search_bound = 0;
    std::vector<Value> steady_points;  // ascending
    bool unique = false;
};

/// Exhaustive fixed-point scan of the step map over [0, search_bound].
/// Requires search_bound >= p^3 - 1.
SteadyStateReport steady_states(const AddsSpec& spec, Value search_bound);

/// Result of a pairwise difference-quotient scan: the exact maximum
/// quotient |step(x)-step(y)| / |x-y| and the first pair attaining it.
struct QuotientScan {
    Ratio max_quotient{0, 1};
    std::pair<Value, Value> witness{0, 0};
};

struct LocalStability {
    Value steady_point = 0;
    Value radius = 0;
    QuotientScan scan;
    bool stable = false;  // max quotient < 1
};

/// Quotients over all pairs in [max(0, point-radius), point+radius].
/// `steady_point` must be a fixed point of the step map.
LocalStability local_stability(const AddsSpec& spec, Value steady_point, Value radius);

struct GlobalStability {
    Value scan_bound = 0;
    QuotientScan scan;
    bool stable = false;
};

/// Quotients over all pairs at distance <= p^2 within [0, scan_bound]
/// plus extremal digit-length-crossing pairs. Requires
/// scan_bound >= p^3 - 1.
GlobalStability global_stability(const AddsSpec& spec, Value scan_bound);

struct StabilityReport {
    AddsSpec spec;
    LocalStability local;
    GlobalStability global;
};

StabilityReport stability_report(const AddsSpec& spec, Value steady_point, Value radius,
                                 Value scan_bound);

struct ContractionVerdict {
    bool contraction = false;
    Ratio max_quotient{0, 1};
    // First sampled pair with quotient >= 1, scanned by distance then
    // position; present iff not a contraction.
    std::optional<std::pair<Value, Value>> witness;
    Ratio witness_quotient{0, 1};
};

/// Pairwise quotient test of the raw rule map over the global sampling
/// scheme. Requires scan_bound >= p^3 - 1.
ContractionVerdict is_contraction(const LocalRule& rule, Value scan_bound);

struct TableEntry {
    Value rule_index = 0;
    Value point = 0;  // attractor representative or steady/stable point
    bool operator==(const TableEntry&) const = default;
};

/// One (A,B) row of a simulation table. All columns are restricted to the
/// rules that are Collatz-like under this row's coefficients; rules whose
/// sweep diverged are listed separately.
struct TableRow {
    Value mul = 1;
    Value add = 0;
    std::vector<TableEntry> attractors;
    std::vector<TableEntry> unique_steady;
    std::vector<TableEntry> locally_stable;
    std::vector<TableEntry> globally_stable;
    std::vector<Value> divergent;
};

struct TableConfig {
    Value scan_limit;
    std::uint64_t max_iter = 10000;
    Value value_cap = 1000000000;
    Value steady_bound;
    Value stability_radius = 2;
    unsigned threads = 1;
};

TableConfig default_table_config(unsigned base);

/// Classifies every rule index j < p^p for each coefficient pair, in
/// ascending j order.
std::vector<TableRow> attractor_table(unsigned base, Variant variant,
                                      std::span<const std::pair<Value, Value>> coefficients,
                                      const TableConfig& config);

/// All (A,B) pairs of [1,p) x [0,p) in ascending order.
std::vector<std::pair<Value, Value>> all_coefficients(unsigned base);

struct CorrespondenceRecord {
    Value rule_index = 0;
    Value mul = 1;
    Value add = 0;
    Value type1_attractor = 0;
    std::optional<Value> type2_attractor;
    bool relation_holds = false;  // A | (attr1 - B) and (attr1 - B)/A == attr2
};

/// Checks the attractor shift between the two types for one rule that is
/// Collatz-like as type-I with (A,B); throws std::domain_error otherwise.
CorrespondenceRecord verify_type_correspondence(const LocalRule& rule, Value mul, Value add,
                                                Value scan_limit, std::uint64_t max_iter,
                                                Value value_cap);

struct UniqueZeroSteady {
    std::uint64_t count = 0;
    std::vector<Value> rules;
};

/// Among the Collatz-like rules of T^{p,1} (linearized setting A=1, B=0),
/// those whose only steady point in [0, scan_limit] is 0.
UniqueZeroSteady count_unique_zero_steady(unsigned base, Value scan_limit);

struct ConverseWitness {
    Value rule_index = 0;
    Value mul = 1;
    Value add = 0;
};

/// Sweeps for rules Collatz-like as type-II whose type-I counterpart is
/// not Collatz-like or has a mismatched attractor. Empirically empty at
/// desk scale; the sweep is kept so any witness would surface.
std::vector<ConverseWitness> converse_violations(unsigned base,
                                                 std::span<const std::pair<Value, Value>> coefficients,
                                                 Value scan_limit, std::uint64_t max_iter,
                                                 Value value_cap);

}  // namespace ivt::adds
