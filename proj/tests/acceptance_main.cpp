// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit status is
// the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ivt/adds.hpp"
#include "ivt/analysis.hpp"
#include "ivt/core.hpp"
#include "ivt/dynamics.hpp"
#include "ivt/odpe.hpp"
#include "ivt/reference.hpp"

using ivt::Value;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& description,
            const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
                description.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

constexpr std::uint64_t kMaxIter = 10000;
constexpr Value kCap = 1000000000;

const std::vector<std::pair<Value, Value>> kRowOrder{{1, 0}, {1, 1}, {1, 2},
                                                     {2, 2}, {2, 0}, {2, 1}};

std::string entries_to_string(const std::vector<ivt::adds::TableEntry>& entries) {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ",";
        out << entries[i].rule_index << "(" << entries[i].point << ")";
    }
    return out.str();
}

// 1. Worked example, exact.
void criterion_1() {
    bool ok = ivt::apply(ivt::rule_from_index(3, 1, 7), 55) == 14 &&
              ivt::apply(ivt::rule_from_index(3, 1, 16), 55) == 41;
    report(1, ok, "worked example: rule 7 maps 55 to 14 and rule 16 maps 55 to 41");
}

// 2./3. Table reproduction for both variants.
void criteria_2_3() {
    auto config = ivt::adds::default_table_config(3);

    for (int criterion : {2, 3}) {
        auto variant = criterion == 2 ? ivt::adds::Variant::kTypeI : ivt::adds::Variant::kTypeII;
        auto rows = ivt::adds::attractor_table(3, variant, kRowOrder, config);
        const auto& reference = ivt::reference::table_rows(variant);

        bool attractors_ok = true;
        std::string attractor_detail;
        bool other_ok = true;
        std::string other_detail;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].attractors != reference[i].attractors) {
                attractors_ok = false;
                attractor_detail += "row (" + std::to_string(rows[i].mul) + "," +
                                    std::to_string(rows[i].add) + ") measured {" +
                                    entries_to_string(rows[i].attractors) + "} expected {" +
                                    entries_to_string(reference[i].attractors) + "} ";
            }
            bool anomaly_row = variant == ivt::adds::Variant::kTypeI && rows[i].mul == 2 &&
                               rows[i].add == 0;
            if (rows[i].unique_steady != reference[i].unique_steady && !anomaly_row)
                other_ok = false;
            if (anomaly_row && variant == ivt::adds::Variant::kTypeI) {
                // the one allowed discrepancy: measured gains 3(0)
                std::vector<ivt::adds::TableEntry> expected{{0, 0}, {3, 0}, {18, 0}};
                if (rows[i].unique_steady != expected) other_ok = false;
            }
            if (rows[i].locally_stable != reference[i].locally_stable) other_ok = false;
            if (rows[i].globally_stable != reference[i].globally_stable) other_ok = false;
        }
        std::string label = criterion == 2
                                ? "type-I table: attractor column exact, others exact up to the "
                                  "flagged (2,0) unique-steady anomaly"
                                : "type-II table: attractor column exact, including the shifted "
                                  "attractors 6(2), 18(2), 3(1)";
        report(criterion, attractors_ok && other_ok, label, attractor_detail + other_detail);
    }
}

// 4. Attractor shift between the types, zero violations.
void criterion_4() {
    auto config = ivt::adds::default_table_config(3);
    int violations = 0;
    int checked = 0;
    for (auto variant : {ivt::adds::Variant::kTypeI}) {
        auto rows = ivt::adds::attractor_table(3, variant, kRowOrder, config);
        for (const auto& row : rows)
            for (const auto& entry : row.attractors) {
                if (entry.point < row.add || (entry.point - row.add) % row.mul != 0) continue;
                auto record = ivt::adds::verify_type_correspondence(
                    ivt::rule_from_index(3, 1, entry.rule_index), row.mul, row.add, 242,
                    kMaxIter, kCap);
                ++checked;
                if (!record.relation_holds) ++violations;
            }
    }
    report(4, violations == 0 && checked > 0,
           "type-I to type-II attractor shift (attr2 = (attr1 - B)/A) holds for every "
           "divisible table entry",
           std::to_string(checked) + " entries checked, " + std::to_string(violations) +
               " violations");
}

// 5. Unique zero steady counts.
void criterion_5() {
    auto p3 = ivt::adds::count_unique_zero_steady(3, 242);
    auto p2 = ivt::adds::count_unique_zero_steady(2, 31);
    bool ok = p3.count == 3 && p3.rules == std::vector<Value>{0, 6, 9} && p2.count == 1 &&
              p2.rules == std::vector<Value>{0};
    report(5, ok, "unique zero steady states: p=3 count 3 = 3^(3-2) with rules {0,6,9}; "
                  "p=2 count 1 = 2^0");
}

// 6. Collatz-like enumeration and the count-claim adjudication.
void criterion_6() {
    auto p3 = ivt::dynamics::enumerate_collatz_like(3, 242, kMaxIter);
    auto p2 = ivt::dynamics::enumerate_collatz_like(2, 31, kMaxIter);
    bool sets_ok = p3 == std::vector<Value>{0, 1, 2, 6, 7, 8, 9, 10, 11} &&
                   p2 == std::vector<Value>{0, 1};
    // the bundled (p^(p-1) - 1) claim must be flagged as inconsistent
    bool claim_flagged = p3.size() != ivt::checked_pow(3, 2) - 1 &&
                         p3.size() == ivt::checked_pow(3, 2);
    report(6, sets_ok && claim_flagged,
           "Collatz-like enumeration: p=3 {0,1,2,6,7,8,9,10,11}, p=2 {0,1}; measured count "
           "9 contradicts the bundled p^(p-1)-1 claim");
}

// 7. Contraction suite at p=2.
void criterion_7() {
    auto j0 = ivt::adds::is_contraction(ivt::rule_from_index(2, 1, 0), 31);
    auto j1 = ivt::adds::is_contraction(ivt::rule_from_index(2, 1, 1), 31);
    auto j2 = ivt::adds::is_contraction(ivt::rule_from_index(2, 1, 2), 31);
    auto j3 = ivt::adds::is_contraction(ivt::rule_from_index(2, 1, 3), 31);
    bool ok = j0.contraction && !j1.contraction && !j2.contraction && !j3.contraction &&
              j1.witness && j2.witness && j3.witness;
    report(7, ok, "contraction: rule 0 contracts; rules 1, 2, 3 do not, each with a witness pair");
}

// 8. Topology, hop averages, and best-rule selection.
void criterion_8() {
    auto rule8 = ivt::rule_from_index(3, 1, 8);
    bool stations_ok = ivt::odpe::stations_of(rule8, 3) == std::vector<Value>{2, 8, 26};
    auto topo = ivt::odpe::build_topology(rule8, 3);
    bool route_ok = topo.routes.at(16) == std::vector<Value>{16, 20, 6, 2};

    double avg7 = ivt::odpe::average_hopping(ivt::rule_from_index(3, 1, 7), 100)
                      .average.to_double();
    double avg8 = ivt::odpe::average_hopping(rule8, 100).average.to_double();
    bool hops_ok = std::abs(avg7 - 6.46) <= 0.05 && std::abs(avg8 - 4.73) <= 0.05;

    bool best_ok = ivt::odpe::select_best_rule(3, 100).rule_index == 8 &&
                   ivt::odpe::select_best_rule(2, 100).rule_index == 1;

    std::ostringstream detail;
    detail << "avg(7)=" << avg7 << " avg(8)=" << avg8;
    report(8, stations_ok && route_ok && hops_ok && best_ok,
           "topology: stations {2,8,26}, route 16->20->6->2, averages 6.46/4.73 within 0.05 "
           "under the calibrated convention, best rules 8 (p=3) and 1 (p=2)",
           detail.str());
}

// 9. Capacity behaviour around 80/81.
void criterion_9() {
    auto rule8 = ivt::rule_from_index(3, 1, 8);
    bool within = ivt::odpe::capacity_check(rule8, 80).excluded_nodes.empty();
    bool jumps = ivt::apply(rule8, 81) == 242;
    report(9, within && jumps,
           "capacity: every n <= 80 stays within [0,80]; 81 maps to 242");
}

// 10. Fractal dimension bands.
void criterion_10() {
    auto levels = ivt::analysis::default_levels();
    auto dim = [&](Value j) {
        auto spec = ivt::adds::make_spec(ivt::adds::Variant::kTypeI, 3, j, 1, 1);
        return ivt::analysis::box_dimension(ivt::analysis::graph_points(spec, 729), levels)
            .dimension;
    };
    double d0 = dim(0), d1 = dim(1), d6 = dim(6), d7 = dim(7);
    bool zero_ok = std::abs(d0 - 1.0) <= 0.05;
    bool band_ok = true;
    for (double d : {d1, d6, d7}) band_ok = band_ok && d >= 1.79 && d <= 2.0;
    std::ostringstream detail;
    detail << "measured j=0: " << d0 << ", j=1: " << d1 << ", j=6: " << d6 << ", j=7: " << d7
           << " (band [1.79, 2.0] is not attainable from the graph data; see README)";
    report(10, zero_ok && band_ok,
           "fractal dimensions at 3^6 points: j=0 within 1.0 +- 0.05; j in {1,6,7} within "
           "[1.79, 2.0]",
           detail.str());
}

// 11. Power-series ratio tests.
void criterion_11() {
    auto identity = ivt::analysis::ratio_sequence(
        ivt::adds::make_spec(ivt::adds::Variant::kTypeI, 3, 21, 1, 1), 1000);
    bool identity_ok = identity.verdict == ivt::analysis::SeriesVerdict::kRadiusOne &&
                       identity.ratios[999] && *identity.ratios[999] > 0.999;

    auto wild = ivt::analysis::ratio_sequence(
        ivt::adds::make_spec(ivt::adds::Variant::kTypeI, 3, 11, 1, 1), 1001);
    double lo = 1e300, hi = -1e300;
    for (std::size_t n = 100; n <= 1000; ++n) {
        if (!wild.ratios[n]) continue;
        lo = std::min(lo, *wild.ratios[n]);
        hi = std::max(hi, *wild.ratios[n]);
    }
    double spread = hi - lo;
    bool wild_ok = wild.verdict == ivt::analysis::SeriesVerdict::kNonConvergent &&
                   spread > 0.1 &&
                   std::abs(spread - 2.748971193415638) < 1e-9;

    std::ostringstream detail;
    detail << "identity ratio(999)=" << (identity.ratios[999] ? *identity.ratios[999] : 0.0)
           << ", rule-11 spread=" << spread;
    report(11, identity_ok && wild_ok,
           "series: identity rule exceeds 0.999 by n=1000 with verdict radius-one; rule 11 "
           "non-convergent with spread > 0.1 over n in [100,1000]",
           detail.str());
}

// 12. Property suites: periodicity, codec round-trip, topology soundness.
void criterion_12() {
    bool periodic = true;
    for (unsigned p : {2u, 3u}) {
        Value count = *ivt::rule_count(p, 1);
        Value limit = ivt::checked_pow(p, 5);
        for (Value j = 0; j < count && periodic; ++j) {
            auto rule = ivt::rule_from_index(p, 1, j);
            for (Value start = 0; start < limit; ++start) {
                auto orbit = ivt::dynamics::iterate_orbit(
                    [&rule](Value y) { return ivt::apply(rule, y); }, start, kMaxIter,
                    ~Value{0});
                if (orbit.status != ivt::dynamics::OrbitStatus::kConvergedToCycle) {
                    periodic = false;
                    break;
                }
            }
        }
    }

    bool round_trip = true;
    for (unsigned p : {2u, 3u, 5u})
        for (Value x = 0; x < 1000000 && round_trip; ++x)
            round_trip = ivt::value_of(ivt::digits_of(x, p)) == x;

    bool topology_ok = true;
    for (Value j : {7ull, 8ull, 10ull, 11ull}) {
        auto rule = ivt::rule_from_index(3, 1, j);
        for (unsigned n = 2; n <= 4; ++n) {
            auto topo = ivt::odpe::build_topology(rule, n);
            std::set<Value> all;
            all.insert(topo.sca);
            all.insert(topo.stations.begin(), topo.stations.end());
            all.insert(topo.substations.begin(), topo.substations.end());
            if (all.size() != topo.node_count) topology_ok = false;
            std::set<Value> stations(topo.stations.begin(), topo.stations.end());
            for (const auto& [node, path] : topo.routes) {
                if (path.front() != node || !stations.contains(path.back()))
                    topology_ok = false;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    if (ivt::apply(rule, path[i]) != path[i + 1]) topology_ok = false;
            }
        }
    }

    report(12, periodic && round_trip && topology_ok,
           "property suites: pure-orbit periodicity, codec round-trip, topology partition and "
           "route soundness");
}

}  // namespace

int main() {
    criterion_1();
    criteria_2_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures;
}
