// Command-line front end: rule inspection, orbits, classification,
// simulation tables with reference diffs, topology/hop analysis, and the
// fractal/series/contraction reports.
//
// Exit status: 0 success, 2 usage error, 3 domain error (invalid values,
// out-of-range indices, rules outside an operation's domain).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ivt/adds.hpp"
#include "ivt/analysis.hpp"
#include "ivt/core.hpp"
#include "ivt/dynamics.hpp"
#include "ivt/odpe.hpp"
#include "ivt/reference.hpp"
#include "ivt/report.hpp"

namespace {

using ivt::Value;
using ivt::report::Report;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultMaxIter = 10000;
constexpr Value kDefaultValueCap = 1000000000;
constexpr Value kDefaultHorizon = 100;
constexpr unsigned kDefaultDigits = 3;

struct Options {
    unsigned p = 3;
    Value j = 0;
    Value x = 0;
    Value start = 0;
    std::string variant = "I";
    Value mul = 1;
    Value add = 0;
    std::optional<Value> scan_limit;
    std::uint64_t max_iter = kDefaultMaxIter;
    Value value_cap = kDefaultValueCap;
    Value horizon = kDefaultHorizon;
    unsigned digits = kDefaultDigits;
    std::optional<Value> bound;
    Value radius = 2;
    std::optional<Value> n_points;
    std::size_t n_max = 1000;
    Value capacity = 80;
    std::optional<Value> steady_point;
    std::string rows;
    std::string format = "plain";
    bool strict = false;
    bool curve = false;
    bool sweep = false;
};

Value default_scan_limit(unsigned p) { return ivt::checked_pow(p, 5) - 1; }

Value scan_limit_of(const Options& opt) {
    return opt.scan_limit.value_or(default_scan_limit(opt.p));
}

Value bound_of(const Options& opt) { return opt.bound.value_or(default_scan_limit(opt.p)); }

ivt::adds::Variant variant_of(const Options& opt) {
    if (opt.variant == "I" || opt.variant == "i" || opt.variant == "1")
        return ivt::adds::Variant::kTypeI;
    if (opt.variant == "II" || opt.variant == "ii" || opt.variant == "2")
        return ivt::adds::Variant::kTypeII;
    throw std::invalid_argument("variant must be I or II");
}

unsigned thread_count() {
    const char* env = std::getenv("IVT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? static_cast<unsigned>(n) : 1;
}

std::vector<std::pair<Value, Value>> parse_rows(const Options& opt) {
    if (opt.rows.empty()) return ivt::adds::all_coefficients(opt.p);
    std::vector<std::pair<Value, Value>> out;
    std::stringstream stream(opt.rows);
    std::string item;
    while (std::getline(stream, item, ';')) {
        auto comma = item.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("rows must be 'A,B' pairs separated by ';'");
        Value mul = std::stoull(item.substr(0, comma));
        Value add = std::stoull(item.substr(comma + 1));
        if (mul < 1 || mul >= opt.p || add >= opt.p)
            throw std::invalid_argument("row coefficients must satisfy 1 <= A < p, 0 <= B < p");
        out.emplace_back(mul, add);
    }
    if (out.empty()) throw std::invalid_argument("rows list is empty");
    return out;
}

std::string join_values(const std::vector<Value>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << " ";
        out << values[i];
    }
    return out.str();
}

std::string render_entries(const std::vector<ivt::adds::TableEntry>& entries) {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ",";
        out << entries[i].rule_index << "(" << entries[i].point << ")";
    }
    return out.str();
}

ordered_json entries_json(const std::vector<ivt::adds::TableEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& entry : entries)
        arr.push_back({{"j", entry.rule_index}, {"point", entry.point}});
    return arr;
}

ordered_json ratio_json(const ivt::Ratio& ratio) {
    return {{"num", ratio.num}, {"den", ratio.den}, {"value", ratio.to_double()}};
}

ordered_json orbit_json(const ivt::dynamics::Orbit& orbit) {
    return {{"start", orbit.start},
            {"transient", orbit.transient},
            {"cycle", orbit.cycle},
            {"status", ivt::dynamics::to_string(orbit.status)}};
}

std::string orbit_line(const ivt::dynamics::Orbit& orbit) {
    std::vector<Value> walk = orbit.transient;
    std::ostringstream out;
    if (orbit.status == ivt::dynamics::OrbitStatus::kConvergedToCycle) {
        walk.push_back(orbit.cycle.front());
        out << join_values(walk) << " | cycle: " << join_values(orbit.cycle);
    } else {
        out << join_values(walk);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// command payloads

Report cmd_apply(const Options& opt) {
    Report report;
    report.command = "apply";
    report.config = {{"p", opt.p}, {"j", opt.j}, {"x", opt.x}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    Value result = ivt::apply(rule, opt.x);
    report.payload = {{"result", result}};
    report.csv_header = {"p", "j", "x", "result"};
    report.csv_rows = {{std::to_string(opt.p), std::to_string(opt.j), std::to_string(opt.x),
                        std::to_string(result)}};
    report.plain_lines = {std::to_string(result)};
    return report;
}

Report cmd_rule(const Options& opt) {
    Report report;
    report.command = "rule";
    report.config = {{"p", opt.p}, {"j", opt.j}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    ordered_json table = ordered_json::array();
    report.csv_header = {"digit", "image"};
    for (std::size_t d = 0; d < rule.table().size(); ++d) {
        table.push_back(rule.image(d));
        report.csv_rows.push_back({std::to_string(d), std::to_string(rule.image(d))});
        report.plain_lines.push_back(std::to_string(d) + " -> " + std::to_string(rule.image(d)));
    }
    report.payload = {{"table", table}};
    return report;
}

Report cmd_orbit(const Options& opt) {
    Report report;
    report.command = "orbit";
    report.config = {{"p", opt.p},
                     {"j", opt.j},
                     {"start", opt.start},
                     {"max_iter", opt.max_iter},
                     {"value_cap", opt.value_cap}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto orbit = ivt::dynamics::iterate_orbit([&rule](Value y) { return ivt::apply(rule, y); },
                                              opt.start, opt.max_iter, opt.value_cap);
    report.payload = orbit_json(orbit);
    report.csv_header = {"position", "value", "segment"};
    std::size_t position = 0;
    for (Value v : orbit.transient)
        report.csv_rows.push_back({std::to_string(position++), std::to_string(v), "transient"});
    for (Value v : orbit.cycle)
        report.csv_rows.push_back({std::to_string(position++), std::to_string(v), "cycle"});
    report.plain_lines = {orbit_line(orbit),
                          std::string("status: ") + ivt::dynamics::to_string(orbit.status)};
    return report;
}

Report cmd_classify(const Options& opt) {
    Report report;
    report.command = "classify";
    Value scan = scan_limit_of(opt);
    report.config = {{"p", opt.p},
                     {"j", opt.j},
                     {"scan_limit", scan},
                     {"max_iter", opt.max_iter},
                     {"strict", opt.strict}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto verdict = ivt::dynamics::classify_collatz_like(rule, scan, opt.max_iter, opt.strict);
    report.payload = {{"collatz_like", verdict.is_collatz_like}};
    if (verdict.attractor) {
        report.payload["attractor"] = verdict.attractor->representative;
        report.payload["cycle"] = verdict.attractor_cycle;
    }
    if (verdict.witness) report.payload["witness"] = *verdict.witness;
    report.csv_header = {"j", "collatz_like", "attractor", "cycle_length", "witness"};
    report.csv_rows = {{std::to_string(opt.j), verdict.is_collatz_like ? "true" : "false",
                        verdict.attractor ? std::to_string(verdict.attractor->representative) : "",
                        verdict.attractor ? std::to_string(verdict.attractor->cycle_length) : "",
                        verdict.witness ? std::to_string(*verdict.witness) : ""}};
    std::ostringstream line;
    line << "collatz-like: " << (verdict.is_collatz_like ? "true" : "false");
    if (verdict.attractor)
        line << " | attractor " << verdict.attractor->representative << " (cycle length "
             << verdict.attractor->cycle_length << ")";
    if (verdict.witness) line << " | witness " << *verdict.witness;
    report.plain_lines = {line.str()};
    return report;
}

Report cmd_enumerate(const Options& opt) {
    Report report;
    report.command = "enumerate";
    Value scan = scan_limit_of(opt);
    report.config = {{"p", opt.p},
                     {"scan_limit", scan},
                     {"max_iter", opt.max_iter},
                     {"strict", opt.strict}};
    auto rules = ivt::dynamics::enumerate_collatz_like(opt.p, scan, opt.max_iter, opt.strict);
    Value claim_high = ivt::checked_pow(opt.p, opt.p - 1);
    Value claim_low = claim_high - 1;
    report.payload = {{"rules", rules},
                      {"count", rules.size()},
                      {"claimed_count_p_pow_p_minus_1", claim_high},
                      {"claimed_count_p_pow_p_minus_1_minus_1", claim_low}};
    if (!opt.strict && rules.size() != claim_low) {
        std::ostringstream warn;
        warn << "bundled claim of " << claim_low << " (p^(p-1) - 1) Collatz-like rules is "
             << "inconsistent with the measured count " << rules.size()
             << "; the alternative claim p^(p-1) = " << claim_high
             << (rules.size() == claim_high ? " matches" : " also differs");
        report.warnings.push_back(warn.str());
    }
    report.csv_header = {"j"};
    for (Value j : rules) report.csv_rows.push_back({std::to_string(j)});
    report.plain_lines = {"count: " + std::to_string(rules.size()),
                          "rules: " + join_values(rules),
                          "claimed p^(p-1): " + std::to_string(claim_high),
                          "claimed p^(p-1)-1: " + std::to_string(claim_low)};
    return report;
}

Report cmd_steady(const Options& opt) {
    Report report;
    report.command = "steady";
    Value bound = bound_of(opt);
    report.config = {{"p", opt.p},       {"j", opt.j},     {"variant", opt.variant},
                     {"A", opt.mul},     {"B", opt.add},   {"bound", bound}};
    auto spec = ivt::adds::make_spec(variant_of(opt), opt.p, opt.j, opt.mul, opt.add);
    auto result = ivt::adds::steady_states(spec, bound);
    report.payload = {{"steady_points", result.steady_points}, {"unique", result.unique}};
    report.csv_header = {"steady_point"};
    for (Value y : result.steady_points) report.csv_rows.push_back({std::to_string(y)});
    report.plain_lines = {
        "steady points: " +
            (result.steady_points.empty() ? std::string("(none)") : join_values(result.steady_points)),
        std::string("unique: ") + (result.unique ? "true" : "false")};
    return report;
}

Report cmd_stability(const Options& opt) {
    Report report;
    report.command = "stability";
    Value bound = bound_of(opt);
    auto spec = ivt::adds::make_spec(variant_of(opt), opt.p, opt.j, opt.mul, opt.add);
    Value point;
    if (opt.steady_point) {
        point = *opt.steady_point;
    } else {
        auto steady = ivt::adds::steady_states(spec, bound);
        if (steady.steady_points.empty())
            throw std::domain_error("stability: system has no steady point in the scan range");
        point = steady.steady_points.front();
        if (!steady.unique)
            report.warnings.push_back(
                "multiple steady points; analyzing the smallest (pass --point to choose)");
    }
    report.config = {{"p", opt.p},     {"j", opt.j},     {"variant", opt.variant},
                     {"A", opt.mul},   {"B", opt.add},   {"point", point},
                     {"radius", opt.radius}, {"bound", bound}};
    auto result = ivt::adds::stability_report(spec, point, opt.radius, bound);
    report.payload = {
        {"steady_point", point},
        {"local",
         {{"radius", result.local.radius},
          {"max_quotient", ratio_json(result.local.scan.max_quotient)},
          {"witness", {result.local.scan.witness.first, result.local.scan.witness.second}},
          {"stable", result.local.stable}}},
        {"global",
         {{"scan_bound", result.global.scan_bound},
          {"max_quotient", ratio_json(result.global.scan.max_quotient)},
          {"witness", {result.global.scan.witness.first, result.global.scan.witness.second}},
          {"stable", result.global.stable}}}};
    report.csv_header = {"scope", "max_quotient", "stable", "witness_x", "witness_y"};
    report.csv_rows = {
        {"local", ivt::report::format_double(result.local.scan.max_quotient.to_double()),
         result.local.stable ? "true" : "false",
         std::to_string(result.local.scan.witness.first),
         std::to_string(result.local.scan.witness.second)},
        {"global", ivt::report::format_double(result.global.scan.max_quotient.to_double()),
         result.global.stable ? "true" : "false",
         std::to_string(result.global.scan.witness.first),
         std::to_string(result.global.scan.witness.second)}};
    std::ostringstream local_line, global_line;
    local_line << "locally stable: " << (result.local.stable ? "true" : "false")
               << " (max quotient " << result.local.scan.max_quotient.num << "/"
               << result.local.scan.max_quotient.den << " at radius " << result.local.radius
               << ")";
    global_line << "globally stable: " << (result.global.stable ? "true" : "false")
                << " (max quotient " << result.global.scan.max_quotient.num << "/"
                << result.global.scan.max_quotient.den << ")";
    report.plain_lines = {"steady point: " + std::to_string(point), local_line.str(),
                          global_line.str()};
    return report;
}

Report cmd_correspondence(const Options& opt) {
    Report report;
    report.command = "correspondence";
    Value scan = scan_limit_of(opt);
    report.config = {{"p", opt.p},   {"j", opt.j},   {"A", opt.mul},
                     {"B", opt.add}, {"scan_limit", scan}, {"sweep", opt.sweep}};
    if (opt.sweep) {
        auto coefficients = ivt::adds::all_coefficients(opt.p);
        auto witnesses = ivt::adds::converse_violations(opt.p, coefficients, scan, opt.max_iter,
                                                        opt.value_cap);
        ordered_json arr = ordered_json::array();
        for (const auto& w : witnesses)
            arr.push_back({{"j", w.rule_index}, {"A", w.mul}, {"B", w.add}});
        report.payload = {{"converse_witnesses", arr}};
        report.csv_header = {"j", "A", "B"};
        for (const auto& w : witnesses)
            report.csv_rows.push_back({std::to_string(w.rule_index), std::to_string(w.mul),
                                       std::to_string(w.add)});
        if (witnesses.empty()) {
            report.warnings.push_back(
                "bundled claim that type-II Collatz-likeness does not imply type-I is not "
                "reproduced: the sweep found no witness in the scanned domain");
            report.plain_lines = {"converse witnesses: (none)"};
        } else {
            report.plain_lines = {"converse witnesses: " + std::to_string(witnesses.size())};
        }
        return report;
    }
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto record = ivt::adds::verify_type_correspondence(rule, opt.mul, opt.add, scan,
                                                        opt.max_iter, opt.value_cap);
    report.payload = {{"type1_attractor", record.type1_attractor},
                      {"relation_holds", record.relation_holds}};
    if (record.type2_attractor) report.payload["type2_attractor"] = *record.type2_attractor;
    report.csv_header = {"j", "A", "B", "type1_attractor", "type2_attractor", "relation_holds"};
    report.csv_rows = {{std::to_string(opt.j), std::to_string(opt.mul), std::to_string(opt.add),
                        std::to_string(record.type1_attractor),
                        record.type2_attractor ? std::to_string(*record.type2_attractor) : "",
                        record.relation_holds ? "true" : "false"}};
    std::ostringstream line;
    line << "type-I attractor: " << record.type1_attractor << " | type-II attractor: ";
    if (record.type2_attractor)
        line << *record.type2_attractor;
    else
        line << "(not Collatz-like)";
    line << " | relation holds: " << (record.relation_holds ? "true" : "false");
    report.plain_lines = {line.str()};
    return report;
}

Report cmd_tables(const Options& opt) {
    Report report;
    report.command = "tables";
    auto variant = variant_of(opt);
    auto coefficients = parse_rows(opt);
    auto config = ivt::adds::default_table_config(opt.p);
    if (opt.scan_limit) config.scan_limit = *opt.scan_limit;
    if (opt.bound) config.steady_bound = *opt.bound;
    config.max_iter = opt.max_iter;
    config.value_cap = opt.value_cap;
    config.threads = thread_count();
    report.config = {{"p", opt.p},
                     {"variant", opt.variant},
                     {"scan_limit", config.scan_limit},
                     {"steady_bound", config.steady_bound},
                     {"max_iter", config.max_iter},
                     {"value_cap", config.value_cap},
                     {"radius", config.stability_radius}};

    auto rows = ivt::adds::attractor_table(opt.p, variant, coefficients, config);
    report.warnings = ivt::reference::diff_against_reference(rows, variant, opt.p);

    ordered_json json_rows = ordered_json::array();
    report.csv_header = {"A", "B", "j", "attractor", "unique_steady", "locally_stable",
                         "globally_stable"};
    Value rule_total = *ivt::rule_count(opt.p, 1);
    for (const auto& row : rows) {
        json_rows.push_back({{"A", row.mul},
                             {"B", row.add},
                             {"attractors", entries_json(row.attractors)},
                             {"unique_steady", entries_json(row.unique_steady)},
                             {"locally_stable", entries_json(row.locally_stable)},
                             {"globally_stable", entries_json(row.globally_stable)},
                             {"divergent", row.divergent}});
        for (Value j = 0; j < rule_total; ++j) {
            auto find_point = [j](const std::vector<ivt::adds::TableEntry>& entries)
                -> std::optional<Value> {
                for (const auto& e : entries)
                    if (e.rule_index == j) return e.point;
                return std::nullopt;
            };
            auto attractor = find_point(row.attractors);
            bool divergent =
                std::find(row.divergent.begin(), row.divergent.end(), j) != row.divergent.end();
            auto unique = find_point(row.unique_steady);
            auto local = find_point(row.locally_stable);
            auto global = find_point(row.globally_stable);
            report.csv_rows.push_back(
                {std::to_string(row.mul), std::to_string(row.add), std::to_string(j),
                 divergent ? "divergent" : (attractor ? std::to_string(*attractor) : ""),
                 unique ? std::to_string(*unique) : "", local ? std::to_string(*local) : "",
                 global ? std::to_string(*global) : ""});
        }
        std::ostringstream line;
        line << "A=" << row.mul << " B=" << row.add << " | attractors: "
             << render_entries(row.attractors)
             << " | unique-steady: " << render_entries(row.unique_steady)
             << " | locally-stable: " << render_entries(row.locally_stable)
             << " | globally-stable: " << render_entries(row.globally_stable)
             << " | divergent: " << join_values(row.divergent);
        report.plain_lines.push_back(line.str());
    }
    report.payload = {{"rows", json_rows}};
    return report;
}

Report cmd_odpe_build(const Options& opt) {
    Report report;
    report.command = "odpe build";
    report.config = {{"p", opt.p}, {"j", opt.j}, {"digits", opt.digits}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto topo = ivt::odpe::build_topology(rule, opt.digits);

    ordered_json routes = ordered_json::object();
    for (const auto& [node, path] : topo.routes) routes[std::to_string(node)] = path;
    report.payload = {{"node_count", topo.node_count},
                      {"sca", topo.sca},
                      {"stations", topo.stations},
                      {"substations", topo.substations},
                      {"routes", routes}};
    // Edge list: every node except the SCA links to its image.
    report.csv_header = {"source", "target"};
    for (Value node = 1; node < topo.node_count; ++node)
        report.csv_rows.push_back({std::to_string(node), std::to_string(ivt::apply(rule, node))});
    report.plain_lines = {"sca: " + std::to_string(topo.sca),
                          "stations: " + join_values(topo.stations),
                          "substations: " + join_values(topo.substations)};
    for (const auto& [node, path] : topo.routes)
        report.plain_lines.push_back("route " + std::to_string(node) + ": " + join_values(path));
    return report;
}

Report cmd_odpe_hops(const Options& opt) {
    Report report;
    report.command = "odpe hops";
    auto convention = ivt::odpe::kPinnedHopConvention;
    report.config = {{"p", opt.p},
                     {"j", opt.j},
                     {"horizon", opt.horizon},
                     {"hop_convention", ivt::odpe::to_string(convention.metric)},
                     {"include_zero", convention.include_zero}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto stats = ivt::odpe::average_hopping(rule, opt.horizon, convention);
    ordered_json per_node = ordered_json::object();
    for (const auto& [node, hops] : stats.per_node) per_node[std::to_string(node)] = hops;
    report.payload = {{"total_hops", stats.total_hops},
                      {"average", ratio_json(stats.average)},
                      {"per_node", per_node}};
    report.csv_header = {"node", "hops"};
    for (const auto& [node, hops] : stats.per_node)
        report.csv_rows.push_back({std::to_string(node), std::to_string(hops)});
    std::ostringstream line;
    line << "average hopping: " << ivt::report::format_double(stats.average.to_double()) << " ("
         << stats.average.num << "/" << stats.average.den << ")";
    report.plain_lines = {line.str(),
                          std::string("convention: ") + ivt::odpe::to_string(convention.metric)};
    return report;
}

Report cmd_odpe_best(const Options& opt) {
    Report report;
    report.command = "odpe best";
    report.config = {{"p", opt.p}, {"horizon", opt.horizon}};
    auto selection = ivt::odpe::select_best_rule(opt.p, opt.horizon);
    ordered_json averages = ordered_json::object();
    for (const auto& [j, avg] : selection.average_hops)
        averages[std::to_string(j)] = ratio_json(avg);
    report.payload = {{"best", selection.rule_index},
                      {"candidates", selection.candidates},
                      {"average_hops", averages}};
    report.csv_header = {"j", "average_hops"};
    for (const auto& [j, avg] : selection.average_hops)
        report.csv_rows.push_back(
            {std::to_string(j), ivt::report::format_double(avg.to_double())});
    report.plain_lines = {"best rule: " + std::to_string(selection.rule_index),
                          "candidates: " + join_values(selection.candidates)};
    for (const auto& [j, avg] : selection.average_hops)
        report.plain_lines.push_back("  j=" + std::to_string(j) + " average " +
                                     ivt::report::format_double(avg.to_double()));
    return report;
}

Report cmd_odpe_capacity(const Options& opt) {
    Report report;
    report.command = "odpe capacity";
    report.config = {{"p", opt.p}, {"j", opt.j}, {"capacity", opt.capacity}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto policy = ivt::odpe::capacity_check(rule, opt.capacity);
    report.payload = {{"capacity", policy.capacity}, {"excluded", policy.excluded_nodes}};
    report.csv_header = {"excluded_node"};
    for (Value node : policy.excluded_nodes)
        report.csv_rows.push_back({std::to_string(node)});
    report.plain_lines = {"excluded: " + (policy.excluded_nodes.empty()
                                              ? std::string("(none)")
                                              : join_values(policy.excluded_nodes))};
    return report;
}

Report cmd_analysis_fractal(const Options& opt) {
    Report report;
    report.command = "analysis fractal";
    Value n_points = opt.n_points.value_or(ivt::checked_pow(opt.p, 6));
    auto geometry = opt.curve ? ivt::analysis::GraphGeometry::kCurve
                              : ivt::analysis::GraphGeometry::kPoints;
    report.config = {{"p", opt.p},           {"j", opt.j},
                     {"variant", opt.variant}, {"A", opt.mul},
                     {"B", opt.add},         {"n_points", n_points},
                     {"geometry", ivt::analysis::to_string(geometry)}};
    auto spec = ivt::adds::make_spec(variant_of(opt), opt.p, opt.j, opt.mul, opt.add);
    auto sample = ivt::analysis::graph_points(spec, n_points);
    auto levels = ivt::analysis::default_levels();
    auto fit = ivt::analysis::box_dimension(sample, levels, geometry);
    report.payload = {{"dimension", fit.dimension},
                      {"fit_residual", fit.fit_residual},
                      {"scales", fit.scales},
                      {"counts", fit.counts}};
    report.csv_header = {"scale", "count"};
    for (std::size_t i = 0; i < fit.scales.size(); ++i)
        report.csv_rows.push_back(
            {ivt::report::format_double(fit.scales[i]), std::to_string(fit.counts[i])});
    std::ostringstream counts_line;
    counts_line << "counts:";
    for (auto c : fit.counts) counts_line << " " << c;
    report.plain_lines = {"dimension: " + ivt::report::format_double(fit.dimension),
                          counts_line.str()};
    return report;
}

Report cmd_analysis_graph(const Options& opt) {
    Report report;
    report.command = "analysis graph";
    Value n_points = opt.n_points.value_or(ivt::checked_pow(opt.p, 6));
    report.config = {{"p", opt.p},           {"j", opt.j}, {"variant", opt.variant},
                     {"A", opt.mul},         {"B", opt.add},
                     {"n_points", n_points}};
    auto spec = ivt::adds::make_spec(variant_of(opt), opt.p, opt.j, opt.mul, opt.add);
    auto sample = ivt::analysis::graph_points(spec, n_points);
    ordered_json points = ordered_json::array();
    report.csv_header = {"Y0", "Y1"};
    for (const auto& [y0, y1] : sample.points) {
        points.push_back({y0, y1});
        report.csv_rows.push_back({std::to_string(y0), std::to_string(y1)});
    }
    report.payload = {{"points", points}};
    report.plain_lines = {"points: " + std::to_string(sample.points.size())};
    return report;
}

Report cmd_analysis_series(const Options& opt) {
    Report report;
    report.command = "analysis series";
    report.config = {{"p", opt.p},   {"j", opt.j},     {"variant", opt.variant},
                     {"A", opt.mul}, {"B", opt.add},   {"n_max", opt.n_max}};
    auto spec = ivt::adds::make_spec(variant_of(opt), opt.p, opt.j, opt.mul, opt.add);
    auto series = ivt::analysis::ratio_sequence(spec, opt.n_max);
    report.payload = {{"verdict", ivt::analysis::to_string(series.verdict)},
                      {"window_size", series.window_size},
                      {"window_spread", series.window_spread},
                      {"zero_terms", series.zero_terms.size()}};
    if (series.limit_estimate) report.payload["limit_estimate"] = *series.limit_estimate;

    // Identity rule is the one whose table fixes every digit.
    bool identity = true;
    for (std::size_t d = 0; d < spec.rule.table().size(); ++d)
        identity = identity && spec.rule.image(d) == d;
    if (series.verdict == ivt::analysis::SeriesVerdict::kRadiusOne && !identity)
        report.warnings.push_back(
            "radius-one verdict for a non-identity rule; the bundled claim expects the identity "
            "rule only");

    report.csv_header = {"n", "term", "ratio"};
    for (std::size_t n = 0; n < series.ratios.size(); ++n)
        report.csv_rows.push_back(
            {std::to_string(n), std::to_string(series.terms[n]),
             series.ratios[n] ? ivt::report::format_double(*series.ratios[n]) : ""});
    report.plain_lines = {std::string("verdict: ") + ivt::analysis::to_string(series.verdict)};
    if (series.limit_estimate)
        report.plain_lines.push_back("limit estimate: " +
                                     ivt::report::format_double(*series.limit_estimate));
    return report;
}

Report cmd_analysis_contraction(const Options& opt) {
    Report report;
    report.command = "analysis contraction";
    Value bound = bound_of(opt);
    report.config = {{"p", opt.p}, {"j", opt.j}, {"bound", bound}};
    auto rule = ivt::rule_from_index(opt.p, 1, opt.j);
    auto verdict = ivt::adds::is_contraction(rule, bound);
    report.payload = {{"contraction", verdict.contraction},
                      {"max_quotient", ratio_json(verdict.max_quotient)}};
    if (verdict.witness) {
        report.payload["witness"] = {verdict.witness->first, verdict.witness->second};
        report.payload["witness_quotient"] = ratio_json(verdict.witness_quotient);
    }
    report.csv_header = {"j", "contraction", "witness_x", "witness_y", "witness_quotient"};
    report.csv_rows = {{std::to_string(opt.j), verdict.contraction ? "true" : "false",
                        verdict.witness ? std::to_string(verdict.witness->first) : "",
                        verdict.witness ? std::to_string(verdict.witness->second) : "",
                        verdict.witness
                            ? ivt::report::format_double(verdict.witness_quotient.to_double())
                            : ""}};
    std::ostringstream line;
    line << "contraction: " << (verdict.contraction ? "true" : "false");
    if (verdict.witness)
        line << " | witness (" << verdict.witness->first << ", " << verdict.witness->second
             << ") quotient " << verdict.witness_quotient.num << "/"
             << verdict.witness_quotient.den;
    report.plain_lines = {line.str()};
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Digit-wise integer transformations: affine dynamics, simulation tables, and the\n"
        "derived three-layer scheduling topology.\n"};
    app.set_version_flag("--version", ivt::report::kToolVersion);
    app.set_config("--config", "", "Config file with key=value overrides ([subcommand] sections)");
    app.footer(
        "Exit status: 0 success, 2 usage error, 3 domain error.\n"
        "IVT_THREADS controls sweep parallelism (tables).");
    app.require_subcommand(1);

    Options opt;
    std::string command;

    auto add_common = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->configurable();
        sub->add_option("--p", opt.p, "Base (>= 2)")->capture_default_str();
        sub->add_option("--format", opt.format, "Output format: json, csv, plain")
            ->capture_default_str();
    };
    auto add_rule_opt = [&](CLI::App* sub) {
        sub->add_option("--j", opt.j, "Rule index")->capture_default_str();
    };
    auto add_affine = [&](CLI::App* sub) {
        sub->add_option("--variant", opt.variant, "System variant: I or II")
            ->capture_default_str();
        sub->add_option("--A,--a", opt.mul, "Multiplier coefficient")->capture_default_str();
        sub->add_option("--B,--b", opt.add, "Additive coefficient")->capture_default_str();
    };

    CLI::App* apply = app.add_subcommand("apply", "Apply a rule to one value");
    add_common(apply);
    add_rule_opt(apply);
    apply->add_option("--x", opt.x, "Operand")->required();

    CLI::App* rule = app.add_subcommand("rule", "Print a rule's digit table");
    add_common(rule);
    add_rule_opt(rule);

    CLI::App* orbit = app.add_subcommand("orbit", "Iterate a rule and split the trajectory");
    add_common(orbit);
    add_rule_opt(orbit);
    orbit->add_option("--start", opt.start, "Initial value")->required();
    orbit->add_option("--max-iter", opt.max_iter, "Iteration cap")->capture_default_str();
    orbit->add_option("--value-cap", opt.value_cap, "Divergence threshold")
        ->capture_default_str();

    CLI::App* classify = app.add_subcommand("classify", "Collatz-like classification of a rule");
    add_common(classify);
    add_rule_opt(classify);
    classify->add_option("--scan-limit", opt.scan_limit, "Largest start checked");
    classify->add_option("--max-iter", opt.max_iter, "Iteration cap")->capture_default_str();
    classify->add_flag("--strict", opt.strict, "Require a fixed point, not a cycle");

    CLI::App* enumerate = app.add_subcommand("enumerate", "List all Collatz-like rules");
    add_common(enumerate);
    enumerate->add_option("--scan-limit", opt.scan_limit, "Largest start checked");
    enumerate->add_option("--max-iter", opt.max_iter, "Iteration cap")->capture_default_str();
    enumerate->add_flag("--strict", opt.strict, "Require a fixed point, not a cycle");

    CLI::App* steady = app.add_subcommand("steady", "Steady states of an affine system");
    add_common(steady);
    add_rule_opt(steady);
    add_affine(steady);
    steady->add_option("--bound", opt.bound, "Search bound (default p^5-1)");

    CLI::App* stability = app.add_subcommand("stability", "Local/global stability report");
    add_common(stability);
    add_rule_opt(stability);
    add_affine(stability);
    stability->add_option("--point", opt.steady_point, "Steady point to analyze");
    stability->add_option("--radius", opt.radius, "Local window radius")->capture_default_str();
    stability->add_option("--bound", opt.bound, "Global scan bound (default p^5-1)");

    CLI::App* correspondence =
        app.add_subcommand("correspondence", "Attractor shift between type-I and type-II");
    add_common(correspondence);
    add_rule_opt(correspondence);
    correspondence->add_option("--A,--a", opt.mul, "Multiplier coefficient")
        ->capture_default_str();
    correspondence->add_option("--B,--b", opt.add, "Additive coefficient")
        ->capture_default_str();
    correspondence->add_option("--scan-limit", opt.scan_limit, "Largest start checked");
    correspondence->add_flag("--sweep", opt.sweep,
                             "Sweep for type-II Collatz-like systems whose type-I twin fails");

    CLI::App* tables = app.add_subcommand("tables", "Attractor/steady/stability table");
    add_common(tables);
    tables->add_option("--variant", opt.variant, "System variant: I or II")
        ->capture_default_str();
    tables->add_option("--rows", opt.rows, "Coefficient rows 'A,B;A,B;...' (default all)");
    tables->add_option("--scan-limit", opt.scan_limit, "Largest start checked");
    tables->add_option("--bound", opt.bound, "Steady-state search bound");

    CLI::App* odpe = app.add_subcommand("odpe", "Scheduling topology commands");
    odpe->fallthrough();
    odpe->configurable();
    odpe->require_subcommand(1);
    CLI::App* odpe_build = odpe->add_subcommand("build", "Build the 3-layer topology");
    add_common(odpe_build);
    add_rule_opt(odpe_build);
    odpe_build->add_option("--digits", opt.digits, "Digit budget n (p^n nodes)")
        ->capture_default_str();
    CLI::App* odpe_hops = odpe->add_subcommand("hops", "Average hopping statistics");
    add_common(odpe_hops);
    add_rule_opt(odpe_hops);
    odpe_hops->add_option("--horizon", opt.horizon, "Largest natural checked")
        ->capture_default_str();
    CLI::App* odpe_best = odpe->add_subcommand("best", "Select the best scheduling rule");
    add_common(odpe_best);
    odpe_best->add_option("--horizon", opt.horizon, "Largest natural checked")
        ->capture_default_str();
    CLI::App* odpe_capacity = odpe->add_subcommand("capacity", "Capacity exclusion policy");
    add_common(odpe_capacity);
    add_rule_opt(odpe_capacity);
    odpe_capacity->add_option("--capacity", opt.capacity, "System capacity")
        ->capture_default_str();

    CLI::App* analysis = app.add_subcommand("analysis", "Fractal/series/contraction reports");
    analysis->fallthrough();
    analysis->configurable();
    analysis->require_subcommand(1);
    CLI::App* fractal = analysis->add_subcommand("fractal", "Box-counting dimension");
    add_common(fractal);
    add_rule_opt(fractal);
    add_affine(fractal);
    fractal->add_option("--points", opt.n_points, "Sample size (default p^6)");
    fractal->add_flag("--curve", opt.curve, "Count the connected polyline, not bare points");
    CLI::App* graph = analysis->add_subcommand("graph", "Dump (Y0, Y1) sample points");
    add_common(graph);
    add_rule_opt(graph);
    add_affine(graph);
    graph->add_option("--points", opt.n_points, "Sample size (default p^6)");
    CLI::App* series = analysis->add_subcommand("series", "Power-series ratio test");
    add_common(series);
    add_rule_opt(series);
    add_affine(series);
    series->add_option("--n-max", opt.n_max, "Largest term index")->capture_default_str();
    CLI::App* contraction = analysis->add_subcommand("contraction", "Contraction test");
    add_common(contraction);
    add_rule_opt(contraction);
    contraction->add_option("--bound", opt.bound, "Pair scan bound (default p^5-1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report report;
        if (*apply) report = cmd_apply(opt);
        else if (*rule) report = cmd_rule(opt);
        else if (*orbit) report = cmd_orbit(opt);
        else if (*classify) report = cmd_classify(opt);
        else if (*enumerate) report = cmd_enumerate(opt);
        else if (*steady) report = cmd_steady(opt);
        else if (*stability) report = cmd_stability(opt);
        else if (*correspondence) report = cmd_correspondence(opt);
        else if (*tables) report = cmd_tables(opt);
        else if (*odpe_build) report = cmd_odpe_build(opt);
        else if (*odpe_hops) report = cmd_odpe_hops(opt);
        else if (*odpe_best) report = cmd_odpe_best(opt);
        else if (*odpe_capacity) report = cmd_odpe_capacity(opt);
        else if (*fractal) report = cmd_analysis_fractal(opt);
        else if (*graph) report = cmd_analysis_graph(opt);
        else if (*series) report = cmd_analysis_series(opt);
        else if (*contraction) report = cmd_analysis_contraction(opt);
        else return 2;
        std::cout << ivt::report::render(report, ivt::report::parse_format(opt.format));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
