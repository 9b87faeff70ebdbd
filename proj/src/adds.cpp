#include "ivt/adds.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace ivt::adds {

namespace {

Ratio quotient(const AddsSpec& spec, Value x, Value y) {
    Value fx = step(spec, x);
    Value fy = step(spec, y);
    Value dv = fx > fy ? fx - fy : fy - fx;
    Value dx = x > y ? x - y : y - x;
    return Ratio{dv, dx};
}

/// Visits the global sampling scheme: every pair at distance <= p^2 within
/// [0, bound], then extremal pairs crossing digit-length boundaries.
template <typename Visitor>
void visit_global_pairs(unsigned base, Value bound, Visitor&& visit) {
    const Value span = static_cast<Value>(base) * base;
    for (Value d = 1; d <= span; ++d)
        for (Value x = 0; x + d <= bound; ++x)
            if (!visit(x, x + d)) return;
    for (Value len = 2;; ++len) {
        Value top;  // p^len - 1
        try {
            top = checked_pow(base, len) - 1;
        } catch (const std::overflow_error&) {
            break;
        }
        if (top > bound) break;
        Value below = checked_pow(base, len - 1) - 1;
        if (!visit(below, top)) return;
        if (!visit(Value{0}, top)) return;
    }
}

QuotientScan scan_pairs_max(const AddsSpec& spec, unsigned base, Value bound) {
    QuotientScan out;
    visit_global_pairs(base, bound, [&](Value x, Value y) {
        Ratio q = quotient(spec, x, y);
        if (out.max_quotient.less_than(q)) {
            out.max_quotient = q;
            out.witness = {x, y};
        }
        return true;
    });
    return out;
}

}  // namespace

const char* to_string(Variant variant) {
    return variant == Variant::kTypeI ? "I" : "II";
}

AddsSpec::AddsSpec(Variant variant_, LocalRule rule_, Value mul_, Value add_)
    : variant(variant_), rule(std::move(rule_)), mul(mul_), add(add_) {
    if (rule.arity() != 1) throw std::invalid_argument("AddsSpec: rule arity must be 1");
    if (mul >= rule.base()) throw std::invalid_argument("AddsSpec: multiplier must be < base");
    if (add >= rule.base()) throw std::invalid_argument("AddsSpec: offset must be < base");
}

AddsSpec make_spec(Variant variant, unsigned base, Value rule_index, Value mul, Value add) {
    return AddsSpec(variant, rule_from_index(base, 1, rule_index), mul, add);
}

Value step(const AddsSpec& spec, Value y) {
    if (spec.variant == Variant::kTypeI)
        return checked_mul_add(spec.mul, apply(spec.rule, y), spec.add);
    return apply(spec.rule, checked_mul_add(spec.mul, y, spec.add));
}

dynamics::Orbit adds_orbit(const AddsSpec& spec, Value start, std::uint64_t max_iter,
                           Value value_cap) {
    return dynamics::iterate_orbit([&spec](Value y) { return step(spec, y); }, start, max_iter,
                                   value_cap);
}

dynamics::CollatzVerdict classify(const AddsSpec& spec, Value scan_limit, std::uint64_t max_iter,
                                  Value value_cap, bool strict) {
    return dynamics::classify_step([&spec](Value y) { return step(spec, y); }, spec.rule.id(),
                                   scan_limit, max_iter, value_cap, strict);
}

SteadyStateReport steady_states(const AddsSpec& spec, Value search_bound) {
    const Value p = spec.rule.base();
    if (search_bound < checked_pow(p, 3) - 1)
        throw std::invalid_argument("steady_states: search_bound must be >= p^3 - 1");
    SteadyStateReport report{spec, search_bound, {}, false};
    for (Value y = 0; y <= search_bound; ++y)
        if (step(spec, y) == y) report.steady_points.push_back(y);
    report.unique = report.steady_points.size() == 1;
    return report;
}

LocalStability local_stability(const AddsSpec& spec, Value steady_point, Value radius) {
    if (step(spec, steady_point) != steady_point)
        throw std::domain_error("local_stability: point is not a fixed point of the step map");
    LocalStability out;
    out.steady_point = steady_point;
    out.radius = radius;
    Value lo = steady_point > radius ? steady_point - radius : 0;
    Value hi = steady_point + radius;
    for (Value x = lo; x <= hi; ++x) {
        for (Value y = x + 1; y <= hi; ++y) {
            Ratio q = quotient(spec, x, y);
            if (out.scan.max_quotient.less_than(q)) {
                out.scan.max_quotient = q;
                out.scan.witness = {x, y};
            }
        }
    }
    out.stable = out.scan.max_quotient.less_than_one();
    return out;
}

GlobalStability global_stability(const AddsSpec& spec, Value scan_bound) {
    const Value p = spec.rule.base();
    if (scan_bound < checked_pow(p, 3) - 1)
        throw std::invalid_argument("global_stability: scan_bound must be >= p^3 - 1");
    GlobalStability out;
    out.scan_bound = scan_bound;
    out.scan = scan_pairs_max(spec, spec.rule.base(), scan_bound);
    out.stable = out.scan.max_quotient.less_than_one();
    return out;
}

StabilityReport stability_report(const AddsSpec& spec, Value steady_point, Value radius,
                                 Value scan_bound) {
    return {spec, local_stability(spec, steady_point, radius),
            global_stability(spec, scan_bound)};
}

ContractionVerdict is_contraction(const LocalRule& rule, Value scan_bound) {
    const Value p = rule.base();
    if (scan_bound < checked_pow(p, 3) - 1)
        throw std::invalid_argument("is_contraction: scan_bound must be >= p^3 - 1");
    AddsSpec raw(Variant::kTypeI, rule, 1, 0);
    ContractionVerdict verdict;
    visit_global_pairs(rule.base(), scan_bound, [&](Value x, Value y) {
        Ratio q = quotient(raw, x, y);
        if (verdict.max_quotient.less_than(q)) verdict.max_quotient = q;
        if (!verdict.witness && !q.less_than_one()) {
            verdict.witness = {x, y};
            verdict.witness_quotient = q;
        }
        return true;
    });
    verdict.contraction = !verdict.witness.has_value();
    return verdict;
}

TableConfig default_table_config(unsigned base) {
    TableConfig config;
    config.scan_limit = checked_pow(base, 5) - 1;
    config.steady_bound = checked_pow(base, 5) - 1;
    return config;
}

std::vector<std::pair<Value, Value>> all_coefficients(unsigned base) {
    std::vector<std::pair<Value, Value>> out;
    for (Value a = 1; a < base; ++a)
        for (Value b = 0; b < base; ++b) out.emplace_back(a, b);
    return out;
}

namespace {

struct CellResult {
    Value rule_index = 0;
    bool collatz_like = false;
    bool diverged = false;
    Value attractor = 0;
    std::vector<Value> steady_points;
    std::vector<Value> locally_stable_points;
    std::vector<Value> globally_stable_points;
};

CellResult compute_cell(unsigned base, Variant variant, Value mul, Value add, Value j,
                        const TableConfig& config) {
    CellResult cell;
    cell.rule_index = j;
    AddsSpec spec = make_spec(variant, base, j, mul, add);
    auto verdict = classify(spec, config.scan_limit, config.max_iter, config.value_cap);
    if (!verdict.is_collatz_like) {
        if (verdict.witness) {
            auto orbit = adds_orbit(spec, *verdict.witness, config.max_iter, config.value_cap);
            cell.diverged = orbit.status != dynamics::OrbitStatus::kConvergedToCycle;
        }
        return cell;
    }
    cell.collatz_like = true;
    cell.attractor = verdict.attractor->representative;
    cell.steady_points = steady_states(spec, config.steady_bound).steady_points;
    bool globally = !cell.steady_points.empty() &&
                    global_stability(spec, config.steady_bound).stable;
    for (Value point : cell.steady_points) {
        if (local_stability(spec, point, config.stability_radius).stable)
            cell.locally_stable_points.push_back(point);
        if (globally) cell.globally_stable_points.push_back(point);
    }
    return cell;
}

}  // namespace

std::vector<TableRow> attractor_table(unsigned base, Variant variant,
                                      std::span<const std::pair<Value, Value>> coefficients,
                                      const TableConfig& config) {
    auto count = rule_count(base, 1);
    if (!count) throw std::invalid_argument("attractor_table: base too large");
    std::vector<TableRow> rows;
    for (auto [mul, add] : coefficients) {
        TableRow row;
        row.mul = mul;
        row.add = add;

        std::vector<CellResult> cells(static_cast<std::size_t>(*count));
        auto worker = [&](Value first, Value last) {
            for (Value j = first; j < last; ++j)
                cells[static_cast<std::size_t>(j)] =
                    compute_cell(base, variant, mul, add, j, config);
        };
        unsigned threads = std::max(1u, config.threads);
        if (threads == 1 || *count < 2 * threads) {
            worker(0, *count);
        } else {
            std::vector<std::future<void>> futures;
            Value chunk = (*count + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                Value first = t * chunk;
                Value last = std::min<Value>(*count, first + chunk);
                if (first >= last) break;
                futures.push_back(std::async(std::launch::async, worker, first, last));
            }
            for (auto& f : futures) f.get();
        }

        for (const CellResult& cell : cells) {
            if (cell.diverged) row.divergent.push_back(cell.rule_index);
            if (!cell.collatz_like) continue;
            row.attractors.push_back({cell.rule_index, cell.attractor});
            if (cell.steady_points.size() == 1)
                row.unique_steady.push_back({cell.rule_index, cell.steady_points.front()});
            for (Value point : cell.locally_stable_points)
                row.locally_stable.push_back({cell.rule_index, point});
            for (Value point : cell.globally_stable_points)
                row.globally_stable.push_back({cell.rule_index, point});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CorrespondenceRecord verify_type_correspondence(const LocalRule& rule, Value mul, Value add,
                                                Value scan_limit, std::uint64_t max_iter,
                                                Value value_cap) {
    AddsSpec type1(Variant::kTypeI, rule, mul, add);
    auto verdict1 = classify(type1, scan_limit, max_iter, value_cap);
    if (!verdict1.is_collatz_like)
        throw std::domain_error("verify_type_correspondence: rule is not Collatz-like as type-I");

    CorrespondenceRecord record;
    record.rule_index = index_from_rule(rule);
    record.mul = mul;
    record.add = add;
    record.type1_attractor = verdict1.attractor->representative;

    AddsSpec type2(Variant::kTypeII, rule, mul, add);
    auto verdict2 = classify(type2, scan_limit, max_iter, value_cap);
    if (verdict2.is_collatz_like)
        record.type2_attractor = verdict2.attractor->representative;

    Value shifted = record.type1_attractor;
    record.relation_holds = record.type2_attractor.has_value() && shifted >= add &&
                            (shifted - add) % mul == 0 &&
                            (shifted - add) / mul == *record.type2_attractor;
    return record;
}

UniqueZeroSteady count_unique_zero_steady(unsigned base, Value scan_limit) {
    UniqueZeroSteady out;
    for (Value j : dynamics::enumerate_collatz_like(base, scan_limit, 10000)) {
        AddsSpec spec = make_spec(Variant::kTypeI, base, j, 1, 0);
        auto report = steady_states(spec, scan_limit);
        if (report.unique && report.steady_points.front() == 0) out.rules.push_back(j);
    }
    out.count = out.rules.size();
    return out;
}

std::vector<ConverseWitness> converse_violations(unsigned base,
                                                 std::span<const std::pair<Value, Value>> coefficients,
                                                 Value scan_limit, std::uint64_t max_iter,
                                                 Value value_cap) {
    auto count = rule_count(base, 1);
    if (!count) throw std::invalid_argument("converse_violations: base too large");
    std::vector<ConverseWitness> witnesses;
    for (auto [mul, add] : coefficients) {
        for (Value j = 0; j < *count; ++j) {
            AddsSpec type2 = make_spec(Variant::kTypeII, base, j, mul, add);
            auto verdict2 = classify(type2, scan_limit, max_iter, value_cap);
            if (!verdict2.is_collatz_like) continue;
            AddsSpec type1 = make_spec(Variant::kTypeI, base, j, mul, add);
            auto verdict1 = classify(type1, scan_limit, max_iter, value_cap);
            bool holds = verdict1.is_collatz_like &&
                         verdict1.attractor->representative ==
                             checked_mul_add(mul, verdict2.attractor->representative, add);
            if (!holds) witnesses.push_back({j, mul, add});
        }
    }
    return witnesses;
}

}  // namespace ivt::adds
