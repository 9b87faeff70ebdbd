#include "ivt/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ivt {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Value checked_mul(Value a, Value b) {
    Value out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("multiplication overflow");
    return out;
}

Value checked_add(Value a, Value b) {
    Value out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("addition overflow");
    return out;
}

Value checked_pow(Value base, Value exp) {
    Value out = 1;
    for (Value i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

Value checked_mul_add(Value m, Value x, Value a) {
    return checked_add(checked_mul(m, x), a);
}

bool Ratio::less_than(const Ratio& other) const {
    return static_cast<unsigned __int128>(num) * other.den <
           static_cast<unsigned __int128>(other.num) * den;
}

bool Ratio::operator==(const Ratio& other) const {
    return static_cast<unsigned __int128>(num) * other.den ==
           static_cast<unsigned __int128>(other.num) * den;
}

DigitString digits_of(Value x, unsigned base) {
    require(base >= 2, "digits_of: base must be >= 2");
    DigitString out;
    out.base = base;
    if (x == 0) {
        out.digits = {0};
        return out;
    }
    while (x > 0) {
        out.digits.push_back(static_cast<std::uint8_t>(x % base));
        x /= base;
    }
    std::reverse(out.digits.begin(), out.digits.end());
    return out;
}

Value value_of(const DigitString& d) {
    require(d.base >= 2, "value_of: base must be >= 2");
    require(!d.digits.empty(), "value_of: empty digit string");
    Value v = 0;
    for (std::uint8_t digit : d.digits) {
        require(digit < d.base, "value_of: digit out of range for base");
        v = checked_add(checked_mul(v, d.base), digit);
    }
    return v;
}

unsigned digit_count(Value x, unsigned base) {
    require(base >= 2, "digit_count: base must be >= 2");
    unsigned n = 1;
    while (x >= base) {
        x /= base;
        ++n;
    }
    return n;
}

std::optional<Value> rule_count(unsigned base, unsigned arity) {
    try {
        return checked_pow(base, checked_pow(base, arity));
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

LocalRule::LocalRule(unsigned base, unsigned arity, std::vector<std::uint8_t> table)
    : base_(base), arity_(arity), table_(std::move(table)) {
    require(base_ >= 2, "LocalRule: base must be >= 2");
    require(arity_ >= 1, "LocalRule: arity must be >= 1");
    Value slots = checked_pow(base_, arity_);
    require(table_.size() == slots, "LocalRule: table length must be base^arity");
    for (std::uint8_t d : table_)
        require(d < base_, "LocalRule: table entry out of range");
}

IvtIndex LocalRule::id() const { return {base_, arity_, index_from_rule(*this)}; }

LocalRule rule_from_index(unsigned base, unsigned arity, Value index) {
    require(base >= 2, "rule_from_index: base must be >= 2");
    require(arity >= 1, "rule_from_index: arity must be >= 1");
    Value slots = checked_pow(base, arity);
    require(slots <= (Value{1} << 20), "rule_from_index: table too large");
    if (auto count = rule_count(base, arity))
        require(index < *count, "rule_from_index: index out of range");
    std::vector<std::uint8_t> table(static_cast<std::size_t>(slots));
    Value rest = index;
    for (auto& slot : table) {
        slot = static_cast<std::uint8_t>(rest % base);
        rest /= base;
    }
    return LocalRule(base, arity, std::move(table));
}

Value index_from_rule(const LocalRule& rule) {
    Value index = 0;
    const auto& table = rule.table();
    for (std::size_t t = table.size(); t-- > 0;)
        index = checked_add(checked_mul(index, rule.base()), table[t]);
    return index;
}

Value apply(const LocalRule& rule, Value x) {
    require(rule.arity() == 1, "apply: rule arity must be 1");
    DigitString d = digits_of(x, rule.base());
    for (auto& digit : d.digits) digit = rule.image(digit);
    return value_of(d);
}

Value apply_k(const LocalRule& rule, std::span<const Value> xs) {
    require(xs.size() == rule.arity(), "apply_k: operand count must equal rule arity");
    const unsigned base = rule.base();
    std::size_t width = 1;
    for (Value x : xs) width = std::max<std::size_t>(width, digit_count(x, base));

    std::vector<DigitString> operands;
    operands.reserve(xs.size());
    for (Value x : xs) {
        DigitString d = digits_of(x, base);
        d.digits.insert(d.digits.begin(), width - d.digits.size(), 0);
        operands.push_back(std::move(d));
    }

    DigitString out;
    out.base = base;
    out.digits.resize(width);
    for (std::size_t pos = 0; pos < width; ++pos) {
        // slot = d1 + d2*p + ... + dk*p^(k-1)
        Value slot = 0;
        for (std::size_t m = operands.size(); m-- > 0;)
            slot = slot * base + operands[m].digits[pos];
        out.digits[pos] = rule.image(static_cast<std::size_t>(slot));
    }
    return value_of(out);
}

}  // namespace ivt
