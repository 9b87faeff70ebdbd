#pragma once

// Base-p digit codec and digit-wise integer transformations.
//
// A local rule is a substitution table on base-p digits (arity k maps
// k-tuples of digits to one digit). Applying a rule to an integer maps
// each base-p digit of the operand through the table, position by
// position, and re-reads the result as an integer. Rules are indexed
// canonically: slot t of the table holds the t-th least significant
// base-p digit of the rule index.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ivt {

using Value = std::uint64_t;

// Checked arithmetic: throws std::overflow_error instead of wrapping.
Value checked_mul(Value a, Value b);
Value checked_add(Value a, Value b);
Value checked_pow(Value base, Value exp);
Value checked_mul_add(Value m, Value x, Value a);  // m*x + a

// Exact non-negative rational, kept unreduced (num/den as computed).
struct Ratio {
    Value num = 0;
    Value den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool less_than(const Ratio& other) const;
    bool less_than_one() const { return num < den; }
    bool operator==(const Ratio& other) const;
};

/// Base-p expansion, most significant digit first. The value zero is the
/// single digit [0]; otherwise there is no leading zero.
struct DigitString {
    unsigned base = 2;
    std::vector<std::uint8_t> digits;
};

/// Most-significant-first base-p expansion of x. Requires base >= 2.
DigitString digits_of(Value x, unsigned base);

/// Positional value of a digit string. Leading zeros are permitted and
/// ignored; digits must be < base. Throws std::overflow_error if the
/// encoded value does not fit.
Value value_of(const DigitString& d);

unsigned digit_count(Value x, unsigned base);

/// Canonical identifier of a rule: base p, arity k, index j < p^(p^k).
struct IvtIndex {
    unsigned base = 2;
    unsigned arity = 1;
    Value index = 0;
};

/// Number of distinct rules, p^(p^k), when it fits in Value.
std::optional<Value> rule_count(unsigned base, unsigned arity);

/// A digit substitution table f: {0..p-1}^k -> {0..p-1}, stored with
/// slot(d1..dk) = d1 + d2*p + ... + dk*p^(k-1).
class LocalRule {
public:
    LocalRule(unsigned base, unsigned arity, std::vector<std::uint8_t> table);

    unsigned base() const { return base_; }
    unsigned arity() const { return arity_; }
    const std::vector<std::uint8_t>& table() const { return table_; }
    std::uint8_t image(std::size_t slot) const { return table_[slot]; }

    IvtIndex id() const;

private:
    unsigned base_;
    unsigned arity_;
    std::vector<std::uint8_t> table_;
};

/// Builds the rule whose table slot t is the t-th least significant
/// base-p digit of j. Requires j < p^(p^k).
LocalRule rule_from_index(unsigned base, unsigned arity, Value index);
inline LocalRule rule_from_index(const IvtIndex& id) {
    return rule_from_index(id.base, id.arity, id.index);
}

/// Inverse of rule_from_index.
Value index_from_rule(const LocalRule& rule);

/// Digit-wise application for arity-1 rules: each base-p digit of x is
/// replaced by its table image and the string is re-read as a value, so
/// apply(r, x) < p^digit_count(x).
Value apply(const LocalRule& rule, Value x);

/// k-ary digit-wise application; operands are left-padded with zeros to a
/// common length. Reduces to apply() when k == 1.
Value apply_k(const LocalRule& rule, std::span<const Value> xs);

}  // namespace ivt
