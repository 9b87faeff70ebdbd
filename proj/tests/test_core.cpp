#include <doctest.h>

#include <array>
#include <stdexcept>

#include "ivt/core.hpp"
#include "test_oracles.hpp"

using ivt::DigitString;
using ivt::Value;

TEST_CASE("digits_of expands most significant first") {
    CHECK(ivt::digits_of(55, 3).digits == std::vector<std::uint8_t>{2, 0, 0, 1});
    CHECK(ivt::digits_of(0, 3).digits == std::vector<std::uint8_t>{0});

    // 26 = 2*9 + 2*3 + 2, cross-checked by positional arithmetic
    auto d = ivt::digits_of(26, 3);
    CHECK(d.digits == std::vector<std::uint8_t>{2, 2, 2});
    std::vector<Value> wide(d.digits.begin(), d.digits.end());
    CHECK(testref::positional_value(wide, 3) == 26);

    CHECK_THROWS_AS(ivt::digits_of(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(ivt::digits_of(5, 0), std::invalid_argument);
}

TEST_CASE("value_of reads base-p strings") {
    CHECK(ivt::value_of({3, {0, 1, 1, 2}}) == 14);
    CHECK(ivt::value_of({3, {1, 1, 1, 2}}) == 41);
    CHECK(ivt::value_of({3, {0}}) == 0);
    // leading zeros are permitted on input
    CHECK(ivt::value_of({3, {0, 0, 2, 0, 0, 1}}) == 55);
    CHECK_THROWS_AS(ivt::value_of({3, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(ivt::value_of({3, {}}), std::invalid_argument);
}

TEST_CASE("codec round-trips for p in {2,3,5} up to 10^6") {
    for (unsigned p : {2u, 3u, 5u}) {
        for (Value x = 0; x < 1000000; ++x) {
            if (ivt::value_of(ivt::digits_of(x, p)) != x) {
                FAIL("round-trip failed at x=", x, " p=", p);
            }
        }
    }
}

TEST_CASE("rule_from_index matches the canonical digit tables") {
    CHECK(ivt::rule_from_index(3, 1, 7).table() == std::vector<std::uint8_t>{1, 2, 0});
    CHECK(ivt::rule_from_index(3, 1, 8).table() == std::vector<std::uint8_t>{2, 2, 0});
    CHECK(ivt::rule_from_index(3, 1, 16).table() == std::vector<std::uint8_t>{1, 2, 1});
    // 21 = (210) base 3: the identity table
    CHECK(ivt::rule_from_index(3, 1, 21).table() == std::vector<std::uint8_t>{0, 1, 2});
    CHECK(ivt::rule_from_index(2, 1, 1).table() == std::vector<std::uint8_t>{1, 0});
    CHECK_THROWS_AS(ivt::rule_from_index(3, 1, 27), std::invalid_argument);
    CHECK_THROWS_AS(ivt::rule_from_index(1, 1, 0), std::invalid_argument);
}

TEST_CASE("index_from_rule inverts rule_from_index") {
    CHECK(ivt::index_from_rule(ivt::LocalRule(3, 1, {1, 2, 0})) == 7);
    CHECK(ivt::index_from_rule(ivt::LocalRule(3, 1, {0, 0, 0})) == 0);
    CHECK(ivt::index_from_rule(ivt::LocalRule(2, 1, {1, 0})) == 1);

    for (unsigned p : {2u, 3u}) {
        Value count = *ivt::rule_count(p, 1);
        for (Value j = 0; j < count; ++j)
            CHECK(ivt::index_from_rule(ivt::rule_from_index(p, 1, j)) == j);
    }
}

TEST_CASE("LocalRule validates its table") {
    CHECK_THROWS_AS(ivt::LocalRule(3, 1, {1, 2}), std::invalid_argument);      // wrong length
    CHECK_THROWS_AS(ivt::LocalRule(3, 1, {1, 2, 3}), std::invalid_argument);   // digit >= p
    CHECK_NOTHROW(ivt::LocalRule(2, 2, {0, 1, 1, 0}));
}

TEST_CASE("apply maps digits position by position") {
    auto f7 = ivt::rule_from_index(3, 1, 7);
    auto f16 = ivt::rule_from_index(3, 1, 16);
    auto f8 = ivt::rule_from_index(3, 1, 8);
    CHECK(ivt::apply(f7, 55) == 14);
    CHECK(ivt::apply(f16, 55) == 41);
    CHECK(ivt::apply(f8, 16) == 20);

    auto zero = ivt::rule_from_index(3, 1, 0);
    for (Value x : {0ull, 1ull, 55ull, 1000000ull}) CHECK(ivt::apply(zero, x) == 0);

    // the value 0 is the single digit [0], so apply(r, 0) = f(0)
    CHECK(ivt::apply(f8, 0) == 2);

    auto k2 = ivt::LocalRule(2, 2, {0, 0, 0, 0});
    CHECK_THROWS_AS(ivt::apply(k2, 3), std::invalid_argument);
}

TEST_CASE("apply agrees with the recursive reference oracle") {
    for (unsigned p : {2u, 3u}) {
        Value count = *ivt::rule_count(p, 1);
        Value limit = ivt::checked_pow(p, 5);
        for (Value j = 0; j < count; ++j) {
            auto rule = ivt::rule_from_index(p, 1, j);
            for (Value x = 0; x < limit; ++x)
                if (ivt::apply(rule, x) != testref::apply(p, j, x))
                    FAIL("mismatch p=", p, " j=", j, " x=", x);
        }
    }
}

TEST_CASE("digit bound: apply never grows the digit count") {
    for (unsigned p : {2u, 3u}) {
        Value count = *ivt::rule_count(p, 1);
        for (Value j = 0; j < count; ++j) {
            auto rule = ivt::rule_from_index(p, 1, j);
            for (Value x = 0; x < ivt::checked_pow(p, 5); ++x) {
                Value bound = ivt::checked_pow(p, ivt::digit_count(x, p));
                CHECK(ivt::apply(rule, x) < bound);
            }
        }
    }
}

TEST_CASE("apply_k applies k-ary tables position-wise") {
    auto f7 = ivt::rule_from_index(3, 1, 7);
    std::array<Value, 1> single{55};
    CHECK(ivt::apply_k(f7, single) == 14);

    auto zero2 = ivt::rule_from_index(2, 2, 0);
    std::array<Value, 2> any{13, 1000};
    CHECK(ivt::apply_k(zero2, any) == 0);

    // j=6 over p=2, k=2 is XOR: table slots (d1 + 2*d2) -> {0,1,1,0}
    auto xor_rule = ivt::rule_from_index(2, 2, 6);
    CHECK(xor_rule.table() == std::vector<std::uint8_t>{0, 1, 1, 0});
    std::array<Value, 2> pair{3, 5};
    CHECK(ivt::apply_k(xor_rule, pair) == 6);
    for (Value a = 0; a < 32; ++a)
        for (Value b = 0; b < 32; ++b) {
            std::array<Value, 2> xs{a, b};
            CHECK(ivt::apply_k(xor_rule, xs) == (a ^ b));
        }

    std::array<Value, 1> wrong{3};
    CHECK_THROWS_AS(ivt::apply_k(xor_rule, wrong), std::invalid_argument);
}

TEST_CASE("apply_k reduces to apply for k=1, exhaustively at p=3") {
    for (Value j = 0; j < 27; ++j) {
        auto rule = ivt::rule_from_index(3, 1, j);
        for (Value x = 0; x < 729; ++x) {
            std::array<Value, 1> xs{x};
            CHECK(ivt::apply_k(rule, xs) == ivt::apply(rule, x));
        }
    }
}

TEST_CASE("checked arithmetic raises instead of wrapping") {
    Value big = ~Value{0};
    CHECK_THROWS_AS(ivt::checked_mul(big, 2), std::overflow_error);
    CHECK_THROWS_AS(ivt::checked_add(big, 1), std::overflow_error);
    CHECK_THROWS_AS(ivt::checked_pow(2, 64), std::overflow_error);
    CHECK(ivt::checked_pow(2, 63) == (Value{1} << 63));
    CHECK(ivt::checked_mul_add(3, 4, 5) == 17);
}

TEST_CASE("Ratio compares exactly") {
    ivt::Ratio half{1, 2};
    ivt::Ratio one{3, 3};
    ivt::Ratio two{4, 2};
    CHECK(half.less_than(one));
    CHECK(one.less_than(two));
    CHECK(!two.less_than(one));
    CHECK(half.less_than_one());
    CHECK(!one.less_than_one());
    CHECK(one == ivt::Ratio{1, 1});
}
