#include "doctest.h"

#include <cstdint>

#include "addbench/digits.hpp"
#include "addbench/rng.hpp"

using namespace addbench;

namespace {

DigitString ds(const std::string& s) { return DigitString::parse(s); }

}  // namespace

TEST_SUITE("digits") {

TEST_CASE("parse validates") {
    CHECK(ds("0").str() == "0");
    CHECK(ds("123").length() == 3);
    CHECK_THROWS_AS(DigitString::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(DigitString::parse("12a"), std::invalid_argument);
    CHECK_THROWS_AS(DigitString::parse("012"), std::invalid_argument);
    CHECK_THROWS_AS(DigitString::parse("-5"), std::invalid_argument);
}

TEST_CASE("add golden values") {
    CHECK(add(ds("555555"), ds("123456")).str() == "679011");
    CHECK(add(ds("0"), ds("0")).str() == "0");
    CHECK(add(ds("999"), ds("1")).str() == "1000");
}

TEST_CASE("add agrees with 64-bit arithmetic and is commutative") {
    Rng rng(2024);
    for (int iter = 0; iter < 5000; ++iter) {
        const std::uint64_t x = rng.below(1000000000000000000ULL);
        const std::uint64_t y = rng.below(1000000000000000000ULL);
        const DigitString a = DigitString::from_u64(x);
        const DigitString b = DigitString::from_u64(y);
        const DigitString s = add(a, b);
        CHECK(s.str() == std::to_string(x + y));
        CHECK(add(b, a) == s);
        const std::size_t longest = std::max(a.length(), b.length());
        CHECK(s.length() >= longest);
        CHECK(s.length() <= longest + 1);
    }
}

TEST_CASE("offsetsum golden values from the detector table") {
    const DigitString a = ds("555555"), b = ds("123456");
    CHECK(offsetsum(a, b, -2).str() == "12901155");
    CHECK(offsetsum(a, b, -1).str() == "1790115");
    CHECK(offsetsum(a, b, 1).str() == "5679006");
    CHECK(offsetsum(a, b, 2).str() == "55678956");
}

TEST_CASE("offsetsum rejects unsupported offsets") {
    const DigitString a = ds("12"), b = ds("34");
    CHECK_THROWS_AS(offsetsum(a, b, 0), std::invalid_argument);
    CHECK_THROWS_AS(offsetsum(a, b, 11), std::invalid_argument);
    CHECK_THROWS_AS(offsetsum(a, b, -11), std::invalid_argument);
}

TEST_CASE("offsetsum equals shifted add, brute force over all 1-3 digit operands") {
    // independent oracle: plain 64-bit arithmetic
    for (std::uint64_t x = 1; x <= 999; ++x) {
        const DigitString a = DigitString::from_u64(x);
        for (std::uint64_t y = 1; y <= 999; ++y) {
            const DigitString b = DigitString::from_u64(y);
            for (int mag = 1; mag <= 4; ++mag) {
                std::uint64_t pow10 = 1;
                for (int i = 0; i < mag; ++i) pow10 *= 10;
                const std::string expect_pos = std::to_string(x * pow10 + y);
                const std::string expect_neg = std::to_string(x + y * pow10);
                REQUIRE(offsetsum(a, b, mag).str() == expect_pos);
                REQUIRE(offsetsum(a, b, -mag).str() == expect_neg);
                REQUIRE(offsetsum(a, b, mag) == add(shift_left(a, std::size_t(mag)), b));
                REQUIRE(offsetsum(a, b, -mag) == add(a, shift_left(b, std::size_t(mag))));
            }
        }
    }
}

TEST_CASE("column profile golden values") {
    SUBCASE("199 + 199: middle column sum is 19, no close carries") {
        const ColumnProfile p = column_profile(ds("199"), ds("199"));
        CHECK(p.column_sums == std::vector<int>{18, 19, 3});
        CHECK(p.close_carry_positions.empty());
        CHECK(count_close_carries(ds("199"), ds("199")) == 0);
    }
    SUBCASE("10 + 19: units column sums to 9") {
        const ColumnProfile p = column_profile(ds("10"), ds("19"));
        CHECK(p.close_carry_positions == std::vector<std::size_t>{0});
        CHECK(count_close_carries(ds("10"), ds("19")) == 1);
    }
    SUBCASE("10 + 10: rightmost column sum is 0") {
        const ColumnProfile p = column_profile(ds("10"), ds("10"));
        CHECK(p.close_carry_positions.empty());
        CHECK(count_close_carries(ds("10"), ds("10")) == 0);
    }
    SUBCASE("11 + 19: units column sums to 10") {
        const ColumnProfile p = column_profile(ds("11"), ds("19"));
        CHECK(p.column_sums == std::vector<int>{10, 3});
        CHECK(p.close_carry_positions == std::vector<std::size_t>{0});
    }
}

TEST_CASE("column profile is consistent with add") {
    Rng rng(7);
    for (int iter = 0; iter < 2000; ++iter) {
        const int da = rng.range_int(1, 40), db = rng.range_int(1, 40);
        std::string xa(std::size_t(da), '0'), xb(std::size_t(db), '0');
        xa[0] = char('1' + rng.range_int(0, 8));
        xb[0] = char('1' + rng.range_int(0, 8));
        for (int i = 1; i < da; ++i) xa[std::size_t(i)] = char('0' + rng.range_int(0, 9));
        for (int i = 1; i < db; ++i) xb[std::size_t(i)] = char('0' + rng.range_int(0, 9));
        const DigitString a = ds(xa), b = ds(xb);
        const ColumnProfile p = column_profile(a, b);
        const DigitString sum = add(a, b);

        // carry invariants: carry_outs[i] = 1 iff column_sums[i] >= 10 and
        // sums include the incoming carry
        for (std::size_t i = 0; i < p.column_sums.size(); ++i) {
            CHECK(p.carry_outs[i] == (p.column_sums[i] >= 10 ? 1 : 0));
            const int carry_in = i == 0 ? 0 : p.carry_outs[i - 1];
            CHECK(p.column_sums[i] == a.digit_lsb(i) + b.digit_lsb(i) + carry_in);
        }
        // digit-for-digit reproduction of add
        for (std::size_t i = 0; i < p.column_sums.size(); ++i)
            CHECK(sum.digit_lsb(i) == p.column_sums[i] % 10);
        CHECK(sum.length() == p.column_sums.size() + std::size_t(p.final_carry()));
    }
}

TEST_CASE("extended column sums past the top column") {
    const ColumnProfile p = column_profile(ds("999"), ds("1"));  // sums 10,10,10
    CHECK(p.column_sums == std::vector<int>{10, 10, 10});
    CHECK(column_sum_extended(p, 2) == 10);
    CHECK(column_sum_extended(p, 3) == 1);  // final carry
    CHECK(column_sum_extended(p, 4) == 0);
}

TEST_CASE("close-carry column fraction is near 20% for random columns") {
    // Monte Carlo at d = 75: every column is close (sum 9 or 10) with
    // probability 19/100 regardless of the incoming carry.
    Rng rng(11);
    long close = 0, total = 0;
    for (int iter = 0; iter < 1500; ++iter) {
        std::string xa(75, '0'), xb(75, '0');
        xa[0] = char('1' + rng.range_int(0, 8));
        xb[0] = char('1' + rng.range_int(0, 8));
        for (int i = 1; i < 75; ++i) {
            xa[std::size_t(i)] = char('0' + rng.range_int(0, 9));
            xb[std::size_t(i)] = char('0' + rng.range_int(0, 9));
        }
        const ColumnProfile p = column_profile(ds(xa), ds(xb));
        close += long(p.close_carry_positions.size());
        total += long(p.column_sums.size());
    }
    REQUIRE(total >= 100000);
    const double frac = double(close) / double(total);
    CHECK(frac > 0.18);
    CHECK(frac < 0.22);
}

}  // TEST_SUITE
