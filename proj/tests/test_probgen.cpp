#include "doctest.h"

#include <set>
#include <vector>

#include "addbench/probgen.hpp"
#include "addbench/records.hpp"

using namespace addbench;

TEST_SUITE("probgen") {

TEST_CASE("gen_operand stays in the d-digit range") {
    Rng rng(1);
    for (int i = 0; i < 2000; ++i) {
        const DigitString v = gen_operand(1, rng);
        CHECK(v.length() == 1);
        CHECK(v.str() != "0");
    }
    for (int i = 0; i < 2000; ++i) {
        const DigitString v = gen_operand(3, rng);
        CHECK(v.length() == 3);
        CHECK(v.str()[0] != '0');
    }
    CHECK_THROWS_AS(gen_operand(0, rng), std::invalid_argument);
}

TEST_CASE("two-digit draws are uniform (chi-square at 99%)") {
    Rng rng(123);
    std::vector<long> counts(90, 0);
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        const DigitString v = gen_operand(2, rng);
        ++counts[std::size_t(std::stoi(v.str()) - 10)];
    }
    const double expected = double(n) / 90.0;
    double stat = 0.0;
    for (long c : counts) {
        const double diff = double(c) - expected;
        stat += diff * diff / expected;
    }
    // chi-square critical value, 89 dof, alpha = 0.01
    CHECK(stat < 122.942);
}

TEST_CASE("render_prompt matches the template exactly") {
    CHECK(render_prompt(DigitString::parse("2"), DigitString::parse("3")) ==
          "What is 2 + 3? Write just the answer.");
    CHECK(render_prompt(DigitString::parse("10"), DigitString::parse("19")) ==
          "What is 10 + 19? Write just the answer.");
    const std::string p = render_prompt(DigitString::parse("123456789"), DigitString::parse("987654321"));
    CHECK(p.find(',') == std::string::npos);
    CHECK(p.find('\n') == std::string::npos);
}

TEST_CASE("gen_suite cardinality and shape") {
    const auto small = gen_suite(42, 5, 5, 3);
    REQUIRE(small.size() == 3);
    for (const Problem& p : small) {
        CHECK(p.d == 5);
        CHECK(p.a.length() == 5);
        CHECK(p.b.length() == 5);
        CHECK(p.prompt == render_prompt(p.a, p.b));
    }
    CHECK(gen_suite(42, 1, 100, 100).size() == 10000);
    CHECK_THROWS_AS(gen_suite(42, 3, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_suite(42, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("suites are a pure function of the seed") {
    const auto s1 = gen_suite(7, 1, 20, 5);
    const auto s2 = gen_suite(7, 1, 20, 5);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(problem_to_json(s1[i]) == problem_to_json(s2[i]));
    }
    const auto s3 = gen_suite(8, 1, 20, 5);
    bool any_diff = false;
    for (std::size_t i = 0; i < s1.size(); ++i) any_diff |= s1[i].a != s3[i].a;
    CHECK(any_diff);
}

TEST_CASE("per-(length, replicate) streams are independent of the suite shape") {
    const auto wide = gen_suite(99, 1, 10, 10);
    const auto narrow = gen_suite(99, 1, 10, 5);
    for (const Problem& p : narrow) {
        bool found = false;
        for (const Problem& q : wide) {
            if (q.id == p.id) {
                CHECK(q.a == p.a);
                CHECK(q.b == p.b);
                found = true;
            }
        }
        CHECK(found);
    }
    // ids are unique within a suite
    std::set<std::string> ids;
    for (const Problem& p : wide) ids.insert(p.id);
    CHECK(ids.size() == wide.size());
}

}  // TEST_SUITE
