#include "doctest.h"

#include "addbench/classifier.hpp"
#include "addbench/faulty_adder.hpp"
#include "test_util.hpp"

using namespace addbench;
using addbench::test::make_problem;
using addbench::test::ok_response;

namespace {

ErrorClass classify_text(const std::string& text, const Problem& p) {
    return classify(extract_and_grade(ok_response(text, p.id), p), p);
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("runaway threshold is ceil(1.5x)") {
    CHECK(detect_runaway("123456", "1234"));        // 6 >= 6
    CHECK_FALSE(detect_runaway("12345", "1234"));   // 5 < 6
    CHECK(detect_runaway("9991234000", "1234"));
    CHECK(detect_runaway("12345678", "12345"));     // 8 >= ceil(7.5)
    CHECK_FALSE(detect_runaway("1234567", "12345"));
}

TEST_CASE("misalignment detector reproduces the offset table") {
    const DigitString a = DigitString::parse("555555");
    const DigitString b = DigitString::parse("123456");
    const MisalignmentContext ctx(a, b);

    auto offset_of = [&](const std::string& text) {
        const auto m = ctx.detect(text);
        REQUIRE(m.has_value());
        return m->offset;
    };
    CHECK(offset_of("129011") == -2);
    CHECK(offset_of("179011") == -1);
    CHECK(offset_of("567900") == 1);
    CHECK(offset_of("556789") == 2);
    // a longer answer's prefix still resolves the offset
    CHECK(offset_of("5679006") == 1);
    CHECK(ctx.detect("5679006")->matched_prefix_len == 7);

    SUBCASE("echoing an operand is not a misalignment") {
        CHECK_FALSE(ctx.detect("555555").has_value());
        CHECK_FALSE(ctx.detect("123456").has_value());
    }
    SUBCASE("short answers cannot match") {
        CHECK_FALSE(ctx.detect("56790").has_value());
    }
    SUBCASE("unrelated answers do not match") {
        CHECK_FALSE(ctx.detect("999999999").has_value());
    }
}

TEST_CASE("first_error finds the leftmost difference with its right-neighbor column sum") {
    SUBCASE("spurious carry: 10 + 19, answer 39") {
        const Problem p = make_problem("10", "19");
        const auto fe = first_error("39", "29", column_profile(p.a, p.b));
        REQUIRE(fe.has_value());
        CHECK(fe->position == 0);
        CHECK(fe->delta == 1);
        CHECK(fe->next_column_sum == 9);
    }
    SUBCASE("dropped carry: 11 + 19, answer 20") {
        const Problem p = make_problem("11", "19");
        const auto fe = first_error("20", "30", column_profile(p.a, p.b));
        REQUIRE(fe.has_value());
        CHECK(fe->delta == -1);
        CHECK(fe->next_column_sum == 10);
    }
    SUBCASE("no difference") {
        const Problem p = make_problem("10", "19");
        CHECK_FALSE(first_error("29", "29", column_profile(p.a, p.b)).has_value());
    }
    SUBCASE("error in the last digit has no next column") {
        const Problem p = make_problem("10", "19");
        const auto fe = first_error("28", "29", column_profile(p.a, p.b));
        REQUIRE(fe.has_value());
        CHECK(fe->position == 1);
        CHECK_FALSE(fe->next_column_sum.has_value());
    }
    SUBCASE("length mismatch pads the shorter on the left") {
        // 999 + 1 = 1000; an answer of 999 dropped the final carry
        const Problem p = make_problem("999", "1");
        const auto fe = first_error("999", "1000", column_profile(p.a, p.b));
        REQUIRE(fe.has_value());
        CHECK(fe->position == 0);
        CHECK(fe->delta == -1);
        CHECK(fe->next_column_sum == 10);  // most significant operand column
    }
}

TEST_CASE("classification golden verdicts") {
    SUBCASE("close carry family: 3* for 10 + 19") {
        const Problem p = make_problem("10", "19");
        for (char c = '0'; c <= '9'; ++c) {
            const ErrorClass cls = classify_text(std::string("3") + c, p);
            CHECK(cls.kind == ErrorKind::close_carry);
        }
        CHECK(classify_text("29", p).kind == ErrorKind::correct);
    }
    SUBCASE("close carry family: 2* for 11 + 19") {
        const Problem p = make_problem("11", "19");
        for (char c = '0'; c <= '9'; ++c) {
            if (c == '0') continue;  // "20".."29": all classify close carry; 30 is correct
            CHECK(classify_text(std::string("2") + c, p).kind == ErrorKind::close_carry);
        }
        CHECK(classify_text("20", p).kind == ErrorKind::close_carry);
        CHECK(classify_text("30", p).kind == ErrorKind::correct);
    }
    SUBCASE("10 + 10 admits no close carries despite zeros") {
        const Problem p = make_problem("10", "10");
        CHECK(classify_text("21", p).kind == ErrorKind::other);
        CHECK(classify_text("30", p).kind == ErrorKind::other);
        CHECK(classify_text("10", p).kind == ErrorKind::other);
    }
    SUBCASE("199 + 199 admits no close carries despite nines") {
        const Problem p = make_problem("199", "199");
        CHECK(classify_text("397", p).kind == ErrorKind::other);
        CHECK(classify_text("399", p).kind == ErrorKind::other);
        CHECK(classify_text("408", p).kind == ErrorKind::other);
    }
    SUBCASE("misalignment verdict with offset evidence") {
        const Problem p = make_problem("555555", "123456");
        const ErrorClass cls = classify_text("5679006", p);
        CHECK(cls.kind == ErrorKind::misalignment);
        CHECK(cls.offset == 1);
        CHECK(cls.matched_prefix_len == 7);
    }
    SUBCASE("no digits means no answer") {
        const Problem p = make_problem("10", "19");
        CHECK(classify_text("I refuse.", p).kind == ErrorKind::no_answer);
    }
    SUBCASE("runaway takes precedence over misalignment") {
        const Problem p = make_problem("12345", "67890");
        const std::string huge = offsetsum(p.a, p.b, 10).str();  // 15 digits vs truth 5
        REQUIRE(detect_runaway(huge, add(p.a, p.b).str()));
        CHECK(classify_text(huge, p).kind == ErrorKind::runaway);
    }
}

TEST_CASE("random answers essentially never register as misalignment") {
    Rng rng(31);
    const Problem p = make_problem("5799340872345612309041523498761029385671", "9083471234509871234567890123456789012345");
    const MisalignmentContext ctx(p.a, p.b);
    const std::string truth = add(p.a, p.b).str();
    long hits = 0;
    const long n = 100000;
    std::string answer(truth.size(), '0');
    for (long i = 0; i < n; ++i) {
        answer[0] = char('1' + rng.range_int(0, 8));
        for (std::size_t j = 1; j < answer.size(); ++j) answer[j] = char('0' + rng.range_int(0, 9));
        if (ctx.detect(answer)) ++hits;
    }
    CHECK(double(hits) / double(n) <= 1e-4);
}

TEST_CASE("pure misalignment simulation is recovered with the injected offset") {
    FaultProfile profile;
    profile.misalign_rate = {1.0, 1.0, 1.0};
    profile.offset_weights[offset_to_index(3)] = 1.0;

    Rng rng(41);
    const auto suite = gen_suite(404, 20, 20, 300);
    int recovered = 0;
    for (const Problem& p : suite) {
        Rng sim(derive_seed(1, {std::uint64_t(p.seed_path.replicate)}));
        const RawResponse r = simulate_response(p, profile, sim);
        const ErrorClass cls = classify(extract_and_grade(r, p), p);
        if (cls.kind == ErrorKind::misalignment && cls.offset == 3) ++recovered;
    }
    CHECK(double(recovered) / double(suite.size()) >= 0.99);
}

TEST_CASE("carry flips on separated close columns always classify close_carry") {
    // sums [2,9,3,9,3,9,3]: close carries at columns 1, 3, 5, no adjacency
    const Problem p = make_problem("2222222", "1717170");
    REQUIRE(count_close_carries(p.a, p.b) == 3);
    FaultProfile profile;
    profile.p_close = 0.5;
    int errors = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        Rng rng(derive_seed(77, {std::uint64_t(rep)}));
        const RawResponse r = simulate_response(p, profile, rng);
        const Graded g = extract_and_grade(r, p);
        if (g.correct) continue;
        ++errors;
        const ErrorClass cls = classify(g, p);
        CHECK(cls.kind == ErrorKind::close_carry);
        // the verdict carries exactly the signature evidence
        REQUIRE(cls.first_error.has_value());
        const bool spurious = cls.first_error->delta == 1 && cls.first_error->next_column_sum == 9;
        const bool dropped = cls.first_error->delta == -1 && cls.first_error->next_column_sum == 10;
        CHECK((spurious || dropped));
    }
    CHECK(errors > 1500);  // 1 - 0.5^3 of 2000, loose
}

}  // TEST_SUITE
