#include "addbench/probgen.hpp"

#include <cstdio>
#include <stdexcept>

namespace addbench {

DigitString gen_operand(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("gen_operand: d must be >= 1");
    std::string digits(static_cast<std::size_t>(d), '0');
    digits[0] = static_cast<char>('0' + rng.range_int(1, 9));
    for (int i = 1; i < d; ++i) digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + rng.range_int(0, 9));
    return DigitString::parse(digits);
}

std::string render_prompt(const DigitString& a, const DigitString& b) {
    return "What is " + a.str() + " + " + b.str() + "? Write just the answer.";
}

std::string problem_id(int d, int replicate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "d%03d-r%05d", d, replicate);
    return buf;
}

std::vector<Problem> gen_suite(std::uint64_t master_seed, int d_min, int d_max, int per_length) {
    if (d_min < 1 || d_max < d_min) throw std::invalid_argument("gen_suite: empty or invalid length range");
    if (per_length < 1) throw std::invalid_argument("gen_suite: per_length must be >= 1");

    std::vector<Problem> suite;
    suite.reserve(static_cast<std::size_t>(d_max - d_min + 1) * static_cast<std::size_t>(per_length));
    for (int d = d_min; d <= d_max; ++d) {
        for (int r = 0; r < per_length; ++r) {
            Rng rng(derive_seed(master_seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(r)}));
            Problem p;
            p.a = gen_operand(d, rng);
            p.b = gen_operand(d, rng);
            p.d = d;
            p.id = problem_id(d, r);
            p.prompt = render_prompt(p.a, p.b);
            p.seed_path = SeedPath{master_seed, d, r};
            suite.push_back(std::move(p));
        }
    }
    return suite;
}

}  // namespace addbench
