#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "addbench/digits.hpp"
#include "addbench/rng.hpp"

namespace addbench {

// Where a problem's operands came from; the id is reproducible from this.
struct SeedPath {
    std::uint64_t master_seed = 0;
    int length = 0;
    int replicate = 0;
};

struct Problem {
    std::string id;
    DigitString a;
    DigitString b;
    int d = 0;
    std::string prompt;
    SeedPath seed_path;
};

// Uniform over [10^(d-1), 10^d - 1]: top digit 1..9, the rest 0..9.
DigitString gen_operand(int d, Rng& rng);

std::string render_prompt(const DigitString& a, const DigitString& b);

std::string problem_id(int d, int replicate);

// Hierarchically seeded suite: per-(length, replicate) streams are
// independent, so changing per_length never disturbs other operands.
std::vector<Problem> gen_suite(std::uint64_t master_seed, int d_min, int d_max, int per_length);

}  // namespace addbench
