#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "addbench/digits.hpp"
#include "addbench/probgen.hpp"
#include "addbench/rng.hpp"

namespace addbench {

struct RawResponse;

enum class Decoration { bare, comma_grouped, sentence };

std::string to_string(Decoration d);
Decoration decoration_from_string(const std::string& s);

// Offsets live in {-10..-1, 1..10}; weights are stored flat.
inline constexpr int kOffsetCount = 20;
int offset_from_index(std::size_t index);        // 0..19 -> -10..-1, 1..10
std::size_t offset_to_index(int offset);

/// Error mechanisms for the simulated adder. One top-level outcome is drawn
/// per response: garbage, runaway, misalignment, or the carry-fault path.
struct FaultProfile {
    double p_close = 0.0;                        // per-close-carry flip probability
    std::array<double, 3> misalign_rate{};       // indexed by d mod 3
    std::array<double, kOffsetCount> offset_weights{};
    double p_runaway = 0.0;
    double p_garbage = 0.0;
    Decoration decoration = Decoration::bare;

    void validate() const;                       // throws std::invalid_argument
};

// Draws one response for the problem. Deterministic given the rng stream.
RawResponse simulate_response(const Problem& problem, const FaultProfile& profile, Rng& rng);

// (1 - p_garbage - p_runaway - misalign_rate[d mod 3]) * (1 - p_close)^n
// with n the problem's close-carry count.
double expected_accuracy(const Problem& problem, const FaultProfile& profile);

// Carry-fault path only, undecorated: flips the carry-out at each close-carry
// column independently and propagates mechanically. Exposed for tests.
std::string carry_faulted_digits(const DigitString& a, const DigitString& b, double p_close, Rng& rng);

std::string decorate(const std::string& digits, Decoration style);

}  // namespace addbench
