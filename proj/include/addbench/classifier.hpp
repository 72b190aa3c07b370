#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addbench/digits.hpp"
#include "addbench/grader.hpp"
#include "addbench/probgen.hpp"

namespace addbench {

// Leftmost difference between the extracted answer and the truth after
// left-zero-padding the shorter one. `next_column_sum` is the correct column
// sum one decimal position to the right; absent only for the last digit.
struct FirstError {
    int position = 0;   // index from the left in the padded answer
    int delta = 0;      // model digit minus correct digit, -9..9, never 0
    std::optional<int> next_column_sum;
};

enum class ErrorKind { correct, runaway, misalignment, close_carry, other, no_answer };

std::string to_string(ErrorKind k);
ErrorKind error_kind_from_string(const std::string& s);

struct ErrorClass {
    std::string problem_id;
    ErrorKind kind = ErrorKind::other;
    std::optional<int> offset;              // misalignment only
    std::optional<int> matched_prefix_len;  // misalignment only
    std::optional<FirstError> first_error;  // close_carry and other, when computable
};

// True when the extracted answer is at least 50% longer than the truth.
bool detect_runaway(std::string_view extracted, std::string_view truth);

struct MisalignMatch {
    int offset = 0;
    int matched_prefix_len = 0;
};

// Precomputed offset sums for one operand pair; reuse when scanning many
// candidate answers against the same problem.
class MisalignmentContext {
public:
    MisalignmentContext(const DigitString& a, const DigitString& b);

    // Longest shared prefix over all offsets; a match needs at least 6
    // digits and the answer must not simply echo an operand.
    std::optional<MisalignMatch> detect(std::string_view extracted) const;

private:
    std::string a_;
    std::string b_;
    struct Entry {
        int offset;
        std::string sum;
    };
    std::vector<Entry> sums_;  // ordered |s| ascending, positive before negative
};

std::optional<MisalignMatch> detect_misalignment(std::string_view extracted,
                                                 const DigitString& a,
                                                 const DigitString& b);

std::optional<FirstError> first_error(std::string_view extracted,
                                      std::string_view truth,
                                      const ColumnProfile& profile);

// Precedence: correct, no_answer, runaway, misalignment, close carry, other.
ErrorClass classify(const Graded& graded, const Problem& problem);

}  // namespace addbench
