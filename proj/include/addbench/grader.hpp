#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addbench/model_client.hpp"
#include "addbench/probgen.hpp"

namespace addbench {

// Grading verdict for one response. `extracted` is the raw digit span as it
// appeared in the text (it may carry leading zeros, which never match the
// canonical truth string).
struct Graded {
    std::string problem_id;
    std::optional<std::string> extracted;
    bool correct = false;
    std::optional<int> edit_distance;
    std::string truth;
};

// Removes every comma; all other characters stay, spaces included.
std::string strip_format(std::string_view text);

// Maximal runs of consecutive digit characters, in order of appearance.
std::vector<std::string> digit_spans(std::string_view text);

// Unit-cost insert/delete/substitute edit distance.
std::size_t levenshtein(std::string_view x, std::string_view y);

// Candidate spans are the maximal digit runs of the comma-stripped text.
// Any exact match against the true sum grades correct; otherwise the span
// with the smallest edit distance (earliest on ties) is the extraction.
Graded extract_and_grade(const RawResponse& response, const Problem& problem);

}  // namespace addbench
