#include "addbench/grader.hpp"

#include <algorithm>
#include <limits>

namespace addbench {

std::string strip_format(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != ',') out.push_back(c);
    }
    return out;
}

std::vector<std::string> digit_spans(std::string_view text) {
    std::vector<std::string> spans;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] >= '0' && text[i] <= '9') {
            std::size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            spans.emplace_back(text.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return spans;
}

std::size_t levenshtein(std::string_view x, std::string_view y) {
    if (x.size() < y.size()) std::swap(x, y);  // keep the row short
    std::vector<std::size_t> row(y.size() + 1);
    for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= y.size(); ++j) {
            const std::size_t sub = diag + (x[i - 1] == y[j - 1] ? 0 : 1);
            diag = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
        }
    }
    return row[y.size()];
}

Graded extract_and_grade(const RawResponse& response, const Problem& problem) {
    Graded out;
    out.problem_id = problem.id;
    out.truth = add(problem.a, problem.b).str();
    if (response.status != ResponseStatus::ok) return out;

    const std::vector<std::string> spans = digit_spans(strip_format(response.text));
    if (spans.empty()) return out;

    // Lenient rule: any exact span wins outright.
    for (const std::string& span : spans) {
        if (span == out.truth) {
            out.extracted = span;
            out.correct = true;
            out.edit_distance = 0;
            return out;
        }
    }

    std::size_t best = std::numeric_limits<std::size_t>::max();
    const std::string* pick = nullptr;
    for (const std::string& span : spans) {
        const std::size_t dist = levenshtein(span, out.truth);
        if (dist < best) {  // strict: ties keep the earliest span
            best = dist;
            pick = &span;
        }
    }
    out.extracted = *pick;
    out.edit_distance = static_cast<int>(best);
    return out;
}

}  // namespace addbench
