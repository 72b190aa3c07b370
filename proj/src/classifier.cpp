#include "addbench/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace addbench {

std::string to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::correct: return "correct";
        case ErrorKind::runaway: return "runaway";
        case ErrorKind::misalignment: return "misalignment";
        case ErrorKind::close_carry: return "close_carry";
        case ErrorKind::other: return "other";
        case ErrorKind::no_answer: return "no_answer";
    }
    throw std::logic_error("unknown error kind");
}

ErrorKind error_kind_from_string(const std::string& s) {
    if (s == "correct") return ErrorKind::correct;
    if (s == "runaway") return ErrorKind::runaway;
    if (s == "misalignment") return ErrorKind::misalignment;
    if (s == "close_carry") return ErrorKind::close_carry;
    if (s == "other") return ErrorKind::other;
    if (s == "no_answer") return ErrorKind::no_answer;
    throw std::invalid_argument("unknown error kind: " + s);
}

bool detect_runaway(std::string_view extracted, std::string_view truth) {
    // ceil(1.5 * len(truth)) without floating point
    const std::size_t threshold = (3 * truth.size() + 1) / 2;
    return extracted.size() >= threshold;
}

namespace {

std::size_t shared_prefix_len(std::string_view x, std::string_view y) {
    const std::size_t n = std::min(x.size(), y.size());
    std::size_t i = 0;
    while (i < n && x[i] == y[i]) ++i;
    return i;
}

}  // namespace

MisalignmentContext::MisalignmentContext(const DigitString& a, const DigitString& b)
    : a_(a.str()), b_(b.str()) {
    // Tie-break order: smaller |s| first, positive before negative.
    sums_.reserve(kOffsetCount);
    for (int mag = 1; mag <= 10; ++mag) {
        sums_.push_back({mag, offsetsum(a, b, mag).str()});
        sums_.push_back({-mag, offsetsum(a, b, -mag).str()});
    }
}

std::optional<MisalignMatch> MisalignmentContext::detect(std::string_view extracted) const {
    if (extracted.size() < 6) return std::nullopt;
    if (extracted == a_ || extracted == b_) return std::nullopt;  // operand echo
    int best_offset = 0;
    std::size_t best_len = 0;
    for (const Entry& e : sums_) {
        const std::size_t len = shared_prefix_len(extracted, e.sum);
        if (len > best_len) {
            best_len = len;
            best_offset = e.offset;
        }
    }
    if (best_len < 6) return std::nullopt;
    return MisalignMatch{best_offset, static_cast<int>(best_len)};
}

std::optional<MisalignMatch> detect_misalignment(std::string_view extracted,
                                                 const DigitString& a,
                                                 const DigitString& b) {
    return MisalignmentContext(a, b).detect(extracted);
}

std::optional<FirstError> first_error(std::string_view extracted,
                                      std::string_view truth,
                                      const ColumnProfile& profile) {
    const std::size_t len = std::max(extracted.size(), truth.size());
    const std::size_t pad_x = len - extracted.size();
    const std::size_t pad_t = len - truth.size();
    for (std::size_t i = 0; i < len; ++i) {
        const char cx = i < pad_x ? '0' : extracted[i - pad_x];
        const char ct = i < pad_t ? '0' : truth[i - pad_t];
        if (cx == ct) continue;
        FirstError fe;
        fe.position = static_cast<int>(i);
        fe.delta = cx - ct;
        // Answer digits are right-aligned against the addition columns:
        // position i sits at column len-1-i, and the column feeding its
        // carry is one below that.
        const std::size_t column = len - 1 - i;
        if (column > 0) fe.next_column_sum = column_sum_extended(profile, column - 1);
        return fe;
    }
    return std::nullopt;
}

ErrorClass classify(const Graded& graded, const Problem& problem) {
    ErrorClass out;
    out.problem_id = graded.problem_id;
    if (graded.correct) {
        out.kind = ErrorKind::correct;
        return out;
    }
    if (!graded.extracted) {
        out.kind = ErrorKind::no_answer;
        return out;
    }
    const std::string& extracted = *graded.extracted;

    if (detect_runaway(extracted, graded.truth)) {
        out.kind = ErrorKind::runaway;
        return out;
    }
    if (auto m = detect_misalignment(extracted, problem.a, problem.b)) {
        out.kind = ErrorKind::misalignment;
        out.offset = m->offset;
        out.matched_prefix_len = m->matched_prefix_len;
        return out;
    }
    const ColumnProfile profile = column_profile(problem.a, problem.b);
    const auto fe = first_error(extracted, graded.truth, profile);
    if (fe && fe->next_column_sum) {
        const bool spurious = fe->delta == 1 && *fe->next_column_sum == 9;
        const bool dropped = fe->delta == -1 && *fe->next_column_sum == 10;
        if (spurious || dropped) {
            out.kind = ErrorKind::close_carry;
            out.first_error = fe;
            return out;
        }
    }
    out.kind = ErrorKind::other;
    out.first_error = fe;
    return out;
}

}  // namespace addbench
