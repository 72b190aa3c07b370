#include "addbench/faulty_adder.hpp"

#include <algorithm>
#include <stdexcept>

#include "addbench/model_client.hpp"

namespace addbench {

std::string to_string(Decoration d) {
    switch (d) {
        case Decoration::bare: return "bare";
        case Decoration::comma_grouped: return "comma_grouped";
        case Decoration::sentence: return "sentence";
    }
    throw std::logic_error("unknown decoration");
}

Decoration decoration_from_string(const std::string& s) {
    if (s == "bare") return Decoration::bare;
    if (s == "comma_grouped") return Decoration::comma_grouped;
    if (s == "sentence") return Decoration::sentence;
    throw std::invalid_argument("unknown decoration: " + s);
}

int offset_from_index(std::size_t index) {
    if (index >= kOffsetCount) throw std::out_of_range("offset index");
    return index < 10 ? static_cast<int>(index) - 10 : static_cast<int>(index) - 9;
}

std::size_t offset_to_index(int offset) {
    if (offset == 0 || offset < -10 || offset > 10) throw std::out_of_range("offset");
    return offset < 0 ? static_cast<std::size_t>(offset + 10) : static_cast<std::size_t>(offset + 9);
}

void FaultProfile::validate() const {
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("FaultProfile: ") + name + " outside [0,1]");
    };
    prob(p_close, "p_close");
    prob(p_runaway, "p_runaway");
    prob(p_garbage, "p_garbage");
    double max_misalign = 0.0;
    for (double r : misalign_rate) {
        prob(r, "misalign_rate");
        max_misalign = std::max(max_misalign, r);
    }
    if (p_runaway + p_garbage > 1.0)
        throw std::invalid_argument("FaultProfile: p_runaway + p_garbage > 1");
    if (p_garbage + p_runaway + max_misalign > 1.0)
        throw std::invalid_argument("FaultProfile: top-level outcome probabilities exceed 1");
    double weight_total = 0.0;
    for (double w : offset_weights) {
        if (w < 0.0) throw std::invalid_argument("FaultProfile: negative offset weight");
        weight_total += w;
    }
    if (max_misalign > 0.0 && weight_total <= 0.0)
        throw std::invalid_argument("FaultProfile: misalignment enabled but offset_weights all zero");
}

std::string decorate(const std::string& digits, Decoration style) {
    switch (style) {
        case Decoration::bare:
            return digits;
        case Decoration::comma_grouped: {
            std::string out;
            out.reserve(digits.size() + digits.size() / 3);
            const std::size_t n = digits.size();
            for (std::size_t i = 0; i < n; ++i) {
                if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
                out.push_back(digits[i]);
            }
            return out;
        }
        case Decoration::sentence:
            return "The answer is " + digits + ".";
    }
    throw std::logic_error("unknown decoration");
}

std::string carry_faulted_digits(const DigitString& a, const DigitString& b, double p_close, Rng& rng) {
    const ColumnProfile prof = column_profile(a, b);
    const std::size_t cols = prof.column_sums.size();

    // Coins are drawn for close-carry columns only, in ascending column
    // order, so a fixed rng stream maps to fixed flip decisions.
    std::vector<char> flip(cols, 0);
    for (std::size_t pos : prof.close_carry_positions) flip[pos] = rng.bernoulli(p_close) ? 1 : 0;

    std::string out(cols + 1, '0');
    int carry = 0;
    for (std::size_t i = 0; i < cols; ++i) {
        const int s = a.digit_lsb(i) + b.digit_lsb(i) + carry;
        out[cols - i] = static_cast<char>('0' + s % 10);
        int c = s >= 10 ? 1 : 0;
        if (flip[i]) c = 1 - c;
        carry = c;
    }
    if (carry) {
        out[0] = '1';
        return out;
    }
    return out.substr(1);
}

namespace {

std::string random_digit_number(std::size_t len, Rng& rng) {
    std::string out(len, '0');
    out[0] = static_cast<char>('0' + rng.range_int(1, 9));
    for (std::size_t i = 1; i < len; ++i) out[i] = static_cast<char>('0' + rng.range_int(0, 9));
    return out;
}

}  // namespace

RawResponse simulate_response(const Problem& problem, const FaultProfile& profile, Rng& rng) {
    profile.validate();
    const DigitString truth = add(problem.a, problem.b);
    const double misalign = profile.misalign_rate[static_cast<std::size_t>(problem.d % 3)];

    std::string digits;
    const double u = rng.unit();
    if (u < profile.p_garbage) {
        // Unrelated number, same length as the truth; never the truth itself.
        do {
            digits = random_digit_number(truth.length(), rng);
        } while (digits == truth.str());
    } else if (u < profile.p_garbage + profile.p_runaway) {
        // Correct sum followed by random digits, 1.5x to 3x the true length.
        const std::size_t lt = truth.length();
        const std::size_t lo = (3 * lt + 1) / 2;
        const std::size_t hi = 3 * lt;
        const std::size_t total = lo + rng.below(hi - lo + 1);
        digits = truth.str();
        while (digits.size() < total) digits.push_back(static_cast<char>('0' + rng.range_int(0, 9)));
    } else if (u < profile.p_garbage + profile.p_runaway + misalign) {
        const int s = offset_from_index(rng.weighted(profile.offset_weights));
        digits = offsetsum(problem.a, problem.b, s).str();
    } else {
        digits = carry_faulted_digits(problem.a, problem.b, profile.p_close, rng);
    }

    RawResponse out;
    out.problem_id = problem.id;
    out.text = decorate(digits, profile.decoration);
    out.status = ResponseStatus::ok;
    out.latency_ms = 0.0;
    out.attempt_count = 1;
    return out;
}

double expected_accuracy(const Problem& problem, const FaultProfile& profile) {
    profile.validate();
    const double misalign = profile.misalign_rate[static_cast<std::size_t>(problem.d % 3)];
    const double carry_branch = 1.0 - profile.p_garbage - profile.p_runaway - misalign;
    const std::size_t n = count_close_carries(problem.a, problem.b);
    double ok = 1.0;
    for (std::size_t i = 0; i < n; ++i) ok *= 1.0 - profile.p_close;
    return carry_branch * ok;
}

}  // namespace addbench
