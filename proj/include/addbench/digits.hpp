#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace addbench {

/// Exact nonnegative decimal integer stored as its digit characters,
/// most significant first. Canonical: no leading zero except "0".
class DigitString {
public:
    DigitString() : repr_("0") {}

    static DigitString parse(std::string_view text);        // throws std::invalid_argument
    static DigitString from_u64(std::uint64_t value);

    const std::string& str() const { return repr_; }
    std::size_t length() const { return repr_.size(); }

    // Digit at decimal position i (units = 0); 0 beyond the top digit.
    int digit_lsb(std::size_t i) const {
        if (i >= repr_.size()) return 0;
        return repr_[repr_.size() - 1 - i] - '0';
    }

    bool operator==(const DigitString&) const = default;
    auto operator<=>(const DigitString&) const = default;

private:
    struct unchecked_t {};
    DigitString(std::string digits, unchecked_t) : repr_(std::move(digits)) {}

    std::string repr_;

    friend DigitString add(const DigitString&, const DigitString&);
    friend DigitString shift_left(const DigitString&, std::size_t);
};

/// Per-column view of the correct long addition of two operands,
/// least significant column first. Column i covers decimal position i;
/// column_sums includes the incoming carry.
struct ColumnProfile {
    std::vector<int> column_sums;                 // each in 0..19
    std::vector<unsigned char> carry_outs;        // carry_outs[i] = column_sums[i] >= 10
    std::vector<std::size_t> close_carry_positions;  // sums in {9, 10}, ascending

    int final_carry() const { return carry_outs.empty() ? 0 : carry_outs.back(); }
};

DigitString add(const DigitString& a, const DigitString& b);

// Value times 10^k ("0" stays "0").
DigitString shift_left(const DigitString& a, std::size_t k);

// a * 10^max(0,s) + b * 10^max(0,-s). Requires 1 <= |s| <= 10.
DigitString offsetsum(const DigitString& a, const DigitString& b, int s);

ColumnProfile column_profile(const DigitString& a, const DigitString& b);

std::size_t count_close_carries(const DigitString& a, const DigitString& b);

// Column sum extended beyond the operand columns: the column just above the
// top is the final carry (0 or 1), everything further is 0.
int column_sum_extended(const ColumnProfile& profile, std::size_t index);

}  // namespace addbench
