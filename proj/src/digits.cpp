#include "addbench/digits.hpp"

#include <algorithm>
#include <stdexcept>

namespace addbench {

DigitString DigitString::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("DigitString: empty");
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("DigitString: non-digit character");
    }
    if (text.size() > 1 && text.front() == '0')
        throw std::invalid_argument("DigitString: leading zero");
    return DigitString(std::string(text), unchecked_t{});
}

DigitString DigitString::from_u64(std::uint64_t value) {
    return DigitString(std::to_string(value), unchecked_t{});
}

DigitString add(const DigitString& a, const DigitString& b) {
    const std::size_t n = std::max(a.length(), b.length());
    std::string out(n + 1, '0');
    int carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = a.digit_lsb(i) + b.digit_lsb(i) + carry;
        out[n - i] = static_cast<char>('0' + s % 10);
        carry = s / 10;
    }
    out[0] = static_cast<char>('0' + carry);
    if (carry == 0) out.erase(0, 1);
    return DigitString(std::move(out), DigitString::unchecked_t{});
}

DigitString shift_left(const DigitString& a, std::size_t k) {
    if (k == 0 || a.str() == "0") return a;
    std::string out = a.str();
    out.append(k, '0');
    return DigitString(std::move(out), DigitString::unchecked_t{});
}

DigitString offsetsum(const DigitString& a, const DigitString& b, int s) {
    if (s == 0 || s < -10 || s > 10)
        throw std::invalid_argument("offsetsum: offset must satisfy 1 <= |s| <= 10");
    const std::size_t sa = s > 0 ? static_cast<std::size_t>(s) : 0;
    const std::size_t sb = s < 0 ? static_cast<std::size_t>(-s) : 0;
    return add(shift_left(a, sa), shift_left(b, sb));
}

ColumnProfile column_profile(const DigitString& a, const DigitString& b) {
    const std::size_t n = std::max(a.length(), b.length());
    ColumnProfile out;
    out.column_sums.reserve(n);
    out.carry_outs.reserve(n);
    int carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = a.digit_lsb(i) + b.digit_lsb(i) + carry;
        out.column_sums.push_back(s);
        carry = s >= 10 ? 1 : 0;
        out.carry_outs.push_back(static_cast<unsigned char>(carry));
        if (s == 9 || s == 10) out.close_carry_positions.push_back(i);
    }
    return out;
}

std::size_t count_close_carries(const DigitString& a, const DigitString& b) {
    return column_profile(a, b).close_carry_positions.size();
}

int column_sum_extended(const ColumnProfile& profile, std::size_t index) {
    if (index < profile.column_sums.size()) return profile.column_sums[index];
    if (index == profile.column_sums.size()) return profile.final_carry();
    return 0;
}

}  // namespace addbench
