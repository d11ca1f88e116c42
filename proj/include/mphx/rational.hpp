/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "mphx/error.hpp"

namespace mphx {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw InfeasibleError("integer overflow while computing topology size");
    }
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw InfeasibleError("integer overflow while computing topology size");
    }
    return out;
}

/// Nearest integer, halves rounded away from zero.
inline std::int64_t round_half_up(const Rational& value) {
    const auto num = value.numerator();
    const auto den = value.denominator();  // always > 0
    const auto mag = num < 0 ? -num : num;
    const auto rounded = (2 * mag + den) / (2 * den);
    return num < 0 ? -rounded : rounded;
}

/// Fixed-point rendering with `places` fractional digits, rounded half-up.
inline std::string to_decimal(const Rational& value, int places) {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    const auto scaled = round_half_up(value * scale);
    const bool negative = scaled < 0;
    const auto mag = negative ? -scaled : scaled;
    std::string out = std::to_string(mag / scale);
    if (places > 0) {
        std::string frac = std::to_string(mag % scale);
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
        out += frac;
    }
    return negative ? "-" + out : out;
}

inline double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

/// Exact parse of "12", "12.5", "-0.25"; exponents are rejected.
inline Rational parse_decimal(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty number");
    }
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') {
            throw ParseError("invalid number '" + std::string(text) + "'");
        }
        seen_digit = true;
        num = checked_add(checked_mul(num, 10), c - '0');
        if (seen_point) {
            den = checked_mul(den, 10);
        }
    }
    if (!seen_digit) {
        throw ParseError("invalid number '" + std::string(text) + "'");
    }
    return Rational(negative ? -num : num, den);
}

/// Decimal integer with thousands separators, e.g. 65,536.
inline std::string with_commas(std::int64_t value) {
    std::string digits = std::to_string(value < 0 ? -value : value);
    std::string out;
    const auto lead = digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i % 3) == lead) {
            out += ',';
        }
        out += digits[i];
    }
    return value < 0 ? "-" + out : out;
}

}  // namespace mphx
