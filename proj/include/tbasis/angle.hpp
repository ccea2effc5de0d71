#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "error.hpp"

namespace tbasis {

/// num/den as a reduced fraction with den > 0.
struct PiRatio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const PiRatio&, const PiRatio&) = default;
};

namespace detail {

inline PiRatio reduce(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw validation_error("angle: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return g > 1 ? PiRatio{num / g, den / g} : PiRatio{num, den};
}

// sin(pi * num / den), exact at multiples of pi/2 and symmetric at odd
// multiples of pi/4 so that sin and cos agree there bit for bit.
inline double sin_pi(PiRatio r) {
    const std::int64_t period = 2 * r.den;
    std::int64_t p = r.num % period;
    if (p < 0) {
        p += period;
    }
    double sign = 1.0;
    if (p >= r.den) {  // [pi, 2pi): sin(x) = -sin(x - pi)
        p -= r.den;
        sign = -1.0;
    }
    // x = p / den in [0, 1)
    const double pi = std::numbers::pi;
    const std::int64_t four_p = 4 * p;
    double value;
    if (four_p <= r.den) {
        value = std::sin(pi * static_cast<double>(p) / static_cast<double>(r.den));
    } else if (four_p < 3 * r.den) {
        // cos(pi * (x - 1/2)) with the argument folded to |x - 1/2|
        const std::int64_t twice = 2 * p - r.den;
        const std::int64_t folded = twice < 0 ? -twice : twice;
        value = std::cos(pi * static_cast<double>(folded) / static_cast<double>(2 * r.den));
    } else {
        value = std::sin(pi * static_cast<double>(r.den - p) / static_cast<double>(r.den));
    }
    return value == 0.0 ? 0.0 : sign * value;
}

inline double cos_pi(PiRatio r) { return sin_pi(reduce(2 * r.num + r.den, 2 * r.den)); }

}  // namespace detail

/// A shape parameter or phase in radians. When the value was given as a
/// rational multiple of pi the ratio is kept, and sin/cos/tan of the angle and
/// of its halves are then evaluated by exact octant reduction.
class Angle {
public:
    Angle() = default;
    explicit Angle(double radians) : radians_(radians) {}

    static Angle pi_times(std::int64_t num, std::int64_t den = 1) {
        const PiRatio r = detail::reduce(num, den);
        Angle a(std::numbers::pi * static_cast<double>(r.num) / static_cast<double>(r.den));
        a.ratio_ = r;
        return a;
    }

    double radians() const noexcept { return radians_; }
    const std::optional<PiRatio>& pi_ratio() const noexcept { return ratio_; }

    Angle scaled(std::int64_t num, std::int64_t den) const {
        if (ratio_) {
            return pi_times(ratio_->num * num, ratio_->den * den);
        }
        return Angle(radians_ * static_cast<double>(num) / static_cast<double>(den));
    }

    Angle half() const { return scaled(1, 2); }

    double sin() const { return ratio_ ? detail::sin_pi(*ratio_) : std::sin(radians_); }
    double cos() const { return ratio_ ? detail::cos_pi(*ratio_) : std::cos(radians_); }
    double tan() const { return ratio_ ? sin() / cos() : std::tan(radians_); }

private:
    double radians_ = 0.0;
    std::optional<PiRatio> ratio_;
};

namespace detail {

inline bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
    if (s.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses decimal radians ("1.25", "-0.5", "3/2") or a rational multiple of
/// pi ("pi", "-pi/3", "2pi/3", "3*pi/4"). Whitespace is not accepted.
inline Angle parse_angle(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Angle { throw validation_error("cannot parse angle '" + original + "'"); };

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty() || text.front() == '-' || text.front() == '+') {
        return fail();
    }

    const auto pi_pos = text.find("pi");
    if (pi_pos != std::string_view::npos) {
        std::string_view coef = text.substr(0, pi_pos);
        std::string_view rest = text.substr(pi_pos + 2);
        if (!coef.empty() && coef.back() == '*') {
            coef.remove_suffix(1);
        }
        std::int64_t num = 1;
        std::int64_t den = 1;
        double decimal_coef = 1.0;
        bool integral = true;
        if (!coef.empty() && !detail::parse_int(coef, num)) {
            if (!detail::parse_double(coef, decimal_coef)) {
                return fail();
            }
            integral = false;
        }
        if (!rest.empty()) {
            if (rest.front() != '/' || !detail::parse_int(rest.substr(1), den) || den == 0) {
                return fail();
            }
        }
        if (integral) {
            return Angle::pi_times(negative ? -num : num, den);
        }
        const double value = decimal_coef * std::numbers::pi / static_cast<double>(den);
        return Angle(negative ? -value : value);
    }

    const auto slash = text.find('/');
    double value = 0.0;
    if (slash != std::string_view::npos) {
        double a = 0.0;
        double b = 0.0;
        if (!detail::parse_double(text.substr(0, slash), a) ||
            !detail::parse_double(text.substr(slash + 1), b) || b == 0.0) {
            return fail();
        }
        value = a / b;
    } else if (!detail::parse_double(text, value)) {
        return fail();
    }
    if (!std::isfinite(value)) {
        return fail();
    }
    return Angle(negative ? -value : value);
}

}  // namespace tbasis
