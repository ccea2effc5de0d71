#pragma once

// Normalized B-bases of the trigonometric space span{1, cos(ku), sin(ku)}
// and the hyperbolic space span{1, cosh(ku), sinh(ku)}, k <= n, on [0, alpha].
//
//   T_i(u) = t_i * s((alpha - u) / 2)^(2n - i) * s(u / 2)^i,   i = 0..2n
//
// where s is sin (trigonometric) or sinh (hyperbolic) and t_i are the
// normalizing coefficients.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "angle.hpp"
#include "error.hpp"

namespace tbasis {

enum class BasisKind { trigonometric, hyperbolic };

inline const char* to_string(BasisKind kind) {
    return kind == BasisKind::trigonometric ? "trigonometric" : "hyperbolic";
}

/// Largest supported degree 2n.
inline constexpr int max_degree = 64;
inline constexpr int max_order = max_degree / 2;

/// Hyperbolic spaces with n * alpha above this are rejected; the normalizing
/// coefficients grow like exp(n * alpha).
inline constexpr double hyperbolic_growth_limit = 300.0;

/// Parameters within this distance outside [0, alpha] are clamped.
inline constexpr double parameter_slack = 1e-12;

using BinomialTable = std::array<std::array<std::uint64_t, max_degree + 1>, max_degree + 1>;

/// Pascal triangle up to max_degree; built once on first use.
inline const BinomialTable& binomial_table() {
    static const BinomialTable table = [] {
        BinomialTable t{};
        for (int n = 0; n <= max_degree; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
            }
        }
        return t;
    }();
    return table;
}

inline std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > max_degree) {
        throw validation_error("binomial: n = " + std::to_string(n) + " outside [0, " +
                               std::to_string(max_degree) + "]");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    return binomial_table()[n][k];
}

namespace detail {

inline double kind_sin(BasisKind kind, double x) { return kind == BasisKind::trigonometric ? std::sin(x) : std::sinh(x); }
inline double kind_cos(BasisKind kind, double x) { return kind == BasisKind::trigonometric ? std::cos(x) : std::cosh(x); }
inline double kind_tan(BasisKind kind, double x) { return kind == BasisKind::trigonometric ? std::tan(x) : std::tanh(x); }

inline double kind_sin(BasisKind kind, const Angle& a) {
    return kind == BasisKind::trigonometric ? a.sin() : std::sinh(a.radians());
}
inline double kind_cos(BasisKind kind, const Angle& a) {
    return kind == BasisKind::trigonometric ? a.cos() : std::cosh(a.radians());
}
inline double kind_tan(BasisKind kind, const Angle& a) {
    return kind == BasisKind::trigonometric ? a.tan() : std::tanh(a.radians());
}

// sum_{r=0}^{floor(i/2)} C(n, i-r) C(i-r, r) (2 c)^(i-2r), c = cos(alpha/2) or cosh(alpha/2).
// These are the normalizing coefficients before division by s(alpha/2)^(2n).
// Symmetric in i <-> 2n - i, so only the first half is summed.
inline std::vector<double> unscaled_coefficients(BasisKind kind, int n, const Angle& alpha) {
    const double two_c = 2.0 * kind_cos(kind, alpha.half());
    std::vector<double> sums(2 * n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (int r = 0; r <= i / 2; ++r) {
            const double b = static_cast<double>(binomial(n, i - r)) * static_cast<double>(binomial(i - r, r));
            if (b != 0.0) {
                acc += b * std::pow(two_c, i - 2 * r);
            }
        }
        sums[i] = acc;
        sums[2 * n - i] = acc;
    }
    return sums;
}

inline void validate_space(BasisKind kind, int n, const Angle& alpha) {
    if (n < 1 || n > max_order) {
        throw validation_error("order n = " + std::to_string(n) + " outside [1, " + std::to_string(max_order) + "]");
    }
    const double a = alpha.radians();
    if (!std::isfinite(a)) {
        throw validation_error("shape parameter alpha is not finite");
    }
    if (kind == BasisKind::trigonometric) {
        if (!(a > 0.0 && a < std::numbers::pi)) {
            throw validation_error("trigonometric shape parameter alpha = " + std::to_string(a) +
                                   " outside the open interval (0, pi)");
        }
        if (alpha.pi_ratio() && alpha.pi_ratio()->num >= alpha.pi_ratio()->den) {
            throw validation_error("trigonometric shape parameter alpha must be strictly less than pi");
        }
    } else {
        if (!(a > 0.0)) {
            throw validation_error("hyperbolic shape parameter alpha = " + std::to_string(a) + " must be positive");
        }
        if (static_cast<double>(n) * a > hyperbolic_growth_limit) {
            throw validation_error("hyperbolic space n * alpha = " + std::to_string(n * a) + " exceeds " +
                                   std::to_string(hyperbolic_growth_limit) + " (coefficient overflow)");
        }
    }
}

}  // namespace detail

/// The function space of order n (degree 2n) on [0, alpha] together with its
/// normalizing coefficients. Immutable; copies share the coefficient table.
class BasisSpace {
public:
    BasisSpace(BasisKind kind, int order, Angle alpha) : kind_(kind), order_(order), alpha_(alpha) {
        detail::validate_space(kind, order, alpha);
        auto values = detail::unscaled_coefficients(kind, order, alpha);
        const double scale = std::pow(detail::kind_sin(kind, alpha.half()), 2 * order);
        for (double& v : values) {
            v /= scale;
        }
        coefficients_ = std::make_shared<const std::vector<double>>(std::move(values));
    }

    BasisSpace(BasisKind kind, int order, double alpha) : BasisSpace(kind, order, Angle(alpha)) {}

    BasisKind kind() const noexcept { return kind_; }
    int order() const noexcept { return order_; }
    int degree() const noexcept { return 2 * order_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(2 * order_ + 1); }
    const Angle& shape() const noexcept { return alpha_; }
    double alpha() const noexcept { return alpha_.radians(); }

    /// Normalizing coefficients t_i (trigonometric) or h_i (hyperbolic).
    const std::vector<double>& coefficients() const noexcept { return *coefficients_; }

    BasisSpace with_order(int order) const { return BasisSpace(kind_, order, alpha_); }

    /// Validates u against [0, alpha], clamping values within parameter_slack.
    double clamp_parameter(double u) const {
        const double a = alpha();
        const double slack = parameter_slack * std::max(1.0, a);
        if (!(u >= -slack && u <= a + slack)) {
            throw validation_error("parameter u = " + std::to_string(u) + " outside [0, " + std::to_string(a) + "]");
        }
        return std::clamp(u, 0.0, a);
    }

private:
    BasisKind kind_;
    int order_;
    Angle alpha_;
    std::shared_ptr<const std::vector<double>> coefficients_;
};

struct NormalizingCoefficients {
    BasisSpace space;
    std::vector<double> values;
};

inline NormalizingCoefficients normalizing_coefficients(const BasisSpace& space) {
    return {space, space.coefficients()};
}

inline double basis_value(const BasisSpace& space, int i, double u) {
    if (i < 0 || i > space.degree()) {
        throw validation_error("basis index i = " + std::to_string(i) + " outside [0, " +
                               std::to_string(space.degree()) + "]");
    }
    u = space.clamp_parameter(u);
    if (u == 0.0 || u == space.alpha()) {
        // exact endpoint interpolation
        return i == (u == 0.0 ? 0 : space.degree()) ? 1.0 : 0.0;
    }
    const BasisKind k = space.kind();
    const double left = detail::kind_sin(k, 0.5 * (space.alpha() - u));
    const double right = detail::kind_sin(k, 0.5 * u);
    return space.coefficients()[i] * std::pow(left, space.degree() - i) * std::pow(right, i);
}

inline std::vector<double> basis_vector(const BasisSpace& space, double u) {
    u = space.clamp_parameter(u);
    const int degree = space.degree();
    if (u == 0.0 || u == space.alpha()) {
        // exact endpoint interpolation
        std::vector<double> unit(degree + 1, 0.0);
        unit[u == 0.0 ? 0 : degree] = 1.0;
        return unit;
    }
    const BasisKind k = space.kind();
    const double left = detail::kind_sin(k, 0.5 * (space.alpha() - u));
    const double right = detail::kind_sin(k, 0.5 * u);

    std::vector<double> left_pow(degree + 1, 1.0);
    std::vector<double> right_pow(degree + 1, 1.0);
    for (int j = 1; j <= degree; ++j) {
        left_pow[j] = left_pow[j - 1] * left;
        right_pow[j] = right_pow[j - 1] * right;
    }
    std::vector<double> values(degree + 1);
    const auto& t = space.coefficients();
    for (int i = 0; i <= degree; ++i) {
        values[i] = t[i] * left_pow[degree - i] * right_pow[i];
    }
    return values;
}

/// Classical Bernstein polynomial C(degree, i) v^i (1 - v)^(degree - i).
inline double bernstein_value(int degree, int i, double v) {
    if (degree < 0 || degree > max_degree || degree % 2 != 0) {
        throw validation_error("bernstein degree " + std::to_string(degree) + " must be even and in [0, " +
                               std::to_string(max_degree) + "]");
    }
    if (i < 0 || i > degree) {
        throw validation_error("bernstein index i = " + std::to_string(i) + " outside [0, " +
                               std::to_string(degree) + "]");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw validation_error("bernstein parameter v = " + std::to_string(v) + " outside [0, 1]");
    }
    return static_cast<double>(binomial(degree, i)) * std::pow(v, i) * std::pow(1.0 - v, degree - i);
}

}  // namespace tbasis
