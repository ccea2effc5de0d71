#pragma once

// Exact control point description of curves given in traditional form
//   g(u) = sum_p c_p cos(pu + psi_p) + sum_q s_q sin(qu + phi_q)
// (or the cosh / sinh analogue) and of their derivatives, plus the
// pre-image algorithm for rational curves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "curve.hpp"
#include "xform.hpp"

namespace tbasis {

enum class Family { cos, sin, cosh, sinh };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::cos: return "cos";
        case Family::sin: return "sin";
        case Family::cosh: return "cosh";
        case Family::sinh: return "sinh";
    }
    return "?";
}

inline BasisKind kind_of(Family f) {
    return f == Family::cos || f == Family::sin ? BasisKind::trigonometric : BasisKind::hyperbolic;
}

inline bool cosine_like(Family f) { return f == Family::cos || f == Family::cosh; }

struct Term {
    Family family = Family::cos;
    int frequency = 0;
    double amplitude = 0.0;
    Angle phase;
};

/// Duplicate (family, frequency) pairs are allowed; they add up.
struct CoordinateFunction {
    std::vector<Term> terms;
};

struct CurveSpec {
    BasisKind kind = BasisKind::trigonometric;
    Angle alpha;
    std::vector<CoordinateFunction> coords;
};

/// Coefficients of a coordinate function (or one of its derivatives) in the
/// canonical basis: cosine[k] multiplies c(ku), sine[k] multiplies s(ku).
/// sine[0] is always zero.
struct CanonicalCoefficients {
    std::vector<double> cosine;
    std::vector<double> sine;
};

namespace detail {

inline double int_power(double base, int r) {
    if (r == 0) {
        return 1.0;  // 0^0 = 1 keeps constant terms at r = 0
    }
    double out = 1.0;
    for (int i = 0; i < r; ++i) {
        out *= base;
    }
    return out;
}

// (cos, sin) of phase + r pi/2 by exact quarter turns.
inline std::pair<double, double> rotated_phase(const Angle& phase, int r) {
    const double c = phase.cos();
    const double s = phase.sin();
    switch (r % 4) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

inline void validate_term(const Term& term, BasisKind kind, const std::string& where) {
    if (kind_of(term.family) != kind) {
        throw validation_error(where + ": family '" + to_string(term.family) + "' does not match " +
                               to_string(kind) + " space");
    }
    if (term.frequency < 0) {
        throw validation_error(where + ": frequency " + std::to_string(term.frequency) + " is negative");
    }
    if (term.frequency > max_order) {
        throw validation_error(where + ": frequency " + std::to_string(term.frequency) + " exceeds " +
                               std::to_string(max_order));
    }
    if (!std::isfinite(term.amplitude) || !std::isfinite(term.phase.radians())) {
        throw validation_error(where + ": amplitude and phase must be finite");
    }
}

}  // namespace detail

inline int max_frequency(const CoordinateFunction& f) {
    int m = 0;
    for (const auto& t : f.terms) {
        m = std::max(m, t.frequency);
    }
    return m;
}

/// Smallest order able to represent every coordinate; at least 1.
inline int min_order(const CurveSpec& spec) {
    if (spec.coords.empty()) {
        throw validation_error("curve spec has no coordinates");
    }
    int m = 1;
    for (const auto& c : spec.coords) {
        m = std::max(m, max_frequency(c));
    }
    return m;
}

/// Canonical coefficients of the r-th derivative, frequencies 0..n.
inline CanonicalCoefficients canonical_coefficients(const CoordinateFunction& f, BasisKind kind, int n, int r) {
    if (r < 0) {
        throw validation_error("derivative order r = " + std::to_string(r) + " is negative");
    }
    CanonicalCoefficients out{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
    for (std::size_t j = 0; j < f.terms.size(); ++j) {
        const Term& t = f.terms[j];
        detail::validate_term(t, kind, "terms[" + std::to_string(j) + "]");
        if (t.frequency > n) {
            throw validation_error("terms[" + std::to_string(j) + "]: frequency " + std::to_string(t.frequency) +
                                   " exceeds order " + std::to_string(n));
        }
        const int k = t.frequency;
        const double scale = t.amplitude * detail::int_power(static_cast<double>(k), r);
        if (scale == 0.0) {
            continue;
        }
        if (kind == BasisKind::trigonometric) {
            const auto [c, s] = detail::rotated_phase(t.phase, r);
            if (t.family == Family::cos) {
                out.cosine[k] += scale * c;
                out.sine[k] -= scale * s;
            } else {
                out.sine[k] += scale * c;
                out.cosine[k] += scale * s;
            }
        } else {
            const double ch = std::cosh(t.phase.radians());
            const double sh = std::sinh(t.phase.radians());
            // derivatives of odd order swap cosh and sinh
            const bool as_cosh = (t.family == Family::cosh) == (r % 2 == 0);
            if (as_cosh) {
                out.cosine[k] += scale * ch;
                out.sine[k] += scale * sh;
            } else {
                out.sine[k] += scale * ch;
                out.cosine[k] += scale * sh;
            }
        }
    }
    out.sine[0] = 0.0;
    return out;
}

/// B-basis ordinates of the r-th derivative of one coordinate function.
inline std::vector<double> ordinates(const CoordinateFunction& f, const BasisSpace& space, int r) {
    const auto coeffs = canonical_coefficients(f, space.kind(), space.order(), r);
    const auto matrix = transform_matrix(space);
    std::vector<double> d(space.dimension(), coeffs.cosine[0]);
    for (int k = 1; k <= space.order(); ++k) {
        const double a = coeffs.sine[k];
        const double b = coeffs.cosine[k];
        if (a != 0.0) {
            const auto row = matrix->sine_row(k);
            for (std::size_t i = 0; i < d.size(); ++i) {
                d[i] += a * row[i];
            }
        }
        if (b != 0.0) {
            const auto row = matrix->cosine_row(k);
            for (std::size_t i = 0; i < d.size(); ++i) {
                d[i] += b * row[i];
            }
        }
    }
    return d;
}

/// Direct evaluation of the r-th derivative of a coordinate function.
inline double evaluate_traditional(const CoordinateFunction& f, double u, int r = 0) {
    double sum = 0.0;
    for (const auto& t : f.terms) {
        const double k = static_cast<double>(t.frequency);
        const double scale = t.amplitude * detail::int_power(k, r);
        if (scale == 0.0) {
            continue;
        }
        const double x = k * u + t.phase.radians();
        switch (t.family) {
            case Family::cos: sum += scale * std::cos(x + r * std::numbers::pi / 2); break;
            case Family::sin: sum += scale * std::sin(x + r * std::numbers::pi / 2); break;
            case Family::cosh: sum += scale * (r % 2 == 0 ? std::cosh(x) : std::sinh(x)); break;
            case Family::sinh: sum += scale * (r % 2 == 0 ? std::sinh(x) : std::cosh(x)); break;
        }
    }
    return sum;
}

inline Point evaluate_traditional(const CurveSpec& spec, double u, int r = 0) {
    Point p(spec.coords.size());
    for (std::size_t l = 0; l < spec.coords.size(); ++l) {
        p[l] = evaluate_traditional(spec.coords[l], u, r);
    }
    return p;
}

/// Termwise derivative: trigonometric phases advance by a quarter turn,
/// hyperbolic families swap; amplitudes pick up the frequency.
inline CoordinateFunction differentiate(const CoordinateFunction& f) {
    CoordinateFunction out;
    for (const auto& t : f.terms) {
        if (t.frequency == 0) {
            continue;
        }
        Term d = t;
        d.amplitude = t.amplitude * t.frequency;
        switch (t.family) {
            case Family::cos:
            case Family::sin:
                d.phase = t.phase.pi_ratio()
                              ? Angle::pi_times(2 * t.phase.pi_ratio()->num + t.phase.pi_ratio()->den,
                                                2 * t.phase.pi_ratio()->den)
                              : Angle(t.phase.radians() + std::numbers::pi / 2);
                break;
            case Family::cosh: d.family = Family::sinh; break;
            case Family::sinh: d.family = Family::cosh; break;
        }
        out.terms.push_back(d);
    }
    return out;
}

inline CurveSpec differentiate(const CurveSpec& spec) {
    CurveSpec out{spec.kind, spec.alpha, {}};
    for (const auto& c : spec.coords) {
        out.coords.push_back(differentiate(c));
    }
    return out;
}

/// Control points whose combination with the order-n B-basis is exactly the
/// r-th derivative of the spec's curve.
inline ControlCurve exact_curve(const CurveSpec& spec, int n, int r = 0) {
    const int needed = min_order(spec);
    if (n < needed) {
        throw validation_error("order n = " + std::to_string(n) + " is below the minimal order " +
                               std::to_string(needed));
    }
    const BasisSpace space(spec.kind, n, spec.alpha);
    std::vector<Point> points(space.dimension(), Point(spec.coords.size()));
    for (std::size_t l = 0; l < spec.coords.size(); ++l) {
        std::vector<double> d;
        try {
            d = ordinates(spec.coords[l], space, r);
        } catch (const validation_error& e) {
            throw validation_error("coords[" + std::to_string(l) + "]." + e.what());
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            points[i][l] = d[i];
        }
    }
    return ControlCurve(space, std::move(points));
}

/// Samples used to check the sign of a rational denominator.
inline constexpr int denominator_samples = 1001;

/// Weights at or below this count as non-positive.
inline constexpr double weight_threshold = 1e-12;

struct PreImageResult {
    BasisSpace space;
    std::vector<Point> preimage_points;
    std::vector<Point> projected_points;
    std::vector<double> weights;
    int order_used = 0;
    int elevations_performed = 0;

    ControlCurve curve() const { return ControlCurve(space, projected_points, weights); }
};

namespace detail {

inline std::vector<std::size_t> nonpositive_indices(const std::vector<Point>& preimage) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < preimage.size(); ++i) {
        if (!(preimage[i].back() > weight_threshold)) {
            bad.push_back(i);
        }
    }
    return bad;
}

}  // namespace detail

/// The last coordinate of `spec` is the denominator. Describes the pre-image
/// exactly, elevating its order until every weight is positive, then projects.
inline PreImageResult exact_rational_curve(const CurveSpec& spec, int n, int max_elevations = 32) {
    if (spec.coords.size() < 2) {
        throw validation_error("rational curve spec needs at least one coordinate plus a denominator");
    }
    if (max_elevations < 0) {
        throw validation_error("max_elevations = " + std::to_string(max_elevations) + " is negative");
    }
    const CoordinateFunction& denominator = spec.coords.back();
    const BasisSpace initial(spec.kind, std::max(n, 1), spec.alpha);
    for (int j = 0; j < denominator_samples; ++j) {
        const double u = initial.alpha() * static_cast<double>(j) / (denominator_samples - 1);
        const double value = evaluate_traditional(denominator, u);
        if (!(value > 0.0)) {
            throw numerical_error("denominator is not positive at u = " + std::to_string(u) + " (value " +
                                  std::to_string(value) + ")");
        }
    }

    const ControlCurve pre = exact_curve(spec, n, 0);
    std::vector<Point> preimage = pre.points;
    int order = n;
    int elevations = 0;
    auto bad = detail::nonpositive_indices(preimage);
    while (!bad.empty()) {
        if (elevations >= max_elevations || order >= max_order) {
            std::vector<std::vector<std::size_t>> offending;
            std::string list;
            for (auto i : bad) {
                offending.push_back({i});
                list += (list.empty() ? "" : ", ") + std::to_string(i);
            }
            throw positivity_error("weights not positive after " + std::to_string(elevations) +
                                       " elevations (order " + std::to_string(order) + "); offending indices: " + list,
                                   std::move(offending));
        }
        preimage = elevate_points(pre.space.with_order(order), preimage, 1);
        ++order;
        ++elevations;
        bad = detail::nonpositive_indices(preimage);
    }

    const std::size_t dim = spec.coords.size() - 1;
    std::vector<Point> projected(preimage.size(), Point(dim));
    std::vector<double> weights(preimage.size());
    for (std::size_t i = 0; i < preimage.size(); ++i) {
        weights[i] = preimage[i][dim];
        for (std::size_t c = 0; c < dim; ++c) {
            projected[i][c] = preimage[i][c] / weights[i];
        }
    }
    return {pre.space.with_order(order), std::move(preimage), std::move(projected), std::move(weights), order,
            elevations};
}

}  // namespace tbasis
