#pragma once

// Control point curves over a normalized B-basis.
//
// A curve sum_i d_i T_i(u) (or its rational counterpart with weights w_i) is
// a rational Bezier curve in the reparametrized variable v(u) with Bezier
// weights t_i / C(2n, i). Subdivision runs the rational de Casteljau pyramid
// on that representation and keeps the pieces in rational Bezier form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbasis.hpp"
#include "xform.hpp"

namespace tbasis {

using Point = std::vector<double>;

/// Weights at or below this (after scaling by the largest weight) count as
/// degenerate in the corner-cutting pyramid and in rational evaluation.
inline constexpr double degenerate_weight = 1e-14;

namespace detail {

inline std::size_t common_dimension(const std::vector<Point>& points, const char* what) {
    if (points.empty()) {
        throw validation_error(std::string(what) + ": no control points");
    }
    const std::size_t dim = points.front().size();
    if (dim == 0) {
        throw validation_error(std::string(what) + ": control points have dimension 0");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) {
            throw validation_error(std::string(what) + ": point " + std::to_string(i) + " has dimension " +
                                   std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
        }
    }
    return dim;
}

inline void validate_weights(const std::vector<double>& weights, std::size_t count, const char* what) {
    if (weights.size() != count) {
        throw validation_error(std::string(what) + ": expected " + std::to_string(count) + " weights, got " +
                               std::to_string(weights.size()));
    }
    bool positive = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw validation_error(std::string(what) + ": weight " + std::to_string(i) + " is negative or not finite");
        }
        positive = positive || weights[i] > 0.0;
    }
    if (!positive) {
        throw validation_error(std::string(what) + ": all weights are zero");
    }
}

inline double max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace detail

struct ControlCurve {
    BasisSpace space;
    std::vector<Point> points;
    std::optional<std::vector<double>> weights;

    ControlCurve(BasisSpace s, std::vector<Point> p, std::optional<std::vector<double>> w = std::nullopt)
        : space(std::move(s)), points(std::move(p)), weights(std::move(w)) {
        if (points.size() != space.dimension()) {
            throw validation_error("control curve: expected " + std::to_string(space.dimension()) +
                                   " control points, got " + std::to_string(points.size()));
        }
        detail::common_dimension(points, "control curve");
        if (weights) {
            detail::validate_weights(*weights, points.size(), "control curve");
        }
    }

    std::size_t dimension() const { return points.front().size(); }
    bool rational() const { return weights.has_value(); }
};

inline Point evaluate(const ControlCurve& curve, double u) {
    const auto basis = basis_vector(curve.space, u);
    const std::size_t dim = curve.dimension();
    Point out(dim, 0.0);
    if (!curve.weights) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t c = 0; c < dim; ++c) {
                out[c] += basis[i] * curve.points[i][c];
            }
        }
        return out;
    }
    const auto& w = *curve.weights;
    double denom = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double b = w[i] * basis[i];
        denom += b;
        for (std::size_t c = 0; c < dim; ++c) {
            out[c] += b * curve.points[i][c];
        }
    }
    if (denom <= degenerate_weight * detail::max_abs(w)) {
        throw numerical_error("rational curve denominator vanishes at u = " + std::to_string(u));
    }
    for (double& x : out) {
        x /= denom;
    }
    return out;
}

/// v(u) mapping [0, alpha] onto [0, 1]; the B-basis becomes a rational
/// Bernstein basis in v.
inline double reparametrize(const BasisSpace& space, double u) {
    u = space.clamp_parameter(u);
    if (u == 0.0) {
        return 0.0;
    }
    if (u == space.alpha()) {
        return 1.0;
    }
    const BasisKind k = space.kind();
    const Angle quarter = space.shape().scaled(1, 4);
    const double v = 0.5 + detail::kind_tan(k, 0.5 * u - quarter.radians()) / (2.0 * detail::kind_tan(k, quarter));
    return std::clamp(v, 0.0, 1.0);
}

/// t_i / C(2n, i); the rational Bezier weights of the B-basis.
inline std::vector<double> bezier_weights(const BasisSpace& space) {
    const auto& t = space.coefficients();
    std::vector<double> w(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        w[i] = t[i] / static_cast<double>(binomial(space.degree(), static_cast<int>(i)));
    }
    return w;
}

/// A rational Bezier piece of a curve, covering [u_begin, u_end] of the
/// parent space. Its local parameter is t = (v(u) - v_begin) / (v_end - v_begin)
/// where v is the parent's reparametrization. Weights already include the
/// Bezier weights of the parent basis.
struct SubdivisionPiece {
    BasisSpace parent;
    double u_begin = 0.0;
    double u_end = 0.0;
    double v_begin = 0.0;
    double v_end = 1.0;
    std::vector<Point> points;
    std::vector<double> weights;
};

struct SubdivisionResult {
    SubdivisionPiece left;
    SubdivisionPiece right;
    double split_ratio = 0.0;
    /// corner_ratios[r - 1][i] = v w_{i+1}^{r-1} / w_i^r, the effective ratio of
    /// the i-th cut at level r.
    std::vector<std::vector<double>> corner_ratios;
};

/// The whole curve as one rational Bezier piece in v.
inline SubdivisionPiece as_piece(const ControlCurve& curve) {
    auto w = bezier_weights(curve.space);
    if (curve.weights) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] *= (*curve.weights)[i];
        }
    }
    return {curve.space, 0.0, curve.space.alpha(), 0.0, 1.0, curve.points, std::move(w)};
}

inline double local_parameter(const SubdivisionPiece& piece, double u) {
    const double slack = parameter_slack * std::max(1.0, piece.parent.alpha());
    if (!(u >= piece.u_begin - slack && u <= piece.u_end + slack)) {
        throw validation_error("parameter u = " + std::to_string(u) + " outside piece [" +
                               std::to_string(piece.u_begin) + ", " + std::to_string(piece.u_end) + "]");
    }
    u = std::clamp(u, piece.u_begin, piece.u_end);
    if (u == piece.u_begin) {
        return 0.0;
    }
    if (u == piece.u_end) {
        return 1.0;
    }
    const double t = (reparametrize(piece.parent, u) - piece.v_begin) / (piece.v_end - piece.v_begin);
    return std::clamp(t, 0.0, 1.0);
}

/// Evaluates a piece at a parameter u of the parent curve.
inline Point evaluate(const SubdivisionPiece& piece, double u) {
    const double t = local_parameter(piece, u);
    const int degree = static_cast<int>(piece.points.size()) - 1;
    const std::size_t dim = piece.points.front().size();
    Point out(dim, 0.0);
    double denom = 0.0;
    for (int i = 0; i <= degree; ++i) {
        const double b = piece.weights[i] * static_cast<double>(binomial(degree, i)) * std::pow(t, i) *
                         std::pow(1.0 - t, degree - i);
        denom += b;
        for (std::size_t c = 0; c < dim; ++c) {
            out[c] += b * piece.points[i][c];
        }
    }
    if (denom <= degenerate_weight * detail::max_abs(piece.weights)) {
        throw numerical_error("subdivision piece denominator vanishes at u = " + std::to_string(u));
    }
    for (double& x : out) {
        x /= denom;
    }
    return out;
}

/// Splits a piece at the parent parameter u (strictly inside the piece).
inline SubdivisionResult split(const SubdivisionPiece& piece, double u) {
    if (!(u > piece.u_begin && u < piece.u_end)) {
        throw validation_error("split parameter u = " + std::to_string(u) + " must lie strictly inside (" +
                               std::to_string(piece.u_begin) + ", " + std::to_string(piece.u_end) + ")");
    }
    const double v_split = reparametrize(piece.parent, u);
    const double t = (v_split - piece.v_begin) / (piece.v_end - piece.v_begin);
    const double s = 1.0 - t;

    const std::size_t count = piece.points.size();
    const std::size_t dim = piece.points.front().size();
    const double scale = detail::max_abs(piece.weights);
    if (!(scale > 0.0)) {
        throw numerical_error("subdivision: all weights vanish");
    }

    std::vector<double> w(count);
    std::vector<Point> d = piece.points;
    for (std::size_t i = 0; i < count; ++i) {
        w[i] = piece.weights[i] / scale;
    }

    std::vector<std::vector<double>> corner_ratios;
    std::vector<Point> left{d.front()};
    std::vector<double> left_w{w.front()};
    std::vector<Point> right_rev{d.back()};
    std::vector<double> right_w_rev{w.back()};

    for (std::size_t r = 1; r < count; ++r) {
        std::vector<double> ratios(count - r);
        for (std::size_t i = 0; i + r < count; ++i) {
            const double a = s * w[i];
            const double b = t * w[i + 1];
            const double wr = a + b;
            if (wr <= degenerate_weight) {
                throw numerical_error("degenerate weight pyramid at level " + std::to_string(r) + ", index " +
                                      std::to_string(i) + " (u = " + std::to_string(u) + ")");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                d[i][c] = (a * d[i][c] + b * d[i + 1][c]) / wr;
            }
            w[i] = wr;
            ratios[i] = b / wr;
        }
        corner_ratios.push_back(std::move(ratios));
        left.push_back(d.front());
        left_w.push_back(w.front());
        right_rev.push_back(d[count - 1 - r]);
        right_w_rev.push_back(w[count - 1 - r]);
    }

    std::reverse(right_rev.begin(), right_rev.end());
    std::reverse(right_w_rev.begin(), right_w_rev.end());
    // the apex is shared exactly
    right_rev.front() = left.back();

    return {{piece.parent, piece.u_begin, u, piece.v_begin, v_split, std::move(left), std::move(left_w)},
            {piece.parent, u, piece.u_end, v_split, piece.v_end, std::move(right_rev), std::move(right_w_rev)},
            t,
            std::move(corner_ratios)};
}

inline SubdivisionResult subdivide(const ControlCurve& curve, double u0) {
    if (!(u0 > 0.0 && u0 < curve.space.alpha())) {
        throw validation_error("split point u0 = " + std::to_string(u0) + " must lie strictly inside (0, " +
                               std::to_string(curve.space.alpha()) + ")");
    }
    return split(as_piece(curve), u0);
}

/// Checks that a piece's weights are, up to a Moebius reparametrization,
/// proportional to the Bezier weights of the B-basis over the piece's own
/// interval. Holds for pieces of non-rational curves.
inline bool weights_match_subspace(const SubdivisionPiece& piece, double tolerance = 1e-9) {
    const int degree = static_cast<int>(piece.weights.size()) - 1;
    const BasisSpace sub(piece.parent.kind(), degree / 2, piece.u_end - piece.u_begin);
    const auto target = bezier_weights(sub);
    const double c = std::pow(piece.weights.front() / piece.weights.back(), 1.0 / degree);
    for (int i = 0; i <= degree; ++i) {
        const double normalized = piece.weights[i] * std::pow(c, i) / piece.weights.front();
        const double expected = target[i] / target.front();
        if (std::abs(normalized - expected) > tolerance * std::max(1.0, std::abs(expected))) {
            return false;
        }
    }
    return true;
}

/// Order-elevates arbitrary points (each of any common dimension) z times.
inline std::vector<Point> elevate_points(const BasisSpace& space, const std::vector<Point>& points, int z = 1) {
    if (z < 1) {
        throw validation_error("elevation count z = " + std::to_string(z) + " must be at least 1");
    }
    const std::size_t dim = detail::common_dimension(points, "elevate");
    if (points.size() != space.dimension()) {
        throw validation_error("elevate: expected " + std::to_string(space.dimension()) + " points, got " +
                               std::to_string(points.size()));
    }
    std::vector<Point> current = points;
    for (int step = 0; step < z; ++step) {
        const int n = space.order() + step;
        detail::validate_space(space.kind(), n + 1, space.shape());
        const auto w = detail::product_weights(space.kind(), n, space.shape());
        std::vector<Point> next(2 * n + 3, Point(dim));
        std::vector<double> column(current.size());
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t i = 0; i < current.size(); ++i) {
                column[i] = current[i][c];
            }
            const auto lifted = detail::elevate_with(w, column);
            for (std::size_t i = 0; i < lifted.size(); ++i) {
                next[i][c] = lifted[i];
            }
        }
        current = std::move(next);
    }
    return current;
}

/// Order elevation by z steps. Rational curves are elevated through their
/// pre-image (points multiplied by weights, weight appended).
inline ControlCurve elevate(const ControlCurve& curve, int z) {
    const BasisSpace target = curve.space.with_order(curve.space.order() + z);
    if (!curve.weights) {
        return ControlCurve(target, elevate_points(curve.space, curve.points, z));
    }
    const auto& w = *curve.weights;
    const std::size_t dim = curve.dimension();
    std::vector<Point> lifted(curve.points.size());
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        lifted[i].resize(dim + 1);
        for (std::size_t c = 0; c < dim; ++c) {
            lifted[i][c] = w[i] * curve.points[i][c];
        }
        lifted[i][dim] = w[i];
    }
    const auto elevated = elevate_points(curve.space, lifted, z);
    const auto plain = elevate_points(curve.space, curve.points, z);
    std::vector<Point> points(elevated.size(), Point(dim));
    std::vector<double> weights(elevated.size());
    const double scale = detail::max_abs(w);
    for (std::size_t i = 0; i < elevated.size(); ++i) {
        weights[i] = elevated[i][dim];
        if (weights[i] > degenerate_weight * scale) {
            for (std::size_t c = 0; c < dim; ++c) {
                points[i][c] = elevated[i][c] / weights[i];
            }
        } else {
            // a zero weight leaves the point without influence
            weights[i] = 0.0;
            points[i] = plain[i];
        }
    }
    return ControlCurve(target, std::move(points), std::move(weights));
}

}  // namespace tbasis
