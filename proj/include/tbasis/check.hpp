#pragma once

// Reconstruction errors of control point descriptions against direct
// evaluation of the traditional form. Relative error of one sample is
// |a - e|_inf / (1 + |e|_inf); the reported value is the maximum over samples.

#include <algorithm>
#include <cmath>
#include <vector>

#include "exact.hpp"
#include "surface.hpp"

namespace tbasis {

inline double relative_error(const Point& actual, const Point& expected) {
    double diff = 0.0;
    double size = 0.0;
    for (std::size_t c = 0; c < expected.size(); ++c) {
        diff = std::max(diff, std::abs(actual[c] - expected[c]));
        size = std::max(size, std::abs(expected[c]));
    }
    return diff / (1.0 + size);
}

/// Projects a point of a rational spec: first coordinates over the last.
inline Point project(const Point& homogeneous) {
    Point p(homogeneous.begin(), homogeneous.end() - 1);
    for (double& x : p) {
        x /= homogeneous.back();
    }
    return p;
}

inline double curve_error(const CurveSpec& spec, const ControlCurve& curve, bool rational, int samples, int r = 0) {
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double u = curve.space.alpha() * static_cast<double>(j) / (samples - 1);
        const Point direct = evaluate_traditional(spec, u, r);
        worst = std::max(worst, relative_error(evaluate(curve, u), rational ? project(direct) : direct));
    }
    return worst;
}

/// Error over a uniform lattice with `per_direction` samples per direction.
inline double surface_error(const SurfaceSpec& spec, const ControlGrid& grid, bool rational, int per_direction,
                            const std::vector<int>& derivs = {}) {
    std::vector<BasisSpace> spaces;
    for (std::size_t j = 0; j < spec.delta(); ++j) {
        spaces.emplace_back(spec.directions[j].kind, grid.orders[j], spec.directions[j].alpha);
    }
    const GridEvaluator eval(grid, spaces);
    const std::size_t delta = spec.delta();
    std::size_t total = 1;
    for (std::size_t j = 0; j < delta; ++j) {
        total *= static_cast<std::size_t>(per_direction);
    }
    double worst = 0.0;
    std::vector<double> u(delta);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        for (std::size_t j = delta; j-- > 0;) {
            const auto i = rest % static_cast<std::size_t>(per_direction);
            rest /= static_cast<std::size_t>(per_direction);
            u[j] = spaces[j].alpha() * static_cast<double>(i) / (per_direction - 1);
        }
        const Point direct = evaluate_traditional(spec, u, derivs);
        worst = std::max(worst, relative_error(eval(u), rational ? project(direct) : direct));
    }
    return worst;
}

}  // namespace tbasis
