#pragma once

// Exact control grids of multivariate (rational, hybrid) tensor product
// surfaces whose coordinates are sums of products of univariate
// trigonometric or hyperbolic polynomials, one factor per direction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"

namespace tbasis {

/// Parametric dimension cap.
inline constexpr std::size_t max_directions = 4;

/// Samples per direction for the denominator sign check.
inline constexpr int surface_denominator_samples = 33;

struct DirectionSpace {
    BasisKind kind = BasisKind::trigonometric;
    Angle alpha;
};

/// One summand: the product of one univariate factor per direction.
struct ProductTerm {
    std::vector<CoordinateFunction> factors;
};

struct SurfaceCoordinateFunction {
    std::vector<ProductTerm> summands;
};

struct SurfaceSpec {
    int kappa = 0;
    std::vector<DirectionSpace> directions;
    std::vector<SurfaceCoordinateFunction> coords;

    std::size_t delta() const { return directions.size(); }
};

/// Row-major multidimensional control grid, last index fastest. Entry `k`
/// occupies points[k * dimension .. (k + 1) * dimension).
struct ControlGrid {
    std::vector<int> orders;
    std::size_t dimension = 0;
    std::vector<double> points;
    std::optional<std::vector<double>> weights;

    std::vector<std::size_t> shape() const {
        std::vector<std::size_t> s(orders.size());
        for (std::size_t j = 0; j < orders.size(); ++j) {
            s[j] = static_cast<std::size_t>(2 * orders[j] + 1);
        }
        return s;
    }

    std::size_t count() const {
        std::size_t c = 1;
        for (auto n : shape()) {
            c *= n;
        }
        return c;
    }

    Point point(std::size_t flat) const {
        return Point(points.begin() + static_cast<std::ptrdiff_t>(flat * dimension),
                     points.begin() + static_cast<std::ptrdiff_t>((flat + 1) * dimension));
    }

    std::vector<std::size_t> multi_index(std::size_t flat) const {
        const auto s = shape();
        std::vector<std::size_t> idx(s.size());
        for (std::size_t j = s.size(); j-- > 0;) {
            idx[j] = flat % s[j];
            flat /= s[j];
        }
        return idx;
    }
};

namespace detail {

inline std::string coord_path(std::size_t l) { return "coords[" + std::to_string(l) + "]"; }

inline void validate_surface(const SurfaceSpec& spec, bool rational) {
    const std::size_t delta = spec.delta();
    if (delta < 1 || delta > max_directions) {
        throw validation_error("surface needs between 1 and " + std::to_string(max_directions) + " directions, got " +
                               std::to_string(delta));
    }
    if (spec.kappa < 0) {
        throw validation_error("kappa = " + std::to_string(spec.kappa) + " is negative");
    }
    const std::size_t expected = delta + static_cast<std::size_t>(spec.kappa) + (rational ? 1 : 0);
    if (spec.coords.size() != expected) {
        throw validation_error("surface with delta = " + std::to_string(delta) + ", kappa = " +
                               std::to_string(spec.kappa) + (rational ? " (rational)" : "") + " needs " +
                               std::to_string(expected) + " coordinates, got " + std::to_string(spec.coords.size()));
    }
    for (std::size_t j = 0; j < delta; ++j) {
        try {
            detail::validate_space(spec.directions[j].kind, 1, spec.directions[j].alpha);
        } catch (const validation_error& e) {
            throw validation_error("directions[" + std::to_string(j) + "]: " + e.what());
        }
    }
    for (std::size_t l = 0; l < spec.coords.size(); ++l) {
        const auto& summands = spec.coords[l].summands;
        for (std::size_t z = 0; z < summands.size(); ++z) {
            const auto& factors = summands[z].factors;
            const std::string path = coord_path(l) + ".summands[" + std::to_string(z) + "]";
            if (factors.size() != delta) {
                throw validation_error(path + ": expected " + std::to_string(delta) + " factors, got " +
                                       std::to_string(factors.size()));
            }
            for (std::size_t j = 0; j < delta; ++j) {
                for (std::size_t t = 0; t < factors[j].terms.size(); ++t) {
                    detail::validate_term(factors[j].terms[t], spec.directions[j].kind,
                                          path + ".factors[" + std::to_string(j) + "].terms[" + std::to_string(t) +
                                              "]");
                }
            }
        }
    }
}

inline void validate_orders(const SurfaceSpec& spec, const std::vector<int>& orders, const std::vector<int>& needed) {
    if (orders.size() != spec.delta()) {
        throw validation_error("expected " + std::to_string(spec.delta()) + " orders, got " +
                               std::to_string(orders.size()));
    }
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j] < needed[j]) {
            throw validation_error("order n" + std::to_string(j + 1) + " = " + std::to_string(orders[j]) +
                                   " is below the minimal order " + std::to_string(needed[j]));
        }
    }
}

}  // namespace detail

/// Per-direction minimal orders (at least 1).
inline std::vector<int> min_orders(const SurfaceSpec& spec) {
    std::vector<int> out(spec.delta(), 1);
    for (const auto& coord : spec.coords) {
        for (const auto& summand : coord.summands) {
            for (std::size_t j = 0; j < summand.factors.size() && j < out.size(); ++j) {
                out[j] = std::max(out[j], max_frequency(summand.factors[j]));
            }
        }
    }
    return out;
}

inline std::vector<BasisSpace> direction_spaces(const SurfaceSpec& spec, const std::vector<int>& orders) {
    std::vector<BasisSpace> spaces;
    for (std::size_t j = 0; j < spec.delta(); ++j) {
        spaces.emplace_back(spec.directions[j].kind, orders[j], spec.directions[j].alpha);
    }
    return spaces;
}

/// Control grid of the mixed partial derivative of order `derivs` (all zero
/// when empty).
inline ControlGrid exact_surface(const SurfaceSpec& spec, const std::vector<int>& orders,
                                 std::vector<int> derivs = {}) {
    if (spec.coords.empty()) {
        throw validation_error("surface spec has no coordinates");
    }
    if (spec.delta() < 1 || spec.delta() > max_directions) {
        throw validation_error("surface needs between 1 and " + std::to_string(max_directions) + " directions");
    }
    detail::validate_orders(spec, orders, min_orders(spec));
    if (derivs.empty()) {
        derivs.assign(spec.delta(), 0);
    }
    if (derivs.size() != spec.delta()) {
        throw validation_error("expected " + std::to_string(spec.delta()) + " derivative orders, got " +
                               std::to_string(derivs.size()));
    }
    const auto spaces = direction_spaces(spec, orders);
    const std::size_t delta = spec.delta();

    ControlGrid grid;
    grid.orders = orders;
    grid.dimension = spec.coords.size();
    const std::size_t count = grid.count();
    const auto shape = grid.shape();
    grid.points.assign(count * grid.dimension, 0.0);

    std::vector<double> product(count);
    for (std::size_t l = 0; l < spec.coords.size(); ++l) {
        const auto& summands = spec.coords[l].summands;
        for (std::size_t z = 0; z < summands.size(); ++z) {
            const auto& factors = summands[z].factors;
            const std::string path = detail::coord_path(l) + ".summands[" + std::to_string(z) + "]";
            if (factors.size() != delta) {
                throw validation_error(path + ": expected " + std::to_string(delta) + " factors, got " +
                                       std::to_string(factors.size()));
            }
            std::vector<std::vector<double>> ords(delta);
            for (std::size_t j = 0; j < delta; ++j) {
                try {
                    ords[j] = ordinates(factors[j], spaces[j], derivs[j]);
                } catch (const validation_error& e) {
                    throw validation_error(path + ".factors[" + std::to_string(j) + "]." + e.what());
                }
            }
            // outer product, built one direction at a time
            product.assign(1, 1.0);
            for (std::size_t j = 0; j < delta; ++j) {
                std::vector<double> next(product.size() * shape[j]);
                for (std::size_t a = 0; a < product.size(); ++a) {
                    for (std::size_t b = 0; b < shape[j]; ++b) {
                        next[a * shape[j] + b] = product[a] * ords[j][b];
                    }
                }
                product = std::move(next);
            }
            for (std::size_t k = 0; k < count; ++k) {
                grid.points[k * grid.dimension + l] += product[k];
            }
        }
    }
    return grid;
}

/// Direct evaluation of the (mixed partial derivative of the) spec.
inline Point evaluate_traditional(const SurfaceSpec& spec, const std::vector<double>& u, std::vector<int> derivs = {}) {
    if (derivs.empty()) {
        derivs.assign(spec.delta(), 0);
    }
    Point out(spec.coords.size(), 0.0);
    for (std::size_t l = 0; l < spec.coords.size(); ++l) {
        for (const auto& summand : spec.coords[l].summands) {
            double p = 1.0;
            for (std::size_t j = 0; j < summand.factors.size(); ++j) {
                p *= evaluate_traditional(summand.factors[j], u[j], derivs[j]);
            }
            out[l] += p;
        }
    }
    return out;
}

namespace detail {

// Elevates every line of a flat (shape..., channels) array along `axis`.
inline std::vector<double> elevate_along(const std::vector<double>& data, const std::vector<std::size_t>& shape,
                                         std::size_t channels, std::size_t axis, const BasisSpace& space) {
    const auto w = product_weights(space.kind(), space.order(), space.shape());
    std::size_t outer = 1;
    for (std::size_t j = 0; j < axis; ++j) {
        outer *= shape[j];
    }
    std::size_t inner = channels;
    for (std::size_t j = axis + 1; j < shape.size(); ++j) {
        inner *= shape[j];
    }
    const std::size_t n_old = shape[axis];
    const std::size_t n_new = n_old + 2;
    std::vector<double> out(outer * n_new * inner);
    std::vector<double> line(n_old);
    for (std::size_t a = 0; a < outer; ++a) {
        for (std::size_t c = 0; c < inner; ++c) {
            for (std::size_t i = 0; i < n_old; ++i) {
                line[i] = data[(a * n_old + i) * inner + c];
            }
            const auto lifted = elevate_with(w, line);
            for (std::size_t i = 0; i < n_new; ++i) {
                out[(a * n_new + i) * inner + c] = lifted[i];
            }
        }
    }
    return out;
}

}  // namespace detail

struct RationalSurfaceResult {
    ControlGrid grid;      ///< projected points plus weights
    ControlGrid preimage;  ///< homogeneous points, weight last
    int elevations_performed = 0;
};

/// The last coordinate is the denominator. Describes the pre-image, elevates
/// direction by direction (round-robin) until all weights are positive, then
/// projects onto the hyperplane of unit weight.
inline RationalSurfaceResult exact_rational_surface(const SurfaceSpec& spec, std::vector<int> orders,
                                                    int max_elevations = 32) {
    detail::validate_surface(spec, true);
    if (max_elevations < 0) {
        throw validation_error("max_elevations = " + std::to_string(max_elevations) + " is negative");
    }
    const std::size_t delta = spec.delta();

    // denominator sign on a uniform lattice
    {
        const auto& denominator = spec.coords.back();
        SurfaceSpec single{0, spec.directions, {denominator}};
        std::size_t total = 1;
        for (std::size_t j = 0; j < delta; ++j) {
            total *= surface_denominator_samples;
        }
        std::vector<double> u(delta);
        for (std::size_t k = 0; k < total; ++k) {
            std::size_t rest = k;
            for (std::size_t j = delta; j-- > 0;) {
                const auto i = rest % surface_denominator_samples;
                rest /= surface_denominator_samples;
                u[j] = spec.directions[j].alpha.radians() * static_cast<double>(i) / (surface_denominator_samples - 1);
            }
            const double value = evaluate_traditional(single, u)[0];
            if (!(value > 0.0)) {
                std::string at;
                for (std::size_t j = 0; j < delta; ++j) {
                    at += (j ? ", " : "") + std::to_string(u[j]);
                }
                throw numerical_error("denominator is not positive at u = (" + at + ") (value " +
                                      std::to_string(value) + ")");
            }
        }
    }

    ControlGrid pre = exact_surface(spec, orders);
    const std::size_t channels = pre.dimension;
    const std::size_t last = channels - 1;
    auto offending = [&] {
        std::vector<std::vector<std::size_t>> bad;
        for (std::size_t k = 0; k < pre.count(); ++k) {
            if (!(pre.points[k * channels + last] > weight_threshold)) {
                bad.push_back(pre.multi_index(k));
            }
        }
        return bad;
    };

    int elevations = 0;
    std::size_t next_axis = 0;
    auto bad = offending();
    while (!bad.empty()) {
        std::optional<std::size_t> axis;
        for (std::size_t tries = 0; tries < delta && !axis; ++tries) {
            const std::size_t j = (next_axis + tries) % delta;
            if (pre.orders[j] < max_order) {
                axis = j;
            }
        }
        if (elevations >= max_elevations || !axis) {
            std::string order_list;
            for (std::size_t j = 0; j < delta; ++j) {
                order_list += (j ? "," : "") + std::to_string(pre.orders[j]);
            }
            throw positivity_error("weights not positive after " + std::to_string(elevations) +
                                       " elevations (orders " + order_list + "); " + std::to_string(bad.size()) +
                                       " offending multi-indices",
                                   std::move(bad));
        }
        const BasisSpace space(spec.directions[*axis].kind, pre.orders[*axis], spec.directions[*axis].alpha);
        pre.points = detail::elevate_along(pre.points, pre.shape(), channels, *axis, space);
        pre.orders[*axis] += 1;
        next_axis = (*axis + 1) % delta;
        ++elevations;
        bad = offending();
    }

    ControlGrid grid;
    grid.orders = pre.orders;
    grid.dimension = last;
    grid.points.resize(pre.count() * last);
    std::vector<double> weights(pre.count());
    for (std::size_t k = 0; k < pre.count(); ++k) {
        const double w = pre.points[k * channels + last];
        weights[k] = w;
        for (std::size_t c = 0; c < last; ++c) {
            grid.points[k * last + c] = pre.points[k * channels + c] / w;
        }
    }
    grid.weights = std::move(weights);
    return {std::move(grid), std::move(pre), elevations};
}

/// Evaluates a control grid by contracting one direction at a time.
class GridEvaluator {
public:
    GridEvaluator(ControlGrid grid, std::vector<BasisSpace> spaces) : grid_(std::move(grid)), spaces_(std::move(spaces)) {
        if (spaces_.size() != grid_.orders.size()) {
            throw validation_error("grid has " + std::to_string(grid_.orders.size()) + " directions but " +
                                   std::to_string(spaces_.size()) + " spaces were given");
        }
        for (std::size_t j = 0; j < spaces_.size(); ++j) {
            if (spaces_[j].order() != grid_.orders[j]) {
                throw validation_error("direction " + std::to_string(j) + ": space order " +
                                       std::to_string(spaces_[j].order()) + " does not match grid order " +
                                       std::to_string(grid_.orders[j]));
            }
        }
        const std::size_t count = grid_.count();
        if (grid_.points.size() != count * grid_.dimension) {
            throw validation_error("grid point array has wrong size");
        }
        // homogeneous channels: weighted coordinates followed by the weight
        channels_ = grid_.dimension + 1;
        homogeneous_.resize(count * channels_);
        for (std::size_t k = 0; k < count; ++k) {
            const double w = grid_.weights ? (*grid_.weights)[k] : 1.0;
            for (std::size_t c = 0; c < grid_.dimension; ++c) {
                homogeneous_[k * channels_ + c] = w * grid_.points[k * grid_.dimension + c];
            }
            homogeneous_[k * channels_ + grid_.dimension] = w;
        }
        if (grid_.weights) {
            weight_scale_ = detail::max_abs(*grid_.weights);
        }
    }

    Point operator()(const std::vector<double>& u) const {
        if (u.size() != spaces_.size()) {
            throw validation_error("expected " + std::to_string(spaces_.size()) + " parameters, got " +
                                   std::to_string(u.size()));
        }
        std::vector<double> data = homogeneous_;
        auto shape = grid_.shape();
        std::size_t block = channels_;
        // contract the last direction first
        for (std::size_t j = spaces_.size(); j-- > 0;) {
            const auto basis = basis_vector(spaces_[j], u[j]);
            const std::size_t n = shape[j];
            const std::size_t outer = data.size() / (n * block);
            std::vector<double> next(outer * block, 0.0);
            for (std::size_t a = 0; a < outer; ++a) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double b = basis[i];
                    const double* src = &data[(a * n + i) * block];
                    double* dst = &next[a * block];
                    for (std::size_t c = 0; c < block; ++c) {
                        dst[c] += b * src[c];
                    }
                }
            }
            data = std::move(next);
        }
        const double denom = data[grid_.dimension];
        Point out(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(grid_.dimension));
        if (!grid_.weights) {
            return out;
        }
        if (denom <= degenerate_weight * weight_scale_) {
            throw numerical_error("rational surface denominator vanishes");
        }
        for (double& x : out) {
            x /= denom;
        }
        return out;
    }

    const ControlGrid& grid() const noexcept { return grid_; }
    const std::vector<BasisSpace>& spaces() const noexcept { return spaces_; }

private:
    ControlGrid grid_;
    std::vector<BasisSpace> spaces_;
    std::size_t channels_ = 0;
    std::vector<double> homogeneous_;
    double weight_scale_ = 1.0;
};

inline Point evaluate_surface(const ControlGrid& grid, const std::vector<BasisSpace>& spaces,
                              const std::vector<double>& u) {
    return GridEvaluator(grid, spaces)(u);
}

}  // namespace tbasis
