#pragma once

// Basis transformation from the normalized B-basis of order n to the
// canonical basis [1, s(u), c(u), s(2u), c(2u), ..., s(nu), c(nu)], where
// (s, c) is (sin, cos) or (sinh, cosh). Row 2k-1 holds the B-basis ordinates
// of s(ku), row 2k those of c(ku).
//
// Built bottom-up from the closed-form first-order matrix. Going from order m
// to m+1, every existing row is order elevated and the two rows of frequency
// m+1 follow from the addition theorems
//   s((m+1)u) = s(mu) c(u) + c(mu) s(u)
//   c((m+1)u) = c(mu) c(u) -/+ s(mu) s(u)
// using the product rule T_{2m,i} T_{2,j} = (t_{2m,i} t_{2,j} / t_{2m+2,i+j}) T_{2m+2,i+j}.

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "bbasis.hpp"

namespace tbasis {

class TransformMatrix {
public:
    TransformMatrix(BasisSpace space, std::vector<double> data) : space_(std::move(space)), data_(std::move(data)) {
        if (data_.size() != size() * size()) {
            throw validation_error("transform matrix data has wrong size");
        }
    }

    const BasisSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.dimension(); }

    double operator()(std::size_t row, std::size_t col) const { return data_[row * size() + col]; }

    std::span<const double> row(std::size_t r) const {
        if (r >= size()) {
            throw validation_error("transform matrix row " + std::to_string(r) + " out of range");
        }
        return std::span<const double>(data_).subspan(r * size(), size());
    }

    /// Ordinates of sin(ku) / sinh(ku), 1 <= k <= n.
    std::span<const double> sine_row(int k) const {
        if (k < 1 || k > space_.order()) {
            throw validation_error("sine row frequency " + std::to_string(k) + " outside [1, " +
                                   std::to_string(space_.order()) + "]");
        }
        return row(static_cast<std::size_t>(2 * k - 1));
    }

    /// Ordinates of cos(ku) / cosh(ku), 0 <= k <= n; k = 0 is the constant row.
    std::span<const double> cosine_row(int k) const {
        if (k < 0 || k > space_.order()) {
            throw validation_error("cosine row frequency " + std::to_string(k) + " outside [0, " +
                                   std::to_string(space_.order()) + "]");
        }
        return row(static_cast<std::size_t>(2 * k));
    }

    const std::vector<double>& data() const noexcept { return data_; }

private:
    BasisSpace space_;
    std::vector<double> data_;
};

namespace detail {

// weight[r][j] multiplies a[r - j] * b[j] when a product of an order-n
// expansion `a` with a first-order expansion `b` is re-expressed at order n+1.
// For fixed r the non-zero weights sum to one.
struct ProductWeights {
    int order = 0;
    std::vector<std::array<double, 3>> weight;
};

inline ProductWeights product_weights(BasisKind kind, int n, const Angle& alpha) {
    const auto lower = unscaled_coefficients(kind, n, alpha);
    const auto first = unscaled_coefficients(kind, 1, alpha);
    const auto upper = unscaled_coefficients(kind, n + 1, alpha);
    ProductWeights w;
    w.order = n;
    w.weight.assign(2 * n + 3, {0.0, 0.0, 0.0});
    for (int r = 0; r <= 2 * n + 2; ++r) {
        for (int j = 0; j <= 2; ++j) {
            const int i = r - j;
            if (i >= 0 && i <= 2 * n) {
                w.weight[r][j] = lower[i] * first[j] / upper[r];
            }
        }
    }
    return w;
}

inline std::vector<double> multiply_first_order(const ProductWeights& w, std::span<const double> a,
                                                const std::array<double, 3>& b) {
    const int n = w.order;
    std::vector<double> out(2 * n + 3, 0.0);
    for (int r = 0; r <= 2 * n + 2; ++r) {
        double acc = 0.0;
        for (int j = 0; j <= 2; ++j) {
            const int i = r - j;
            if (i >= 0 && i <= 2 * n) {
                acc += w.weight[r][j] * a[i] * b[j];
            }
        }
        out[r] = acc;
    }
    return out;
}

inline std::vector<double> elevate_with(const ProductWeights& w, std::span<const double> a) {
    auto out = multiply_first_order(w, a, {1.0, 1.0, 1.0});
    out.front() = a.front();
    out.back() = a.back();
    return out;
}

}  // namespace detail

/// Re-expresses the order-n B-basis ordinates `coeffs` at order n+1.
inline std::vector<double> elevate_coefficient_vector(const BasisSpace& space_n, std::span<const double> coeffs) {
    if (coeffs.size() != space_n.dimension()) {
        throw validation_error("elevate_coefficient_vector: expected " + std::to_string(space_n.dimension()) +
                               " coefficients, got " + std::to_string(coeffs.size()));
    }
    detail::validate_space(space_n.kind(), space_n.order() + 1, space_n.shape());
    return detail::elevate_with(detail::product_weights(space_n.kind(), space_n.order(), space_n.shape()), coeffs);
}

/// Builds the matrix without touching the cache.
inline TransformMatrix build_transform_matrix(const BasisSpace& space) {
    const BasisKind kind = space.kind();
    const Angle& alpha = space.shape();
    const double sign = kind == BasisKind::trigonometric ? -1.0 : 1.0;

    const std::array<double, 3> sine1 = {0.0, detail::kind_tan(kind, alpha.half()), detail::kind_sin(kind, alpha)};
    const std::array<double, 3> cosine1 = {1.0, 1.0, detail::kind_cos(kind, alpha)};

    std::vector<std::vector<double>> rows = {
        {1.0, 1.0, 1.0},
        {sine1.begin(), sine1.end()},
        {cosine1.begin(), cosine1.end()},
    };

    for (int m = 1; m < space.order(); ++m) {
        const auto w = detail::product_weights(kind, m, alpha);
        const std::vector<double>& sine_m = rows[2 * m - 1];
        const std::vector<double>& cosine_m = rows[2 * m];

        auto sine_next = detail::multiply_first_order(w, sine_m, cosine1);
        auto sine_tail = detail::multiply_first_order(w, cosine_m, sine1);
        auto cosine_next = detail::multiply_first_order(w, cosine_m, cosine1);
        auto cosine_tail = detail::multiply_first_order(w, sine_m, sine1);
        for (std::size_t r = 0; r < sine_next.size(); ++r) {
            sine_next[r] += sine_tail[r];
            cosine_next[r] += sign * cosine_tail[r];
        }

        for (auto& row : rows) {
            row = detail::elevate_with(w, row);
        }
        rows.front().assign(2 * m + 3, 1.0);
        rows.push_back(std::move(sine_next));
        rows.push_back(std::move(cosine_next));
    }

    const std::size_t dim = space.dimension();
    std::vector<double> data;
    data.reserve(dim * dim);
    for (const auto& row : rows) {
        data.insert(data.end(), row.begin(), row.end());
    }
    return TransformMatrix(space, std::move(data));
}

namespace detail {

using TransformKey = std::tuple<int, int, std::uint64_t, bool, std::int64_t, std::int64_t>;

inline TransformKey transform_key(const BasisSpace& space) {
    const auto& ratio = space.shape().pi_ratio();
    return {static_cast<int>(space.kind()), space.order(), std::bit_cast<std::uint64_t>(space.alpha()),
            ratio.has_value(), ratio ? ratio->num : 0, ratio ? ratio->den : 1};
}

struct TransformCache {
    std::mutex mutex;
    std::map<TransformKey, std::shared_ptr<const TransformMatrix>> entries;
};

inline TransformCache& transform_cache() {
    static TransformCache cache;
    return cache;
}

}  // namespace detail

/// Memoized per (kind, order, exact bits of alpha). Safe to call concurrently;
/// the returned matrix is immutable.
inline std::shared_ptr<const TransformMatrix> transform_matrix(const BasisSpace& space) {
    auto& cache = detail::transform_cache();
    const auto key = detail::transform_key(space);
    {
        std::lock_guard lock(cache.mutex);
        if (auto it = cache.entries.find(key); it != cache.entries.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const TransformMatrix>(build_transform_matrix(space));
    std::lock_guard lock(cache.mutex);
    return cache.entries.emplace(key, std::move(built)).first->second;
}

}  // namespace tbasis
