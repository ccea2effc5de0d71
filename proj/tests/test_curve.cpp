#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tbasis/curve.hpp"
#include "tbasis/exact.hpp"

using namespace tbasis;
constexpr double pi = std::numbers::pi;

namespace {

// Fixed polygon used for the subdivision and elevation figures (n = 3).
std::vector<Point> figure_polygon() {
    return {{0, 0}, {1, 2}, {3, 3}, {5, 1}, {6, -1}, {8, 0}, {9, 2}};
}

ControlCurve figure_curve() {
    return ControlCurve(BasisSpace(BasisKind::trigonometric, 3, Angle::pi_times(1, 2)), figure_polygon());
}

double max_vertex_distance(const std::vector<Point>& polygon, const std::vector<Point>& dense) {
    double d = 0;
    for (const auto& p : polygon) d = std::max(d, oracle::polyline_distance(p, dense));
    return d;
}

std::vector<Point> dense_sample(const ControlCurve& c, int count) {
    std::vector<Point> out;
    for (int j = 0; j < count; ++j) out.push_back(evaluate(c, c.space.alpha() * j / (count - 1)));
    return out;
}

void bisect(const SubdivisionPiece& piece, int depth, std::vector<SubdivisionPiece>& leaves) {
    if (depth == 0) {
        leaves.push_back(piece);
        return;
    }
    const auto r = split(piece, 0.5 * (piece.u_begin + piece.u_end));
    bisect(r.left, depth - 1, leaves);
    bisect(r.right, depth - 1, leaves);
}

}  // namespace

TEST(Evaluate, SineRowExample) {
    const ControlCurve c(BasisSpace(BasisKind::trigonometric, 1, pi / 2), {{0.0}, {1.0}, {1.0}});
    EXPECT_NEAR(evaluate(c, pi / 4)[0], std::sqrt(2.0) / 2, 1e-15);
    EXPECT_NEAR(evaluate(c, pi / 4)[0], 0.707107, 1e-6);
}

TEST(Evaluate, ConstantsAndEndpoints) {
    const BasisSpace space(BasisKind::hyperbolic, 3, 2.0);
    const ControlCurve constant(space, std::vector<Point>(7, Point{1.5, -2.0, 0.25}));
    for (double u : {0.0, 0.3, 1.0, 2.0}) {
        const auto p = evaluate(constant, u);
        EXPECT_NEAR(p[0], 1.5, 1e-14);
        EXPECT_NEAR(p[1], -2.0, 1e-14);
        EXPECT_NEAR(p[2], 0.25, 1e-14);
    }
    const auto c = figure_curve();
    EXPECT_EQ(evaluate(c, 0.0), c.points.front());
    EXPECT_EQ(evaluate(c, c.space.alpha()), c.points.back());
    EXPECT_THROW(evaluate(c, -0.1), validation_error);
    EXPECT_THROW(evaluate(c, 2.0), validation_error);
}

TEST(Evaluate, Validation) {
    const BasisSpace space(BasisKind::trigonometric, 1, 1.0);
    EXPECT_THROW(ControlCurve(space, {{0, 0}, {1, 1}}), validation_error);
    EXPECT_THROW(ControlCurve(space, {{0, 0}, {1, 1}, {2}}), validation_error);
    EXPECT_THROW(ControlCurve(space, {{0}, {1}, {2}}, std::vector<double>{1, -1, 1}), validation_error);
    EXPECT_THROW(ControlCurve(space, {{0}, {1}, {2}}, std::vector<double>{0, 0, 0}), validation_error);
    EXPECT_THROW(ControlCurve(space, {{0}, {1}, {2}}, std::vector<double>{1, 1}), validation_error);
}

TEST(Evaluate, DegenerateRationalDenominator) {
    const ControlCurve c(BasisSpace(BasisKind::trigonometric, 1, 1.0), {{0}, {1}, {2}}, std::vector<double>{1, 0, 0});
    EXPECT_THROW(evaluate(c, 1.0), numerical_error);
    EXPECT_NEAR(evaluate(c, 0.0)[0], 0.0, 0.0);
}

TEST(Evaluate, AffineInvariance) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-2, 2);
    const auto c = figure_curve();
    const double a00 = d(rng), a01 = d(rng), a10 = d(rng), a11 = d(rng), b0 = d(rng), b1 = d(rng);
    auto map = [&](const Point& p) { return Point{a00 * p[0] + a01 * p[1] + b0, a10 * p[0] + a11 * p[1] + b1}; };
    std::vector<Point> moved;
    for (const auto& p : c.points) moved.push_back(map(p));
    const std::vector<double> w{1, 2, 0.5, 3, 1, 0.25, 2};
    const ControlCurve rational(c.space, c.points, w), moved_rational(c.space, moved, w);
    const ControlCurve image(c.space, moved);
    for (int j = 0; j <= 50; ++j) {
        const double u = c.space.alpha() * j / 50;
        EXPECT_LE(oracle::rel(evaluate(image, u), map(evaluate(c, u))), 1e-13);
        EXPECT_LE(oracle::rel(evaluate(moved_rational, u), map(evaluate(rational, u))), 1e-13);
    }
}

TEST(Evaluate, WeightScaling) {
    const auto c = figure_curve();
    const std::vector<double> w{1, 2, 0.5, 3, 1, 0.25, 2};
    for (double scale : {1e-6, 0.3, 7.0, 1e8}) {
        std::vector<double> ws = w;
        for (double& x : ws) x *= scale;
        const ControlCurve a(c.space, c.points, w), b(c.space, c.points, ws);
        for (int j = 0; j <= 20; ++j) {
            const double u = c.space.alpha() * j / 20;
            EXPECT_LE(oracle::rel(evaluate(b, u), evaluate(a, u)), 1e-12);
        }
    }
}

TEST(Evaluate, ConvexHull) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-5, 5), wd(0.1, 4);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 1 + rep % 4;
        const BasisSpace space(rep % 2 ? BasisKind::hyperbolic : BasisKind::trigonometric, n, 0.5 + 0.1 * rep);
        std::vector<Point> pts;
        std::vector<oracle::P2> p2;
        std::vector<double> w;
        for (int i = 0; i <= 2 * n; ++i) {
            pts.push_back({d(rng), d(rng)});
            p2.push_back({pts.back()[0], pts.back()[1]});
            w.push_back(wd(rng));
        }
        const auto h = oracle::hull(p2);
        const ControlCurve plain(space, pts), rational(space, pts, w);
        for (int j = 0; j <= 100; ++j) {
            const double u = space.alpha() * j / 100;
            for (const auto& c : {plain, rational}) {
                const auto p = evaluate(c, u);
                EXPECT_LE(oracle::outside_distance(h, {p[0], p[1]}), 1e-9);
            }
        }
    }
}

TEST(Reparametrize, Examples) {
    EXPECT_EQ(reparametrize(BasisSpace(BasisKind::trigonometric, 1, Angle::pi_times(1, 2)), pi / 4), 0.5);
    EXPECT_NEAR(reparametrize(BasisSpace(BasisKind::trigonometric, 1, pi / 2), pi / 4), 0.5, 1e-16);
    EXPECT_EQ(reparametrize(BasisSpace(BasisKind::hyperbolic, 2, 3.0), 0.0), 0.0);
    EXPECT_EQ(reparametrize(BasisSpace(BasisKind::hyperbolic, 2, 3.0), 3.0), 1.0);
    const double expected = 0.5 + std::tanh(-0.25) / (2 * std::tanh(0.75));
    EXPECT_NEAR(reparametrize(BasisSpace(BasisKind::hyperbolic, 2, 3.0), 1.0), expected, 1e-15);
    EXPECT_NEAR(expected, 0.307, 1e-3);
    double prev = -1;
    const BasisSpace s(BasisKind::trigonometric, 1, 2.5);
    for (int j = 0; j <= 100; ++j) {
        const double v = reparametrize(s, 2.5 * j / 100);
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_THROW(reparametrize(s, 2.6), validation_error);
}

TEST(Reparametrize, TurnsBasisIntoRationalBernstein) {
    for (bool hyp : {false, true}) {
        const BasisSpace space(hyp ? BasisKind::hyperbolic : BasisKind::trigonometric, 3, 1.7);
        const auto w = bezier_weights(space);
        for (int j = 1; j < 20; ++j) {
            const double u = 1.7 * j / 20;
            const double v = reparametrize(space, u);
            std::vector<double> b(7);
            double denom = 0;
            for (int i = 0; i <= 6; ++i) denom += b[i] = w[i] * oracle::bernstein(6, i, v);
            const auto t = basis_vector(space, u);
            for (int i = 0; i <= 6; ++i) EXPECT_NEAR(b[i] / denom, t[i], 1e-13);
        }
    }
}

TEST(BezierWeights, Examples) {
    const auto w = bezier_weights(BasisSpace(BasisKind::trigonometric, 1, pi / 2));
    EXPECT_NEAR(w[0], 2.0, 1e-14);
    EXPECT_NEAR(w[1], std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(w[2], 2.0, 1e-14);
    for (int n = 1; n <= 6; ++n) {
        const double alpha = 1e-5;
        const auto wn = bezier_weights(BasisSpace(BasisKind::trigonometric, n, alpha));
        for (int i = 0; i <= 2 * n; ++i) {
            EXPECT_GT(wn[i], 0.0);
            EXPECT_NEAR(wn[i], wn[2 * n - i], 1e-12 * wn[i]);
            EXPECT_NEAR(wn[i] * std::pow(std::sin(alpha / 2), 2 * n), 1.0, 1e-3);
        }
    }
}

TEST(Subdivide, FigureSetup) {
    const auto c = figure_curve();
    const auto r = subdivide(c, pi / 4);
    EXPECT_EQ(r.split_ratio, 0.5);
    EXPECT_EQ(r.left.points.back(), r.right.points.front());
    const auto apex = evaluate(c, pi / 4);
    EXPECT_LE(oracle::rel(r.left.points.back(), apex), 1e-14);
    for (int j = 0; j < 50; ++j) {
        const double ul = (pi / 4) * j / 49;
        const double ur = pi / 4 + (pi / 4) * j / 49;
        EXPECT_LE(oracle::rel(evaluate(r.left, ul), evaluate(c, ul)), 1e-10);
        EXPECT_LE(oracle::rel(evaluate(r.right, ur), evaluate(c, ur)), 1e-10);
    }
    EXPECT_TRUE(weights_match_subspace(r.left));
    EXPECT_TRUE(weights_match_subspace(r.right));
    EXPECT_EQ(r.corner_ratios.size(), 6u);
}

TEST(Subdivide, AsymmetricAndHyperbolicAndRational) {
    const ControlCurve h(BasisSpace(BasisKind::hyperbolic, 3, 2.5), figure_polygon());
    const ControlCurve q(BasisSpace(BasisKind::trigonometric, 3, 2.0), figure_polygon(),
                         std::vector<double>{1, 3, 0.5, 2, 1, 0.2, 1});
    for (const auto& c : {h, q}) {
        for (double f : {0.1, 0.37, 0.8}) {
            const double u0 = f * c.space.alpha();
            const auto r = subdivide(c, u0);
            for (int j = 0; j < 50; ++j) {
                const double ul = u0 * j / 49;
                const double ur = u0 + (c.space.alpha() - u0) * j / 49;
                EXPECT_LE(oracle::rel(evaluate(r.left, ul), evaluate(c, ul)), 1e-10);
                EXPECT_LE(oracle::rel(evaluate(r.right, ur), evaluate(c, ur)), 1e-10);
            }
        }
    }
}

TEST(Subdivide, SymmetricPolygonMirrors) {
    const BasisSpace space(BasisKind::trigonometric, 2, 1.8);
    const std::vector<Point> pts{{-2, 0}, {-1, 1.5}, {0, 2}, {1, 1.5}, {2, 0}};
    const auto r = subdivide(ControlCurve(space, pts), 0.9);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = r.left.points[i];
        const auto& b = r.right.points[pts.size() - 1 - i];
        EXPECT_NEAR(a[0], -b[0], 1e-13);
        EXPECT_NEAR(a[1], b[1], 1e-13);
        EXPECT_NEAR(r.left.weights[i], r.right.weights[pts.size() - 1 - i], 1e-13);
    }
}

TEST(Subdivide, SmallAlphaRatiosAreConstant) {
    const double alpha = 1e-4;
    const ControlCurve c(BasisSpace(BasisKind::trigonometric, 3, alpha), figure_polygon());
    const double u0 = 0.3 * alpha;
    const auto r = subdivide(c, u0);
    for (const auto& level : r.corner_ratios) {
        for (double ratio : level) EXPECT_NEAR(ratio, r.split_ratio, 1e-3);
    }
    EXPECT_NEAR(r.split_ratio, 0.3, 1e-3);
}

TEST(Subdivide, RecursiveBisectionConverges) {
    for (int n = 1; n <= 4; ++n) {
        std::vector<Point> pts;
        for (int i = 0; i <= 2 * n; ++i) pts.push_back({std::cos(1.3 * i) * (i + 1), std::sin(0.7 * i) * 3});
        const ControlCurve c(BasisSpace(BasisKind::trigonometric, n, 2.0), pts);
        std::vector<SubdivisionPiece> leaves;
        bisect(as_piece(c), 5, leaves);
        ASSERT_EQ(leaves.size(), 32u);
        std::vector<Point> polyline;
        for (const auto& leaf : leaves) {
            for (std::size_t i = polyline.empty() ? 0 : 1; i < leaf.points.size(); ++i) polyline.push_back(leaf.points[i]);
        }
        const auto dense = dense_sample(c, 2001);
        double diameter = 0;
        for (const auto& a : dense) {
            for (const auto& b : dense) diameter = std::max(diameter, std::hypot(a[0] - b[0], a[1] - b[1]));
        }
        EXPECT_LE(oracle::hausdorff(polyline, dense), 1e-3 * diameter) << n;
    }
}

TEST(Subdivide, Validation) {
    const auto c = figure_curve();
    EXPECT_THROW(subdivide(c, 0.0), validation_error);
    EXPECT_THROW(subdivide(c, pi / 2), validation_error);
    EXPECT_THROW(subdivide(c, 3.0), validation_error);
}

TEST(Elevate, Invariance) {
    const auto c = figure_curve();
    const auto dense = dense_sample(c, 2001);
    const double d0 = max_vertex_distance(c.points, dense);
    for (int z = 1; z <= 10; ++z) {
        const auto e = elevate(c, z);
        ASSERT_EQ(e.points.size(), static_cast<std::size_t>(2 * (3 + z) + 1));
        EXPECT_EQ(e.points.front(), c.points.front());
        EXPECT_EQ(e.points.back(), c.points.back());
        for (int j = 0; j < 100; ++j) {
            const double u = c.space.alpha() * j / 99;
            EXPECT_LE(oracle::rel(evaluate(e, u), evaluate(c, u)), 1e-12);
        }
    }
    EXPECT_LT(max_vertex_distance(elevate(c, 10).points, dense), d0);
}

TEST(Elevate, ConstantAndRational) {
    const BasisSpace space(BasisKind::hyperbolic, 2, 1.5);
    const auto e = elevate(ControlCurve(space, std::vector<Point>(5, Point{3.0})), 4);
    ASSERT_EQ(e.points.size(), 13u);
    for (const auto& p : e.points) EXPECT_NEAR(p[0], 3.0, 1e-14);

    const ControlCurve q(space, {{0, 0}, {1, 2}, {2, 0}, {3, 1}, {4, 0}}, std::vector<double>{1, 4, 0.5, 2, 1});
    const auto qe = elevate(q, 3);
    ASSERT_TRUE(qe.rational());
    for (int j = 0; j < 100; ++j) {
        const double u = 1.5 * j / 99;
        EXPECT_LE(oracle::rel(evaluate(qe, u), evaluate(q, u)), 1e-12);
    }
    EXPECT_THROW(elevate(q, 0), validation_error);
    EXPECT_THROW(elevate(ControlCurve(BasisSpace(BasisKind::trigonometric, 30, 1.0), std::vector<Point>(61, Point{0})), 3),
                 validation_error);
}
