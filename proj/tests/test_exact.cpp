#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "direct.hpp"
#include "oracles.hpp"
#include "tbasis/exact.hpp"

using namespace tbasis;
constexpr double pi = std::numbers::pi;

namespace {

Point direct_point(const CurveSpec& spec, double u, int r = 0) { return direct::curve(spec, u, r); }

Term term(Family f, int k, double a, Angle phase = Angle(0.0)) { return {f, k, a, phase}; }

CurveSpec hypocycloid() {
    const Angle ph = Angle::pi_times(-1, 3);
    return {BasisKind::trigonometric,
            Angle::pi_times(3, 4),
            {{{term(Family::cos, 1, 4, ph), term(Family::cos, 4, 1, ph)}},
             {{term(Family::sin, 1, 4, ph), term(Family::sin, 4, -1, ph)}}}};
}

CurveSpec lemniscate() {
    return {BasisKind::trigonometric,
            Angle::pi_times(2, 3),
            {{{term(Family::cos, 1, 1)}},
             {{term(Family::sin, 2, 0.5)}},
             {{term(Family::cos, 0, 1.5), term(Family::cos, 2, -0.5)}}}};
}

CurveSpec random_spec(std::mt19937_64& rng, bool hyp, int& order) {
    std::uniform_int_distribution<int> n_d(1, 6), terms_d(1, 4), dim_d(1, 3);
    std::uniform_real_distribution<double> amp(-2, 2), phase(-pi, pi), alpha_d(0.2, hyp ? 2.5 : 3.0);
    order = n_d(rng);
    CurveSpec spec{hyp ? BasisKind::hyperbolic : BasisKind::trigonometric, Angle(alpha_d(rng)), {}};
    const int dim = dim_d(rng);
    for (int l = 0; l < dim; ++l) {
        CoordinateFunction f;
        const int count = terms_d(rng);
        for (int j = 0; j < count; ++j) {
            const bool cosine = rng() % 2;
            const Family fam = hyp ? (cosine ? Family::cosh : Family::sinh) : (cosine ? Family::cos : Family::sin);
            // hyperbolic phases kept modest so values stay unit scale
            const double ph = hyp ? phase(rng) / 3 : phase(rng);
            f.terms.push_back(term(fam, std::uniform_int_distribution<int>(0, order)(rng), amp(rng), Angle(ph)));
        }
        spec.coords.push_back(f);
    }
    return spec;
}

double reconstruction_error(const CurveSpec& spec, const ControlCurve& c, int r, int samples) {
    double worst = 0;
    for (int j = 0; j < samples; ++j) {
        const double u = c.space.alpha() * j / (samples - 1);
        worst = std::max(worst, oracle::rel(evaluate(c, u), direct_point(spec, u, r)));
    }
    return worst;
}

}  // namespace

TEST(MinOrder, Examples) {
    EXPECT_EQ(min_order(hypocycloid()), 4);
    const CurveSpec knot{BasisKind::trigonometric,
                         Angle::pi_times(1, 2),
                         {{{term(Family::cos, 1, 0.5), term(Family::cos, 3, 2), term(Family::cos, 5, 0.5)}},
                          {{term(Family::sin, 2, 1)}}}};
    EXPECT_EQ(min_order(knot), 5);
    EXPECT_EQ(min_order(CurveSpec{BasisKind::trigonometric, Angle(1.0), {{{term(Family::cos, 0, 3)}}}}), 1);
    EXPECT_THROW(min_order(CurveSpec{BasisKind::trigonometric, Angle(1.0), {}}), validation_error);
}

TEST(ExactCurve, SineExample) {
    for (double alpha : {0.5, 1.5, 2.9}) {
        const CurveSpec spec{BasisKind::trigonometric, Angle(alpha), {{{term(Family::sin, 1, 1)}}}};
        const auto c = exact_curve(spec, 1);
        EXPECT_NEAR(c.points[0][0], 0.0, 1e-15);
        EXPECT_NEAR(c.points[1][0], std::tan(alpha / 2), 1e-14);
        EXPECT_NEAR(c.points[2][0], std::sin(alpha), 1e-15);
    }
}

TEST(ExactCurve, HyperbolicArc) {
    const CurveSpec spec{BasisKind::hyperbolic, Angle(3.0), {{{term(Family::cosh, 1, 1, Angle(-1.5))}}}};
    const auto c = exact_curve(spec, 1);
    for (int j = 0; j < 100; ++j) {
        const double u = 3.0 * j / 99;
        EXPECT_LE(std::abs(evaluate(c, u)[0] - std::cosh(u - 1.5)) / (1 + std::cosh(u - 1.5)), 1e-12);
    }
}

TEST(ExactCurve, HypocycloidAndDerivatives) {
    const auto spec = hypocycloid();
    for (int n = 4; n <= 6; ++n) {
        for (int r = 0; r <= 2; ++r) EXPECT_LE(reconstruction_error(spec, exact_curve(spec, n, r), r, 1000), 1e-10);
    }
    // finite differences of the reconstructed curve itself
    const auto c0 = exact_curve(spec, 4);
    const auto c1 = exact_curve(spec, 4, 1);
    const auto c2 = exact_curve(spec, 4, 2);
    for (int j = 1; j < 50; ++j) {
        const double u = spec.alpha.radians() * j / 50;
        for (int l = 0; l < 2; ++l) {
            auto f = [&](double x) { return evaluate(c0, x)[l]; };
            EXPECT_NEAR(oracle::derivative(f, u, 1, 1e-3), evaluate(c1, u)[l], 1e-6);
            EXPECT_NEAR(oracle::derivative(f, u, 2, 1e-3), evaluate(c2, u)[l], 1e-5);
        }
    }
}

TEST(ExactCurve, ConstantTermsAndZeroPower) {
    const CurveSpec spec{BasisKind::trigonometric, Angle(1.0), {{{term(Family::cos, 0, 2.5), term(Family::sin, 0, 7)}}}};
    const auto c = exact_curve(spec, 2);
    for (const auto& p : c.points) EXPECT_NEAR(p[0], 2.5, 1e-14);
    for (const auto& p : exact_curve(spec, 2, 1).points) EXPECT_EQ(p[0], 0.0);
    const CurveSpec hyp{BasisKind::hyperbolic, Angle(1.0), {{{term(Family::cosh, 0, 2.0, Angle(0.5))}}}};
    for (const auto& p : exact_curve(hyp, 1).points) EXPECT_NEAR(p[0], 2 * std::cosh(0.5), 1e-14);
}

TEST(ExactCurve, DuplicateTermsAdd) {
    const CurveSpec twice{BasisKind::trigonometric, Angle(2.0), {{{term(Family::cos, 2, 1.5), term(Family::cos, 2, 0.5)}}}};
    const CurveSpec once{BasisKind::trigonometric, Angle(2.0), {{{term(Family::cos, 2, 2.0)}}}};
    const auto a = exact_curve(twice, 3);
    const auto b = exact_curve(once, 3);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_NEAR(a.points[i][0], b.points[i][0], 1e-13);
}

TEST(ExactCurve, Validation) {
    const auto spec = hypocycloid();
    EXPECT_THROW(exact_curve(spec, 3), validation_error);
    EXPECT_THROW(exact_curve(spec, 4, -1), validation_error);
    const CurveSpec mixed{BasisKind::trigonometric, Angle(1.0), {{{term(Family::cosh, 1, 1)}}}};
    try {
        exact_curve(mixed, 1);
        FAIL();
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("coords[0].terms[0]"), std::string::npos) << e.what();
    }
    const CurveSpec negative{BasisKind::trigonometric, Angle(1.0), {{{term(Family::cos, -1, 1)}}}};
    EXPECT_THROW(exact_curve(negative, 1), validation_error);
    const CurveSpec nan{BasisKind::trigonometric, Angle(1.0), {{{term(Family::cos, 1, std::nan(""))}}}};
    EXPECT_THROW(exact_curve(nan, 1), validation_error);
}

TEST(ExactCurve, RandomSpecsBothKinds) {
    std::mt19937_64 rng(2024);
    for (bool hyp : {false, true}) {
        for (int rep = 0; rep < 60; ++rep) {
            int n = 0;
            const auto spec = random_spec(rng, hyp, n);
            for (int r = 0; r <= 2; ++r) {
                EXPECT_LE(reconstruction_error(spec, exact_curve(spec, n, r), r, 200), 1e-10) << rep << " r=" << r;
                const auto via = exact_curve(r == 0 ? spec : differentiate(spec), n, r == 0 ? 0 : r - 1);
                const auto with = exact_curve(spec, n, r);
                for (std::size_t i = 0; i < via.points.size(); ++i) {
                    EXPECT_LE(oracle::rel(via.points[i], with.points[i]), 1e-12);
                }
            }
        }
    }
}

TEST(ExactCurve, ExactPhaseDifferentiation) {
    const Term t = term(Family::sin, 3, 2.0, Angle::pi_times(1, 4));
    const auto d = differentiate(CoordinateFunction{{t}});
    ASSERT_EQ(d.terms.size(), 1u);
    EXPECT_EQ(d.terms[0].amplitude, 6.0);
    EXPECT_EQ(d.terms[0].phase.pi_ratio(), (PiRatio{3, 4}));
    const auto h = differentiate(CoordinateFunction{{term(Family::cosh, 2, 1.0), term(Family::sinh, 0, 5.0)}});
    ASSERT_EQ(h.terms.size(), 1u);
    EXPECT_EQ(h.terms[0].family, Family::sinh);
}

TEST(Canonical, Rotation) {
    const CoordinateFunction f{{term(Family::cos, 2, 3.0, Angle::pi_times(1, 2))}};
    const auto c = canonical_coefficients(f, BasisKind::trigonometric, 2, 0);
    // 3 cos(2u + pi/2) = -3 sin(2u)
    EXPECT_EQ(c.cosine[2], 0.0);
    EXPECT_EQ(c.sine[2], -3.0);
    const auto d = canonical_coefficients(f, BasisKind::trigonometric, 2, 1);
    // derivative: -6 cos(2u)
    EXPECT_EQ(d.cosine[2], -6.0);
    EXPECT_EQ(d.sine[2], 0.0);
}

TEST(Rational, DenominatorOneMatchesPolynomial) {
    const auto base = hypocycloid();
    CurveSpec spec = base;
    spec.coords.push_back({{term(Family::cos, 0, 1.0)}});
    const auto r = exact_rational_curve(spec, 4);
    const auto c = exact_curve(base, 4);
    EXPECT_EQ(r.elevations_performed, 0);
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        EXPECT_NEAR(r.weights[i], 1.0, 1e-14);
        EXPECT_LE(oracle::rel(r.projected_points[i], c.points[i]), 1e-13);
    }
}

TEST(Rational, Lemniscate) {
    const auto spec = lemniscate();
    for (int n = 2; n <= 4; ++n) {
        const auto r = exact_rational_curve(spec, n);
        EXPECT_EQ(r.elevations_performed, 0);
        EXPECT_EQ(r.order_used, n);
        ASSERT_EQ(r.preimage_points.size(), static_cast<std::size_t>(2 * n + 1));
        for (std::size_t i = 0; i < r.weights.size(); ++i) {
            EXPECT_GT(r.weights[i], 0.0);
            EXPECT_EQ(r.weights[i], r.preimage_points[i].back());
            for (std::size_t c = 0; c < 2; ++c) {
                EXPECT_NEAR(r.preimage_points[i][c], r.weights[i] * r.projected_points[i][c],
                            1e-12 * std::max(1.0, std::abs(r.preimage_points[i][c])));
            }
        }
        const auto curve = r.curve();
        for (int j = 0; j < 1000; ++j) {
            const double u = curve.space.alpha() * j / 999;
            const auto p = direct_point(spec, u);
            EXPECT_LE(oracle::rel(evaluate(curve, u), {p[0] / p[2], p[1] / p[2]}), 1e-10);
        }
    }
}

TEST(Rational, ElevationRepairsNegativeWeights) {
    // denominator 1.05 - cos(u - alpha/2) is positive but dips close to zero
    const double alpha = 2.5;
    const CurveSpec spec{BasisKind::trigonometric,
                         Angle(alpha),
                         {{{term(Family::cos, 1, 1)}},
                          {{term(Family::sin, 1, 1)}},
                          {{term(Family::cos, 0, 1.05), term(Family::cos, 1, -1, Angle(-alpha / 2))}}}};
    const auto initial = exact_curve(spec, 1);
    bool negative = false;
    for (const auto& p : initial.points) negative = negative || p[2] <= 0;
    ASSERT_TRUE(negative);

    const auto r = exact_rational_curve(spec, 1);
    EXPECT_GT(r.elevations_performed, 0);
    EXPECT_EQ(r.order_used, 1 + r.elevations_performed);
    for (double w : r.weights) EXPECT_GT(w, weight_threshold);
    const auto curve = r.curve();
    for (int j = 0; j < 1000; ++j) {
        const double u = alpha * j / 999;
        const auto p = direct_point(spec, u);
        EXPECT_LE(oracle::rel(evaluate(curve, u), {p[0] / p[2], p[1] / p[2]}), 1e-9);
    }

    try {
        exact_rational_curve(spec, 1, r.elevations_performed - 1);
        FAIL();
    } catch (const positivity_error& e) {
        EXPECT_FALSE(e.offending().empty());
        EXPECT_NE(std::string(e.what()).find("offending"), std::string::npos);
    }
}

TEST(Rational, Errors) {
    const double alpha = 2.5;
    const CurveSpec vanishing{BasisKind::trigonometric,
                              Angle(alpha),
                              {{{term(Family::cos, 1, 1)}}, {{term(Family::cos, 0, 0.5), term(Family::cos, 1, 1)}}}};
    EXPECT_THROW(exact_rational_curve(vanishing, 1), numerical_error);
    const CurveSpec single{BasisKind::trigonometric, Angle(alpha), {{{term(Family::cos, 0, 1)}}}};
    EXPECT_THROW(exact_rational_curve(single, 1), validation_error);
    EXPECT_THROW(exact_rational_curve(lemniscate(), 2, -1), validation_error);
}
