#pragma once

// Direct evaluation of specs written independently of the library kernels;
// only the plain data types are shared.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tbasis/exact.hpp"
#include "tbasis/surface.hpp"

namespace direct {

inline double term(const tbasis::Term& t, double u, int r = 0) {
    using tbasis::Family;
    const double k = t.frequency;
    const double x = k * u + t.phase.radians();
    double f = 0;
    switch (t.family) {
        case Family::cos: {
            const double v[4] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
            f = v[r % 4];
            break;
        }
        case Family::sin: {
            const double v[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
            f = v[r % 4];
            break;
        }
        case Family::cosh: f = r % 2 ? std::sinh(x) : std::cosh(x); break;
        case Family::sinh: f = r % 2 ? std::cosh(x) : std::sinh(x); break;
    }
    return t.amplitude * (r == 0 ? 1.0 : std::pow(k, r)) * f;
}

inline double function(const tbasis::CoordinateFunction& c, double u, int r = 0) {
    double s = 0;
    for (const auto& t : c.terms) s += term(t, u, r);
    return s;
}

inline std::vector<double> curve(const tbasis::CurveSpec& spec, double u, int r = 0) {
    std::vector<double> p;
    for (const auto& c : spec.coords) p.push_back(function(c, u, r));
    return p;
}

inline std::vector<double> surface(const tbasis::SurfaceSpec& spec, const std::vector<double>& u,
                                   const std::vector<int>& derivs = {}) {
    std::vector<double> p;
    for (const auto& c : spec.coords) {
        double s = 0;
        for (const auto& summand : c.summands) {
            double prod = 1;
            for (std::size_t j = 0; j < u.size(); ++j) prod *= function(summand.factors[j], u[j], derivs.empty() ? 0 : derivs[j]);
            s += prod;
        }
        p.push_back(s);
    }
    return p;
}

/// First coordinates divided by the last.
inline std::vector<double> project(std::vector<double> p) {
    const double w = p.back();
    p.pop_back();
    for (double& x : p) x /= w;
    return p;
}

inline std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace direct
