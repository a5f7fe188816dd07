#pragma once

#include <array>
#include <cmath>

namespace cstokes {

// Quadrature on the reference triangle (barycentric coordinates) and the
// reference segment [-1,1]. The triangle rule is the 7-point degree-5 rule,
// the segment rule is 3-point Gauss-Legendre (degree 5). Everything the
// scheme integrates is at most quadratic, so both rules are exact there.

struct TriQuadPoint {
    double l0, l1, l2;  // barycentric coordinates
    double w;           // weight, sums to 1 over the rule
};

inline const std::array<TriQuadPoint, 7>& tri_quadrature() {
    static const std::array<TriQuadPoint, 7> rule = [] {
        const double s15 = std::sqrt(15.0);
        const double a = (6.0 + s15) / 21.0;   // ~0.4701
        const double b = (6.0 - s15) / 21.0;   // ~0.1013
        const double wa = (155.0 + s15) / 1200.0;
        const double wb = (155.0 - s15) / 1200.0;
        std::array<TriQuadPoint, 7> r{};
        r[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0};
        r[1] = {1.0 - 2.0 * a, a, a, wa};
        r[2] = {a, 1.0 - 2.0 * a, a, wa};
        r[3] = {a, a, 1.0 - 2.0 * a, wa};
        r[4] = {1.0 - 2.0 * b, b, b, wb};
        r[5] = {b, 1.0 - 2.0 * b, b, wb};
        r[6] = {b, b, 1.0 - 2.0 * b, wb};
        return r;
    }();
    return rule;
}

struct SegQuadPoint {
    double t;  // in [0,1]
    double w;  // weight, sums to 1
};

inline const std::array<SegQuadPoint, 3>& seg_quadrature() {
    static const std::array<SegQuadPoint, 3> rule = [] {
        const double g = std::sqrt(3.0 / 5.0);
        std::array<SegQuadPoint, 3> r{};
        r[0] = {0.5 * (1.0 - g), 5.0 / 18.0};
        r[1] = {0.5, 8.0 / 18.0};
        r[2] = {0.5 * (1.0 + g), 5.0 / 18.0};
        return r;
    }();
    return rule;
}

}  // namespace cstokes
