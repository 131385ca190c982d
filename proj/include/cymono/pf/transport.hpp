#pragma once

/**
 * @file transport.hpp
 * @brief Transport of a fundamental solution matrix along closed loops.
 *
 * A loop based at phi0 around a center c runs along the ray from phi0 to the
 * circle |phi - c| = r, once around the circle, and back along the same ray.
 * The fundamental matrix Phi (Phi(phi0) = Id) is carried along with an
 * adaptive Dormand-Prince 5(4) scheme; the value after the loop is the
 * monodromy in the phi0 frame.
 *
 * Error model: after the adaptive pass, the accepted step sequence is
 * replayed with every step halved. The returned matrix is the refined one and
 * err is the operator-norm (bounded by Frobenius) discrepancy between the two
 * passes.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cymono/pf/ode.hpp"

namespace cymono::pf {

enum class Orientation { CounterClockwise, Clockwise };

struct PathSpec {
    Complex base{0.5, 0.25};
    Complex center{0.0, 0.0};
    double radius = 0.45;
    int min_steps = 2000;  // lower bound on adaptive steps over the whole path
    Orientation orientation = Orientation::CounterClockwise;
};

inline constexpr double kSingularMargin = 0.1;

struct ComplexMat4Estimate {
    CMat4 value = CMat4::Identity();
    double err = 0.0;        // step-doubling discrepancy
    double det_drift = 0.0;  // max |det Phi(phi) (1 - phi)^2 / (1 - phi0)^2 - 1| along the path
    int steps = 0;           // accepted adaptive steps
};

namespace detail {

inline double distance_to_segment(Complex s, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(s - a);
    const double t = std::clamp(std::real((s - a) * std::conj(ab)) / len2, 0.0, 1.0);
    return std::abs(s - (a + t * ab));
}

// One smooth piece phi(t), t in [0, length], parameterised by arc length.
struct Piece {
    enum Kind { Segment, Arc } kind;
    Complex from, to;        // Segment
    Complex center;          // Arc
    double radius = 0, start_angle = 0, sweep = 0;
    double length = 0;

    Complex point(double t) const {
        if (kind == Segment) return from + (to - from) * (length > 0 ? t / length : 0.0);
        return center + std::polar(radius, start_angle + sweep * t / length);
    }
    Complex velocity(double t) const {
        if (kind == Segment) return length > 0 ? (to - from) / length : Complex{};
        const double ang = start_angle + sweep * t / length;
        return Complex(0.0, sweep / length) * std::polar(radius, ang);
    }
};

inline std::vector<Piece> pieces(const PathSpec& path) {
    const Complex offset = path.base - path.center;
    if (path.radius == 0.0) return {};
    if (std::abs(offset) == 0.0) throw std::invalid_argument("PathSpec: base point coincides with loop center");
    const Complex on_circle = path.center + path.radius * offset / std::abs(offset);
    const double sweep = (path.orientation == Orientation::CounterClockwise ? 2.0 : -2.0) * std::numbers::pi;
    const double seg = std::abs(on_circle - path.base);
    return {
        {Piece::Segment, path.base, on_circle, {}, 0, 0, 0, seg},
        {Piece::Arc, {}, {}, path.center, path.radius, std::arg(offset), sweep, path.radius * std::abs(sweep)},
        {Piece::Segment, on_circle, path.base, {}, 0, 0, 0, seg},
    };
}

}  // namespace detail

/// Smallest distance from the path to the finite singular points 0 and 1.
inline double singular_clearance(const PathSpec& path) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex s : {Complex(0, 0), Complex(1, 0)}) {
        best = std::min(best, std::abs(s - path.base));
        for (const auto& pc : detail::pieces(path)) {
            const double d = pc.kind == detail::Piece::Segment ? detail::distance_to_segment(s, pc.from, pc.to)
                                                                : std::abs(std::abs(s - pc.center) - pc.radius);
            best = std::min(best, d);
        }
    }
    return best;
}

/// Loop of the given radius around phi = 0 or phi = 1 from `base`.
inline PathSpec loop_around(Complex center, Complex base = {0.5, 0.25}, double radius = 0.45) {
    PathSpec p;
    p.base = base;
    p.center = center;
    p.radius = radius;
    return p;
}

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
    static constexpr double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
    static constexpr double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100,
                                     1.0 / 40};
};

struct StepResult {
    CMat4 high;
    CMat4 error;
};

template <class Rhs>
StepResult dp_step(const Rhs& rhs, double t, const CMat4& y, double h) {
    using DP = DormandPrince;
    CMat4 k[7];
    for (int s = 0; s < 7; ++s) {
        CMat4 ys = y;
        for (int j = 0; j < s; ++j)
            if (DP::a[s][j] != 0.0) ys += h * DP::a[s][j] * k[j];
        k[s] = rhs(t + DP::c[s] * h, ys);
    }
    StepResult r{y, CMat4::Zero()};
    for (int s = 0; s < 7; ++s) {
        r.high += h * DP::b5[s] * k[s];
        r.error += h * (DP::b5[s] - DP::b4[s]) * k[s];
    }
    return r;
}

inline bool finite(const CMat4& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

}  // namespace detail

/// Transports the identity around `path`.
/// @throws std::invalid_argument for tol < 1e-13 or a path closer than
///         kSingularMargin to a singular point.
/// @throws std::runtime_error on step-size collapse or non-finite values.
inline ComplexMat4Estimate integrate_path(const ODEParams& params, const PathSpec& path, double tol) {
    if (!(tol >= 1e-13)) throw std::invalid_argument("integrate_path: tol must be >= 1e-13");
    if (path.radius < 0.0) throw std::invalid_argument("integrate_path: negative radius");
    if (path.radius > 0.0 && singular_clearance(path) < kSingularMargin)
        throw std::invalid_argument("integrate_path: path passes within 0.1 of a singular point");

    const auto parts = detail::pieces(path);
    double total = 0.0;
    for (const auto& pc : parts) total += pc.length;
    ComplexMat4Estimate out;
    if (parts.empty() || total == 0.0) return out;

    const double h_max = total / std::max(1, path.min_steps);
    const Complex one_minus_base = 1.0 - path.base;

    CMat4 coarse = CMat4::Identity(), fine = CMat4::Identity();
    for (const auto& pc : parts) {
        auto rhs = [&](double t, const CMat4& y) -> CMat4 {
            const Complex phi = pc.point(t);
            return pc.velocity(t) * (connection_matrix(params, phi) * y);
        };
        double t = 0.0;
        double h = std::min(h_max, pc.length / 16);
        while (pc.length - t > 1e-13 * pc.length) {
            h = std::min(h, pc.length - t);
            if (h < 1e-14 * std::max(1.0, pc.length)) throw std::runtime_error("integrate_path: step size collapsed");
            const auto step = detail::dp_step(rhs, t, coarse, h);
            const double scale = tol * (1.0 + std::max(coarse.cwiseAbs().maxCoeff(), step.high.cwiseAbs().maxCoeff()));
            const double ratio = step.error.cwiseAbs().maxCoeff() / scale;
            if (!std::isfinite(ratio) || !detail::finite(step.high))
                throw std::runtime_error("integrate_path: non-finite values");
            if (ratio <= 1.0) {
                // Replay the accepted step as two half steps.
                const double half = h / 2;
                fine = detail::dp_step(rhs, t, fine, half).high;
                fine = detail::dp_step(rhs, t + half, fine, half).high;
                coarse = step.high;
                t += h;
                ++out.steps;
                const Complex phi = pc.point(t);
                const Complex abel = (1.0 - phi) * (1.0 - phi) / (one_minus_base * one_minus_base);
                out.det_drift = std::max(out.det_drift, std::abs(fine.determinant() * abel - 1.0));
            }
            const double grow = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
            h = std::min(h_max, h * grow);
        }
    }
    if (!detail::finite(fine)) throw std::runtime_error("integrate_path: non-finite values");
    out.value = fine;
    out.err = (fine - coarse).norm();
    return out;
}

}  // namespace cymono::pf
