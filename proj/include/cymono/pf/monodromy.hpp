#pragma once

// Numerical monodromy of the Picard-Fuchs system compared with the integer
// generators through conjugation-invariant data.

#include <array>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "cymono/family_catalog.hpp"
#include "cymono/pf/transport.hpp"

namespace cymono::pf {

using ComplexCharpoly = std::array<Complex, 5>;  // x^4 first, constant last

/// Faddeev-LeVerrier in complex arithmetic.
inline ComplexCharpoly charpoly(const CMat4& a) {
    ComplexCharpoly c{};
    c[0] = 1.0;
    CMat4 mk = CMat4::Zero();
    for (int k = 1; k <= 4; ++k) {
        mk = a * mk + c[static_cast<std::size_t>(k - 1)] * CMat4::Identity();
        c[static_cast<std::size_t>(k)] = -(a * mk).trace() / static_cast<double>(k);
    }
    return c;
}

inline ComplexCharpoly to_complex(const IntCharpoly& p) {
    ComplexCharpoly c{};
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i].convert_to<double>();
    return c;
}

inline double max_deviation(const ComplexCharpoly& a, const ComplexCharpoly& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// First-order bound on charpoly coefficient error when `a` carries an
/// error of Frobenius norm `err`: coefficient k moves by at most
/// C(4,k) k |a|^(k-1) err.
inline double charpoly_error_bound(const CMat4& a, double err) {
    const double n = std::max(1.0, a.norm());
    const double binom[5] = {1, 4, 6, 4, 1};
    double bound = 0.0;
    for (int k = 1; k <= 4; ++k) bound = std::max(bound, binom[k] * k * std::pow(n, k - 1) * err);
    return bound;
}

/// Singular values, descending.
inline Eigen::Vector4d singular_values(const CMat4& a) { return Eigen::JacobiSVD<CMat4>(a).singularValues(); }

/// Number of singular values above rel * (largest singular value).
inline int numeric_rank(const CMat4& a, double rel) {
    const auto s = singular_values(a);
    if (s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < 4; ++i)
        if (s(i) > rel * s(0)) ++r;
    return r;
}

struct LoopInvariants {
    std::string loop;  // "0", "1" or "inf"
    ComplexCharpoly charpoly_numeric{};
    IntCharpoly charpoly_integer{};
    std::string matched;  // "matrix" or "inverse": which integer charpoly was closer
    double max_dev = 0.0;
    double err = 0.0;
    bool pass = false;
    CMat4 numeric = CMat4::Identity();
};

struct InvariantOptions {
    double tol = 1e-4;         // acceptance on charpoly coefficients
    double local_tol = 1e-10;  // integrator tolerance
    Complex base{0.5, 0.25};
    double radius = 0.45;
    int min_steps = 2000;
};

struct InvariantReport {
    FamilyParams family;
    std::vector<LoopInvariants> loops;

    bool pass() const {
        for (const auto& l : loops)
            if (!l.pass) return false;
        return !loops.empty();
    }
};

namespace detail {

inline LoopInvariants compare_loop(std::string name, const CMat4& numeric, double err, const IntMat4& integer,
                                   double tol) {
    LoopInvariants out;
    out.loop = std::move(name);
    out.numeric = numeric;
    out.err = err;
    out.charpoly_numeric = charpoly(numeric);
    const IntCharpoly direct = cymono::charpoly(integer);
    const IntCharpoly inverse = cymono::charpoly(mat_inverse(integer));
    const double dev_direct = max_deviation(out.charpoly_numeric, to_complex(direct));
    const double dev_inverse = max_deviation(out.charpoly_numeric, to_complex(inverse));
    if (dev_direct <= dev_inverse) {
        out.matched = "matrix";
        out.charpoly_integer = direct;
        out.max_dev = dev_direct;
    } else {
        out.matched = "inverse";
        out.charpoly_integer = inverse;
        out.max_dev = dev_inverse;
    }
    out.pass = out.max_dev <= tol;
    return out;
}

}  // namespace detail

/// Loops around 0 and 1 (run concurrently), and the loop around infinity as
/// the reversed composite (loop 0 then loop 1)^-1. Each numeric matrix is
/// compared with the integer M0, M1, M_inf (or its inverse, whichever
/// characteristic polynomial is closer).
inline InvariantReport compare_invariants(const FamilyParams& f, const InvariantOptions& opt = {}) {
    const ODEParams params(f);
    auto run = [&](Complex center) {
        PathSpec path = loop_around(center, opt.base, opt.radius);
        path.min_steps = opt.min_steps;
        return integrate_path(params, path, opt.local_tol);
    };
    auto at0 = std::async(std::launch::async, run, Complex(0, 0));
    auto at1 = std::async(std::launch::async, run, Complex(1, 0));
    const ComplexMat4Estimate r0 = at0.get();
    const ComplexMat4Estimate r1 = at1.get();

    // Phi after loop 0 then loop 1 is R1 R0.
    const CMat4 composite = r1.value * r0.value;
    const CMat4 r_inf = composite.inverse();
    const double err_inf = r1.value.norm() * r0.err + r0.value.norm() * r1.err;

    InvariantReport report{f, {}};
    report.loops.push_back(detail::compare_loop("0", r0.value, r0.err, m0(f), opt.tol));
    report.loops.push_back(detail::compare_loop("1", r1.value, r1.err, m1(), opt.tol));
    report.loops.push_back(detail::compare_loop("inf", r_inf, err_inf, m_infinity(f), opt.tol));
    return report;
}

}  // namespace cymono::pf
