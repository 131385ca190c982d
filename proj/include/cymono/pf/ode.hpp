#pragma once

// The hypergeometric Picard-Fuchs operator
//
//   theta^4 - phi (theta + A)(theta + 1 - A)(theta + B)(theta + 1 - B),   theta = phi d/dphi,
//
// written as a first order system in the theta frame Y = (y, theta y, theta^2 y, theta^3 y).
// Since (theta + A)(theta + 1 - A) = theta^2 + theta + a with a = A(1 - A), the quartic
// expands to theta^4 + 2 theta^3 + (1 + a + b) theta^2 + (a + b) theta + ab and
//
//   theta Y = N(phi) Y,   last row of N = phi / (1 - phi) * [ab, a + b, 1 + a + b, 2].

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "cymono/family_catalog.hpp"

namespace cymono::pf {

using Complex = std::complex<double>;
using CMat4 = Eigen::Matrix<Complex, 4, 4>;

struct ODEParams {
    Rational A;
    Rational B;

    ODEParams(Rational a_exp, Rational b_exp) : A(std::move(a_exp)), B(std::move(b_exp)) {
        if (A <= 0 || A >= 1 || B <= 0 || B >= 1) throw std::invalid_argument("ODEParams: exponents must lie in (0, 1)");
    }
    explicit ODEParams(const FamilyParams& f) : ODEParams(f.A, f.B) {}

    Rational a() const { return A * (1 - A); }
    Rational b() const { return B * (1 - B); }

    /// Exact [ab, a + b, 1 + a + b, 2], the theta-polynomial coefficients
    /// of the last row before the phi / (1 - phi) factor.
    std::array<Rational, 4> row4_coefficients() const {
        const Rational a_ = a(), b_ = b();
        return {a_ * b_, a_ + b_, 1 + a_ + b_, Rational(2)};
    }
};

/// N(phi). Regular at phi = 0 (where it is the nilpotent shift); the pole
/// at phi = 1 raises std::domain_error.
inline CMat4 theta_frame_system(const ODEParams& params, Complex phi) {
    if (phi == Complex(1.0, 0.0)) throw std::domain_error("theta_frame_system: phi = 1 is a singular point");
    CMat4 n = CMat4::Zero();
    n(0, 1) = n(1, 2) = n(2, 3) = 1.0;
    const Complex s = phi / (1.0 - phi);
    const auto c = params.row4_coefficients();
    for (int j = 0; j < 4; ++j) n(3, j) = s * c[static_cast<std::size_t>(j)].convert_to<double>();
    return n;
}

/// dY/dphi = phi^-1 N(phi) Y.
/// @throws std::domain_error at phi = 0 or phi = 1.
inline CMat4 connection_matrix(const ODEParams& params, Complex phi) {
    if (phi == Complex(0.0, 0.0)) throw std::domain_error("connection_matrix: phi = 0 is a singular point");
    return theta_frame_system(params, phi) / phi;
}

}  // namespace cymono::pf
