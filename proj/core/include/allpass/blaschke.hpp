#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>

#include "allpass/polymat.hpp"
#include "allpass/tolerances.hpp"

namespace allpass {

enum class Method { elementary, squared, consecutive, polynomial, statespace };

std::string_view to_string(Method m) noexcept;
std::optional<Method> method_from_string(std::string_view s) noexcept;

/**
 * All-pass factor V(z) = num(z) / den(z) with a scalar denominator.
 *
 * The bivariate factors are normalized to the monic denominator (z - alpha+)(z - alpha-).
 * `num` is stored with complex entries so that elementary factors at complex alpha fit the same
 * type; every real construction stores exactly zero imaginary parts and records the residue it
 * discarded (if any) in `imag_residue`.
 */
struct RationalAllPass {
    CPolyMatrix num;
    ScalarPoly den;
    cplx alpha{};
    std::optional<Eigen::Vector2cd> w;
    Method method = Method::polynomial;
    double imag_residue = 0.0;

    Eigen::Index dim() const { return num.rows(); }
    Eigen::MatrixXcd eval(cplx z) const;
    PolyMatrix real_num(double tol) const { return to_real(num, tol); }
};

/// Unitary 2x2 matrix [[cos(phi1) e^{i phi2}, -sin(phi1)], [sin(phi1), cos(phi1) e^{-i phi2}]].
struct UnitaryParam {
    double phi1 = 0.0;
    double phi2 = 0.0;

    Eigen::Matrix2cd matrix() const;

    /// Parameters whose first column spans the same line as u (u != 0).
    static UnitaryParam spanning(const Eigen::Vector2cd& u);
};

enum class EigSide { inside, outside };

struct AllPassFromA {
    Eigen::Matrix2d B;
    Eigen::Matrix2d T;
    Eigen::Matrix2d gamma0;
};

struct AllPassReport {
    double max_residual = 0.0;
    double max_imag = 0.0;
    double det_modulus_dev = 0.0;
};

namespace blaschke {

/// B(z, alpha) = (1 - conj(alpha) z) / (z - alpha).
RationalAllPass elementary(cplx alpha, const Tolerances& tol = {});

/// B_sq(z, alpha+-) = (|alpha|^2 z^2 - 2 Re(alpha) z + 1) / (z^2 - 2 Re(alpha) z + |alpha|^2).
RationalAllPass squared(cplx alpha, const Tolerances& tol = {});

/**
 * Bivariate factor as a product of unitary matrices and scalar Blaschke factors,
 * V_beta diag(B(z, a+), 1) V_gamma diag(B(z, a-), 1) V_delta, with R = [[a, b], [0, c]] from the
 * QR decomposition of the kernel vector. The result has column space R (1, i)^T at alpha+.
 */
RationalAllPass b2_consecutive(cplx alpha, const Eigen::Matrix2d& R, const Tolerances& tol = {});

/// Same construction for an arbitrary w: Q1 B2(z, alpha, R(1,i)) Q1^T where [w_r w_i] = Q1 R.
RationalAllPass b2_consecutive(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol = {});

/**
 * (B, T) such that (I - A z)^{-1} (I - B z) T^{-1} is all-pass, from the Stein solution gamma0.
 * T is upper triangular with positive diagonal.
 */
AllPassFromA allpass_from_A(const Eigen::Matrix2d& A, EigSide side);

/// Bivariate factor (I - A z)^{-1} (I - B z) T^{-1} with A = [w_r w_i] rot(1/alpha) [w_r w_i]^{-1}.
RationalAllPass b2_polynomial(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol = {});

/// Max over z = e^{2 pi i k / n} of ||V(z) V(1/conj z)^H - I||_F and | |det V(z)| - 1 |.
AllPassReport verify_allpass(const RationalAllPass& V, int n_samples);

}  // namespace blaschke
}  // namespace allpass
