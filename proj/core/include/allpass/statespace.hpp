#pragma once

#include <Eigen/Dense>

#include "allpass/blaschke.hpp"
#include "allpass/polymat.hpp"
#include "allpass/tolerances.hpp"

namespace allpass {

/// Realization k(z) = C (z^{-1} I - A)^{-1} B + D. A may be 0 x 0 (static gain).
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;

    StateSpace() = default;
    StateSpace(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd D);

    static StateSpace static_gain(const Eigen::MatrixXd& D);

    Eigen::Index states() const { return A.rows(); }
    Eigen::Index outputs() const { return D.rows(); }
    Eigen::Index inputs() const { return D.cols(); }
};

/// Frobenius norms of the blocks of the transformed realization of V'(1/z) V(z) that must vanish,
/// and the deviation of its feedthrough from the identity.
struct StructuralCertificate {
    double block12 = 0.0;
    double block13 = 0.0;
    double block32 = 0.0;
    double block33_dev = 0.0;

    double worst() const { return std::max({block12, block13, block32, block33_dev}); }
    bool ok(double tol) const { return worst() < tol; }
};

struct B2Realization {
    StateSpace realization;
    RationalAllPass factor;
    Eigen::Matrix2d X;
    StructuralCertificate certificate;
};

namespace statespace {

Eigen::MatrixXcd ss_eval(const StateSpace& s, cplx z);

/// Realization of k1(z) k2(z).
StateSpace ss_product(const StateSpace& s1, const StateSpace& s2);

/// Realization of k'(1/z); requires A nonsingular.
StateSpace ss_star(const StateSpace& s);

/// (M A M^{-1}, M B, C M^{-1}, D).
StateSpace state_transform(const StateSpace& s, const Eigen::MatrixXd& M);

/// Symmetric X with X = A' X A + Q, solved directly in the m(m+1)/2 free entries of X.
Eigen::MatrixXd solve_stein(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

/// Block test for V'(1/z) V(z) = I after the state transformation [[I, X], [0, I]].
StructuralCertificate certify_allpass(const StateSpace& s, const Eigen::MatrixXd& X);

/**
 * Bivariate factor in state-space form: A is the real rotation block of 1/alpha+, C is fixed by
 * w, X solves the observability Stein equation, and (B, D) make the product with its para-
 * conjugate collapse to the identity. Also returns the equivalent rational form.
 */
B2Realization build_b2(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol = {});

}  // namespace statespace
}  // namespace allpass
