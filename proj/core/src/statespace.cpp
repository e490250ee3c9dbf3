#include "allpass/statespace.hpp"

#include <cmath>

namespace allpass {

StateSpace::StateSpace(Eigen::MatrixXd A_, Eigen::MatrixXd B_, Eigen::MatrixXd C_, Eigen::MatrixXd D_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
    const Eigen::Index m = A.rows();
    if (A.cols() != m || B.rows() != m || C.cols() != m || C.rows() != D.rows() || B.cols() != D.cols())
        throw Error(ErrorCode::InvalidArgument, "inconsistent state-space dimensions");
}

StateSpace StateSpace::static_gain(const Eigen::MatrixXd& D) {
    return StateSpace(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, D.cols()), Eigen::MatrixXd(D.rows(), 0), D);
}

namespace statespace {

Eigen::MatrixXcd ss_eval(const StateSpace& s, cplx z) {
    if (z == cplx{0.0}) throw Error(ErrorCode::InvalidArgument, "ss_eval needs z != 0");
    Eigen::MatrixXcd out = s.D.cast<cplx>();
    if (s.states() == 0) return out;
    const Eigen::Index m = s.states();
    const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m) / z - s.A.cast<cplx>();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "z^{-1} is an eigenvalue of A");
    out += s.C.cast<cplx>() * lu.solve(s.B.cast<cplx>());
    return out;
}

StateSpace ss_product(const StateSpace& s1, const StateSpace& s2) {
    if (s1.inputs() != s2.outputs()) throw Error(ErrorCode::InvalidArgument, "inner dimensions differ in ss_product");
    const Eigen::Index m1 = s1.states();
    const Eigen::Index m2 = s2.states();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m1 + m2, m1 + m2);
    A.topLeftCorner(m1, m1) = s1.A;
    A.topRightCorner(m1, m2) = s1.B * s2.C;
    A.bottomRightCorner(m2, m2) = s2.A;
    Eigen::MatrixXd B(m1 + m2, s2.inputs());
    B.topRows(m1) = s1.B * s2.D;
    B.bottomRows(m2) = s2.B;
    Eigen::MatrixXd C(s1.outputs(), m1 + m2);
    C.leftCols(m1) = s1.C;
    C.rightCols(m2) = s1.D * s2.C;
    return StateSpace(std::move(A), std::move(B), std::move(C), s1.D * s2.D);
}

StateSpace ss_star(const StateSpace& s) {
    if (s.states() == 0) return StateSpace::static_gain(s.D.transpose());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(s.A.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "ss_star needs A nonsingular");
    const Eigen::MatrixXd AtInv = lu.inverse();
    return StateSpace(AtInv, AtInv * s.C.transpose(), -s.B.transpose() * AtInv,
                      s.D.transpose() - s.B.transpose() * AtInv * s.C.transpose());
}

StateSpace state_transform(const StateSpace& s, const Eigen::MatrixXd& M) {
    if (M.rows() != s.states() || M.cols() != s.states())
        throw Error(ErrorCode::InvalidArgument, "transformation has the wrong size");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "state transformation must be nonsingular");
    const Eigen::MatrixXd Minv = lu.inverse();
    return StateSpace(M * s.A * Minv, M * s.B, s.C * Minv, s.D);
}

Eigen::MatrixXd solve_stein(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    const Eigen::Index m = A.rows();
    if (A.cols() != m || Q.rows() != m || Q.cols() != m) throw Error(ErrorCode::InvalidArgument, "solve_stein shape mismatch");
    if (m == 0) return Eigen::MatrixXd(0, 0);

    const Eigen::VectorXcd eig = A.eigenvalues();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j)
            if (std::abs(1.0 - eig(i) * eig(j)) < 1e-10)
                throw Error(ErrorCode::ResonantEigenvalues, "eigenvalue pair with product 1", std::abs(eig(i) * eig(j)));

    // Unknowns: upper-triangular entries of X, row by row.
    const Eigen::Index nu = m * (m + 1) / 2;
    auto idx = [m](Eigen::Index i, Eigen::Index j) {
        if (i > j) std::swap(i, j);
        return i * m - i * (i - 1) / 2 + (j - i);
    };
    const Eigen::MatrixXd Qs = 0.5 * (Q + Q.transpose());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nu, nu);
    Eigen::VectorXd rhs(nu);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const Eigen::Index row = idx(i, j);
            rhs(row) = Qs(i, j);
            L(row, row) += 1.0;
            // (A' X A)_ij = sum_kl A_ki X_kl A_lj
            for (Eigen::Index k = 0; k < m; ++k)
                for (Eigen::Index l = 0; l < m; ++l) L(row, idx(k, l)) -= A(k, i) * A(l, j);
        }
    }
    auto unpack = [&](const Eigen::VectorXd& x) {
        Eigen::MatrixXd X(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i; j < m; ++j) X(i, j) = X(j, i) = x(idx(i, j));
        return X;
    };
    Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
    if (!lu.isInvertible()) throw Error(ErrorCode::ResonantEigenvalues, "Stein operator is singular");
    Eigen::VectorXd x = lu.solve(rhs);
    x += lu.solve(rhs - L * x);  // one step of iterative refinement
    return unpack(x);
}

StructuralCertificate certify_allpass(const StateSpace& s, const Eigen::MatrixXd& X) {
    const Eigen::Index m = s.states();
    const StateSpace prod = ss_product(ss_star(s), s);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2 * m, 2 * m);
    M.topRightCorner(m, m) = X;
    const StateSpace t = state_transform(prod, M);
    StructuralCertificate c;
    c.block12 = t.A.topRightCorner(m, m).norm();
    c.block13 = t.B.topRows(m).norm();
    c.block32 = t.C.rightCols(m).norm();
    c.block33_dev = (t.D - Eigen::MatrixXd::Identity(t.D.rows(), t.D.cols())).norm();
    return c;
}

B2Realization build_b2(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol) {
    if (std::abs(std::abs(alpha) - 1.0) < tol.circle)
        throw Error(ErrorCode::OnUnitCircle, "Blaschke factor at a point of the unit circle", std::abs(alpha));
    if (!(alpha.imag() > tol.imag * std::max(1.0, std::abs(alpha))))
        throw Error(ErrorCode::InvalidArgument, "complex pair needs Im(alpha+) > 0", alpha.imag());
    {
        Eigen::Matrix2d W;
        W << w.real(), w.imag();
        const Eigen::Vector2d sv = W.jacobiSvd().singularValues();
        if (sv(0) == 0.0 || sv(1) <= tol.degenerate * sv(0))
            throw Error(ErrorCode::DegenerateW, "w and conj(w) are linearly dependent");
    }

    const cplx lambda = 1.0 / alpha;
    const double lr = lambda.real();
    const double li = lambda.imag();
    Eigen::Matrix2d A;
    A << lr, li, -li, lr;
    Eigen::Matrix2d C;
    C.col(0) = w.imag();
    C.col(1) = -w.real();
    C /= w.norm();

    const Eigen::Matrix2d X = solve_stein(A, C.transpose() * C);
    Eigen::JacobiSVD<Eigen::Matrix2d> xsvd(X);
    const double condX = xsvd.singularValues()(0) / xsvd.singularValues()(1);
    if (!(condX <= 1e12)) throw Error(ErrorCode::IllConditioned, "Stein solution X is (nearly) singular", condX);

    // A^-1 X^-1 A^-T = (A' X A)^-1, solved rather than formed from explicit inverses.
    Eigen::Matrix2d AXA = A.transpose() * X * A;
    AXA = 0.5 * (AXA + AXA.transpose()).eval();
    const Eigen::Matrix2d PCt = AXA.ldlt().solve(C.transpose());
    Eigen::Matrix2d G = Eigen::Matrix2d::Identity() + C * PCt;
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::LLT<Eigen::Matrix2d> llt(G);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::GramNotPD, "I + C A^-1 X^-1 A^-T C' is not positive definite", G.determinant());
    const Eigen::Matrix2d L = llt.matrixL();
    const Eigen::Matrix2d D = L.transpose().inverse();
    const Eigen::Matrix2d B = -A * PCt * D;

    B2Realization out;
    out.realization = StateSpace(A, B, C, D);
    out.X = X;
    out.certificate = certify_allpass(out.realization, X);

    // z C adj(I - A z) B + det(I - A z) D, rescaled to the monic denominator (z - a+)(z - a-).
    Eigen::Matrix2d adjA;
    adjA << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
    const double l2 = std::norm(lambda);
    const double s = 1.0 / l2;
    const Eigen::Matrix2d c0 = s * D;
    const Eigen::Matrix2d c1 = s * (C * B - 2.0 * lr * D);
    const Eigen::Matrix2d c2 = s * (l2 * D - C * adjA * B);
    RationalAllPass& V = out.factor;
    V.num = PolyMatrix(std::vector<PolyMatrix::Coeff>{c0, c1, c2}).to_complex();
    V.den = ScalarPoly::from_real({std::norm(alpha), -2.0 * alpha.real(), 1.0});
    V.alpha = alpha;
    V.w = w;
    V.method = Method::statespace;
    return out;
}

}  // namespace statespace
}  // namespace allpass
