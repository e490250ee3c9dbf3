#include "allpass/blaschke.hpp"

#include <cmath>
#include <numbers>

#include "allpass/statespace.hpp"

namespace allpass {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::elementary: return "elementary";
        case Method::squared: return "squared";
        case Method::consecutive: return "consecutive";
        case Method::polynomial: return "polynomial";
        case Method::statespace: return "statespace";
    }
    return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) noexcept {
    for (Method m : {Method::elementary, Method::squared, Method::consecutive, Method::polynomial, Method::statespace})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

Eigen::MatrixXcd RationalAllPass::eval(cplx z) const {
    const cplx d = den.eval(z);
    if (d == cplx{0.0}) throw Error(ErrorCode::InvalidArgument, "all-pass factor evaluated at a pole");
    return num.eval(z) / d;
}

Eigen::Matrix2cd UnitaryParam::matrix() const {
    const double c = std::cos(phi1);
    const double s = std::sin(phi1);
    Eigen::Matrix2cd V;
    V << c * std::polar(1.0, phi2), -s, s, c * std::polar(1.0, -phi2);
    return V;
}

UnitaryParam UnitaryParam::spanning(const Eigen::Vector2cd& u) {
    const double nu = u.norm();
    if (nu == 0.0) throw Error(ErrorCode::InvalidArgument, "zero vector has no span");
    // Rotate so the second entry is real and non-negative; then (cos phi1 e^{i phi2}, sin phi1).
    Eigen::Vector2cd x = u / nu;
    if (std::abs(x(1)) > 0.0) x *= std::conj(x(1)) / std::abs(x(1));
    UnitaryParam p;
    p.phi1 = std::atan2(x(1).real(), std::abs(x(0)));
    p.phi2 = std::abs(x(0)) > 0.0 ? std::arg(x(0)) : 0.0;
    return p;
}

namespace blaschke {

namespace {

void require_off_circle(cplx alpha, const Tolerances& tol) {
    if (std::abs(std::abs(alpha) - 1.0) < tol.circle)
        throw Error(ErrorCode::OnUnitCircle, "Blaschke factor at a point of the unit circle", std::abs(alpha));
}

void require_upper_pair(cplx alpha, const Tolerances& tol) {
    if (!(alpha.imag() > tol.imag * std::max(1.0, std::abs(alpha))))
        throw Error(ErrorCode::InvalidArgument, "complex pair needs Im(alpha+) > 0", alpha.imag());
}

// a(z) = (z - alpha+)(z - alpha-) = z^2 - 2 Re(alpha) z + |alpha|^2
ScalarPoly pair_denominator(cplx alpha) {
    return ScalarPoly::from_real({std::norm(alpha), -2.0 * alpha.real(), 1.0});
}

cplx scalar_blaschke(cplx z, cplx alpha) { return (1.0 - std::conj(alpha) * z) / (z - alpha); }

CPolyMatrix diag_poly(const ScalarPoly& d0, const ScalarPoly& d1) {
    const int q = std::max(d0.degree(), d1.degree());
    std::vector<CPolyMatrix::Coeff> out(static_cast<std::size_t>(q + 1), CPolyMatrix::Coeff::Zero(2, 2));
    for (int k = 0; k <= d0.degree(); ++k) out[static_cast<std::size_t>(k)](0, 0) = d0.coeff(k);
    for (int k = 0; k <= d1.degree(); ++k) out[static_cast<std::size_t>(k)](1, 1) = d1.coeff(k);
    return CPolyMatrix(std::move(out));
}

void require_nondegenerate(const Eigen::Vector2cd& w, const Tolerances& tol) {
    Eigen::Matrix2d W;
    W << w.real(), w.imag();
    const Eigen::Vector2d s = W.jacobiSvd().singularValues();
    if (s(0) == 0.0 || s(1) <= tol.degenerate * s(0))
        throw Error(ErrorCode::DegenerateW, "w and conj(w) are linearly dependent", s(0) > 0 ? s(1) / s(0) : 0.0);
}

}  // namespace

RationalAllPass elementary(cplx alpha, const Tolerances& tol) {
    require_off_circle(alpha, tol);
    RationalAllPass V;
    V.num = CPolyMatrix(std::vector<CPolyMatrix::Coeff>{CPolyMatrix::Coeff::Constant(1, 1, 1.0),
                                                        CPolyMatrix::Coeff::Constant(1, 1, -std::conj(alpha))});
    V.den = ScalarPoly(std::vector<cplx>{-alpha, 1.0});
    V.alpha = alpha;
    V.method = Method::elementary;
    return V;
}

RationalAllPass squared(cplx alpha, const Tolerances& tol) {
    require_off_circle(alpha, tol);
    require_upper_pair(alpha, tol);
    const double m2 = std::norm(alpha);
    const double ar = alpha.real();
    RationalAllPass V;
    V.num = PolyMatrix(std::vector<PolyMatrix::Coeff>{PolyMatrix::Coeff::Constant(1, 1, 1.0),
                                                      PolyMatrix::Coeff::Constant(1, 1, -2.0 * ar),
                                                      PolyMatrix::Coeff::Constant(1, 1, m2)})
                .to_complex();
    V.den = pair_denominator(alpha);
    V.alpha = alpha;
    V.method = Method::squared;
    return V;
}

RationalAllPass b2_consecutive(cplx alpha, const Eigen::Matrix2d& R, const Tolerances& tol) {
    require_off_circle(alpha, tol);
    require_upper_pair(alpha, tol);
    const double c = R(1, 1);
    if (!(c >= 1e-6) || !(R(0, 0) > 0.0) || R(1, 0) != 0.0)
        throw Error(ErrorCode::DegenerateW, "R must be upper triangular with a > 0 and c >= 1e-6", c);

    const cplx ap = alpha;
    const cplx am = std::conj(alpha);
    const cplx I{0.0, 1.0};
    const Eigen::Vector2cd w = R.cast<cplx>() * Eigen::Vector2cd(1.0, I);

    // First column of V_beta spans w, so the pole at alpha+ only excites direction w.
    const Eigen::Matrix2cd Vb = UnitaryParam::spanning(w).matrix();

    // First column of V_gamma: diag(B(a-, a+)^{-1}, 1) V_beta^{-1} conj(w), so the residue at alpha- spans conj(w).
    Eigen::Vector2cd g = Vb.inverse() * w.conjugate();
    g(0) /= scalar_blaschke(am, ap);
    const Eigen::Matrix2cd Vg = UnitaryParam::spanning(g).matrix();

    // V_delta normalizes the value at z = 1 to the identity.
    const Eigen::Matrix2cd E1 = Eigen::Vector2cd(scalar_blaschke(1.0, ap), 1.0).asDiagonal();
    const Eigen::Matrix2cd E2 = Eigen::Vector2cd(scalar_blaschke(1.0, am), 1.0).asDiagonal();
    const Eigen::Matrix2cd Vd = (Vb * E1 * Vg * E2).inverse();

    // (z - a+)(z - a-) diag(B(z,a+),1) = diag((1 - a- z)(z - a-), a(z)); split one (z - a-) and one (z - a+).
    const CPolyMatrix P1 = diag_poly(ScalarPoly({1.0, -am}), ScalarPoly({-ap, 1.0}));
    const CPolyMatrix P2 = diag_poly(ScalarPoly({1.0, -ap}), ScalarPoly({-am, 1.0}));
    const CPolyMatrix num = Vb * P1 * Vg * P2 * Vd;

    RationalAllPass V;
    V.imag_residue = num.max_imag();
    V.num = to_real(num, tol.realness).to_complex();
    V.den = pair_denominator(alpha);
    V.alpha = alpha;
    V.w = w;
    V.method = Method::consecutive;
    return V;
}

RationalAllPass b2_consecutive(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol) {
    require_nondegenerate(w, tol);
    Eigen::Matrix2d W;
    W << w.real(), w.imag();
    Eigen::HouseholderQR<Eigen::Matrix2d> qr(W);
    Eigen::Matrix2d Q1 = qr.householderQ();
    Eigen::Matrix2d R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) {
        if (R(j, j) < 0.0) {
            R.row(j) = -R.row(j);
            Q1.col(j) = -Q1.col(j);
        }
    }
    RationalAllPass V = b2_consecutive(alpha, R, tol);
    const CPolyMatrix::Coeff Qc = Q1.cast<cplx>();
    V.num = Qc * V.num * CPolyMatrix::Coeff(Qc.transpose());
    V.w = w;
    return V;
}

AllPassFromA allpass_from_A(const Eigen::Matrix2d& A, EigSide side) {
    if (std::abs(A.determinant()) <= 1e-14 * std::max(A.squaredNorm(), 1e-300))
        throw Error(ErrorCode::SingularMatrix, "A must be nonsingular");
    const Eigen::Vector2cd eig = A.eigenvalues();
    const double lo = std::min(std::abs(eig(0)), std::abs(eig(1)));
    const double hi = std::max(std::abs(eig(0)), std::abs(eig(1)));
    if (side == EigSide::inside && !(hi < 1.0))
        throw Error(ErrorCode::InvalidArgument, "eigenvalues of A are not inside the unit circle", hi);
    if (side == EigSide::outside && !(lo > 1.0))
        throw Error(ErrorCode::InvalidArgument, "eigenvalues of A are not outside the unit circle", lo);

    const Eigen::Matrix2d Ainv = A.inverse();
    AllPassFromA out;
    Eigen::Matrix2d gram;
    if (side == EigSide::inside) {
        out.gamma0 = statespace::solve_stein(A, Eigen::Matrix2d::Identity());
        out.B = out.gamma0.inverse() * Ainv.transpose() * out.gamma0;
        gram = out.B.transpose() * out.gamma0 * out.B - out.gamma0;
    } else {
        out.gamma0 = statespace::solve_stein(Ainv, Ainv.transpose() * Ainv);
        out.B = out.gamma0.inverse() * Ainv.transpose() * out.gamma0;
        gram = out.gamma0 - out.B.transpose() * out.gamma0 * out.B;
    }
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::LLT<Eigen::Matrix2d> llt(gram);
    if (llt.info() != Eigen::Success || (llt.matrixL().toDenseMatrix().diagonal().array() <= 0.0).any())
        throw Error(ErrorCode::CholeskyNotPD, "T'T is not positive definite", gram.determinant());
    out.T = llt.matrixU();
    return out;
}

RationalAllPass b2_polynomial(cplx alpha, const Eigen::Vector2cd& w, const Tolerances& tol) {
    require_off_circle(alpha, tol);
    require_upper_pair(alpha, tol);
    require_nondegenerate(w, tol);

    // A = W rot(lambda) W^{-1} has eigenvectors w, conj(w) that may be nearly parallel, so gamma0,
    // B and T are evaluated in eigen-coordinates: gamma0 = W^{-T} X W^{-1} with X the Stein
    // solution for the normal block rot(lambda), B = W X^{-1} rot^{-T} X W^{-1}, and T the
    // triangular factor of (I - A)^{-1} (I - B), whose Gram matrix equals T'T.
    const cplx lambda = 1.0 / alpha;
    const Eigen::Vector2cd wn = w / w.norm();
    Eigen::Matrix2d W;
    W << wn.real(), wn.imag();
    Eigen::Matrix2d rot;
    rot << lambda.real(), lambda.imag(), -lambda.imag(), lambda.real();
    const Eigen::Matrix2d rot_inv = rot.inverse();
    const Eigen::Matrix2d gram_w = W.transpose() * W;
    const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();

    const bool eigs_inside = std::abs(lambda) < 1.0;
    const Eigen::Matrix2d X = eigs_inside
        ? statespace::solve_stein(rot, gram_w)
        : statespace::solve_stein(rot_inv, rot_inv.transpose() * gram_w * rot_inv);
    const Eigen::Matrix2d Bt = X.inverse() * rot_inv.transpose() * X;

    const Eigen::Matrix2d F1 = (I - rot).inverse() * (I - Bt);
    const Eigen::Matrix2d W_inv = W.inverse();
    Eigen::HouseholderQR<Eigen::Matrix2d> qr(W * F1 * W_inv);
    Eigen::Matrix2d Qm = qr.householderQ();
    const Eigen::Matrix2d Rm = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j)
        if (Rm(j, j) < 0.0) Qm.col(j) = -Qm.col(j);
    if (!(std::abs(Rm(0, 0) * Rm(1, 1)) > 0.0)) throw Error(ErrorCode::CholeskyNotPD, "T is singular");

    // T^{-1} = W F1^{-1} W^{-1} Qm; (I - A z)^{-1} = W (I - rot' z) W^{-1} / det(I - A z), rot' = adj(rot).
    const Eigen::Matrix2d K = F1.inverse() * W_inv * Qm;
    const Eigen::Matrix2d adj = rot.transpose();
    const double s = 1.0 / std::norm(lambda);
    const Eigen::Matrix2d c0 = s * W * K;
    const Eigen::Matrix2d c1 = -s * W * ((adj + Bt) * K);
    const Eigen::Matrix2d c2 = s * W * (adj * Bt * K);

    RationalAllPass V;
    V.num = PolyMatrix(std::vector<PolyMatrix::Coeff>{c0, c1, c2}).to_complex();
    V.den = pair_denominator(alpha);
    V.alpha = alpha;
    V.w = w;
    V.method = Method::polynomial;
    return V;
}

AllPassReport verify_allpass(const RationalAllPass& V, int n_samples) {
    if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
    AllPassReport rep;
    rep.max_imag = std::max(V.num.max_imag(), V.imag_residue);
    const Eigen::Index n = V.dim();
    for (int k = 0; k < n_samples; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / n_samples);
        const Eigen::MatrixXcd Vz = V.eval(z);
        const Eigen::MatrixXcd Vw = V.eval(1.0 / std::conj(z));
        rep.max_residual = std::max(rep.max_residual, (Vz * Vw.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm());
        rep.det_modulus_dev = std::max(rep.det_modulus_dev, std::abs(std::abs(Vz.determinant()) - 1.0));
    }
    return rep;
}

}  // namespace blaschke
}  // namespace allpass
