#include "allpass/roots.hpp"

#include <cmath>

namespace allpass {

RootRecord RootRecord::make(cplx alpha, int multiplicity, const Tolerances& tol) {
    RootRecord r;
    r.kind = alpha.imag() == 0.0 ? RootKind::real : RootKind::complex_pair;
    r.alpha = alpha.imag() < 0.0 ? std::conj(alpha) : alpha;
    r.multiplicity = multiplicity;
    const double gap = std::abs(alpha) - 1.0;
    if (std::abs(gap) < tol.circle) {
        r.location = RootLocation::on_circle;
    } else {
        r.location = gap < 0.0 ? RootLocation::inside : RootLocation::outside;
    }
    return r;
}

namespace roots {

std::vector<RootRecord> det_roots(const PolyMatrix& p, const Tolerances& tol) {
    const ScalarPoly d = det_poly(p);
    const double scale = std::pow(p.scale_at(1.5), static_cast<double>(p.dim()));
    if (d.is_zero() || d.max_abs() <= 1e-10 * scale)
        throw Error(ErrorCode::SingularPolynomialMatrix, "det p(z) vanishes identically", d.max_abs());

    const std::vector<cplx> all = poly_roots(d, tol);
    std::vector<RootRecord> out;
    std::vector<bool> used(all.size(), false);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (used[i] || all[i].imag() < 0.0) continue;
        int mult = 0;
        for (std::size_t j = i; j < all.size(); ++j) {
            if (!used[j] && all[j] == all[i]) {
                used[j] = true;
                ++mult;
            }
        }
        out.push_back(RootRecord::make(all[i], mult, tol));
    }
    return out;
}

namespace {

// Rotates v so that its largest-modulus entry (first one on ties) is real and positive.
void normalize_phase(Eigen::VectorXcd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k)
        if (std::abs(v(k)) > std::abs(v(best)) * (1.0 + 1e-12)) best = k;
    const double mag = std::abs(v(best));
    if (mag == 0.0) return;
    v *= std::conj(v(best)) / mag;
    v(best) = cplx{v(best).real(), 0.0};
}

}  // namespace

Eigen::VectorXcd kernel_vector(const Eigen::MatrixXcd& M, const Tolerances& tol) {
    const Eigen::Index n = M.cols();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
    sigma.head(svd.singularValues().size()) = svd.singularValues();

    const double smax = sigma.maxCoeff();
    const double smin = sigma.minCoeff();
    std::vector<Eigen::Index> tied;
    for (Eigen::Index j = 0; j < n; ++j)
        if (sigma(j) <= smin + tol.tie * smax) tied.push_back(j);

    Eigen::VectorXcd v;
    if (tied.size() == 1) {
        v = svd.matrixV().col(tied.front());
    } else {
        Eigen::MatrixXcd K(n, static_cast<Eigen::Index>(tied.size()));
        for (std::size_t c = 0; c < tied.size(); ++c) K.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(tied[c]);
        // Project e_k onto the kernel and keep the longest projection; lowest k on ties.
        Eigen::Index best = 0;
        double best_norm = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double nk = K.row(k).norm();
            if (nk > best_norm * (1.0 + 1e-12)) {
                best = k;
                best_norm = nk;
            }
        }
        v = K * K.row(best).adjoint();
    }
    v.normalize();
    normalize_phase(v);
    return v;
}

Eigen::MatrixXd orthogonal_completion(const Eigen::MatrixXd& V1) {
    const Eigen::Index n = V1.rows();
    const Eigen::Index k = V1.cols();
    if (k > n) throw Error(ErrorCode::NotSemiOrthogonal, "more columns than rows");
    const double dev = (V1.transpose() * V1 - Eigen::MatrixXd::Identity(k, k)).norm();
    if (dev > 1e-10) throw Error(ErrorCode::NotSemiOrthogonal, "columns are not orthonormal", dev);

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(V1);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index j = 0; j < k; ++j)
        if (qr.matrixQR()(j, j) < 0.0) Q.col(j) = -Q.col(j);
    Q.leftCols(k) = V1;
    if (k < n && Q.determinant() < 0.0) Q.col(n - 1) = -Q.col(n - 1);
    return Q;
}

MirrorPlan classify(const PolyMatrix& p, const RootRecord& r, const Tolerances& tol) {
    MirrorPlan plan;
    plan.root = RootRecord::make(r.kind == RootKind::real ? cplx{r.alpha.real(), 0.0} : r.alpha, r.multiplicity, tol);
    if (plan.root.location == RootLocation::on_circle)
        throw Error(ErrorCode::OnUnitCircle, "roots on the unit circle cannot be mirrored", std::abs(r.alpha));
    if (plan.root.kind == RootKind::complex_pair && plan.root.alpha.imag() <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "complex pair record without an imaginary part");

    const cplx alpha = plan.root.alpha;
    const Eigen::MatrixXcd M = p.eval(alpha);
    Eigen::VectorXcd v = kernel_vector(M, tol);
    plan.sigma_min = (M * v).norm();
    const double scale = std::max(p.scale_at(std::abs(alpha)), 1e-300);
    if (plan.sigma_min > tol.kernel * scale)
        throw Error(ErrorCode::NotARoot, "p(alpha) is not numerically singular", plan.sigma_min / scale);

    const Eigen::Index n = p.dim();
    if (plan.root.kind == RootKind::real) {
        Eigen::VectorXd vr = v.real();
        vr.normalize();
        plan.mirror_case = MirrorCase::real_root;
        plan.v = vr.cast<cplx>();
        plan.Q = orthogonal_completion(vr);
        return plan;
    }

    Eigen::MatrixXd W(n, 2);
    W.col(0) = v.real();
    W.col(1) = v.imag();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU);
    const Eigen::VectorXd s = svd.singularValues();
    const double s2 = s.size() > 1 ? s(1) : 0.0;
    if (n == 1 || s2 <= tol.degenerate * s(0)) {
        Eigen::VectorXd u = svd.matrixU().col(0);
        Eigen::Index big = 0;
        u.cwiseAbs().maxCoeff(&big);
        if (u(big) < 0.0) u = -u;
        plan.mirror_case = MirrorCase::degenerate_pair;
        plan.v = u.cast<cplx>();
        plan.Q = orthogonal_completion(u);
        return plan;
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
    Eigen::MatrixXd Q1 = qr.householderQ() * Eigen::MatrixXd::Identity(n, 2);
    Eigen::Matrix2d R = qr.matrixQR().topRows(2).triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) {
        if (R(j, j) < 0.0) {
            R.row(j) = -R.row(j);
            Q1.col(j) = -Q1.col(j);
        }
    }
    plan.mirror_case = MirrorCase::generic_pair;
    plan.v = v;
    plan.R = R;
    plan.w = R.cast<cplx>() * Eigen::Vector2cd(1.0, cplx{0.0, 1.0});
    plan.Q = orthogonal_completion(Q1);
    return plan;
}

}  // namespace roots
}  // namespace allpass
