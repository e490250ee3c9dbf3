#include "allpass/mirror.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "allpass/statespace.hpp"

namespace allpass::mirror {

namespace {

PolyMatrix hstack(const PolyMatrix& left, const PolyMatrix& right) {
    const int q = std::max(left.degree(), right.degree());
    std::vector<PolyMatrix::Coeff> out;
    for (int k = 0; k <= q; ++k) {
        PolyMatrix::Coeff c = PolyMatrix::Coeff::Zero(left.rows(), left.cols() + right.cols());
        if (k <= left.degree()) c.leftCols(left.cols()) = left.coeff(k);
        if (k <= right.degree()) c.rightCols(right.cols()) = right.coeff(k);
        out.push_back(std::move(c));
    }
    return PolyMatrix(std::move(out));
}

double relative_sigma_min(const PolyMatrix& p, cplx z) {
    const Eigen::VectorXd s = p.eval(z).jacobiSvd().singularValues();
    return s(s.size() - 1) / std::max(p.scale_at(std::abs(z)), 1e-300);
}

RationalAllPass bivariate(const MirrorPlan& plan, Method method, const Tolerances& tol) {
    switch (method) {
        case Method::consecutive: return blaschke::b2_consecutive(plan.root.alpha, plan.R, tol);
        case Method::polynomial: return blaschke::b2_polynomial(plan.root.alpha, plan.w, tol);
        case Method::statespace: return statespace::build_b2(plan.root.alpha, plan.w, tol).factor;
        default: break;
    }
    throw Error(ErrorCode::InvalidArgument, "generic pairs need the consecutive, polynomial or statespace method");
}

}  // namespace

double spectral_deviation(const PolyMatrix& a, const PolyMatrix& b, int n_samples) {
    double dev = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / n_samples);
        const Eigen::MatrixXcd fb = spectral_eval(b, z);
        const Eigen::MatrixXcd fa = spectral_eval(a, z);
        dev = std::max(dev, (fa - fb).norm() / std::max(fb.norm(), 1e-300));
    }
    return dev;
}

std::pair<PolyMatrix, MirrorReport> mirror_once(const PolyMatrix& p, const RootRecord& r, Method method,
                                                const MirrorOptions& opts) {
    const Tolerances& tol = opts.tol;
    const MirrorPlan plan = roots::classify(p, r, tol);
    const cplx alpha = plan.root.alpha;

    RationalAllPass V;
    switch (plan.mirror_case) {
        case MirrorCase::real_root: V = blaschke::elementary(alpha, tol); break;
        case MirrorCase::degenerate_pair: V = blaschke::squared(alpha, tol); break;
        case MirrorCase::generic_pair: V = bivariate(plan, method, tol); break;
    }

    const Eigen::Index n = p.dim();
    const Eigen::Index k = V.dim();
    const PolyMatrix pQ = p * plan.Q;
    const PolyMatrix head = pQ.middle_cols(0, k) * V.real_num(tol.realness);
    const Deconvolution<double> div = deconvolve(head, V.den);
    const double rel_residual = div.residual / std::max(head.max_abs(), 1e-300);
    if (rel_residual > tol.residual)
        throw Error(ErrorCode::DeconvolutionResidueTooLarge, "p Q V is not polynomial", rel_residual);

    PolyMatrix out = k < n ? hstack(div.quotient, pQ.middle_cols(k, n - k)) : div.quotient;
    out = out.trimmed(tol.trim);

    MirrorReport rep;
    rep.mirrored_roots = {RootRecord::make(alpha, 1, tol)};
    rep.method = V.method;
    rep.mirror_case = plan.mirror_case;
    rep.residual_deconv = rel_residual;
    rep.max_imag = std::max(V.imag_residue, V.num.max_imag());
    rep.spectral_dev = spectral_deviation(out, p, opts.n_samples);
    if (alpha != cplx{0.0}) rep.new_root_residual = relative_sigma_min(out, 1.0 / std::conj(alpha));
    rep.old_root_residual = relative_sigma_min(out, alpha);
    rep.degree_in = p.degree();
    rep.degree_out = out.degree();
    return {std::move(out), std::move(rep)};
}

MirrorResult mirror_set(const PolyMatrix& p, const std::vector<RootRecord>& selection, Method method,
                        const MirrorOptions& opts) {
    std::vector<RootRecord> order = selection;
    for (const RootRecord& r : order) {
        if (r.location == RootLocation::on_circle || std::abs(std::abs(r.alpha) - 1.0) < opts.tol.circle)
            throw Error(ErrorCode::OnUnitCircle, "selection contains a root on the unit circle", std::abs(r.alpha));
        const bool closed = r.kind == RootKind::real ? r.alpha.imag() == 0.0 : r.alpha.imag() > 0.0;
        if (!closed || r.multiplicity < 1)
            throw Error(ErrorCode::SelectionNotClosed, "selection records must be real roots or upper pair members");
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const RootRecord& a, const RootRecord& b) { return std::abs(a.alpha) < std::abs(b.alpha); });

    MirrorResult res{p, {}};
    for (const RootRecord& r : order) {
        RootRecord single = r;
        single.multiplicity = 1;
        for (int c = 0; c < r.multiplicity; ++c) {
            auto [next, rep] = mirror_once(res.p, single, method, opts);
            res.p = std::move(next);
            res.reports.push_back(std::move(rep));
        }
    }
    return res;
}

MirrorResult mirror_all_inside(const PolyMatrix& p, Method method, const MirrorOptions& opts) {
    MirrorResult res{p, {}};
    const int max_steps = 2 * static_cast<int>(p.dim()) * std::max(p.degree(), 1) + 4;
    for (int step = 0; step < max_steps; ++step) {
        const std::vector<RootRecord> rs = roots::det_roots(res.p, opts.tol);
        const RootRecord* target = nullptr;
        for (const RootRecord& r : rs) {
            if (r.location == RootLocation::on_circle)
                throw Error(ErrorCode::OnUnitCircle, "a determinantal root lies on the unit circle", std::abs(r.alpha));
            if (r.location == RootLocation::inside && (!target || std::abs(r.alpha) < std::abs(target->alpha))) target = &r;
        }
        if (!target) return res;
        RootRecord single = *target;
        single.multiplicity = 1;
        auto [next, rep] = mirror_once(res.p, single, method, opts);
        res.p = std::move(next);
        res.reports.push_back(std::move(rep));
    }
    throw Error(ErrorCode::InvalidArgument, "roots inside the unit circle remain after the maximal number of steps");
}

std::vector<std::vector<RootRecord>> enumerate_selections(const std::vector<RootRecord>& roots) {
    if (roots.size() > 24) throw Error(ErrorCode::InvalidArgument, "too many root records to enumerate");
    const std::size_t count = std::size_t{1} << roots.size();
    std::vector<std::vector<RootRecord>> out;
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<RootRecord> sel;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (mask & (std::size_t{1} << i)) sel.push_back(roots[i]);
        out.push_back(std::move(sel));
    }
    return out;
}

}  // namespace allpass::mirror
