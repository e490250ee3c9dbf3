#include "allpass/polymat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace allpass {

ScalarPoly::ScalarPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
}

ScalarPoly ScalarPoly::from_real(const std::vector<double>& coeffs) {
    return ScalarPoly(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

ScalarPoly ScalarPoly::from_roots(const std::vector<cplx>& roots) {
    ScalarPoly out(std::vector<cplx>{cplx{1.0}});
    for (const cplx& r : roots) out = out * ScalarPoly(std::vector<cplx>{-r, cplx{1.0}});
    return out;
}

double ScalarPoly::max_abs() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double ScalarPoly::max_imag() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c.imag()));
    return m;
}

cplx ScalarPoly::eval(cplx z) const {
    cplx acc = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[static_cast<std::size_t>(k)];
    return acc;
}

ScalarPoly ScalarPoly::trimmed(double rel) const {
    const double cut = rel * max_abs();
    std::vector<cplx> out = coeffs_;
    while (out.size() > 1 && std::abs(out.back()) <= cut) out.pop_back();
    return ScalarPoly(std::move(out));
}

ScalarPoly ScalarPoly::monic() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
    return *this * (cplx{1.0} / leading());
}

std::vector<double> ScalarPoly::real_coeffs() const {
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const cplx& c : coeffs_) out.push_back(c.real());
    return out;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
    std::vector<cplx> out(static_cast<std::size_t>(a.degree() + b.degree() + 1), cplx{0.0});
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) out[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return ScalarPoly(std::move(out));
}

ScalarPoly operator*(const ScalarPoly& a, cplx s) {
    std::vector<cplx> out = a.coeffs();
    for (cplx& c : out) c *= s;
    return ScalarPoly(std::move(out));
}

Eigen::MatrixXcd spectral_eval(const PolyMatrix& p, cplx z) {
    if (z == cplx{0.0}) throw Error(ErrorCode::InvalidArgument, "spectral_eval is undefined at z = 0");
    return p.eval(z) * p.eval(cplx{1.0} / std::conj(z)).adjoint();
}

ScalarPoly det_poly(const PolyMatrix& p) {
    if (!p.is_square()) throw Error(ErrorCode::InvalidArgument, "det_poly needs a square polynomial matrix");
    constexpr double radius = 1.5;
    const int npts = static_cast<int>(p.dim()) * p.degree() + 1;
    std::vector<cplx> samples(static_cast<std::size_t>(npts));
    for (int j = 0; j < npts; ++j) {
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * j / npts);
        samples[static_cast<std::size_t>(j)] = p.eval(z).determinant();
    }
    std::vector<cplx> coeffs(static_cast<std::size_t>(npts));
    double rk = 1.0;
    for (int k = 0; k < npts; ++k) {
        cplx acc{0.0};
        for (int j = 0; j < npts; ++j)
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * ((static_cast<long>(j) * k) % npts) / npts);
        // real matrix polynomial => real determinant
        coeffs[static_cast<std::size_t>(k)] = cplx{(acc / static_cast<double>(npts)).real() / rk, 0.0};
        rk *= radius;
    }
    return ScalarPoly(std::move(coeffs)).trimmed(Tolerances{}.trim);
}

namespace {

double rel_scale(cplx a, cplx b) { return std::max({std::abs(a), std::abs(b), 1e-300}); }

// Single-linkage clustering; members are replaced by the cluster mean.
void cluster_roots(std::vector<cplx>& roots, double tol) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= tol * rel_scale(roots[i], roots[j])) parent[find(i)] = find(j);

    std::vector<cplx> sum(n, cplx{0.0});
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        sum[find(i)] += roots[i];
        ++count[find(i)];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (count[r] > 1) roots[i] = sum[r] / static_cast<double>(count[r]);
    }
}

std::vector<cplx> pair_conjugates(const std::vector<cplx>& roots, double tol_imag) {
    std::vector<cplx> out, upper, lower;
    for (const cplx& r : roots) {
        if (std::abs(r.imag()) <= tol_imag * std::max(1.0, std::abs(r))) {
            out.emplace_back(r.real(), 0.0);
        } else if (r.imag() > 0) {
            upper.push_back(r);
        } else {
            lower.push_back(r);
        }
    }
    std::vector<bool> used(lower.size(), false);
    for (const cplx& u : upper) {
        std::size_t best = lower.size();
        double best_d = 0.0;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(std::conj(lower[j]) - u);
            if (best == lower.size() || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best == lower.size()) {
            out.emplace_back(u.real(), 0.0);
            continue;
        }
        used[best] = true;
        const cplx mu = 0.5 * (u + std::conj(lower[best]));
        out.push_back(mu);
        out.push_back(std::conj(mu));
    }
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (!used[j]) out.emplace_back(lower[j].real(), 0.0);
    return out;
}

}  // namespace

std::vector<cplx> poly_roots(const ScalarPoly& s, const Tolerances& tol) {
    if (s.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial are undefined");
    const int d = s.degree();
    if (d == 0) return {};

    const bool real = s.is_real();
    std::vector<cplx> roots;
    roots.reserve(static_cast<std::size_t>(d));
    if (real) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
        const double lead = s.leading().real();
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -s.coeff(i).real() / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        const cplx lead = s.leading();
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -s.coeff(i) / lead;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    }

    cluster_roots(roots, tol.cluster);
    if (real) roots = pair_conjugates(roots, tol.imag);

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return std::arg(a) < std::arg(b);
    });
    return roots;
}

namespace {

template <class T>
Deconvolution<T> deconvolve_impl(const BasicPolyMatrix<T>& p, const std::vector<T>& d) {
    using Coeff = typename BasicPolyMatrix<T>::Coeff;
    const int m = static_cast<int>(d.size()) - 1;
    const int q = p.degree();
    if (m > q) throw Error(ErrorCode::DegreeMismatch, "divisor degree exceeds dividend degree");

    std::vector<Coeff> rem = p.coeffs();
    std::vector<Coeff> quot(static_cast<std::size_t>(q - m + 1), Coeff::Zero(p.rows(), p.cols()));
    const T lead = d.back();
    for (int k = q; k >= m; --k) {
        const Coeff qk = rem[static_cast<std::size_t>(k)] / lead;
        quot[static_cast<std::size_t>(k - m)] = qk;
        for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k - m + j)] -= qk * d[static_cast<std::size_t>(j)];
    }
    double residual = 0.0;
    for (int k = 0; k < m; ++k) residual = std::max(residual, rem[static_cast<std::size_t>(k)].cwiseAbs().maxCoeff());
    return {BasicPolyMatrix<T>(std::move(quot)), residual};
}

}  // namespace

Deconvolution<double> deconvolve(const PolyMatrix& p, const ScalarPoly& d) {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    if (!d.is_real()) throw Error(ErrorCode::InvalidArgument, "real matrix polynomial divided by a complex polynomial");
    return deconvolve_impl<double>(p, d.real_coeffs());
}

Deconvolution<cplx> deconvolve(const CPolyMatrix& p, const ScalarPoly& d) {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    return deconvolve_impl<cplx>(p, d.coeffs());
}

PolyMatrix to_real(const CPolyMatrix& p, double tol) {
    const double mi = p.max_imag();
    if (mi > tol) throw Error(ErrorCode::ImaginaryResidueTooLarge, "imaginary residue " + std::to_string(mi), mi);
    std::vector<PolyMatrix::Coeff> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.real());
    return PolyMatrix(std::move(out));
}

}  // namespace allpass
