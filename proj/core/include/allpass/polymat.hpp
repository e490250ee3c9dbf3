#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "allpass/error.hpp"
#include "allpass/tolerances.hpp"

namespace allpass {

using cplx = std::complex<double>;

namespace detail {
template <class T>
inline double imag_part(const T& x) {
    if constexpr (std::is_same_v<T, cplx>) {
        return x.imag();
    } else {
        (void)x;
        return 0.0;
    }
}
}  // namespace detail

/**
 * Matrix polynomial sum_k coeffs[k] z^k with real or complex coefficient matrices.
 *
 * The stored degree is tight: exactly-zero leading coefficient matrices are dropped on
 * construction, and trim() removes numerically negligible ones. The zero polynomial has degree 0.
 */
template <class T>
class BasicPolyMatrix {
   public:
    using Scalar = T;
    using Coeff = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

    BasicPolyMatrix() : coeffs_{Coeff::Zero(1, 1)} {}

    explicit BasicPolyMatrix(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "matrix polynomial needs at least one coefficient");
        const auto r = coeffs_.front().rows();
        const auto c = coeffs_.front().cols();
        if (r == 0 || c == 0) throw Error(ErrorCode::InvalidArgument, "empty coefficient matrix");
        for (const auto& m : coeffs_) {
            if (m.rows() != r || m.cols() != c)
                throw Error(ErrorCode::InvalidArgument, "coefficient matrices differ in shape");
        }
        while (coeffs_.size() > 1 && coeffs_.back().isZero(0.0)) coeffs_.pop_back();
    }

    static BasicPolyMatrix constant(Coeff m) { return BasicPolyMatrix(std::vector<Coeff>{std::move(m)}); }

    static BasicPolyMatrix zero(Eigen::Index rows, Eigen::Index cols) {
        return BasicPolyMatrix(std::vector<Coeff>{Coeff::Zero(rows, cols)});
    }

    static BasicPolyMatrix identity(Eigen::Index n) { return constant(Coeff::Identity(n, n)); }

    Eigen::Index rows() const { return coeffs_.front().rows(); }
    Eigen::Index cols() const { return coeffs_.front().cols(); }
    bool is_square() const { return rows() == cols(); }
    Eigen::Index dim() const { return rows(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Coeff& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_.front().isZero(0.0); }

    /// Largest absolute value over all coefficient entries.
    double max_abs() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
        return m;
    }

    /// Largest absolute imaginary part over all coefficient entries (0 for real polynomials).
    double max_imag() const {
        double m = 0.0;
        for (const auto& c : coeffs_)
            for (Eigen::Index j = 0; j < c.cols(); ++j)
                for (Eigen::Index i = 0; i < c.rows(); ++i) m = std::max(m, std::abs(detail::imag_part(c(i, j))));
        return m;
    }

    /// Sum of coefficient Frobenius norms weighted by |z|^k: a bound for ||p(z)||_F.
    double scale_at(double modulus) const {
        double s = 0.0, w = 1.0;
        for (const auto& c : coeffs_) {
            s += c.norm() * w;
            w *= modulus;
        }
        return s;
    }

    /// Drops leading coefficients whose entries are all below rel * max_abs().
    BasicPolyMatrix trimmed(double rel) const {
        const double cut = rel * max_abs();
        std::vector<Coeff> out = coeffs_;
        while (out.size() > 1 && out.back().cwiseAbs().maxCoeff() <= cut) out.pop_back();
        return BasicPolyMatrix(std::move(out));
    }

    Eigen::MatrixXcd eval(cplx z) const {
        Eigen::MatrixXcd acc = coeffs_.back().template cast<cplx>();
        for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[static_cast<std::size_t>(k)].template cast<cplx>();
        return acc;
    }

    BasicPolyMatrix<cplx> to_complex() const {
        std::vector<typename BasicPolyMatrix<cplx>::Coeff> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(c.template cast<cplx>());
        return BasicPolyMatrix<cplx>(std::move(out));
    }

    /// Columns [first, first + count) as a polynomial matrix.
    BasicPolyMatrix middle_cols(Eigen::Index first, Eigen::Index count) const {
        std::vector<Coeff> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(c.middleCols(first, count));
        return BasicPolyMatrix(std::move(out));
    }

    /// Coefficientwise transpose (no conjugation).
    BasicPolyMatrix transposed() const {
        std::vector<Coeff> out;
        for (const auto& c : coeffs_) out.push_back(c.transpose());
        return BasicPolyMatrix(std::move(out));
    }

    friend BasicPolyMatrix operator+(const BasicPolyMatrix& a, const BasicPolyMatrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidArgument, "shape mismatch in sum");
        const int q = std::max(a.degree(), b.degree());
        std::vector<Coeff> out(static_cast<std::size_t>(q + 1), Coeff::Zero(a.rows(), a.cols()));
        for (int k = 0; k <= a.degree(); ++k) out[static_cast<std::size_t>(k)] += a.coeff(k);
        for (int k = 0; k <= b.degree(); ++k) out[static_cast<std::size_t>(k)] += b.coeff(k);
        return BasicPolyMatrix(std::move(out));
    }

    friend BasicPolyMatrix operator-(const BasicPolyMatrix& a, const BasicPolyMatrix& b) { return a + b * T(-1); }

    friend BasicPolyMatrix operator*(const BasicPolyMatrix& a, const T& s) {
        std::vector<Coeff> out;
        for (const auto& c : a.coeffs_) out.push_back(c * s);
        return BasicPolyMatrix(std::move(out));
    }

    /// Convolution product.
    friend BasicPolyMatrix operator*(const BasicPolyMatrix& a, const BasicPolyMatrix& b) {
        if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "inner dimensions differ in product");
        std::vector<Coeff> out(static_cast<std::size_t>(a.degree() + b.degree() + 1), Coeff::Zero(a.rows(), b.cols()));
        for (int i = 0; i <= a.degree(); ++i)
            for (int j = 0; j <= b.degree(); ++j) out[static_cast<std::size_t>(i + j)].noalias() += a.coeff(i) * b.coeff(j);
        return BasicPolyMatrix(std::move(out));
    }

    friend BasicPolyMatrix operator*(const BasicPolyMatrix& a, const Coeff& m) { return a * constant(m); }
    friend BasicPolyMatrix operator*(const Coeff& m, const BasicPolyMatrix& a) { return constant(m) * a; }

   private:
    std::vector<Coeff> coeffs_;
};

using PolyMatrix = BasicPolyMatrix<double>;
using CPolyMatrix = BasicPolyMatrix<cplx>;

/// Scalar polynomial sum_k coeffs[k] z^k with complex coefficients; tight degree like BasicPolyMatrix.
class ScalarPoly {
   public:
    ScalarPoly() : coeffs_{cplx{0.0}} {}
    explicit ScalarPoly(std::vector<cplx> coeffs);
    static ScalarPoly from_real(const std::vector<double>& coeffs);
    /// Monic polynomial prod (z - r).
    static ScalarPoly from_roots(const std::vector<cplx>& roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    cplx leading() const { return coeffs_.back(); }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_.front() == cplx{0.0}; }
    double max_abs() const;
    double max_imag() const;
    bool is_real() const { return max_imag() == 0.0; }

    cplx eval(cplx z) const;
    ScalarPoly trimmed(double rel) const;
    ScalarPoly monic() const;
    std::vector<double> real_coeffs() const;

    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
    friend ScalarPoly operator*(const ScalarPoly& a, cplx s);

   private:
    std::vector<cplx> coeffs_;
};

/// Evaluates p at z by Horner's rule.
template <class T>
Eigen::MatrixXcd eval(const BasicPolyMatrix<T>& p, cplx z) {
    return p.eval(z);
}

/// p(z) p*(1/z) where * conjugate-transposes the coefficients; equals p(z) p(z)^H on |z| = 1.
Eigen::MatrixXcd spectral_eval(const PolyMatrix& p, cplx z);

/// det p(z) by sampling det at n*q+1 points on the circle |z| = 1.5 and inverting the DFT.
ScalarPoly det_poly(const PolyMatrix& p);

/**
 * All complex roots of s with multiplicity, from companion-matrix eigenvalues.
 *
 * Roots closer than tol.cluster (relative) are merged to their mean. For real-coefficient
 * input the result is conjugation-closed: near-real roots are snapped to the axis and the rest
 * are paired with their nearest conjugate and symmetrized. Sorted by modulus, then argument.
 */
std::vector<cplx> poly_roots(const ScalarPoly& s, const Tolerances& tol = {});

template <class T>
struct Deconvolution {
    BasicPolyMatrix<T> quotient;
    double residual = 0.0;  // largest remainder coefficient magnitude
};

/// Entrywise long division p = quotient * d + remainder.
Deconvolution<double> deconvolve(const PolyMatrix& p, const ScalarPoly& d);
Deconvolution<cplx> deconvolve(const CPolyMatrix& p, const ScalarPoly& d);

/// Real parts of the coefficients; throws ImaginaryResidueTooLarge if max_imag() > tol.
PolyMatrix to_real(const CPolyMatrix& p, double tol);

}  // namespace allpass
