#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "allpass/blaschke.hpp"
#include "allpass/statespace.hpp"
#include "oracles.hpp"

using namespace allpass;
using allpass::testing::Rng;

namespace {

const cplx I1{0.0, 1.0};
const double kPi = std::numbers::pi;

void expect_real_coeffs(const ScalarPoly& s, const std::vector<double>& want, double tol) {
    ASSERT_EQ(s.degree() + 1, static_cast<int>(want.size()));
    for (std::size_t k = 0; k < want.size(); ++k) {
        EXPECT_NEAR(s.coeff(static_cast<int>(k)).real(), want[k], tol);
        EXPECT_EQ(s.coeff(static_cast<int>(k)).imag(), 0.0);
    }
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

std::vector<RationalAllPass> all_b2(cplx alpha, const Eigen::Vector2cd& w) {
    return {blaschke::b2_consecutive(alpha, w), blaschke::b2_polynomial(alpha, w), statespace::build_b2(alpha, w).factor};
}

// sigma_2 / sigma_1 of num(alpha+) and the sine of the angle between its dominant left singular vector and w.
std::pair<double, double> column_space(const RationalAllPass& V, const Eigen::Vector2cd& w) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V.num.eval(V.alpha), Eigen::ComputeFullU);
    const Eigen::VectorXd s = svd.singularValues();
    const Eigen::Vector2cd u = svd.matrixU().col(0);
    const Eigen::Vector2cd wn = w / w.norm();
    return {s(1) / s(0), (u - wn * wn.dot(u)).norm()};
}

double rank_ratio(const CPolyMatrix& num, cplx z) {
    const Eigen::VectorXd s = num.eval(z).jacobiSvd().singularValues();
    return s(1) / s(0);
}

}  // namespace

TEST(Elementary, AtZeroIsReciprocal) {
    const RationalAllPass V = blaschke::elementary(0.0);
    EXPECT_EQ(V.num.degree(), 0);
    EXPECT_EQ(V.num.coeff(0)(0, 0), cplx(1.0));
    ASSERT_EQ(V.den.degree(), 1);
    EXPECT_EQ(V.den.coeff(0), cplx(0.0));
    EXPECT_EQ(V.den.coeff(1), cplx(1.0));
}

TEST(Elementary, RealRootValueAtOne) {
    const RationalAllPass V = blaschke::elementary(2.0);
    EXPECT_EQ(V.num.coeff(0)(0, 0), cplx(1.0));
    EXPECT_EQ(V.num.coeff(1)(0, 0), cplx(-2.0));
    EXPECT_NEAR(std::abs(V.eval(1.0)(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(Elementary, UnimodularOnCircle) {
    const RationalAllPass V = blaschke::elementary(0.5);
    for (int k = 0; k < 32; ++k) EXPECT_NEAR(std::abs(V.eval(std::polar(1.0, 2.0 * kPi * k / 32))(0, 0)), 1.0, 1e-14);
    EXPECT_LT(blaschke::verify_allpass(blaschke::elementary(cplx(0.3, 0.6)), 32).max_residual, 1e-14);
}

TEST(Elementary, RejectsCircle) {
    EXPECT_EQ(code_of([] { blaschke::elementary(cplx(0.6, 0.8)); }), ErrorCode::OnUnitCircle);
}

TEST(Squared, HandExpansion) {
    const RationalAllPass V = blaschke::squared(cplx(0.5, 0.5));
    EXPECT_EQ(V.num.max_imag(), 0.0);
    ASSERT_EQ(V.num.degree(), 2);
    EXPECT_DOUBLE_EQ(V.num.coeff(0)(0, 0).real(), 1.0);
    EXPECT_DOUBLE_EQ(V.num.coeff(1)(0, 0).real(), -1.0);
    EXPECT_DOUBLE_EQ(V.num.coeff(2)(0, 0).real(), 0.5);
    expect_real_coeffs(V.den, {0.5, -1.0, 1.0}, 1e-16);
    EXPECT_NEAR(std::abs(V.eval(1.0)(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(Squared, UnimodularOnCircle) {
    const RationalAllPass V = blaschke::squared(cplx(0.5, 0.5));
    for (int k = 0; k < 32; ++k) EXPECT_NEAR(std::abs(V.eval(std::polar(1.0, 2.0 * kPi * k / 32))(0, 0)), 1.0, 1e-14);
}

TEST(Squared, Errors) {
    EXPECT_EQ(code_of([] { blaschke::squared(0.5); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { blaschke::squared(cplx(0.0, 1.0)); }), ErrorCode::OnUnitCircle);
}

TEST(UnitaryParam, UnitaryAndSpanning) {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const UnitaryParam p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const Eigen::Matrix2cd U = p.matrix();
        EXPECT_LT((U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
        EXPECT_NEAR(std::abs(U.determinant()), 1.0, 1e-14);

        const Eigen::Vector2cd u(rng.complex_normal(), rng.complex_normal());
        const Eigen::Vector2cd c = UnitaryParam::spanning(u).matrix().col(0);
        EXPECT_NEAR(std::abs(c.dot(u / u.norm())), 1.0, 1e-14);
    }
    EXPECT_THROW(UnitaryParam::spanning(Eigen::Vector2cd::Zero()), Error);
}

TEST(AllPassFromA, InsideClosedForm) {
    const AllPassFromA r = blaschke::allpass_from_A(0.5 * Eigen::Matrix2d::Identity(), EigSide::inside);
    EXPECT_LT((r.gamma0 - (4.0 / 3.0) * Eigen::Matrix2d::Identity()).norm(), 1e-12);
    EXPECT_LT((r.B - 2.0 * Eigen::Matrix2d::Identity()).norm(), 1e-12);
    EXPECT_LT((r.T - 2.0 * Eigen::Matrix2d::Identity()).norm(), 1e-12);
}

TEST(AllPassFromA, InsideFactorIsScalarBlaschke) {
    // (I - 0.5 z)^{-1} (I - 2 z) / 2 = (0.5 - z) / (1 - 0.5 z)
    const AllPassFromA r = blaschke::allpass_from_A(0.5 * Eigen::Matrix2d::Identity(), EigSide::inside);
    for (int k = 0; k < 16; ++k) {
        const cplx z = std::polar(1.0, 2.0 * kPi * (k + 0.3) / 16);
        const Eigen::Matrix2cd V = (Eigen::Matrix2cd::Identity() - 0.5 * z * Eigen::Matrix2cd::Identity()).inverse() *
                                   (Eigen::Matrix2cd::Identity() - z * r.B.cast<cplx>()) * r.T.inverse().cast<cplx>();
        const cplx want = (0.5 - z) / (1.0 - 0.5 * z);
        EXPECT_LT((V - want * Eigen::Matrix2cd::Identity()).norm(), 1e-14);
        EXPECT_NEAR(std::abs(want), 1.0, 1e-15);
    }
}

TEST(AllPassFromA, OutsideClosedForm) {
    const AllPassFromA r = blaschke::allpass_from_A(2.0 * Eigen::Matrix2d::Identity(), EigSide::outside);
    EXPECT_LT((r.gamma0 - (1.0 / 3.0) * Eigen::Matrix2d::Identity()).norm(), 1e-12);
    EXPECT_LT((r.B - 0.5 * Eigen::Matrix2d::Identity()).norm(), 1e-12);
    EXPECT_LT((r.T - 0.5 * Eigen::Matrix2d::Identity()).norm(), 1e-12);
}

TEST(AllPassFromA, WrongSideOrSingular) {
    EXPECT_EQ(code_of([] { blaschke::allpass_from_A(0.5 * Eigen::Matrix2d::Identity(), EigSide::outside); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { blaschke::allpass_from_A(2.0 * Eigen::Matrix2d::Identity(), EigSide::inside); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { blaschke::allpass_from_A(Eigen::Matrix2d::Zero(), EigSide::inside); }), ErrorCode::SingularMatrix);
}

TEST(AllPassFromA, RandomProperties) {
    Rng rng(32);
    for (int t = 0; t < 50; ++t) {
        const bool inside = t % 2 == 0;
        // Well-conditioned A with a chosen spectrum: rotation block similar by a mild W.
        const cplx lambda = std::polar(inside ? rng.uniform(0.1, 0.9) : rng.uniform(1.1, 5.0), rng.uniform(0.1, 3.0));
        Eigen::Matrix2d rot;
        rot << lambda.real(), lambda.imag(), -lambda.imag(), lambda.real();
        const Eigen::Matrix2d W = Eigen::Matrix2d::Identity() + 0.3 * rng.matrix(2, 2);
        const Eigen::Matrix2d A = W * rot * W.inverse();
        const AllPassFromA r = blaschke::allpass_from_A(A, inside ? EigSide::inside : EigSide::outside);

        // eig(B) = 1 / eig(A)
        Eigen::Vector2cd ea = A.eigenvalues();
        Eigen::Vector2cd eb = r.B.eigenvalues();
        for (int i = 0; i < 2; ++i) {
            const double d = std::min(std::abs(eb(0) - 1.0 / ea(i)), std::abs(eb(1) - 1.0 / ea(i)));
            EXPECT_LT(d, 1e-10 * std::max(1.0, std::abs(1.0 / ea(i))));
        }
        EXPECT_LT((r.gamma0 - r.gamma0.transpose()).norm(), 1e-12 * r.gamma0.norm());
        EXPECT_GT(r.gamma0.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), 0.0);
        if (inside) {
            const Eigen::Matrix2d res = r.gamma0 - A.transpose() * r.gamma0 * A - Eigen::Matrix2d::Identity();
            EXPECT_LT(res.norm(), 1e-12 * std::max(1.0, r.gamma0.norm()));
        }
        EXPECT_EQ(r.T(1, 0), 0.0);
        EXPECT_GT(r.T(0, 0), 0.0);
        EXPECT_GT(r.T(1, 1), 0.0);

        for (int k = 0; k < 16; ++k) {
            const cplx z = std::polar(1.0, 2.0 * kPi * (k + 0.5) / 16);
            const Eigen::Matrix2cd V = (Eigen::Matrix2cd::Identity() - z * A.cast<cplx>()).inverse() *
                                       (Eigen::Matrix2cd::Identity() - z * r.B.cast<cplx>()) * r.T.inverse().cast<cplx>();
            EXPECT_LT((V * V.adjoint() - Eigen::Matrix2cd::Identity()).norm(), 1e-9);
        }
    }
}

TEST(B2Polynomial, HandExample) {
    const cplx alpha(0.5, 0.5);
    const RationalAllPass V = blaschke::b2_polynomial(alpha, Eigen::Vector2cd(1.0, I1));
    expect_real_coeffs(V.den, {0.5, -1.0, 1.0}, 1e-15);
    // gamma0 = I, B = A / 2, T = I / sqrt(2) for A = [[1, -1], [1, 1]].
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2d c1;
    c1 << 1.5, 0.5, -0.5, 1.5;
    ASSERT_EQ(V.num.degree(), 2);
    EXPECT_LT((V.num.coeff(0) - h * Eigen::Matrix2cd::Identity()).norm(), 1e-14);
    EXPECT_LT((V.num.coeff(1) + h * c1.cast<cplx>()).norm(), 1e-14);
    EXPECT_LT((V.num.coeff(2) - h * Eigen::Matrix2cd::Identity()).norm(), 1e-14);
    EXPECT_EQ(V.num.max_imag(), 0.0);

    const auto [ratio, sine] = column_space(V, Eigen::Vector2cd(1.0, I1));
    EXPECT_LT(ratio, 1e-8);
    EXPECT_LT(sine, 1e-8);
    EXPECT_LT(blaschke::verify_allpass(V, 32).max_residual, 1e-9);
}

TEST(B2Polynomial, MatchesDirectFormulas) {
    // For well-conditioned [w_r w_i] the factor equals adj(I - A z)(I - B z) T^{-1} / |lambda|^2 with
    // (B, T) taken straight from allpass_from_A.
    Rng rng(33);
    for (int t = 0; t < 40; ++t) {
        const bool inside = t % 2 == 0;
        const cplx alpha = rng.alpha(inside);
        const Eigen::Vector2cd w = Eigen::Vector2cd(1.0, I1) + 0.3 * Eigen::Vector2cd(rng.complex_normal(), rng.complex_normal());
        Eigen::Matrix2d W;
        W << w.real(), w.imag();
        const cplx lambda = 1.0 / alpha;
        Eigen::Matrix2d rot;
        rot << lambda.real(), lambda.imag(), -lambda.imag(), lambda.real();
        const Eigen::Matrix2d A = W * rot * W.inverse();
        const AllPassFromA r = blaschke::allpass_from_A(A, std::abs(lambda) < 1.0 ? EigSide::inside : EigSide::outside);
        Eigen::Matrix2d adjA;
        adjA << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
        const Eigen::Matrix2d Tinv = r.T.inverse();
        const double s = 1.0 / std::norm(lambda);
        const Eigen::Matrix2d c0 = s * Tinv;
        const Eigen::Matrix2d c1 = -s * (adjA + r.B) * Tinv;
        const Eigen::Matrix2d c2 = s * adjA * r.B * Tinv;

        const RationalAllPass V = blaschke::b2_polynomial(alpha, w);
        const double scale = V.num.max_abs();
        EXPECT_LT((V.num.coeff(0).real() - c0).norm(), 1e-9 * scale) << t;
        EXPECT_LT((V.num.coeff(1).real() - c1).norm(), 1e-9 * scale) << t;
        EXPECT_LT((V.num.coeff(2).real() - c2).norm(), 1e-9 * scale) << t;
    }
}

TEST(B2Consecutive, HandExampleAgreesWithPolynomial) {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx alpha(0.5, 0.5);
    const RationalAllPass Vc = blaschke::b2_consecutive(alpha, Eigen::Matrix2d(h * Eigen::Matrix2d::Identity()));
    const RationalAllPass Vp = blaschke::b2_polynomial(alpha, Eigen::Vector2cd(h, h * I1));
    EXPECT_EQ(Vc.num.max_imag(), 0.0);
    EXPECT_LT(Vc.imag_residue, 1e-12);
    EXPECT_LT(blaschke::verify_allpass(Vc, 32).max_residual, 1e-9);
    const auto f = allpass::testing::right_factor(Vp, Vc, 16);
    EXPECT_LT(f.spread, 1e-8);
    EXPECT_LT(f.orthogonality, 1e-8);
    EXPECT_LT(f.imag, 1e-8);
    // Mirrored zeros at 1 / alpha+-.
    EXPECT_LT(rank_ratio(Vc.num, 1.0 / alpha), 1e-8);
    EXPECT_LT(rank_ratio(Vc.num, 1.0 / std::conj(alpha)), 1e-8);
}

TEST(B2Consecutive, ValueAtOneIsIdentity) {
    const RationalAllPass V = blaschke::b2_consecutive(cplx(-0.3, 0.4), Eigen::Vector2cd(cplx(0.6, 0.1), cplx(-0.2, 0.7)));
    EXPECT_LT((V.eval(1.0) - Eigen::Matrix2cd::Identity()).norm(), 1e-13);
}

TEST(B2Consecutive, RefusesNearDegenerateR) {
    Eigen::Matrix2d R;
    R << 1.0, 0.0, 0.0, 1e-7;
    EXPECT_EQ(code_of([&] { blaschke::b2_consecutive(cplx(0.5, 0.5), R); }), ErrorCode::DegenerateW);
}

TEST(B2, InputErrors) {
    const Eigen::Vector2cd w(1.0, I1);
    const Eigen::Vector2cd real_w(1.0, 2.0);
    EXPECT_EQ(code_of([&] { blaschke::b2_polynomial(cplx(0.6, 0.8), w); }), ErrorCode::OnUnitCircle);
    EXPECT_EQ(code_of([&] { blaschke::b2_polynomial(cplx(0.5, 0.0), w); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { blaschke::b2_polynomial(cplx(0.5, 0.5), real_w); }), ErrorCode::DegenerateW);
    EXPECT_EQ(code_of([&] { blaschke::b2_consecutive(cplx(0.5, 0.5), real_w); }), ErrorCode::DegenerateW);
    EXPECT_EQ(code_of([&] { blaschke::b2_consecutive(cplx(0.6, 0.8), w); }), ErrorCode::OnUnitCircle);
}

TEST(B2, PropertiesOfEveryConstruction) {
    Rng rng(34);
    for (int t = 0; t < 60; ++t) {
        const cplx alpha = rng.alpha(t % 2 == 0);
        const Eigen::Vector2cd w = rng.w();
        for (const RationalAllPass& V : all_b2(alpha, w)) {
            SCOPED_TRACE(std::string(to_string(V.method)) + " t=" + std::to_string(t));
            EXPECT_LT(allpass::testing::allpass_residual(V, 32), 1e-9);
            EXPECT_LT(V.imag_residue, 1e-8);
            EXPECT_EQ(V.num.max_imag(), 0.0);
            expect_real_coeffs(V.den, {std::norm(alpha), -2.0 * alpha.real(), 1.0}, 1e-15);
            const auto [ratio, sine] = column_space(V, w);
            EXPECT_LT(ratio, 1e-7);
            EXPECT_LT(sine, 1e-7);
            for (cplx z : {alpha, std::conj(alpha), 1.0 / alpha, 1.0 / std::conj(alpha)}) EXPECT_LT(rank_ratio(V.num, z), 1e-7);
        }
    }
}

TEST(B2, MethodsDifferByConstantOrthogonalFactor) {
    Rng rng(35);
    for (int t = 0; t < 40; ++t) {
        const cplx alpha = rng.alpha(t % 2 == 0);
        const Eigen::Vector2cd w = rng.w();
        const auto Vs = all_b2(alpha, w);
        for (int other : {0, 2}) {
            const auto f = allpass::testing::right_factor(Vs[1], Vs[static_cast<std::size_t>(other)], 16);
            EXPECT_LT(f.spread, 1e-8) << t;
            EXPECT_LT(f.orthogonality, 1e-8) << t;
            EXPECT_LT(f.imag, 1e-8) << t;
        }
    }
}

TEST(VerifyAllpass, IdentitySquaredAndPerturbed) {
    RationalAllPass id;
    id.num = CPolyMatrix::identity(2);
    id.den = ScalarPoly::from_real({1.0});
    const AllPassReport r0 = blaschke::verify_allpass(id, 32);
    EXPECT_EQ(r0.max_residual, 0.0);
    EXPECT_EQ(r0.max_imag, 0.0);
    EXPECT_EQ(r0.det_modulus_dev, 0.0);

    RationalAllPass V = blaschke::squared(cplx(0.5, 0.5));
    EXPECT_LT(blaschke::verify_allpass(V, 32).max_residual, 1e-12);

    V.num = V.num + CPolyMatrix::constant(CPolyMatrix::Coeff::Constant(1, 1, 1e-3));
    EXPECT_GT(blaschke::verify_allpass(V, 32).max_residual, 1e-4);
}

TEST(VerifyAllpass, AgreesWithNaiveOracle) {
    Rng rng(36);
    for (int t = 0; t < 10; ++t) {
        const RationalAllPass V = blaschke::b2_consecutive(rng.alpha(t % 2 == 0), rng.w());
        EXPECT_NEAR(blaschke::verify_allpass(V, 32).max_residual, allpass::testing::allpass_residual(V, 32), 1e-13);
    }
}

TEST(Method, StringRoundTrip) {
    for (Method m : {Method::elementary, Method::squared, Method::consecutive, Method::polynomial, Method::statespace})
        EXPECT_EQ(method_from_string(to_string(m)), m);
    EXPECT_FALSE(method_from_string("bogus").has_value());
}
