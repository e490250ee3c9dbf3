#include <gtest/gtest.h>

#include "allpass/json_io.hpp"
#include "oracles.hpp"

using namespace allpass;
using allpass::testing::Rng;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

// Write, print, re-parse, read back.
template <class T, class Reader>
T round_trip(const T& x, Reader read) {
    return read(io::parse(io::to_json(x).dump()));
}

}  // namespace

TEST(JsonIo, PolyMatrixRoundTripIsBitExact) {
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
        PolyMatrix p = rng.poly(1 + t % 3, t % 4);
        p = p * (std::exp(rng.uniform(-30.0, 30.0)));
        const PolyMatrix back = round_trip(p, io::polymatrix_from_json);
        EXPECT_EQ(back.coeffs(), p.coeffs());
    }
}

TEST(JsonIo, ComplexObjectsRoundTrip) {
    Rng rng(72);
    std::vector<CPolyMatrix::Coeff> cs;
    for (int k = 0; k < 3; ++k) cs.push_back(rng.matrix(2, 2).cast<cplx>() + cplx(0.0, 1.0) * rng.matrix(2, 2));
    const CPolyMatrix c(cs);
    EXPECT_EQ(round_trip(c, io::cpolymatrix_from_json).coeffs(), c.coeffs());

    const ScalarPoly s({cplx(0.1, 0.2), cplx(1.0 / 3.0, 0.0), cplx(-2.5, 1e-300)});
    EXPECT_EQ(round_trip(s, io::scalarpoly_from_json).coeffs(), s.coeffs());

    const RootRecord r = RootRecord::make(cplx(0.3, 0.4), 2);
    const RootRecord rb = round_trip(r, io::rootrecord_from_json);
    EXPECT_EQ(rb.alpha, r.alpha);
    EXPECT_EQ(rb.multiplicity, 2);
    EXPECT_EQ(rb.kind, r.kind);
    EXPECT_EQ(rb.location, r.location);
}

TEST(JsonIo, AllPassFactorRoundTrip) {
    const RationalAllPass V = blaschke::b2_polynomial(cplx(0.3, 0.7), Eigen::Vector2cd(cplx(0.6, 0.0), cplx(0.1, 0.79)));
    const RationalAllPass back = round_trip(V, io::allpass_from_json);
    EXPECT_EQ(back.num.coeffs(), V.num.coeffs());
    EXPECT_EQ(back.den.coeffs(), V.den.coeffs());
    EXPECT_EQ(back.alpha, V.alpha);
    EXPECT_EQ(back.method, V.method);
    ASSERT_TRUE(back.w.has_value());
    EXPECT_EQ(*back.w, *V.w);
    EXPECT_EQ(blaschke::verify_allpass(back, 32).max_residual, blaschke::verify_allpass(V, 32).max_residual);
}

TEST(JsonIo, StateSpaceRoundTrip) {
    Rng rng(73);
    const StateSpace s(rng.matrix(2, 2), rng.matrix(2, 3), rng.matrix(1, 2), rng.matrix(1, 3));
    const StateSpace back = round_trip(s, io::statespace_from_json);
    EXPECT_EQ(back.A, s.A);
    EXPECT_EQ(back.B, s.B);
    EXPECT_EQ(back.C, s.C);
    EXPECT_EQ(back.D, s.D);

    const StateSpace g = StateSpace::static_gain(rng.matrix(2, 2));
    const StateSpace gb = round_trip(g, io::statespace_from_json);
    EXPECT_EQ(gb.states(), 0);
    EXPECT_EQ(gb.D, g.D);
}

TEST(JsonIo, ParsesHandWrittenInput) {
    const PolyMatrix p = io::polymatrix_from_json(io::parse(R"({"dim": 2, "degree": 1,
        "coeffs": [[[1, 0], [0, 1]], [[-0.5, 0], [0, -0.25]]]})"));
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(p.coeff(1)(1, 1), -0.25);
}

TEST(JsonIo, ParseErrors) {
    const auto poly = [](const char* text) { return io::polymatrix_from_json(io::parse(text)); };
    EXPECT_EQ(code_of([&] { poly("{"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { poly(R"({"dim": 1, "coeffs": [[[1]]]})"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { poly(R"({"dim": 1, "degree": 0, "coeffs": [[[[1, 2]]]]})"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { poly(R"({"dim": 2, "degree": 0, "coeffs": [[[1, 0]]]})"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { poly(R"({"dim": 1, "degree": 1, "coeffs": [[[1]]]})"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { poly(R"({"dim": 1, "degree": 0, "coeffs": [[["x"]]]})"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { io::statespace_from_json(io::parse(R"({"A": [[1]], "B": [[1]], "C": [[1]]})")); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { io::statespace_from_json(io::parse(R"({"A": [[1]], "B": [[1, 2], [3, 4]], "C": [[1]], "D": [[0]]})")); }),
              ErrorCode::Parse);
    EXPECT_EQ(code_of([] { io::allpass_from_json(io::parse(R"({"num": {"dim": 1, "degree": 0, "coeffs": [[[1]]]},
        "den": {"coeffs": [1]}, "method": "bogus"})")); }),
              ErrorCode::Parse);
    EXPECT_EQ(code_of([] { io::read_file("/nonexistent/file.json"); }), ErrorCode::Parse);
}

TEST(JsonIo, MirrorReportFieldsAndOrder) {
    MirrorReport rep;
    rep.mirrored_roots = {RootRecord::make(cplx(0.3, 0.4), 1)};
    rep.method = Method::statespace;
    rep.mirror_case = MirrorCase::generic_pair;
    rep.spectral_dev = 1.25e-15;
    rep.degree_in = 2;
    rep.degree_out = 2;
    const std::string a = io::to_json(rep).dump();
    EXPECT_EQ(a, io::to_json(rep).dump());
    const io::json j = io::parse(a);
    for (const char* key : {"mirrored_roots", "method", "case", "residual_deconv", "max_imag", "spectral_dev",
                            "new_root_residual", "old_root_residual", "degree_in", "degree_out"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["method"], "statespace");
    EXPECT_EQ(j["case"], "generic_pair");
    EXPECT_EQ(j["spectral_dev"].get<double>(), 1.25e-15);
    // Keys come out sorted, so the text is independent of insertion order.
    EXPECT_LT(a.find("\"case\""), a.find("\"degree_in\""));
    EXPECT_LT(a.find("\"degree_out\""), a.find("\"method\""));
}
