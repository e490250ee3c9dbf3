#include "allpass/json_io.hpp"

#include <fstream>
#include <sstream>

namespace allpass::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

json number_or_pair(double x) { return x; }
json number_or_pair(cplx x) { return json::array({x.real(), x.imag()}); }

template <class Mat>
json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number_or_pair(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

double real_entry(const json& e) {
    if (!e.is_number()) fail("expected a real number");
    return e.get<double>();
}

cplx complex_entry(const json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) return {e[0].get<double>(), e[1].get<double>()};
    fail("expected a number or an [re, im] pair");
}

template <class T>
T entry(const json& e) {
    if constexpr (std::is_same_v<T, double>) {
        return real_entry(e);
    } else {
        return complex_entry(e);
    }
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) fail("matrix has the wrong number of rows");
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("matrix row has the wrong length");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = entry<T>(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

Eigen::MatrixXd dense_from_json(const json& j) {
    if (!j.is_array()) fail("expected a nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
    return matrix_from_json<double>(j, rows, cols);
}

template <class T>
json poly_to_json(const BasicPolyMatrix<T>& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c));
    return json{{"dim", p.dim()}, {"degree", p.degree()}, {"coeffs", std::move(coeffs)}};
}

template <class T>
BasicPolyMatrix<T> poly_from_json(const json& j) {
    if (!j.is_object()) fail("polynomial matrix must be an object");
    for (const char* key : {"dim", "degree", "coeffs"})
        if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    if (!j["dim"].is_number_integer() || !j["degree"].is_number_integer()) fail("dim and degree must be integers");
    const auto n = j["dim"].get<long long>();
    const auto q = j["degree"].get<long long>();
    if (n < 1 || q < 0) fail("dim must be positive and degree non-negative");
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_array() || static_cast<long long>(coeffs.size()) != q + 1) fail("coeffs must hold degree+1 matrices");
    std::vector<typename BasicPolyMatrix<T>::Coeff> out;
    for (const json& m : coeffs) out.push_back(matrix_from_json<T>(m, n, n));
    return BasicPolyMatrix<T>(std::move(out));
}

}  // namespace

std::string_view to_string(RootKind k) noexcept { return k == RootKind::real ? "real" : "complex_pair"; }

std::string_view to_string(RootLocation l) noexcept {
    switch (l) {
        case RootLocation::inside: return "inside";
        case RootLocation::on_circle: return "on_circle";
        case RootLocation::outside: return "outside";
    }
    return "unknown";
}

std::string_view to_string(MirrorCase c) noexcept {
    switch (c) {
        case MirrorCase::real_root: return "real_root";
        case MirrorCase::degenerate_pair: return "degenerate_pair";
        case MirrorCase::generic_pair: return "generic_pair";
    }
    return "unknown";
}

json to_json(const PolyMatrix& p) { return poly_to_json(p); }

json to_json(const CPolyMatrix& p) {
    // Complex polynomials with no imaginary content are written as real ones.
    if (p.max_imag() == 0.0) return poly_to_json(to_real(p, 0.0));
    return poly_to_json(p);
}

json to_json(const ScalarPoly& s) {
    json coeffs = json::array();
    const bool real = s.is_real();
    for (const cplx& c : s.coeffs()) coeffs.push_back(real ? json(c.real()) : number_or_pair(c));
    return json{{"degree", s.degree()}, {"coeffs", std::move(coeffs)}};
}

json to_json(const RootRecord& r) {
    return json{{"alpha", {r.alpha.real(), r.alpha.imag()}},
                {"multiplicity", r.multiplicity},
                {"kind", to_string(r.kind)},
                {"location", to_string(r.location)}};
}

json to_json(const std::vector<RootRecord>& rs) {
    json out = json::array();
    for (const RootRecord& r : rs) out.push_back(to_json(r));
    return out;
}

json to_json(const RationalAllPass& V) {
    json j{{"num", to_json(V.num)},
           {"den", to_json(V.den)},
           {"alpha", {V.alpha.real(), V.alpha.imag()}},
           {"method", to_string(V.method)}};
    if (V.w) j["w"] = json::array({number_or_pair((*V.w)(0)), number_or_pair((*V.w)(1))});
    return j;
}

json to_json(const StateSpace& s) {
    return json{{"A", matrix_to_json(s.A)}, {"B", matrix_to_json(s.B)}, {"C", matrix_to_json(s.C)}, {"D", matrix_to_json(s.D)}};
}

json to_json(const MirrorReport& rep) {
    // nlohmann::json objects keep keys sorted, which fixes the field order.
    return json{{"mirrored_roots", to_json(rep.mirrored_roots)},
                {"method", to_string(rep.method)},
                {"case", to_string(rep.mirror_case)},
                {"residual_deconv", rep.residual_deconv},
                {"max_imag", rep.max_imag},
                {"spectral_dev", rep.spectral_dev},
                {"new_root_residual", rep.new_root_residual},
                {"old_root_residual", rep.old_root_residual},
                {"degree_in", rep.degree_in},
                {"degree_out", rep.degree_out}};
}

json to_json(const AllPassReport& rep) {
    return json{{"max_residual", rep.max_residual}, {"max_imag", rep.max_imag}, {"det_modulus_dev", rep.det_modulus_dev}};
}

PolyMatrix polymatrix_from_json(const json& j) { return poly_from_json<double>(j); }
CPolyMatrix cpolymatrix_from_json(const json& j) { return poly_from_json<cplx>(j); }

ScalarPoly scalarpoly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) fail("scalar polynomial needs a coeffs array");
    std::vector<cplx> coeffs;
    for (const json& c : j["coeffs"]) coeffs.push_back(complex_entry(c));
    if (coeffs.empty()) fail("scalar polynomial has no coefficients");
    ScalarPoly s(std::move(coeffs));
    if (j.contains("degree") && (!j["degree"].is_number_integer() || j["degree"].get<int>() != s.degree()))
        fail("scalar polynomial degree does not match its coefficients");
    return s;
}

RootRecord rootrecord_from_json(const json& j) {
    if (!j.is_object() || !j.contains("alpha")) fail("root record needs alpha");
    const cplx alpha = complex_entry(j["alpha"]);
    const int mult = j.value("multiplicity", 1);
    return RootRecord::make(alpha, mult);
}

RationalAllPass allpass_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) fail("all-pass factor needs num and den");
    RationalAllPass V;
    V.num = cpolymatrix_from_json(j["num"]);
    V.den = scalarpoly_from_json(j["den"]);
    if (V.den.is_zero()) fail("denominator is the zero polynomial");
    if (j.contains("alpha")) V.alpha = complex_entry(j["alpha"]);
    if (j.contains("method")) {
        if (!j["method"].is_string()) fail("method must be a string");
        const auto m = method_from_string(j["method"].get<std::string>());
        if (!m) fail("unknown method '" + j["method"].get<std::string>() + "'");
        V.method = *m;
    }
    if (j.contains("w")) {
        const json& w = j["w"];
        if (!w.is_array() || w.size() != 2) fail("w must have two entries");
        V.w = Eigen::Vector2cd(complex_entry(w[0]), complex_entry(w[1]));
    }
    return V;
}

StateSpace statespace_from_json(const json& j) {
    if (!j.is_object()) fail("state-space system must be an object");
    for (const char* key : {"A", "B", "C", "D"})
        if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    try {
        Eigen::MatrixXd A = dense_from_json(j["A"]);
        Eigen::MatrixXd D = dense_from_json(j["D"]);
        if (A.size() == 0) return StateSpace::static_gain(D);
        return StateSpace(std::move(A), dense_from_json(j["B"]), dense_from_json(j["C"]), std::move(D));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        fail(e.what());
    }
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace allpass::io
