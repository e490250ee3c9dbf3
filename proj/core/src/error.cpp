#include "allpass/error.hpp"

namespace allpass {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::ImaginaryResidueTooLarge: return "ImaginaryResidueTooLarge";
        case ErrorCode::SingularPolynomialMatrix: return "SingularPolynomialMatrix";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::OnUnitCircle: return "OnUnitCircle";
        case ErrorCode::NotSemiOrthogonal: return "NotSemiOrthogonal";
        case ErrorCode::DeconvolutionResidueTooLarge: return "DeconvolutionResidueTooLarge";
        case ErrorCode::CholeskyNotPD: return "CholeskyNotPD";
        case ErrorCode::GramNotPD: return "GramNotPD";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::ResonantEigenvalues: return "ResonantEigenvalues";
        case ErrorCode::DegenerateW: return "DegenerateW";
        case ErrorCode::SelectionNotClosed: return "SelectionNotClosed";
        case ErrorCode::IllConditioned: return "IllConditioned";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, double value)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), value_(value) {}

}  // namespace allpass
