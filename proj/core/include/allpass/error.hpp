#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace allpass {

enum class ErrorCode {
    InvalidArgument,
    ZeroPolynomial,
    DegreeMismatch,
    ImaginaryResidueTooLarge,
    SingularPolynomialMatrix,
    NotARoot,
    OnUnitCircle,
    NotSemiOrthogonal,
    DeconvolutionResidueTooLarge,
    CholeskyNotPD,
    GramNotPD,
    SingularMatrix,
    ResonantEigenvalues,
    DegenerateW,
    SelectionNotClosed,
    IllConditioned,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the CLI maps them to exit codes.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what, double value = 0.0);

    ErrorCode code() const noexcept { return code_; }

    /// The offending magnitude (residual, singular value, ...) when one exists.
    double value() const noexcept { return value_; }

   private:
    ErrorCode code_;
    double value_;
};

}  // namespace allpass
