#pragma once

namespace allpass {

/// Numerical thresholds shared by all modules. Every field is overridable.
struct Tolerances {
    double imag = 1e-8;        // |Im| below which a root of a real polynomial is snapped to the real axis
    double realness = 1e-8;    // largest tolerated imaginary residue when projecting to real coefficients
    double residual = 1e-8;    // relative remainder allowed when a division is expected to be exact
    double circle = 1e-8;      // ||alpha| - 1| below which a root counts as on the unit circle
    double cluster = 1e-7;     // relative distance under which roots are merged into one multiple root
    double trim = 1e-12;       // relative magnitude under which leading coefficients are dropped
    double kernel = 1e-6;      // sigma_min(p(alpha)) / scale above which alpha is rejected as a root
    double degenerate = 1e-8;  // sigma_2 / sigma_1 of [v_r v_i] below which a pair is degenerate
    double tie = 1e-9;         // relative gap under which singular values are treated as tied

    bool valid() const noexcept {
        return imag > 0 && realness > 0 && residual > 0 && circle > 0 && cluster > 0 && trim > 0 &&
               kernel > 0 && degenerate > 0 && tie > 0;
    }
};

}  // namespace allpass
