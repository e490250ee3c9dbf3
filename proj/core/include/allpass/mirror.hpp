#pragma once

#include <utility>
#include <vector>

#include "allpass/blaschke.hpp"
#include "allpass/polymat.hpp"
#include "allpass/roots.hpp"
#include "allpass/tolerances.hpp"

namespace allpass {

struct MirrorReport {
    std::vector<RootRecord> mirrored_roots;
    Method method = Method::polynomial;
    MirrorCase mirror_case = MirrorCase::real_root;
    double residual_deconv = 0.0;    // remainder of the division by den, relative to the dividend
    double max_imag = 0.0;           // imaginary residue of the factor before real projection
    double spectral_dev = 0.0;       // max_z ||p~ p~* - p p*||_F / ||p p*||_F on the unit circle
    double new_root_residual = 0.0;  // sigma_min(p~(1/conj alpha)) / scale
    double old_root_residual = 0.0;  // sigma_min(p~(alpha)) / scale
    int degree_in = 0;
    int degree_out = 0;
};

struct MirrorOptions {
    Tolerances tol{};
    int n_samples = 64;
};

struct MirrorResult {
    PolyMatrix p;
    std::vector<MirrorReport> reports;
};

namespace mirror {

/**
 * p~(z) = p(z) Q blockdiag(V(z), I): one root (one copy of a complex pair) moved to 1/conj(alpha).
 *
 * Real roots use the elementary factor and degenerate pairs the squared factor; `method` picks
 * the bivariate construction for generic pairs. The affected columns are multiplied by the factor
 * numerator and divided exactly by its denominator, so p~ stays a real polynomial matrix.
 */
std::pair<PolyMatrix, MirrorReport> mirror_once(const PolyMatrix& p, const RootRecord& r, Method method,
                                                const MirrorOptions& opts = {});

/// Mirrors every record in the selection (all copies), in order of increasing |alpha|.
MirrorResult mirror_set(const PolyMatrix& p, const std::vector<RootRecord>& selection, Method method,
                        const MirrorOptions& opts = {});

/// Repeatedly mirrors the smallest root inside the unit circle until none is left.
MirrorResult mirror_all_inside(const PolyMatrix& p, Method method, const MirrorOptions& opts = {});

/// All 2^N subsets of the records (complex pairs count once), ordered by bitmask.
std::vector<std::vector<RootRecord>> enumerate_selections(const std::vector<RootRecord>& roots);

/// max over n samples on |z| = 1 of ||a a* - b b*||_F / ||b b*||_F.
double spectral_deviation(const PolyMatrix& a, const PolyMatrix& b, int n_samples);

}  // namespace mirror
}  // namespace allpass
