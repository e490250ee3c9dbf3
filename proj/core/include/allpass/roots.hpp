#pragma once

#include <Eigen/Dense>
#include <vector>

#include "allpass/polymat.hpp"
#include "allpass/tolerances.hpp"

namespace allpass {

enum class RootLocation { inside, on_circle, outside };
enum class RootKind { real, complex_pair };

/// A determinantal root. Complex pairs are stored once, with Im(alpha) > 0.
struct RootRecord {
    cplx alpha{};
    int multiplicity = 1;
    RootLocation location = RootLocation::outside;
    RootKind kind = RootKind::real;

    static RootRecord make(cplx alpha, int multiplicity, const Tolerances& tol = {});
};

enum class MirrorCase { real_root, degenerate_pair, generic_pair };

/// Everything the Blaschke constructions need for one root: kernel vector, orthogonal frame, and
/// (generic pairs only) the triangular factor R and its image w = R (1, i)^T.
struct MirrorPlan {
    MirrorCase mirror_case = MirrorCase::real_root;
    RootRecord root;
    Eigen::VectorXcd v;
    Eigen::MatrixXd Q;
    Eigen::Matrix2d R = Eigen::Matrix2d::Zero();
    Eigen::Vector2cd w = Eigen::Vector2cd::Zero();
    double sigma_min = 0.0;  // ||p(alpha) v||
};

namespace roots {

/// Roots of det p(z), clustered and conjugation-closed; empty when det p is a nonzero constant.
std::vector<RootRecord> det_roots(const PolyMatrix& p, const Tolerances& tol = {});

/**
 * Unit vector spanning (numerically) the right kernel of M.
 *
 * Uses the right singular vectors of the smallest singular value. When several singular values
 * tie at the minimum, the kernel is taken as their span and v is the normalized projection of the
 * first standard basis vector with a nonzero component in it. The phase is rotated so the
 * largest-modulus entry (lowest index on ties) is real and positive.
 */
Eigen::VectorXcd kernel_vector(const Eigen::MatrixXcd& M, const Tolerances& tol = {});

/// Orthogonal n x n matrix whose leading k columns are exactly V1; det = +1 when k < n.
Eigen::MatrixXd orthogonal_completion(const Eigen::MatrixXd& V1);

/// Decides real / degenerate / generic handling of r and computes the data for it.
MirrorPlan classify(const PolyMatrix& p, const RootRecord& r, const Tolerances& tol = {});

}  // namespace roots
}  // namespace allpass
