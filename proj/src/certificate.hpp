#pragma once

#include "ensemble.hpp"
#include "solution.hpp"

#include <span>

namespace uqsd {

/// Builds the rank-one dual certificate Y = conj(y) y^T for the relaxed
/// optimum of the given branch: |y_i| = sqrt(prior_i) with the branch's
/// canonical phases, transported to the actual (un-normalized) phases of
/// the Gram matrix. Throws TriangleClosureFailure if the triangle-branch
/// phase construction fails to close, which cannot happen when the
/// triangle condition held.
DualCertificate build_certificate(const Ensemble& e, Branch branch,
                                  std::span<const double> x_relaxed);

/// Recomputes the four certificate residuals from scratch and marks the
/// report CERTIFIED when all pass their fixed thresholds. Failures are
/// data, not exceptions.
VerificationReport verify(const Ensemble& e, const Solution& s,
                          const DualCertificate& c);

/// tr(YN) for a dual-feasible Y: the branch certificate when the ensemble
/// has an analytic branch, otherwise the cube-root-of-unity construction,
/// which is feasible for any ensemble. Upper-bounds the success
/// probability in every case (weak duality).
double default_dual_bound(const Ensemble& e);

} // namespace uqsd
