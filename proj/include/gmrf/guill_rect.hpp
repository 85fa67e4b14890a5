#pragma once

#include "gmrf/face_weight.hpp"
#include "gmrf/quad_form.hpp"

namespace gmrf {

/// Horizontal gluing along the shared East(A)/West(B) segment. The shared
/// block is Schur-eliminated; the scalar picks up the complex-Gaussian
/// cocycle log gamma = q*d2*log(2pi) - log det(A_EE + B_WW).
ScaledQuadForm glue_we(const ScaledQuadForm& A, const ScaledQuadForm& B);

/// Vertical gluing along the shared North(A)/South(B) segment.
ScaledQuadForm glue_sn(const ScaledQuadForm& A, const ScaledQuadForm& B);

ScaledQuadForm to_scaled(const FaceOperator& Q);

/// Surface power Q^[p,q] by guillotine recursion: left-fold of each row with
/// glue_we, then left-fold of the rows with glue_sn.
ScaledQuadForm surface_power(const FaceOperator& Q, int p, int q);

}  // namespace gmrf
