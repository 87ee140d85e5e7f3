#pragma once

#include "mfslab/frobenius.hpp"

#include <map>

namespace mfslab {

// Cohomology data of a polarized surface: the primitive degree-2 block with
// its intersection pairing, and K = the self-intersection of the polarization
// class. The caller asserts vanishing (2,0)/(0,2) Hodge numbers and even first
// Betti number; K > 0 is enforced.
struct SurfaceHodgeInput {
    int prim_dim = 0;
    QMat prim_pairing;  // prim_dim x prim_dim, symmetric (negative definite for honest inputs)
    Rational K;
};

// The real mixed Hodge structure carried by the surface cohomology, with the
// twisted real structure spanned by 1 + c n + c^2/2 n^2, n + c n^2, the
// primitive classes, and n^2.  Ambient complex coordinates are taken in the
// basis (1, n, p_1..p_m, n^2).
struct MHSData {
    SurfaceHodgeInput input;
    GaussianRational c;      // purely imaginary twist parameter
    int dim = 0;             // prim_dim + 3
    QAlgebra algebra;        // the surface algebra over Q in the same basis
    QMat intersection;       // its Poincare pairing
    GMat real_basis;         // columns v1, v2, p_i, v4 in ambient coordinates
    std::vector<GSpan> weight;  // W_1, W_2, W_3, W_4 (complexified)
    std::vector<GSpan> hodge;   // F^2, F^1, F^0
    std::map<int, QMat> Q;      // graded polarization forms on the real frames of Gr_1, Gr_2, Gr_4
};

// c defaults to sqrt(-1); a different purely imaginary c = (c_im)i changes
// only the real structure and the weight filtration, the forms Q_k are tied to
// c = sqrt(-1).
MHSData build_mhs(const SurfaceHodgeInput& input, const Rational& c_im = Rational(1));

// The nonzero cells (1,0), (0,1), (1,1), (2,2); verified against the abstract
// decomposition F^p(Gr_k) ^ conj(F^q(Gr_k)) before returning.
std::map<std::pair<int, int>, GSpan> hodge_table(const MHSData& m);

// Positive definiteness of the Hermitian forms H_k(x,y) = Q_k(Cx, conj(y))
// via exact leading principal minors; also cross-checks Q_k against the
// Weil-operator expression through the graded Frobenius pairings.
Report polarization_check(const MHSData& m);

// Conjugation with respect to the twisted real structure.
std::vector<GaussianRational> mhs_conjugate(const MHSData& m, const std::vector<GaussianRational>& x);

}  // namespace mfslab
