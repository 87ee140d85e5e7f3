#pragma once

#include "mfslab/fdalg.hpp"

namespace mfslab {

struct FrobeniusAlgebra {
    QAlgebra algebra;
    QMat pairing;  // symmetric, nondegenerate
};

// Symmetry, nondegeneracy and <x*y,z> = <x,y*z> over all basis triples.
Report frobenius_check(const FrobeniusAlgebra& f);

// Least d with n^d = 0; throws when n is not nilpotent.
int nilpotent_order(const QAlgebra& a, const std::vector<Rational>& n);

QMat multiplication_matrix(const QAlgebra& a, const std::vector<Rational>& n);

struct FiltrationLevel {
    int k = 0;
    QSpan space;                                   // I_k
    std::vector<std::vector<Rational>> frame;      // complement representatives of I_k/I_{k-1}
    QMat pairing;                                  // Gram matrix of ( , )_k on the frame
};

// Increasing exhaustive chain of ideals with nondegenerate graded pairings.
// Levels below the first stored one are zero.
struct FrobeniusFiltration {
    QAlgebra algebra;
    std::vector<FiltrationLevel> levels;  // ascending k

    const FiltrationLevel* level(int k) const {
        for (const auto& l : levels)
            if (l.k == k) return &l;
        return nullptr;
    }
    QSpan space_below(int k) const {  // I_{k-1} as a subspace (zero if none stored)
        QSpan below(algebra.dim());
        for (const auto& l : levels)
            if (l.k < k && l.space.dim() > below.dim()) below = l.space;
        return below;
    }
};

// The filtration I_0 = (n), I_k = (n) + Ker(n^k o) with the graded pairings
// (x,y)_0 = <x~, y> (x = n o x~) and (x,y)_k = <x~, y~ o n^{k-1}> on
// representatives in Ker(n^k o). Verifies well-definedness and nondegeneracy.
FrobeniusFiltration nilpotent_filtration(const FrobeniusAlgebra& f, const std::vector<Rational>& n);

// Core of the nilpotent construction for any constant nilpotent
// multiplication operator N and constant metric G; levels k = 0..d with the
// echelon-extension frames and Gram matrices.
std::vector<FiltrationLevel> nilpotent_graded_levels(const QMat& N, const QMat& G);

// Evaluate ( x , y )_k for arbitrary x, y in I_k (classes mod I_{k-1}).
Rational filtration_pair(const FrobeniusFiltration& filt, int k, const std::vector<Rational>& x,
                         const std::vector<Rational>& y);

struct QuotientFiltrationResult {
    QuotientAlgebra quotient;
    FrobeniusFiltration filtration;  // on quotient.algebra, levels > k
};

// Induced Frobenius filtration on A / I_k.
QuotientFiltrationResult quotient_filtration(const FrobeniusFiltration& filt, int k);

// Full axiom suite: ideal closure, chain shape, exhaustiveness, symmetry,
// nondegeneracy, and the compatibility (a o x, y)_k = (x, a o y)_k over
// A/I_{k-1}.
Report filtration_check(const FrobeniusFiltration& filt);

// Monodromy weight filtration W_0 c ... c W_{2d-2} of a nilpotent
// endomorphism of order d, via the kernel/image formula
//   W_l = sum_j Ker(N^{j+1}) ^ Im(N^{j-l+d-1}).
std::vector<QSpan> weight_filtration(const QMat& n_endo);

// Defining conditions: N(W_l) c W_{l-2} and N^j inducing graded isomorphisms.
Report weight_filtration_check(const QMat& n_endo, const std::vector<QSpan>& w);

}  // namespace mfslab
