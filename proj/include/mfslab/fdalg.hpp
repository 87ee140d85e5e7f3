#pragma once

#include "mfslab/matrix.hpp"
#include "mfslab/report.hpp"
#include "mfslab/series.hpp"
#include "mfslab/subspace.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace mfslab {

// Commutative associative unital algebra of finite dimension, presented by its
// structure-constant tensor over an exact coefficient ring (Rational for the
// classical algebras, SeriesElem for t-dependent products).
template <class R>
struct FDAlgebra {
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<R>>> C;  // C[i][j] = product e_i * e_j as a coefficient vector
    std::vector<R> unit;

    int dim() const { return static_cast<int>(labels.size()); }

    static FDAlgebra zeros(std::vector<std::string> labels_) {
        FDAlgebra a;
        a.labels = std::move(labels_);
        int n = a.dim();
        a.C.assign(n, std::vector<std::vector<R>>(n, std::vector<R>(n)));
        a.unit.assign(n, R{});
        return a;
    }

    const std::vector<R>& mul_basis(int i, int j) const { return C[i][j]; }

    std::vector<R> multiply(const std::vector<R>& x, const std::vector<R>& y) const {
        if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
            throw std::invalid_argument("vector length differs from algebra dimension");
        std::vector<R> out(dim());
        for (int i = 0; i < dim(); ++i) {
            if (scalar_is_zero(x[i])) continue;
            for (int j = 0; j < dim(); ++j) {
                if (scalar_is_zero(y[j])) continue;
                R f = x[i] * y[j];
                for (int k = 0; k < dim(); ++k) out[k] += f * C[i][j][k];
            }
        }
        return out;
    }

    int label_index(const std::string& name) const {
        for (int i = 0; i < dim(); ++i)
            if (labels[i] == name) return i;
        return -1;
    }
};

using QAlgebra = FDAlgebra<Rational>;

template <class R>
Report algebra_check(const FDAlgebra<R>& a) {
    Report rep;
    int n = a.dim();
    bool comm = true, assoc = true, unital = true;
    std::string cw, aw, uw;
    for (int i = 0; i < n && comm; ++i)
        for (int j = i + 1; j < n && comm; ++j)
            for (int k = 0; k < n; ++k)
                if (!scalar_is_zero(a.C[i][j][k] - a.C[j][i][k])) {
                    comm = false;
                    cw = "(" + a.labels[i] + "," + a.labels[j] + ")";
                    break;
                }
    rep.check("commutativity", comm, cw);
    for (int i = 0; i < n && assoc; ++i)
        for (int j = 0; j < n && assoc; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<R> ij = a.C[i][j];
                std::vector<R> ek(n);
                ek[k] = scalar_one(R{});
                std::vector<R> jk = a.C[j][k];
                std::vector<R> ei(n);
                ei[i] = scalar_one(R{});
                std::vector<R> lhs = a.multiply(ij, ek);
                std::vector<R> rhs = a.multiply(ei, jk);
                for (int t = 0; t < n; ++t)
                    if (!scalar_is_zero(lhs[t] - rhs[t])) {
                        assoc = false;
                        aw = "(" + a.labels[i] + "," + a.labels[j] + "," + a.labels[k] + ")";
                        break;
                    }
                if (!assoc) break;
            }
    rep.check("associativity", assoc, aw);
    for (int j = 0; j < n && unital; ++j) {
        std::vector<R> ej(n);
        ej[j] = scalar_one(R{});
        std::vector<R> p = a.multiply(a.unit, ej);
        for (int t = 0; t < n; ++t)
            if (!scalar_is_zero(p[t] - ej[t])) {
                unital = false;
                uw = a.labels[j];
                break;
            }
    }
    rep.check("unit law", unital, uw);
    return rep;
}

// scalar_one for series demands a ring, so give the series instantiation its
// own basis-vector builder.
template <>
inline Report algebra_check<SeriesElem>(const FDAlgebra<SeriesElem>& a) = delete;

Report series_algebra_check(const FDAlgebra<SeriesElem>& a, const RingPtr& ring);

struct IdealSubspace {
    QSpan space;
    bool closed = false;  // verified multiplication-closure
};

// Smallest multiplication-closed subspace containing the generators, computed
// by saturation.
IdealSubspace ideal_generated(const QAlgebra& a, const std::vector<std::vector<Rational>>& gens);

bool is_ideal(const QAlgebra& a, const QSpan& s);

// Quotient algebra on the canonical complement of the ideal (standard unit
// vectors in pivot-free columns), together with the projection matrix from
// ambient coordinates to quotient coordinates.
struct QuotientAlgebra {
    QAlgebra algebra;
    QMat projection;                            // (quotient dim) x (ambient dim)
    std::vector<std::vector<Rational>> lifts;   // complement representatives, one per quotient basis vector
};

QuotientAlgebra quotient_algebra(const QAlgebra& a, const IdealSubspace& ideal);

}  // namespace mfslab
