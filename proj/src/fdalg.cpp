#include "mfslab/fdalg.hpp"

namespace mfslab {

Report series_algebra_check(const FDAlgebra<SeriesElem>& a, const RingPtr& ring) {
    Report rep;
    int n = a.dim();
    auto basis_vec = [&](int i) {
        std::vector<SeriesElem> e(n, SeriesElem(ring));
        e[i] = SeriesElem::constant(ring, Rational(1));
        return e;
    };
    bool comm = true, assoc = true, unital = true;
    std::string cw, aw, uw;
    for (int i = 0; i < n && comm; ++i)
        for (int j = i + 1; j < n && comm; ++j)
            for (int k = 0; k < n; ++k)
                if (a.C[i][j][k] != a.C[j][i][k]) {
                    comm = false;
                    cw = "(" + a.labels[i] + "," + a.labels[j] + ")";
                    break;
                }
    rep.check("commutativity", comm, cw);
    for (int i = 0; i < n && assoc; ++i)
        for (int j = 0; j < n && assoc; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<SeriesElem> lhs = a.multiply(a.C[i][j], basis_vec(k));
                std::vector<SeriesElem> rhs = a.multiply(basis_vec(i), a.C[j][k]);
                for (int t = 0; t < n; ++t)
                    if (lhs[t] != rhs[t]) {
                        assoc = false;
                        aw = "(" + a.labels[i] + "," + a.labels[j] + "," + a.labels[k] + ")";
                        break;
                    }
                if (!assoc) break;
            }
    rep.check("associativity", assoc, aw);
    for (int j = 0; j < n && unital; ++j) {
        std::vector<SeriesElem> p = a.multiply(a.unit, basis_vec(j));
        for (int t = 0; t < n; ++t)
            if (p[t] != (t == j ? SeriesElem::constant(ring, Rational(1)) : SeriesElem(ring))) {
                unital = false;
                uw = a.labels[j];
                break;
            }
    }
    rep.check("unit law", unital, uw);
    return rep;
}

IdealSubspace ideal_generated(const QAlgebra& a, const std::vector<std::vector<Rational>>& gens) {
    int n = a.dim();
    QSpan span = QSpan::from_vectors(n, gens);
    for (;;) {
        std::vector<std::vector<Rational>> next = span.basis_vectors();
        for (int b = 0; b < n; ++b) {
            std::vector<Rational> eb(n);
            eb[b] = 1;
            for (const auto& v : span.basis_vectors()) next.push_back(a.multiply(eb, v));
        }
        QSpan grown = QSpan::from_vectors(n, next);
        if (grown == span) break;
        span = grown;
    }
    return IdealSubspace{span, true};
}

bool is_ideal(const QAlgebra& a, const QSpan& s) {
    int n = a.dim();
    for (int b = 0; b < n; ++b) {
        std::vector<Rational> eb(n);
        eb[b] = 1;
        for (const auto& v : s.basis_vectors())
            if (!s.contains(a.multiply(eb, v))) return false;
    }
    return true;
}

QuotientAlgebra quotient_algebra(const QAlgebra& a, const IdealSubspace& ideal) {
    int n = a.dim();
    if (!is_ideal(a, ideal.space)) throw std::invalid_argument("subspace is not multiplication-closed");
    const QSpan& I = ideal.space;
    std::vector<bool> piv(n, false);
    for (int p : I.pivots()) piv[p] = true;

    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (!piv[j]) free_cols.push_back(j);
    int q = static_cast<int>(free_cols.size());

    // Solve x = sum c_a e_{free_a} + (element of I): stack complement lifts and
    // the ideal basis, read off the complement coefficients.
    QMat solvem(n, q + I.dim());
    for (int c = 0; c < q; ++c) solvem(free_cols[c], c) = 1;
    for (int c = 0; c < I.dim(); ++c)
        for (int i = 0; i < n; ++i) solvem(i, q + c) = I.basis_rows()(c, i);
    QMat proj(q, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> ej(n);
        ej[j] = 1;
        auto sol = solvem.solve(ej);
        if (!sol) throw std::logic_error("complement plus ideal does not span");
        for (int c = 0; c < q; ++c) proj(c, j) = (*sol)[c];
    }

    QuotientAlgebra out;
    out.projection = proj;
    std::vector<std::string> labels;
    for (int c = 0; c < q; ++c) labels.push_back("[" + a.labels[free_cols[c]] + "]");
    out.algebra = QAlgebra::zeros(labels);
    for (int c = 0; c < q; ++c) {
        std::vector<Rational> lift(n);
        lift[free_cols[c]] = 1;
        out.lifts.push_back(lift);
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) out.algebra.C[i][j] = proj.apply(a.multiply(out.lifts[i], out.lifts[j]));
    out.algebra.unit = proj.apply(a.unit);
    return out;
}

}  // namespace mfslab
