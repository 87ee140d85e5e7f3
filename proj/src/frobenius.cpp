#include "mfslab/frobenius.hpp"

#include <sstream>

namespace mfslab {

namespace {

std::string vec_str(const std::vector<Rational>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rational_str(v[i]);
    return s + ")";
}

QMat mat_pow(const QMat& m, int e) {
    QMat r = QMat::identity(m.rows());
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
}

}  // namespace

QMat multiplication_matrix(const QAlgebra& a, const std::vector<Rational>& n) {
    int dim = a.dim();
    QMat m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<Rational> ej(dim);
        ej[j] = 1;
        std::vector<Rational> col = a.multiply(n, ej);
        for (int i = 0; i < dim; ++i) m(i, j) = col[i];
    }
    return m;
}

Report frobenius_check(const FrobeniusAlgebra& f) {
    Report rep = algebra_check(f.algebra);
    int n = f.algebra.dim();
    rep.check("pairing symmetric", f.pairing.is_symmetric());
    rep.check("pairing nondegenerate", f.pairing.det() != 0);
    bool frob = true;
    std::string w;
    for (int i = 0; i < n && frob; ++i)
        for (int j = 0; j < n && frob; ++j)
            for (int k = 0; k < n; ++k) {
                // <e_i o e_j, e_k> = <e_i, e_j o e_k>
                Rational lhs = 0, rhs = 0;
                for (int t = 0; t < n; ++t) {
                    lhs += f.algebra.C[i][j][t] * f.pairing(t, k);
                    rhs += f.pairing(i, t) * f.algebra.C[j][k][t];
                }
                if (lhs != rhs) {
                    frob = false;
                    w = "(" + f.algebra.labels[i] + "," + f.algebra.labels[j] + "," + f.algebra.labels[k] + ")";
                    break;
                }
            }
    rep.check("compatibility <x*y,z>=<x,y*z>", frob, w);
    return rep;
}

int nilpotent_order(const QAlgebra& a, const std::vector<Rational>& n) {
    int dim = a.dim();
    std::vector<Rational> p = n;
    bool zero = true;
    for (const auto& c : p) zero &= (c == 0);
    if (zero) throw std::invalid_argument("zero element has no nilpotent order");
    for (int d = 1; d <= dim + 1; ++d) {
        zero = true;
        for (const auto& c : p) zero &= (c == 0);
        if (zero) return d - 1;
        if (d == dim + 1) break;
        p = a.multiply(n, p);
    }
    throw std::invalid_argument("element is not nilpotent: power " + std::to_string(dim) +
                                " is still nonzero");
}

FrobeniusFiltration nilpotent_filtration(const FrobeniusAlgebra& f, const std::vector<Rational>& n) {
    nilpotent_order(f.algebra, n);  // rejects non-nilpotent elements with a witnessed error
    FrobeniusFiltration filt;
    filt.algebra = f.algebra;
    filt.levels = nilpotent_graded_levels(multiplication_matrix(f.algebra, n), f.pairing);
    return filt;
}

std::vector<FiltrationLevel> nilpotent_graded_levels(const QMat& N, const QMat& G) {
    int dim = N.rows();
    int d = -1;
    {
        QMat p = QMat::identity(dim);
        for (int k = 0; k <= dim; ++k) {
            if (p.is_zero()) { d = k; break; }
            p = p * N;
        }
    }
    if (d <= 0) throw std::invalid_argument("operator is zero-dimensional or not nilpotent");

    QSpan I = QSpan::column_space(N);
    std::vector<QSpan> Ik(d + 1);
    std::vector<QSpan> Jk(d + 1);
    Jk[0] = QSpan(dim);
    Ik[0] = I;
    for (int k = 1; k <= d; ++k) {
        Jk[k] = QSpan::kernel_of(mat_pow(N, k));
        Ik[k] = I.sum(Jk[k]);
    }
    if (!Ik[d].is_full()) throw std::logic_error("top filtration step is not the whole space");

    std::vector<FiltrationLevel> levels;
    auto pair_with = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
        Rational s = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) s += u[i] * G(i, j) * v[j];
        return s;
    };

    for (int k = 0; k <= d; ++k) {
        FiltrationLevel lvl;
        lvl.k = k;
        lvl.space = Ik[k];
        QSpan below = (k == 0) ? QSpan(dim) : Ik[k - 1];
        lvl.frame = complement_frame(below, Ik[k]);
        int m = static_cast<int>(lvl.frame.size());
        lvl.pairing = QMat(m, m);
        if (m > 0) {
            if (k == 0) {
                // (x, y)_0 = <x~, y> with x = n o x~.
                std::vector<std::vector<Rational>> pre(m);
                for (int a = 0; a < m; ++a) {
                    auto sol = N.solve(lvl.frame[a]);
                    if (!sol) throw std::logic_error("level-0 frame vector has no preimage under n");
                    pre[a] = *sol;
                }
                // Independence of the preimage: kernel vectors must pair to
                // zero with the whole level.
                QMat ker = N.kernel();
                for (int c = 0; c < ker.cols(); ++c)
                    for (int b = 0; b < m; ++b)
                        if (pair_with(ker.col(c), lvl.frame[b]) != 0)
                            throw std::logic_error("pairing at level 0 depends on the preimage choice");
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) lvl.pairing(a, b) = pair_with(pre[a], lvl.frame[b]);
            } else {
                // Representatives inside J_k, pairing <x~, y~ o n^{k-1}>.
                QMat solvem(dim, Jk[k].dim() + below.dim());
                for (int c = 0; c < Jk[k].dim(); ++c)
                    for (int i = 0; i < dim; ++i) solvem(i, c) = Jk[k].basis_rows()(c, i);
                for (int c = 0; c < below.dim(); ++c)
                    for (int i = 0; i < dim; ++i) solvem(i, Jk[k].dim() + c) = below.basis_rows()(c, i);
                std::vector<std::vector<Rational>> rep(m, std::vector<Rational>(dim));
                for (int a = 0; a < m; ++a) {
                    auto sol = solvem.solve(lvl.frame[a]);
                    if (!sol) throw std::logic_error("frame vector not in J_k + I_{k-1}");
                    for (int c = 0; c < Jk[k].dim(); ++c)
                        for (int i = 0; i < dim; ++i)
                            rep[a][i] += (*sol)[c] * Jk[k].basis_rows()(c, i);
                }
                QMat Nk1 = mat_pow(N, k - 1);
                // Degenerate directions J_{k-1} + (I ^ J_k) must pair to zero.
                QSpan degen = Jk[k - 1].sum(I.intersect(Jk[k]));
                for (const auto& z : degen.basis_vectors())
                    for (int b = 0; b < m; ++b)
                        if (pair_with(z, Nk1.apply(rep[b])) != 0)
                            throw std::logic_error("pairing at level " + std::to_string(k) +
                                                   " depends on the representative choice");
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) lvl.pairing(a, b) = pair_with(rep[a], Nk1.apply(rep[b]));
            }
            if (!lvl.pairing.is_symmetric())
                throw std::logic_error("graded pairing not symmetric at level " + std::to_string(k));
            if (lvl.pairing.det() == 0)
                throw std::logic_error("graded pairing degenerate at level " + std::to_string(k));
        }
        levels.push_back(std::move(lvl));
    }
    return levels;
}

Rational filtration_pair(const FrobeniusFiltration& filt, int k, const std::vector<Rational>& x,
                         const std::vector<Rational>& y) {
    const FiltrationLevel* lvl = filt.level(k);
    if (!lvl) throw std::invalid_argument("no level " + std::to_string(k) + " in filtration");
    int dim = filt.algebra.dim();
    QSpan below = filt.space_below(k);
    int m = static_cast<int>(lvl->frame.size());
    QMat solvem(dim, m + below.dim());
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < dim; ++i) solvem(i, c) = lvl->frame[c][i];
    for (int c = 0; c < below.dim(); ++c)
        for (int i = 0; i < dim; ++i) solvem(i, m + c) = below.basis_rows()(c, i);
    auto cx = solvem.solve(x);
    auto cy = solvem.solve(y);
    if (!cx || !cy) throw std::invalid_argument("vector not in the requested filtration step");
    Rational s = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) s += (*cx)[a] * lvl->pairing(a, b) * (*cy)[b];
    return s;
}

QuotientFiltrationResult quotient_filtration(const FrobeniusFiltration& filt, int k) {
    const FiltrationLevel* lvl = filt.level(k);
    if (!lvl) throw std::invalid_argument("invalid filtration level " + std::to_string(k));
    QuotientFiltrationResult out;
    out.quotient = quotient_algebra(filt.algebra, IdealSubspace{lvl->space, true});
    out.filtration.algebra = out.quotient.algebra;
    const QMat& proj = out.quotient.projection;
    int q = out.quotient.algebra.dim();
    for (const FiltrationLevel& l : filt.levels) {
        if (l.k <= k) continue;
        FiltrationLevel nl;
        nl.k = l.k;
        std::vector<std::vector<Rational>> vecs;
        for (int i = 0; i < l.space.dim(); ++i) vecs.push_back(proj.apply(l.space.basis_rows().row(i)));
        nl.space = QSpan::from_vectors(q, vecs);
        for (const auto& fv : l.frame) nl.frame.push_back(proj.apply(fv));
        nl.pairing = l.pairing;  // transported values are unchanged
        out.filtration.levels.push_back(std::move(nl));
    }
    return out;
}

Report filtration_check(const FrobeniusFiltration& filt) {
    Report rep;
    const QAlgebra& A = filt.algebra;
    int dim = A.dim();
    if (dim == 0) {
        rep.check("empty filtration on the zero algebra", filt.levels.empty());
        return rep;
    }
    bool increasing = true;
    for (size_t i = 0; i + 1 < filt.levels.size(); ++i) {
        increasing &= filt.levels[i].k < filt.levels[i + 1].k;
        increasing &= filt.levels[i + 1].space.contains(filt.levels[i].space);
    }
    rep.check("chain increasing", increasing);
    rep.check("exhaustive", !filt.levels.empty() && filt.levels.back().space.is_full());

    for (const FiltrationLevel& lvl : filt.levels) {
        std::string tag = " (level " + std::to_string(lvl.k) + ")";
        rep.check("ideal closure" + tag, is_ideal(A, lvl.space));
        int m = static_cast<int>(lvl.frame.size());
        rep.check("frame size matches graded rank" + tag,
                  m == lvl.space.dim() - filt.space_below(lvl.k).dim());
        if (m == 0) continue;
        rep.check("graded pairing symmetric" + tag, lvl.pairing.is_symmetric());
        rep.check("graded pairing nondegenerate" + tag, lvl.pairing.det() != 0);

        // (a o x, y)_k = (x, a o y)_k for all a in A/I_{k-1}.
        bool frob = true;
        std::string w;
        for (int b = 0; b < dim && frob; ++b) {
            std::vector<Rational> eb(dim);
            eb[b] = 1;
            for (int x = 0; x < m && frob; ++x)
                for (int y = 0; y < m; ++y) {
                    Rational lhs = filtration_pair(filt, lvl.k, A.multiply(eb, lvl.frame[x]), lvl.frame[y]);
                    Rational rhs = filtration_pair(filt, lvl.k, lvl.frame[x], A.multiply(eb, lvl.frame[y]));
                    if (lhs != rhs) {
                        frob = false;
                        w = "a=" + A.labels[b] + ", x=" + vec_str(lvl.frame[x]) + ", y=" + vec_str(lvl.frame[y]);
                        break;
                    }
                }
        }
        rep.check("compatibility (a*x,y)=(x,a*y)" + tag, frob, w);
    }
    return rep;
}

std::vector<QSpan> weight_filtration(const QMat& n_endo) {
    int dim = n_endo.rows();
    if (dim != n_endo.cols()) throw std::invalid_argument("endomorphism matrix must be square");
    int d = -1;
    {
        QMat p = QMat::identity(dim);
        for (int k = 0; k <= dim; ++k) {
            if (p.is_zero()) { d = k; break; }
            p = p * n_endo;
        }
    }
    if (d < 0) throw std::invalid_argument("endomorphism is not nilpotent");
    if (d == 0) throw std::invalid_argument("weight filtration of the zero space is empty");

    std::vector<QMat> pw(2 * d + 1, QMat::identity(dim));
    for (int k = 1; k <= 2 * d; ++k) pw[k] = pw[k - 1] * n_endo;

    std::vector<QSpan> W(2 * d - 1, QSpan(dim));
    for (int l = 0; l <= 2 * d - 2; ++l) {
        QSpan acc(dim);
        for (int j = std::max(l - d + 1, 0); j <= d - 1; ++j) {
            int im_pow = j - l + d - 1;
            if (im_pow < 0) continue;
            QSpan part = QSpan::kernel_of(pw[j + 1]).intersect(QSpan::column_space(pw[im_pow]));
            acc = acc.sum(part);
        }
        W[l] = acc;
    }
    return W;
}

Report weight_filtration_check(const QMat& n_endo, const std::vector<QSpan>& w) {
    Report rep;
    int dim = n_endo.rows();
    int d = (static_cast<int>(w.size()) + 1) / 2;
    bool increasing = true;
    for (size_t i = 0; i + 1 < w.size(); ++i) increasing &= w[i + 1].contains(w[i]);
    rep.check("weight chain increasing", increasing);
    rep.check("top weight step full", !w.empty() && w.back().is_full());

    bool shift = true;
    for (size_t l = 0; l < w.size(); ++l) {
        QSpan target = (l >= 2) ? w[l - 2] : QSpan(dim);
        for (const auto& v : w[l].basis_vectors())
            if (!target.contains(n_endo.apply(v))) { shift = false; break; }
        if (!shift) break;
    }
    rep.check("n(W_l) in W_{l-2}", shift);

    auto graded_dim = [&](int l) {
        if (l < 0 || l >= static_cast<int>(w.size())) return 0;
        int lower = (l == 0) ? 0 : w[l - 1].dim();
        return w[l].dim() - lower;
    };
    QMat pw = QMat::identity(dim);
    bool iso = true;
    for (int j = 0; j < d; ++j) {
        // n^j : Gr_{d-1+j} -> Gr_{d-1-j} must be an isomorphism.
        int hi = d - 1 + j, lo = d - 1 - j;
        if (graded_dim(hi) != graded_dim(lo)) { iso = false; break; }
        if (graded_dim(hi) > 0) {
            // Injectivity: x in W_hi with n^j x in W_{lo-1} forces x in W_{hi-1}.
            QSpan hi_space = w[hi];
            QSpan lo_below = (lo >= 1) ? w[lo - 1] : QSpan(dim);
            QSpan hi_below = (hi >= 1) ? w[hi - 1] : QSpan(dim);
            // Solve over the basis of W_hi: kernel of (x -> n^j x mod W_{lo-1}).
            int hd = hi_space.dim();
            QMat m(dim, hd + lo_below.dim());
            for (int c = 0; c < hd; ++c) {
                std::vector<Rational> img = pw.apply(hi_space.basis_rows().row(c));
                for (int i = 0; i < dim; ++i) m(i, c) = img[i];
            }
            for (int c = 0; c < lo_below.dim(); ++c)
                for (int i = 0; i < dim; ++i) m(i, hd + c) = lo_below.basis_rows()(c, i);
            QMat ker = m.kernel();
            for (int c = 0; c < ker.cols(); ++c) {
                std::vector<Rational> x(dim);
                for (int b = 0; b < hd; ++b)
                    for (int i = 0; i < dim; ++i) x[i] += ker(b, c) * hi_space.basis_rows()(b, i);
                if (!hi_below.contains(x)) { iso = false; break; }
            }
        }
        if (!iso) break;
        pw = pw * n_endo;
    }
    rep.check("n^j graded isomorphisms", iso);
    return rep;
}

}  // namespace mfslab
