#include "mfslab/mfs.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mfslab {

namespace {

SeriesElem zero_of(const RingPtr& r) { return SeriesElem(r); }


// Map a series through the substitution old_x_i = sum_j M(i,j) new_x_j into a
// ring whose poly vars are the new coordinate names (old exp vars carried over
// by name with rebased dlog data).
SeriesElem map_series(const SeriesElem& s, const RingPtr& old_ring, const RingPtr& new_ring,
                      const QMat& M) {
    if (s.is_zero()) return SeriesElem(new_ring);
    int np_old = old_ring->npoly();
    std::vector<SeriesElem> images(np_old);
    for (int i = 0; i < np_old; ++i) {
        SeriesElem im(new_ring);
        for (int j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0) im += SeriesElem::poly(new_ring, new_ring->poly_vars()[j]) * M(i, j);
        images[i] = im;
    }
    SeriesElem out(new_ring);
    for (const auto& [k, c] : s.terms()) {
        TermKey nk{std::vector<int>(new_ring->nexp(), 0), std::vector<int>(new_ring->npoly(), 0)};
        for (int e = 0; e < old_ring->nexp(); ++e) {
            if (k.beta[e] == 0) continue;
            int ne = new_ring->exp_index(old_ring->exp_vars()[e].name);
            if (ne < 0) throw std::logic_error("exp var lost in frame change");
            nk.beta[ne] = k.beta[e];
        }
        SeriesElem piece = SeriesElem::monomial(new_ring, nk, c);
        for (int i = 0; i < np_old; ++i)
            for (int t = 0; t < k.mono[i]; ++t) piece = piece * images[i];
        out += piece;
    }
    return out;
}

void require_coord_ring(const RingPtr& ring, const std::vector<std::string>& names) {
    if (!ring) throw std::invalid_argument("missing series ring");
    if (ring->poly_vars() != names)
        throw std::invalid_argument("ring poly vars must coincide with the flat coordinates");
}

}  // namespace

SeriesElem EulerField::component(const RingPtr& ring, const std::vector<std::string>& names, int i) const {
    SeriesElem e = SeriesElem::constant(ring, constant[i]);
    for (int j = 0; j < linear.cols(); ++j)
        if (linear(i, j) != 0) e += SeriesElem::poly(ring, names[j]) * linear(i, j);
    return e;
}

SeriesElem EulerField::apply(const RingPtr& ring, const std::vector<std::string>& names,
                             const SeriesElem& f) const {
    SeriesElem out(ring);
    for (size_t i = 0; i < names.size(); ++i) out += component(ring, names, static_cast<int>(i)) * f.derive(names[i]);
    return out;
}

std::vector<int> MFSData::coords_at(int k) const {
    std::vector<int> out;
    for (size_t i = 0; i < level.size(); ++i)
        if (level[i] == k) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> MFSData::level_list() const {
    std::vector<int> out;
    for (int l : level)
        if (out.empty() || out.back() != l) out.push_back(l);
    return out;
}

std::vector<SeriesElem> MFSData::multiply(const std::vector<SeriesElem>& x,
                                          const std::vector<SeriesElem>& y) const {
    int n = dim();
    std::vector<SeriesElem> out(n, SeriesElem(ring));
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            SeriesElem f = x[i] * y[j];
            for (int k = 0; k < n; ++k) out[k] += f * C[i][j][k];
        }
    }
    return out;
}

Report frobenius_structure_check(const FrobStructureData& f) {
    Report rep;
    require_coord_ring(f.ring, f.names);
    int n = f.dim();
    const RingPtr& R = f.ring;

    rep.check("metric symmetric", f.metric.is_symmetric());
    rep.check("metric nondegenerate", f.metric.det() != 0);
    rep.pass("metric constant (by flat-frame representation)");
    rep.pass("connection flat and torsion free (trivial in flat coordinates)");

    bool comm = true, assoc = true;
    std::string cw, aw;
    for (int i = 0; i < n && comm; ++i)
        for (int j = i + 1; j < n && comm; ++j)
            for (int k = 0; k < n; ++k)
                if (f.C[i][j][k] != f.C[j][i][k]) { comm = false; cw = f.names[i] + "," + f.names[j]; break; }
    rep.check("multiplication commutative", comm, cw);

    auto basis_vec = [&](int i) {
        std::vector<SeriesElem> e(n, zero_of(R));
        e[i] = SeriesElem::constant(R, 1);
        return e;
    };
    auto mult = [&](const std::vector<SeriesElem>& x, const std::vector<SeriesElem>& y) {
        std::vector<SeriesElem> out(n, zero_of(R));
        for (int i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (y[j].is_zero()) continue;
                SeriesElem s = x[i] * y[j];
                for (int k = 0; k < n; ++k) out[k] += s * f.C[i][j][k];
            }
        }
        return out;
    };
    for (int i = 0; i < n && assoc; ++i)
        for (int j = 0; j < n && assoc; ++j)
            for (int k = 0; k < n; ++k) {
                auto lhs = mult(f.C[i][j], basis_vec(k));
                auto rhs = mult(basis_vec(i), f.C[j][k]);
                bool ok = true;
                for (int t = 0; t < n; ++t) ok &= lhs[t] == rhs[t];
                if (!ok) { assoc = false; aw = f.names[i] + "," + f.names[j] + "," + f.names[k]; break; }
            }
    rep.check("multiplication associative (at truncation order)", assoc, aw);

    bool unital = true;
    std::string uw;
    for (int j = 0; j < n && unital; ++j) {
        std::vector<SeriesElem> ucoef(n, zero_of(R));
        for (int i = 0; i < n; ++i) ucoef[i] = SeriesElem::constant(R, f.unit[i]);
        auto p = mult(ucoef, basis_vec(j));
        for (int t = 0; t < n; ++t)
            if (p[t] != (t == j ? SeriesElem::constant(R, 1) : zero_of(R))) { unital = false; uw = f.names[j]; break; }
    }
    rep.check("unit acts as identity and is flat", unital, uw);

    // <x o y, z> = <x, y o z> fiberwise.
    bool frob = true;
    std::string fw;
    for (int i = 0; i < n && frob; ++i)
        for (int j = 0; j < n && frob; ++j)
            for (int k = 0; k < n; ++k) {
                SeriesElem lhs(R), rhs(R);
                for (int t = 0; t < n; ++t) {
                    lhs += f.C[i][j][t] * f.metric(t, k);
                    rhs += f.C[j][k][t] * f.metric(i, t);
                }
                if (lhs != rhs) { frob = false; fw = f.names[i] + "," + f.names[j] + "," + f.names[k]; break; }
            }
    rep.check("metric compatible with multiplication", frob, fw);

    // Potential symmetry: with c_{ijk} = <d_i, d_j o d_k>, require
    // d_l c_{ijk} = d_k c_{ijl}.
    bool pot = true;
    std::string pw;
    for (int i = 0; i < n && pot; ++i)
        for (int j = 0; j < n && pot; ++j)
            for (int k = 0; k < n && pot; ++k)
                for (int l = 0; l < n; ++l) {
                    SeriesElem cijk(R), cijl(R);
                    for (int t = 0; t < n; ++t) {
                        cijk += f.C[j][k][t] * f.metric(i, t);
                        cijl += f.C[j][l][t] * f.metric(i, t);
                    }
                    if (cijk.derive(f.names[l]) != cijl.derive(f.names[k])) {
                        pot = false;
                        pw = f.names[i] + "," + f.names[j] + ";" + f.names[k] + "<->" + f.names[l];
                        break;
                    }
                }
    rep.check("potential symmetry of the structure tensor", pot, pw);

    rep.pass("Euler field affine linear (by representation)");

    // [E, x o y] - [E,x] o y - x o [E,y] = x o y on flat basis fields.
    bool e1 = true;
    std::string e1w;
    for (int i = 0; i < n && e1; ++i)
        for (int j = 0; j < n && e1; ++j)
            for (int k = 0; k < n; ++k) {
                SeriesElem lhs = f.euler.apply(R, f.names, f.C[i][j][k]);
                for (int l = 0; l < n; ++l) {
                    lhs += f.euler.linear(l, i) * f.C[l][j][k];
                    lhs += f.euler.linear(l, j) * f.C[i][l][k];
                    lhs -= f.C[i][j][l] * f.euler.linear(k, l);
                }
                if (lhs != f.C[i][j][k]) { e1 = false; e1w = f.names[i] + "," + f.names[j] + "->" + f.names[k]; break; }
            }
    rep.check("Euler grading of the multiplication", e1, e1w);

    bool e3 = true;
    std::string e3w;
    for (int i = 0; i < n && e3; ++i)
        for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int l = 0; l < n; ++l) s += f.euler.linear(l, i) * f.metric(l, j) + f.euler.linear(l, j) * f.metric(i, l);
            if (s != (Rational(2) - f.D) * f.metric(i, j)) { e3 = false; e3w = f.names[i] + "," + f.names[j]; break; }
        }
    rep.check("Euler scaling of the metric (charge D)", e3, e3w);

    return rep;
}

Report mfs_check(const MFSData& m) {
    Report rep;
    require_coord_ring(m.ring, m.names);
    int n = m.dim();
    const RingPtr& R = m.ring;
    if (!std::is_sorted(m.level.begin(), m.level.end()))
        throw std::invalid_argument("coordinates must be ordered by ascending level");

    for (int k : m.level_list()) {
        auto idx = m.coords_at(k);
        std::string tag = " (level " + std::to_string(k) + ")";
        auto it = m.eta.find(k);
        if (it == m.eta.end() || it->second.rows() != static_cast<int>(idx.size())) {
            rep.fail("graded pairing present" + tag, "missing or wrong size");
            continue;
        }
        rep.check("graded pairing symmetric" + tag, it->second.is_symmetric());
        rep.check("graded pairing invertible" + tag, it->second.det() != 0);
    }
    rep.pass("graded pairings constant (by flat-frame representation)");

    bool comm = true;
    std::string w;
    for (int i = 0; i < n && comm; ++i)
        for (int j = i + 1; j < n && comm; ++j)
            for (int k = 0; k < n; ++k)
                if (m.C[i][j][k] != m.C[j][i][k]) { comm = false; w = m.names[i] + "," + m.names[j]; break; }
    rep.check("multiplication commutative", comm, w);

    auto basis_vec = [&](int i) {
        std::vector<SeriesElem> e(n, zero_of(R));
        e[i] = SeriesElem::constant(R, 1);
        return e;
    };
    bool assoc = true;
    w.clear();
    for (int i = 0; i < n && assoc; ++i)
        for (int j = 0; j < n && assoc; ++j)
            for (int k = 0; k < n; ++k) {
                auto lhs = m.multiply(m.C[i][j], basis_vec(k));
                auto rhs = m.multiply(basis_vec(i), m.C[j][k]);
                bool ok = true;
                for (int t = 0; t < n; ++t) ok &= lhs[t] == rhs[t];
                if (!ok) { assoc = false; w = m.names[i] + "," + m.names[j] + "," + m.names[k]; break; }
            }
    rep.check("multiplication associative (at truncation order)", assoc, w);

    bool unital = true;
    w.clear();
    {
        std::vector<SeriesElem> ucoef(n, zero_of(R));
        for (int i = 0; i < n; ++i) ucoef[i] = SeriesElem::constant(R, m.unit[i]);
        for (int j = 0; j < n && unital; ++j) {
            auto p = m.multiply(ucoef, basis_vec(j));
            for (int t = 0; t < n; ++t)
                if (p[t] != (t == j ? SeriesElem::constant(R, 1) : zero_of(R))) { unital = false; w = m.names[j]; break; }
        }
    }
    rep.check("unit acts as identity and is flat", unital, w);

    // Ideal condition: no product climbs above the level of either factor.
    bool ideal = true;
    w.clear();
    for (int i = 0; i < n && ideal; ++i)
        for (int j = 0; j < n && ideal; ++j)
            for (int k = 0; k < n; ++k)
                if (m.level[k] > std::min(m.level[i], m.level[j]) && !m.C[i][j][k].is_zero()) {
                    ideal = false;
                    w = m.names[i] + "o" + m.names[j] + " hits " + m.names[k];
                    break;
                }
    rep.check("filtration steps are ideals", ideal, w);

    // Graded compatibility of eta with the induced multiplication.
    bool gfrob = true;
    w.clear();
    for (int k : m.level_list()) {
        auto idx = m.coords_at(k);
        const QMat& eta = m.eta.at(k);
        for (int lc = 0; lc < n && gfrob; ++lc)
            for (size_t a = 0; a < idx.size() && gfrob; ++a)
                for (size_t b = 0; b < idx.size(); ++b) {
                    SeriesElem lhs(R), rhs(R);
                    for (size_t d = 0; d < idx.size(); ++d) {
                        lhs += m.C[lc][idx[b]][idx[d]] * eta(static_cast<int>(d), static_cast<int>(a));
                        rhs += m.C[lc][idx[a]][idx[d]] * eta(static_cast<int>(d), static_cast<int>(b));
                    }
                    if (lhs != rhs) {
                        gfrob = false;
                        w = "a=" + m.names[lc] + " x=" + m.names[idx[a]] + " y=" + m.names[idx[b]];
                        break;
                    }
                }
    }
    rep.check("graded pairings compatible with multiplication", gfrob, w);

    // Structure-constant symmetry under flat derivatives.
    bool csym = true;
    w.clear();
    for (int k : m.level_list()) {
        auto idx = m.coords_at(k);
        for (size_t a = 0; a < idx.size() && csym; ++a)
            for (size_t b = 0; b < idx.size() && csym; ++b)
                for (int lc = 0; lc < n && csym; ++lc)
                    for (int jd = 0; jd < n; ++jd) {
                        const SeriesElem& c1 = m.C[idx[a]][lc][idx[b]];
                        if (m.level[jd] < k) {
                            if (!c1.derive(m.names[jd]).is_zero()) {
                                csym = false;
                                w = "d/d" + m.names[jd] + " of C[" + m.names[idx[a]] + "][" + m.names[lc] + "]";
                                break;
                            }
                            continue;
                        }
                        if (m.level[lc] < k) continue;
                        const SeriesElem& c2 = m.C[idx[a]][jd][idx[b]];
                        if (c1.derive(m.names[jd]) != c2.derive(m.names[lc])) {
                            csym = false;
                            w = "C[" + m.names[idx[a]] + "] mixing " + m.names[lc] + "," + m.names[jd];
                            break;
                        }
                    }
    }
    rep.check("structure constants have symmetric flat derivatives", csym, w);

    // Euler field: affine linear with no dependence of E^{ka} on lower levels.
    bool elin = true;
    w.clear();
    for (int i = 0; i < n && elin; ++i)
        for (int j = 0; j < n; ++j)
            if (m.level[j] < m.level[i] && m.euler.linear(i, j) != 0) {
                elin = false;
                w = "dE^" + m.names[i] + "/d" + m.names[j];
                break;
            }
    rep.check("Euler components blind to lower levels", elin, w);

    // Euler grading of the projected multiplication.
    bool emul = true;
    w.clear();
    for (int k : m.level_list()) {
        auto idx = m.coords_at(k);
        for (int la = 0; la < n && emul; ++la)
            for (size_t b = 0; b < idx.size() && emul; ++b)
                for (size_t c = 0; c < idx.size(); ++c) {
                    int kb = idx[b], kc = idx[c];
                    SeriesElem lhs(R);
                    for (int jd = 0; jd < n; ++jd) {
                        if (m.level[jd] < k) continue;
                        SeriesElem prod = m.euler.component(R, m.names, jd) * m.C[jd][kb][kc];
                        lhs += prod.derive(m.names[la]);
                    }
                    for (size_t d = 0; d < idx.size(); ++d) {
                        lhs -= m.C[la][kb][idx[d]] * m.euler.linear(kc, idx[d]);
                        lhs += m.C[la][idx[d]][kc] * m.euler.linear(idx[d], kb);
                    }
                    if (lhs != m.C[la][kb][kc]) {
                        emul = false;
                        w = m.names[la] + ";" + m.names[kb] + "->" + m.names[kc];
                        break;
                    }
                }
    }
    rep.check("Euler grading of the multiplication", emul, w);

    // Euler scaling of the graded pairings: (2 - D + k) per level.
    bool emet = true;
    w.clear();
    for (int k : m.level_list()) {
        auto idx = m.coords_at(k);
        const QMat& eta = m.eta.at(k);
        for (size_t a = 0; a < idx.size() && emet; ++a)
            for (size_t b = 0; b < idx.size(); ++b) {
                Rational s = 0;
                for (size_t c = 0; c < idx.size(); ++c)
                    s += eta(static_cast<int>(b), static_cast<int>(c)) * m.euler.linear(idx[c], idx[a]) +
                         eta(static_cast<int>(a), static_cast<int>(c)) * m.euler.linear(idx[c], idx[b]);
                if (s != (Rational(2) - m.D + k) * eta(static_cast<int>(a), static_cast<int>(b))) {
                    emet = false;
                    w = "level " + std::to_string(k) + " (" + m.names[idx[a]] + "," + m.names[idx[b]] + ")";
                    break;
                }
            }
    }
    rep.check("Euler scaling of the graded pairings", emet, w);

    return rep;
}

QMat nilpotent_adapted_frame(const FrobStructureData& f, const std::vector<Rational>& n,
                             std::vector<int>* levels_out) {
    int dim = f.dim();
    QMat N(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            SeriesElem s(f.ring);
            for (int a = 0; a < dim; ++a)
                if (n[a] != 0) s += f.C[a][i][k] * n[a];
            if (!s.is_constant())
                throw std::invalid_argument("multiplication by n is not a constant matrix");
            N(k, i) = s.constant_value();
        }
    auto levels = nilpotent_graded_levels(N, f.metric);
    int total = 0;
    for (const auto& l : levels) total += static_cast<int>(l.frame.size());
    QMat M(dim, total);
    int col = 0;
    if (levels_out) levels_out->clear();
    for (const auto& l : levels)
        for (const auto& v : l.frame) {
            for (int i = 0; i < dim; ++i) M(i, col) = v[i];
            if (levels_out) levels_out->push_back(l.k);
            ++col;
        }
    return M;
}

MFSData mfs_from_nilpotent(const FrobStructureData& f, const std::vector<Rational>& n) {
    require_coord_ring(f.ring, f.names);
    int dim = f.dim();

    // Constant multiplication operator of n.
    QMat N(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            SeriesElem s(f.ring);
            for (int a = 0; a < dim; ++a)
                if (n[a] != 0) s += f.C[a][i][k] * n[a];
            if (!s.is_constant())
                throw std::invalid_argument("multiplication by n is not a constant matrix");
            N(k, i) = s.constant_value();
        }

    // [E, n] = 0 for the constant field n.
    {
        std::vector<Rational> an = f.euler.linear.apply(n);
        for (const Rational& x : an)
            if (x != 0) throw std::invalid_argument("[E, n] != 0 for the supplied field");
    }

    // Element powers: nilpotency and the derived grading [E, n^k] = (k-1) n^k.
    {
        std::vector<Rational> p = n;
        int d = 0;
        for (int k = 1; k <= dim + 1; ++k) {
            bool zero = true;
            for (const Rational& x : p) zero &= (x == 0);
            if (zero) { d = k - 1; break; }
            std::vector<Rational> bracket = f.euler.linear.apply(p);
            for (int i = 0; i < dim; ++i)
                if (-bracket[i] != Rational(k - 1) * p[i])
                    throw std::invalid_argument("[E, n^k] != (k-1) n^k at k = " + std::to_string(k));
            p = N.apply(p);
        }
        if (d == 0) throw std::invalid_argument("n is not nilpotent");
    }

    auto graded = nilpotent_graded_levels(N, f.metric);

    // Assemble the adapted frame, ordered by level.
    std::vector<int> levels;
    QMat M(dim, dim);
    int col = 0;
    for (const auto& l : graded)
        for (const auto& v : l.frame) {
            for (int i = 0; i < dim; ++i) M(i, col) = v[i];
            levels.push_back(l.k);
            ++col;
        }
    if (col != dim) throw std::logic_error("adapted frame does not span");
    auto Minv_opt = M.inverse();
    if (!Minv_opt) throw std::logic_error("adapted frame is singular");
    const QMat& Minv = *Minv_opt;

    // Names: keep an old coordinate name when the frame vector is that exact
    // coordinate direction, otherwise synthesize one.
    std::vector<std::string> new_names(dim);
    for (int j = 0; j < dim; ++j) {
        int hit = -1;
        bool unitvec = true;
        for (int i = 0; i < dim; ++i) {
            if (M(i, j) == 0) continue;
            if (M(i, j) != 1 || hit >= 0) { unitvec = false; break; }
            hit = i;
        }
        if (unitvec && hit >= 0)
            new_names[j] = f.names[hit];
        else
            new_names[j] = "w" + std::to_string(levels[j]) + "_" + std::to_string(j);
    }

    // New ring: coordinates renamed, exponential dlog data rebased.
    std::vector<ExpVar> new_exp;
    for (const ExpVar& ev : f.ring->exp_vars()) {
        ExpVar ne{ev.name, {}, ev.hbar};
        for (int j = 0; j < dim; ++j) {
            Rational c = 0;
            for (int i = 0; i < dim; ++i) {
                auto it = ev.dlog.find(f.names[i]);
                if (it != ev.dlog.end()) c += M(i, j) * it->second;
            }
            if (c != 0) ne.dlog[new_names[j]] = c;
        }
        new_exp.push_back(std::move(ne));
    }
    RingPtr nr = SeriesRing::make(new_names, new_exp, f.ring->order());

    // Transform the structure constants: contract with M twice and Minv once.
    CTensor mapped(dim, std::vector<std::vector<SeriesElem>>(dim, std::vector<SeriesElem>(dim)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) mapped[i][j][k] = map_series(f.C[i][j][k], f.ring, nr, M);
    CTensor t1(dim, std::vector<std::vector<SeriesElem>>(dim, std::vector<SeriesElem>(dim, SeriesElem(nr))));
    for (int a = 0; a < dim; ++a)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                SeriesElem s(nr);
                for (int i = 0; i < dim; ++i)
                    if (M(i, a) != 0) s += mapped[i][j][k] * M(i, a);
                t1[a][j][k] = s;
            }
    CTensor t2(dim, std::vector<std::vector<SeriesElem>>(dim, std::vector<SeriesElem>(dim, SeriesElem(nr))));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int k = 0; k < dim; ++k) {
                SeriesElem s(nr);
                for (int j = 0; j < dim; ++j)
                    if (M(j, b) != 0) s += t1[a][j][k] * M(j, b);
                t2[a][b][k] = s;
            }
    CTensor nc(dim, std::vector<std::vector<SeriesElem>>(dim, std::vector<SeriesElem>(dim, SeriesElem(nr))));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) {
                SeriesElem s(nr);
                for (int k = 0; k < dim; ++k)
                    if (Minv(c, k) != 0) s += t2[a][b][k] * Minv(c, k);
                nc[a][b][c] = s;
            }

    MFSData out;
    out.ring = nr;
    out.names = new_names;
    out.level = levels;
    out.C = std::move(nc);
    for (const auto& l : graded)
        if (!l.frame.empty()) out.eta[l.k] = l.pairing;
    out.euler.linear = Minv * f.euler.linear * M;
    out.euler.constant = Minv.apply(f.euler.constant);
    out.D = f.D + 1;
    out.unit = Minv.apply(f.unit);
    return out;
}

MFSData transversal_slice(const MFSData& m, int k, const std::map<std::string, Rational>& slice_values) {
    require_coord_ring(m.ring, m.names);
    int n = m.dim();
    std::vector<int> kept;
    std::vector<int> dropped;
    for (int i = 0; i < n; ++i) (m.level[i] > k ? kept : dropped).push_back(i);

    auto value_of = [&](int i) {
        auto it = slice_values.find(m.names[i]);
        return it == slice_values.end() ? Rational(0) : it->second;
    };

    // Exponential generators that still depend on kept coordinates survive with
    // restricted dlog data; fully frozen ones evaluate to a constant, which is
    // transcendental unless the frozen value is 0.
    std::vector<std::string> kept_names;
    for (int i : kept) kept_names.push_back(m.names[i]);
    std::vector<ExpVar> new_exp;
    std::vector<std::string> frozen_exp;
    for (const ExpVar& ev : m.ring->exp_vars()) {
        ExpVar ne{ev.name, {}, ev.hbar};
        for (int i : kept) {
            auto it = ev.dlog.find(m.names[i]);
            if (it != ev.dlog.end()) ne.dlog[m.names[i]] = it->second;
        }
        for (int i : dropped) {
            auto it = ev.dlog.find(m.names[i]);
            if (it != ev.dlog.end() && value_of(i) != 0)
                throw std::invalid_argument("cannot freeze exponential coordinate " + m.names[i] +
                                            " at a nonzero value");
        }
        if (ne.dlog.empty())
            frozen_exp.push_back(ev.name);
        else
            new_exp.push_back(std::move(ne));
    }
    RingPtr nr = SeriesRing::make(kept_names, new_exp, m.ring->order());

    auto restrict_series = [&](SeriesElem s) {
        for (int i : dropped) s = s.specialize_poly(m.names[i], value_of(i));
        for (const std::string& name : frozen_exp) s = s.specialize_exp(name, 1);
        return s.cast(nr);
    };

    int q = static_cast<int>(kept.size());
    MFSData out;
    out.ring = nr;
    out.names = kept_names;
    for (int i : kept) out.level.push_back(m.level[i]);
    out.C.assign(q, std::vector<std::vector<SeriesElem>>(q, std::vector<SeriesElem>(q, SeriesElem(nr))));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) out.C[a][b][c] = restrict_series(m.C[kept[a]][kept[b]][kept[c]]);
    for (const auto& [lv, eta] : m.eta)
        if (lv > k) out.eta.emplace(lv, eta);
    out.euler.linear = QMat(q, q);
    out.euler.constant.assign(q, Rational(0));
    for (int a = 0; a < q; ++a) {
        out.euler.constant[a] = m.euler.constant[kept[a]];
        for (int b = 0; b < q; ++b) out.euler.linear(a, b) = m.euler.linear(kept[a], kept[b]);
        for (int i : dropped) {
            if (m.euler.linear(kept[a], i) != 0)
                throw std::invalid_argument("Euler component depends on a frozen coordinate");
        }
    }
    out.D = m.D;
    for (int i : dropped)
        if (m.unit[i] != 0) throw std::invalid_argument("unit field does not survive the slice");
    for (int i : kept) out.unit.push_back(m.unit[i]);
    return out;
}

MFSData change_mfs_frame(const MFSData& m, const QMat& M, const std::vector<std::string>& new_names,
                         const std::vector<int>& new_levels) {
    require_coord_ring(m.ring, m.names);
    int n = m.dim();
    if (M.rows() != n || M.cols() != n) throw std::invalid_argument("frame matrix shape mismatch");
    auto Minv_opt = M.inverse();
    if (!Minv_opt) throw std::invalid_argument("frame matrix is singular");
    const QMat& Minv = *Minv_opt;
    if (!std::is_sorted(new_levels.begin(), new_levels.end()))
        throw std::invalid_argument("new frame must be ordered by level");
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (M(i, j) != 0 && m.level[i] > new_levels[j])
                throw std::invalid_argument("frame change is not compatible with the filtration");

    std::vector<ExpVar> new_exp;
    for (const ExpVar& ev : m.ring->exp_vars()) {
        ExpVar ne{ev.name, {}, ev.hbar};
        for (int j = 0; j < n; ++j) {
            Rational c = 0;
            for (int i = 0; i < n; ++i) {
                auto it = ev.dlog.find(m.names[i]);
                if (it != ev.dlog.end()) c += M(i, j) * it->second;
            }
            if (c != 0) ne.dlog[new_names[j]] = c;
        }
        new_exp.push_back(std::move(ne));
    }
    RingPtr nr = SeriesRing::make(new_names, new_exp, m.ring->order());

    CTensor mapped(n, std::vector<std::vector<SeriesElem>>(n, std::vector<SeriesElem>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) mapped[i][j][k] = map_series(m.C[i][j][k], m.ring, nr, M);

    MFSData out;
    out.ring = nr;
    out.names = new_names;
    out.level = new_levels;
    out.C.assign(n, std::vector<std::vector<SeriesElem>>(n, std::vector<SeriesElem>(n, SeriesElem(nr))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                SeriesElem s(nr);
                for (int i = 0; i < n; ++i) {
                    if (M(i, a) == 0) continue;
                    for (int j = 0; j < n; ++j) {
                        if (M(j, b) == 0) continue;
                        for (int k = 0; k < n; ++k) {
                            if (Minv(c, k) == 0) continue;
                            s += mapped[i][j][k] * (M(i, a) * M(j, b) * Minv(c, k));
                        }
                    }
                }
                out.C[a][b][c] = s;
            }

    // Per-level congruence of the pairings by the level-diagonal block.
    for (const auto& [lv, eta] : m.eta) {
        std::vector<int> old_idx, new_idx;
        for (int i = 0; i < n; ++i) {
            if (m.level[i] == lv) old_idx.push_back(i);
            if (new_levels[i] == lv) new_idx.push_back(i);
        }
        if (old_idx.size() != new_idx.size())
            throw std::invalid_argument("frame change must preserve graded ranks");
        int mk = static_cast<int>(old_idx.size());
        QMat neta(mk, mk);
        for (int a = 0; a < mk; ++a)
            for (int b = 0; b < mk; ++b) {
                Rational s = 0;
                for (int i = 0; i < mk; ++i)
                    for (int j = 0; j < mk; ++j)
                        s += M(old_idx[i], new_idx[a]) * eta(i, j) * M(old_idx[j], new_idx[b]);
                neta(a, b) = s;
            }
        out.eta.emplace(lv, neta);
    }
    out.euler.linear = Minv * m.euler.linear * M;
    out.euler.constant = Minv.apply(m.euler.constant);
    out.D = m.D;
    out.unit = Minv.apply(m.unit);
    return out;
}

bool mfs_equal(const MFSData& a, const MFSData& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.names != b.names) return fail("coordinate names differ");
    if (a.level != b.level) return fail("levels differ");
    if (a.D != b.D) return fail("reference charge differs");
    if (a.unit != b.unit) return fail("unit differs");
    if (!(a.euler.linear == b.euler.linear) || a.euler.constant != b.euler.constant)
        return fail("Euler field differs");
    if (a.eta.size() != b.eta.size()) return fail("pairing levels differ");
    for (const auto& [k, eta] : a.eta) {
        auto it = b.eta.find(k);
        if (it == b.eta.end() || !(eta == it->second)) return fail("pairing differs at level " + std::to_string(k));
    }
    int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SeriesElem bk = b.C[i][j][k].cast(a.ring);
                if (a.C[i][j][k] != bk)
                    return fail("structure constants differ at C[" + a.names[i] + "][" + a.names[j] + "][" +
                                a.names[k] + "]");
            }
    return true;
}

}  // namespace mfslab
