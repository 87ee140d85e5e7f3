#include "mfslab/mhs.hpp"

#include <sstream>

namespace mfslab {

namespace {

GMat to_gaussian(const QMat& m) {
    GMat g(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) g(i, j) = GaussianRational(m(i, j));
    return g;
}

std::vector<GaussianRational> gvec(int n) { return std::vector<GaussianRational>(n); }

// Surface algebra on the basis (1, n, p_1..p_m, n^2): n*n = n^2,
// p_i*p_j = (P_ij/K) n^2, n*p_i = 0, everything above degree 4 vanishes.
QAlgebra surface_algebra(const SurfaceHodgeInput& in) {
    int m = in.prim_dim;
    int dim = m + 3;
    std::vector<std::string> labels = {"1", "n"};
    for (int i = 0; i < m; ++i) labels.push_back("p" + std::to_string(i + 1));
    labels.push_back("n2");
    QAlgebra a = QAlgebra::zeros(labels);
    a.unit[0] = 1;
    int top = dim - 1;
    for (int i = 0; i < dim; ++i) {
        a.C[0][i][i] = 1;
        a.C[i][0][i] = 1;
    }
    a.C[1][1][top] = 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a.C[2 + i][2 + j][top] = in.prim_pairing(i, j) / in.K;
    return a;
}

QMat surface_pairing(const SurfaceHodgeInput& in) {
    int m = in.prim_dim;
    int dim = m + 3;
    QMat g(dim, dim);
    g(0, dim - 1) = in.K;  // <1, n^2> = K
    g(dim - 1, 0) = in.K;
    g(1, 1) = in.K;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(2 + i, 2 + j) = in.prim_pairing(i, j);
    return g;
}

}  // namespace

std::vector<GaussianRational> mhs_conjugate(const MHSData& m, const std::vector<GaussianRational>& x) {
    // sigma = B conj B^{-1} with B the real-basis matrix.
    auto binv = m.real_basis.inverse();
    if (!binv) throw std::logic_error("real basis matrix is singular");
    std::vector<GaussianRational> coords = binv->apply(x);
    for (auto& z : coords) z = z.conj();
    return m.real_basis.apply(coords);
}

MHSData build_mhs(const SurfaceHodgeInput& input, const Rational& c_im) {
    if (input.K <= 0) throw std::invalid_argument("K must be positive");
    if (c_im == 0) throw std::invalid_argument("c must be a nonzero purely imaginary number");
    if (input.prim_pairing.rows() != input.prim_dim || input.prim_pairing.cols() != input.prim_dim)
        throw std::invalid_argument("prim pairing shape mismatch");
    if (!input.prim_pairing.is_symmetric()) throw std::invalid_argument("prim pairing must be symmetric");

    MHSData m;
    m.input = input;
    m.c = GaussianRational(Rational(0), c_im);
    int md = input.prim_dim;
    m.dim = md + 3;
    m.algebra = surface_algebra(input);
    m.intersection = surface_pairing(input);

    int top = m.dim - 1;
    GMat B(m.dim, m.dim);
    // v1 = 1 + c n + (c^2/2) n^2
    B(0, 0) = GaussianRational(Rational(1));
    B(1, 0) = m.c;
    B(top, 0) = m.c * m.c * GaussianRational(Rational(1, 2));
    // v2 = n + c n^2
    B(1, 1) = GaussianRational(Rational(1));
    B(top, 1) = m.c;
    for (int i = 0; i < md; ++i) B(2 + i, 2 + i) = GaussianRational(Rational(1));
    B(top, top) = GaussianRational(Rational(1));
    m.real_basis = B;

    // W_1 = <v2, v4>, W_2 = W_3 = W_1 + prim, W_4 = everything.
    std::vector<std::vector<GaussianRational>> w1 = {B.col(1), B.col(top)};
    GSpan W1 = GSpan::from_vectors(m.dim, w1);
    std::vector<std::vector<GaussianRational>> w2v = w1;
    for (int i = 0; i < md; ++i) w2v.push_back(B.col(2 + i));
    GSpan W2 = GSpan::from_vectors(m.dim, w2v);
    m.weight = {W1, W2, W2, GSpan::full(m.dim)};

    // F^2 = <1>, F^1 = <1, degree-2 block>, F^0 = everything.
    std::vector<GaussianRational> one = gvec(m.dim);
    one[0] = GaussianRational(Rational(1));
    std::vector<std::vector<GaussianRational>> f1 = {one};
    {
        std::vector<GaussianRational> n = gvec(m.dim);
        n[1] = GaussianRational(Rational(1));
        f1.push_back(n);
        for (int i = 0; i < md; ++i) {
            std::vector<GaussianRational> p = gvec(m.dim);
            p[2 + i] = GaussianRational(Rational(1));
            f1.push_back(p);
        }
    }
    m.hodge = {GSpan::from_vectors(m.dim, {one}), GSpan::from_vectors(m.dim, f1), GSpan::full(m.dim)};

    if (c_im == 1) {
        // Q_1 on the real frame (v2, v4) of Gr_1: Q_1(n^2, n + i n^2) = K and
        // the two isotropy relations.
        QMat q1(2, 2);
        q1(0, 1) = -input.K;
        q1(1, 0) = input.K;
        m.Q[1] = q1;
        // Q_2(x,y) = -<x,y> on the primitive block.
        m.Q[2] = scale(input.prim_pairing, Rational(-1));
        QMat q4(1, 1);
        q4(0, 0) = input.K;
        m.Q[4] = q4;
    }
    return m;
}

std::map<std::pair<int, int>, GSpan> hodge_table(const MHSData& m) {
    int md = m.input.prim_dim;
    int top = m.dim - 1;
    auto unit_vec = [&](int i) {
        auto v = gvec(m.dim);
        v[i] = GaussianRational(Rational(1));
        return v;
    };

    std::map<std::pair<int, int>, GSpan> table;
    table[{1, 0}] = GSpan::from_vectors(m.dim, {unit_vec(1)});
    {
        // n^2 + n/(2c)
        auto v = gvec(m.dim);
        v[top] = GaussianRational(Rational(1));
        v[1] = GaussianRational(Rational(1)) / (GaussianRational(Rational(2)) * m.c);
        table[{0, 1}] = GSpan::from_vectors(m.dim, {v});
    }
    {
        std::vector<std::vector<GaussianRational>> prim;
        for (int i = 0; i < md; ++i) prim.push_back(unit_vec(2 + i));
        table[{1, 1}] = GSpan::from_vectors(m.dim, prim);
    }
    table[{2, 2}] = GSpan::from_vectors(m.dim, {unit_vec(0)});

    // Verify against the abstract decomposition, lifted to the ambient space:
    // X = (F^p ^ W_k + W_{k-1}) ^ (sigma(F^q ^ W_k) + W_{k-1}); the table entry
    // must be a complement of W_{k-1} ^ X inside X.
    auto weight_space = [&](int k) -> GSpan {
        if (k <= 0) return GSpan(m.dim);
        return m.weight[std::min(k, 4) - 1];
    };
    auto hodge_space = [&](int p) -> GSpan {
        if (p >= 3) return GSpan(m.dim);
        if (p <= 0) return m.hodge[2];
        return m.hodge[2 - p];
    };
    auto sigma_span = [&](const GSpan& s) {
        std::vector<std::vector<GaussianRational>> vecs;
        for (const auto& v : s.basis_vectors()) vecs.push_back(mhs_conjugate(m, v));
        return GSpan::from_vectors(m.dim, vecs);
    };

    int total = 0;
    for (int k = 1; k <= 4; ++k) {
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            if (p > 2 || q > 2) continue;
            GSpan Wk = weight_space(k), Wk1 = weight_space(k - 1);
            GSpan X = hodge_space(p).intersect(Wk).sum(Wk1).intersect(sigma_span(hodge_space(q).intersect(Wk)).sum(Wk1));
            int expected = X.dim() - X.intersect(Wk1).dim();
            GSpan entry = table.count({p, q}) ? table[{p, q}] : GSpan(m.dim);
            bool ok = entry.dim() == expected && X.contains(entry) && entry.intersect(Wk1).is_zero();
            if (!ok)
                throw std::logic_error("hodge decomposition inconsistent at (p,q)=(" + std::to_string(p) + "," +
                                       std::to_string(q) + ")");
            total += entry.dim();
        }
    }
    if (total != m.dim) throw std::logic_error("hodge decomposition does not fill the space");
    return table;
}

Report polarization_check(const MHSData& m) {
    Report rep;
    if (m.Q.empty()) {
        rep.skip("polarization forms require c = sqrt(-1)");
        return rep;
    }
    rep.skip("b1 even: asserted by the caller, not derivable from the input");

    auto table = hodge_table(m);
    int md = m.input.prim_dim;
    int top = m.dim - 1;

    auto lower_weight = [&](int k) -> GSpan {
        if (k <= 1) return GSpan(m.dim);
        return m.weight[std::min(k - 1, 4) - 1];
    };

    // Weil operator on a graded piece: decompose a representative into the
    // A^{p,q} cell lifts modulo W_{k-1} and scale by i^{p-q}. The returned
    // vector is again only a representative of the class.
    auto weil = [&](int k, const std::vector<GaussianRational>& x) {
        std::vector<std::pair<std::pair<int, int>, GSpan>> cells;
        for (const auto& [pq, s] : table)
            if (pq.first + pq.second == k && s.dim() > 0) cells.push_back({pq, s});
        GSpan below = lower_weight(k);
        int cols = 0;
        for (auto& [pq, s] : cells) cols += s.dim();
        GMat mm(m.dim, cols + below.dim());
        int c0 = 0;
        for (auto& [pq, s] : cells) {
            for (int c = 0; c < s.dim(); ++c)
                for (int i = 0; i < m.dim; ++i) mm(i, c0 + c) = s.basis_rows()(c, i);
            c0 += s.dim();
        }
        for (int c = 0; c < below.dim(); ++c)
            for (int i = 0; i < m.dim; ++i) mm(i, cols + c) = below.basis_rows()(c, i);
        auto sol = mm.solve(x);
        if (!sol) throw std::logic_error("vector not in weight-" + std::to_string(k) + " Hodge cells");
        std::vector<GaussianRational> out = gvec(m.dim);
        c0 = 0;
        GaussianRational i_unit = GaussianRational::i();
        for (auto& [pq, s] : cells) {
            GaussianRational factor(Rational(1));
            int e = pq.first - pq.second;
            for (int t = 0; t < std::abs(e); ++t) factor = (e > 0) ? factor * i_unit : factor / i_unit;
            for (int c = 0; c < s.dim(); ++c)
                for (int i = 0; i < m.dim; ++i) out[i] += factor * (*sol)[c0 + c] * s.basis_rows()(c, i);
            c0 += s.dim();
        }
        return out;
    };

    // Real frames of the graded pieces, as ambient lifts.
    std::map<int, std::vector<std::vector<GaussianRational>>> frames;
    frames[1] = {m.real_basis.col(1), m.real_basis.col(top)};
    frames[2] = {};
    for (int i = 0; i < md; ++i) frames[2].push_back(m.real_basis.col(2 + i));
    frames[4] = {m.real_basis.col(0)};

    // Cross-check the stored Q_k against the Weil-operator expression through
    // the graded Frobenius pairings ( , )_{k-1} of the surface algebra.
    FrobeniusFiltration filt;
    {
        std::vector<Rational> n(m.dim);
        n[1] = 1;
        filt = nilpotent_filtration(FrobeniusAlgebra{m.algebra, m.intersection}, n);
    }
    auto pair_gaussian = [&](int k, const std::vector<GaussianRational>& x,
                             const std::vector<GaussianRational>& y) {
        const FiltrationLevel* lvl = filt.level(k);
        if (!lvl) throw std::logic_error("missing filtration level");
        QSpan below = filt.space_below(k);
        int mm2 = static_cast<int>(lvl->frame.size());
        GMat solvem(m.dim, mm2 + below.dim());
        for (int c = 0; c < mm2; ++c)
            for (int i = 0; i < m.dim; ++i) solvem(i, c) = GaussianRational(lvl->frame[c][i]);
        for (int c = 0; c < below.dim(); ++c)
            for (int i = 0; i < m.dim; ++i) solvem(i, mm2 + c) = GaussianRational(below.basis_rows()(c, i));
        auto cx = solvem.solve(x);
        auto cy = solvem.solve(y);
        if (!cx || !cy) throw std::logic_error("vector outside filtration step");
        GaussianRational s;
        for (int a = 0; a < mm2; ++a)
            for (int b = 0; b < mm2; ++b) s += (*cx)[a] * GaussianRational(lvl->pairing(a, b)) * (*cy)[b];
        return s;
    };

    for (int k : {1, 2, 4}) {
        auto it = m.Q.find(k);
        int nfr = static_cast<int>(frames[k].size());
        if (nfr == 0) {
            rep.skip("H_" + std::to_string(k) + " positivity (empty graded piece)");
            continue;
        }
        const QMat& Qk = it->second;

        bool sign_ok = true, formula_ok = true;
        GaussianRational i_unit = GaussianRational::i();
        GaussianRational ik(Rational(1));
        for (int t = 0; t < k % 4; ++t) ik = ik * i_unit;
        for (int a = 0; a < nfr; ++a)
            for (int b = 0; b < nfr; ++b) {
                sign_ok &= Qk(a, b) == (k % 2 == 0 ? Qk(b, a) : -Qk(b, a));
                GaussianRational lhs = pair_gaussian(k - 1, weil(k, frames[k][a]), frames[k][b]);
                GaussianRational rhs = pair_gaussian(k - 1, frames[k][a], weil(k, frames[k][b]));
                GaussianRational val = ik * GaussianRational(Rational(1, 2)) *
                                       (lhs + (k % 2 == 0 ? rhs : -rhs));
                formula_ok &= val == GaussianRational(Qk(a, b));
            }
        rep.check("Q_" + std::to_string(k) + " (-1)^k-symmetric", sign_ok);
        rep.check("Q_" + std::to_string(k) + " matches Weil-operator formula", formula_ok);

        // H_k(x,y) = Q_k(Cx, conj(y)), extended bilinearly in the first and
        // antilinearly in the second slot over the real frame.
        GMat H(nfr, nfr);
        GSpan below = lower_weight(k);
        GMat frame_m(m.dim, nfr + below.dim());
        for (int c = 0; c < nfr; ++c)
            for (int i = 0; i < m.dim; ++i) frame_m(i, c) = frames[k][c][i];
        for (int c = 0; c < below.dim(); ++c)
            for (int i = 0; i < m.dim; ++i) frame_m(i, nfr + c) = below.basis_rows()(c, i);
        for (int a = 0; a < nfr; ++a) {
            std::vector<GaussianRational> cxa = weil(k, frames[k][a]);
            auto coords = frame_m.solve(cxa);
            if (!coords) throw std::logic_error("Weil image left the graded piece");
            for (int b = 0; b < nfr; ++b) {
                GaussianRational s;
                for (int c = 0; c < nfr; ++c) s += (*coords)[c] * GaussianRational(Qk(c, b));
                H(a, b) = s;  // frame vectors are real: conj(frame_b) = frame_b
            }
        }
        bool herm = true;
        for (int a = 0; a < nfr; ++a)
            for (int b = 0; b < nfr; ++b) herm &= H(a, b) == H(b, a).conj();
        rep.check("H_" + std::to_string(k) + " hermitian", herm);

        bool posdef = true;
        std::string w;
        for (int lead = 1; lead <= nfr; ++lead) {
            GMat minor(lead, lead);
            for (int a = 0; a < lead; ++a)
                for (int b = 0; b < lead; ++b) minor(a, b) = H(a, b);
            GaussianRational dmin = minor.det();
            if (!dmin.is_real() || dmin.re <= 0) {
                posdef = false;
                w = "leading minor " + std::to_string(lead) + " = " + gaussian_str(dmin);
                break;
            }
        }
        rep.check("H_" + std::to_string(k) + " positive definite", posdef, w);
    }
    return rep;
}

}  // namespace mfslab
