#pragma once

#include "mfslab/matrix.hpp"

#include <algorithm>
#include <vector>

namespace mfslab {

// A linear subspace of K^n in canonical form: the stored basis is the reduced
// row echelon form of any spanning set, so two subspaces are equal iff their
// representations are identical. Pivot ties resolve to the leftmost column.
template <class K>
class Span {
public:
    Span() = default;
    explicit Span(int ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Span from_vectors(int ambient, const std::vector<std::vector<K>>& vecs) {
        Mat<K> m(static_cast<int>(vecs.size()), ambient);
        for (size_t i = 0; i < vecs.size(); ++i) m.set_row(static_cast<int>(i), vecs[i]);
        return from_rows(m);
    }

    static Span from_rows(const Mat<K>& rows) {
        Span s(rows.cols());
        std::vector<int> piv;
        Mat<K> r = rows.rref(&piv);
        s.pivots_ = piv;
        s.basis_ = Mat<K>(static_cast<int>(piv.size()), rows.cols());
        for (size_t i = 0; i < piv.size(); ++i) s.basis_.set_row(static_cast<int>(i), r.row(static_cast<int>(i)));
        return s;
    }

    static Span full(int ambient) { return from_rows(Mat<K>::identity(ambient)); }

    // Span of the columns of m.
    static Span column_space(const Mat<K>& m) { return from_rows(m.transpose()); }

    static Span kernel_of(const Mat<K>& m) { return column_space(m.kernel()); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }
    const Mat<K>& basis_rows() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    std::vector<std::vector<K>> basis_vectors() const {
        std::vector<std::vector<K>> v;
        for (int i = 0; i < dim(); ++i) v.push_back(basis_.row(i));
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        std::vector<K> w = v;
        reduce(w);
        for (const K& x : w)
            if (!scalar_is_zero(x)) return false;
        return true;
    }

    bool contains(const Span& other) const {
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    // Coordinates of v in the stored basis; nullopt when v lies outside.
    std::optional<std::vector<K>> coordinates(const std::vector<K>& v) const {
        std::vector<K> w = v, c(dim());
        for (int i = 0; i < dim(); ++i) {
            c[i] = w[pivots_[i]];
            if (scalar_is_zero(c[i])) continue;
            for (int j = 0; j < ambient_; ++j) w[j] = w[j] - c[i] * basis_(i, j);
        }
        for (const K& x : w)
            if (!scalar_is_zero(x)) return std::nullopt;
        return c;
    }

    Span sum(const Span& other) const {
        Mat<K> stacked(dim() + other.dim(), ambient_);
        for (int i = 0; i < dim(); ++i) stacked.set_row(i, basis_.row(i));
        for (int i = 0; i < other.dim(); ++i) stacked.set_row(dim() + i, other.basis_.row(i));
        return from_rows(stacked);
    }

    Span intersect(const Span& other) const {
        // x = a^T basis = b^T other.basis: solve [basis^T | -other.basis^T] (a;b) = 0.
        Mat<K> m(ambient_, dim() + other.dim());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < ambient_; ++i) m(i, j) = basis_(j, i);
        for (int j = 0; j < other.dim(); ++j)
            for (int i = 0; i < ambient_; ++i) m(i, dim() + j) = K{} - other.basis_(j, i);
        Mat<K> ker = m.kernel();
        Mat<K> vecs(ker.cols(), ambient_);
        for (int c = 0; c < ker.cols(); ++c)
            for (int i = 0; i < ambient_; ++i) {
                K x{};
                for (int j = 0; j < dim(); ++j) x += ker(j, c) * basis_(j, i);
                vecs(c, i) = x;
            }
        return from_rows(vecs);
    }

    friend bool operator==(const Span& a, const Span& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Span& a, const Span& b) { return !(a == b); }

private:
    void reduce(std::vector<K>& w) const {
        for (int i = 0; i < dim(); ++i) {
            K c = w[pivots_[i]];
            if (scalar_is_zero(c)) continue;
            for (int j = 0; j < ambient_; ++j) w[j] = w[j] - c * basis_(i, j);
        }
    }

    int ambient_ = 0;
    Mat<K> basis_;
    std::vector<int> pivots_;
};

using QSpan = Span<Rational>;
using GSpan = Span<GaussianRational>;

// Canonical complement frame of `inner` inside `outer`: the echelon basis rows
// of `outer` whose pivots are not pivots of `inner`. The returned vectors lie
// in `outer` and project to a basis of outer/inner.
template <class K>
std::vector<std::vector<K>> complement_frame(const Span<K>& inner, const Span<K>& outer) {
    std::vector<std::vector<K>> frame;
    const auto& ip = inner.pivots();
    for (int i = 0; i < outer.dim(); ++i) {
        int p = outer.pivots()[i];
        if (std::find(ip.begin(), ip.end(), p) == ip.end()) frame.push_back(outer.basis_rows().row(i));
    }
    return frame;
}

}  // namespace mfslab
