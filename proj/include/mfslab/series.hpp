#pragma once

#include "mfslab/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mfslab {

// A formal exponential generator Q = exp(l(t)), where l is the linear form
// with coefficients `dlog` in the coordinates: d/dv Q = dlog[v] * Q. When
// `hbar` is set the exponent carries a factor of the deformation parameter,
// Q = exp(hbar * l(t)); such generators must live inside HbarLaurent, where
// the extra factor is accounted for.
struct ExpVar {
    std::string name;
    std::map<std::string, Rational> dlog;
    bool hbar = false;

    bool operator==(const ExpVar& o) const { return name == o.name && dlog == o.dlog && hbar == o.hbar; }
};

class SeriesRing;
using RingPtr = std::shared_ptr<const SeriesRing>;

// Declaration of a truncated series ring: exact polynomials in poly_vars,
// formal exponentials with nonnegative integer exponents, truncation by total
// exponential degree.
class SeriesRing {
public:
    SeriesRing(std::vector<std::string> poly_vars, std::vector<ExpVar> exp_vars, int order);

    static RingPtr make(std::vector<std::string> poly_vars, std::vector<ExpVar> exp_vars, int order) {
        return std::make_shared<SeriesRing>(std::move(poly_vars), std::move(exp_vars), std::move(order));
    }

    int order() const { return order_; }
    int npoly() const { return static_cast<int>(poly_vars_.size()); }
    int nexp() const { return static_cast<int>(exp_vars_.size()); }
    const std::vector<std::string>& poly_vars() const { return poly_vars_; }
    const std::vector<ExpVar>& exp_vars() const { return exp_vars_; }

    int poly_index(const std::string& name) const;  // -1 when absent
    int exp_index(const std::string& name) const;

    bool same(const SeriesRing& o) const {
        return order_ == o.order_ && poly_vars_ == o.poly_vars_ && exp_vars_ == o.exp_vars_;
    }

private:
    std::vector<std::string> poly_vars_;
    std::vector<ExpVar> exp_vars_;
    int order_;
};

struct TermKey {
    std::vector<int> beta;  // exponents of the exponential generators
    std::vector<int> mono;  // exponents of the polynomial variables

    bool operator<(const TermKey& o) const {
        if (beta != o.beta) return beta < o.beta;
        return mono < o.mono;
    }
    bool operator==(const TermKey& o) const { return beta == o.beta && mono == o.mono; }

    int exp_degree() const {
        int d = 0;
        for (int b : beta) d += b;
        return d;
    }
};

class SeriesElem {
public:
    // Default-constructed element is the zero of any ring.
    SeriesElem() = default;
    explicit SeriesElem(RingPtr ring) : ring_(std::move(ring)) {}

    static SeriesElem constant(RingPtr ring, const Rational& c);
    static SeriesElem poly(RingPtr ring, const std::string& var, int deg = 1);
    static SeriesElem exponential(RingPtr ring, const std::string& var, int power = 1);
    static SeriesElem monomial(RingPtr ring, TermKey key, const Rational& coef);

    RingPtr ring() const { return ring_; }
    const std::map<TermKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // coefficient of the constant term
    Rational coefficient(const TermKey& key) const;

    friend SeriesElem operator+(const SeriesElem& a, const SeriesElem& b);
    friend SeriesElem operator-(const SeriesElem& a, const SeriesElem& b);
    friend SeriesElem operator-(const SeriesElem& a);
    friend SeriesElem operator*(const SeriesElem& a, const SeriesElem& b);
    friend SeriesElem operator*(const SeriesElem& a, const Rational& s);
    friend SeriesElem operator*(const Rational& s, const SeriesElem& a) { return a * s; }
    SeriesElem& operator+=(const SeriesElem& o) { return *this = *this + o; }
    SeriesElem& operator-=(const SeriesElem& o) { return *this = *this - o; }
    SeriesElem& operator*=(const SeriesElem& o) { return *this = *this * o; }
    friend bool operator==(const SeriesElem& a, const SeriesElem& b);
    friend bool operator!=(const SeriesElem& a, const SeriesElem& b) { return !(a == b); }

    // d/d var: polynomial differentiation plus the exponential scaling rule.
    // Contributions from hbar-weighted exponentials are included verbatim; use
    // derive_split when the missing hbar factor matters.
    SeriesElem derive(const std::string& var) const;

    // {plain part, part that must be multiplied by hbar}.
    std::pair<SeriesElem, SeriesElem> derive_split(const std::string& var) const;

    // d/d hbar of the exponential generators alone: each hbar-weighted Q
    // contributes beta * l(t) with l its exponent linear form.
    SeriesElem hbar_partial() const;

    SeriesElem specialize_poly(const std::string& var, const Rational& value) const;
    // value must be 0 (kill all terms with positive exponent) or 1 (erase the
    // exponent).
    SeriesElem specialize_exp(const std::string& var, int value) const;

    // Substitute var -> sum of coef * other poly var (a linear change of
    // coordinates on the polynomial part).
    SeriesElem substitute_poly_linear(const std::string& var,
                                      const std::vector<std::pair<std::string, Rational>>& lin) const;

    // Embed into a ring with at least the same variables (matched by name; exp
    // vars may differ in their dlog data, which the caller controls).
    SeriesElem cast(const RingPtr& target) const;

    std::string str() const;

private:
    void insert(TermKey key, Rational coef);

    RingPtr ring_;
    std::map<TermKey, Rational> terms_;
};

inline bool scalar_is_zero(const SeriesElem& x) { return x.is_zero(); }

// Rings must agree structurally wherever two elements meet.
void check_same_ring(const SeriesElem& a, const SeriesElem& b);

}  // namespace mfslab
