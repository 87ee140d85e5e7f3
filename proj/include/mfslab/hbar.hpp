#pragma once

#include "mfslab/series.hpp"

#include <map>

namespace mfslab {

// Finite Laurent expansion in half-integer powers of the deformation
// parameter, with truncated-series coefficients. Powers are stored doubled so
// that sqrt(hbar) has key 1.
class HbarLaurent {
public:
    HbarLaurent() = default;
    explicit HbarLaurent(RingPtr ring) : ring_(std::move(ring)) {}

    static HbarLaurent from_series(SeriesElem s, int twice_power = 0) {
        HbarLaurent h(s.ring());
        if (!s.is_zero()) h.terms_.emplace(twice_power, std::move(s));
        return h;
    }
    static HbarLaurent constant(RingPtr ring, const Rational& c, int twice_power = 0) {
        return from_series(SeriesElem::constant(std::move(ring), c), twice_power);
    }

    RingPtr ring() const { return ring_; }
    const std::map<int, SeriesElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SeriesElem coefficient(int twice_power) const {
        auto it = terms_.find(twice_power);
        return it == terms_.end() ? SeriesElem(ring_) : it->second;
    }

    HbarLaurent shifted(int twice_power) const {
        HbarLaurent r(ring_);
        for (const auto& [p, s] : terms_) r.terms_.emplace(p + twice_power, s);
        return r;
    }

    friend HbarLaurent operator+(const HbarLaurent& a, const HbarLaurent& b) {
        HbarLaurent r = a;
        if (!r.ring_) r.ring_ = b.ring_;
        for (const auto& [p, s] : b.terms_) r.add_term(p, s);
        return r;
    }
    friend HbarLaurent operator-(const HbarLaurent& a) {
        HbarLaurent r(a.ring_);
        for (const auto& [p, s] : a.terms_) r.terms_.emplace(p, -s);
        return r;
    }
    friend HbarLaurent operator-(const HbarLaurent& a, const HbarLaurent& b) { return a + (-b); }
    friend HbarLaurent operator*(const HbarLaurent& a, const HbarLaurent& b) {
        HbarLaurent r(a.ring_ ? a.ring_ : b.ring_);
        for (const auto& [pa, sa] : a.terms_)
            for (const auto& [pb, sb] : b.terms_) r.add_term(pa + pb, sa * sb);
        return r;
    }
    friend HbarLaurent operator*(const HbarLaurent& a, const Rational& s) {
        HbarLaurent r(a.ring_);
        if (s == 0) return r;
        for (const auto& [p, t] : a.terms_) r.terms_.emplace(p, t * s);
        return r;
    }
    friend HbarLaurent operator*(const Rational& s, const HbarLaurent& a) { return a * s; }
    friend HbarLaurent operator*(const HbarLaurent& a, const SeriesElem& s) {
        HbarLaurent r(a.ring_ ? a.ring_ : s.ring());
        for (const auto& [p, t] : a.terms_) r.add_term(p, t * s);
        return r;
    }
    HbarLaurent& operator+=(const HbarLaurent& o) { return *this = *this + o; }
    HbarLaurent& operator-=(const HbarLaurent& o) { return *this = *this - o; }
    friend bool operator==(const HbarLaurent& a, const HbarLaurent& b) { return (a - b).is_zero(); }
    friend bool operator!=(const HbarLaurent& a, const HbarLaurent& b) { return !(a == b); }

    // Coordinate derivative; contributions of hbar-weighted exponentials move
    // one hbar power up.
    HbarLaurent derive(const std::string& var) const {
        HbarLaurent r(ring_);
        for (const auto& [p, s] : terms_) {
            auto [plain, weighted] = s.derive_split(var);
            r.add_term(p, plain);
            r.add_term(p + 2, weighted);
        }
        return r;
    }

    // d/d hbar, acting on the explicit powers and on exp(hbar * l(t)) factors.
    HbarLaurent dhbar() const {
        HbarLaurent r(ring_);
        for (const auto& [p, s] : terms_) {
            if (p != 0) r.add_term(p - 2, s * Rational(p, 2));
            r.add_term(p, s.hbar_partial());
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [p, s] : terms_) {
            if (!out.empty()) out += " + ";
            out += "h^(" + std::to_string(p) + "/2)*[" + s.str() + "]";
        }
        return out;
    }

private:
    void add_term(int p, const SeriesElem& s) {
        if (s.is_zero()) return;
        auto it = terms_.find(p);
        if (it == terms_.end()) {
            terms_.emplace(p, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::map<int, SeriesElem> terms_;
};

inline bool scalar_is_zero(const HbarLaurent& x) { return x.is_zero(); }

}  // namespace mfslab
