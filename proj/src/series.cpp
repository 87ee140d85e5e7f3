#include "mfslab/series.hpp"

#include <sstream>
#include <stdexcept>

namespace mfslab {

SeriesRing::SeriesRing(std::vector<std::string> poly_vars, std::vector<ExpVar> exp_vars, int order)
    : poly_vars_(std::move(poly_vars)), exp_vars_(std::move(exp_vars)), order_(order) {
    if (order_ < 0) throw std::invalid_argument("negative truncation order");
    for (size_t i = 0; i < poly_vars_.size(); ++i)
        for (size_t j = i + 1; j < poly_vars_.size(); ++j)
            if (poly_vars_[i] == poly_vars_[j]) throw std::invalid_argument("duplicate poly var " + poly_vars_[i]);
    for (size_t i = 0; i < exp_vars_.size(); ++i)
        for (size_t j = i + 1; j < exp_vars_.size(); ++j)
            if (exp_vars_[i].name == exp_vars_[j].name)
                throw std::invalid_argument("duplicate exp var " + exp_vars_[i].name);
}

int SeriesRing::poly_index(const std::string& name) const {
    for (size_t i = 0; i < poly_vars_.size(); ++i)
        if (poly_vars_[i] == name) return static_cast<int>(i);
    return -1;
}

int SeriesRing::exp_index(const std::string& name) const {
    for (size_t i = 0; i < exp_vars_.size(); ++i)
        if (exp_vars_[i].name == name) return static_cast<int>(i);
    return -1;
}

void check_same_ring(const SeriesElem& a, const SeriesElem& b) {
    if (!a.ring() || !b.ring()) return;  // zero adopts the other ring
    if (a.ring() == b.ring()) return;
    if (!a.ring()->same(*b.ring())) throw std::invalid_argument("series ring mismatch");
}

void SeriesElem::insert(TermKey key, Rational coef) {
    if (coef == 0) return;
    if (ring_ && key.exp_degree() > ring_->order()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(coef));
    } else {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

SeriesElem SeriesElem::constant(RingPtr ring, const Rational& c) {
    SeriesElem e(std::move(ring));
    if (c != 0) {
        TermKey k{std::vector<int>(e.ring_->nexp(), 0), std::vector<int>(e.ring_->npoly(), 0)};
        e.terms_.emplace(std::move(k), c);
    }
    return e;
}

SeriesElem SeriesElem::poly(RingPtr ring, const std::string& var, int deg) {
    SeriesElem e(std::move(ring));
    int idx = e.ring_->poly_index(var);
    if (idx < 0) throw std::invalid_argument("unknown poly var " + var);
    TermKey k{std::vector<int>(e.ring_->nexp(), 0), std::vector<int>(e.ring_->npoly(), 0)};
    k.mono[idx] = deg;
    e.terms_.emplace(std::move(k), Rational(1));
    return e;
}

SeriesElem SeriesElem::exponential(RingPtr ring, const std::string& var, int power) {
    SeriesElem e(std::move(ring));
    int idx = e.ring_->exp_index(var);
    if (idx < 0) throw std::invalid_argument("unknown exp var " + var);
    if (power < 0) throw std::invalid_argument("negative exponential power");
    if (power > e.ring_->order()) return e;
    TermKey k{std::vector<int>(e.ring_->nexp(), 0), std::vector<int>(e.ring_->npoly(), 0)};
    k.beta[idx] = power;
    e.terms_.emplace(std::move(k), Rational(1));
    return e;
}

SeriesElem SeriesElem::monomial(RingPtr ring, TermKey key, const Rational& coef) {
    SeriesElem e(std::move(ring));
    if (static_cast<int>(key.beta.size()) != e.ring_->nexp() ||
        static_cast<int>(key.mono.size()) != e.ring_->npoly())
        throw std::invalid_argument("term key shape mismatch");
    e.insert(std::move(key), coef);
    return e;
}

bool SeriesElem::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const TermKey& k = terms_.begin()->first;
    for (int b : k.beta)
        if (b) return false;
    for (int m : k.mono)
        if (m) return false;
    return true;
}

Rational SeriesElem::constant_value() const {
    if (terms_.empty()) return Rational(0);
    TermKey k{std::vector<int>(ring_->nexp(), 0), std::vector<int>(ring_->npoly(), 0)};
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational SeriesElem::coefficient(const TermKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
}

SeriesElem operator+(const SeriesElem& a, const SeriesElem& b) {
    check_same_ring(a, b);
    SeriesElem r(a.ring_ ? a.ring_ : b.ring_);
    r.terms_ = a.terms_;
    for (const auto& [k, c] : b.terms_) {
        auto [it, inserted] = r.terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

SeriesElem operator-(const SeriesElem& a) {
    SeriesElem r(a.ring_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
}

SeriesElem operator-(const SeriesElem& a, const SeriesElem& b) { return a + (-b); }

SeriesElem operator*(const SeriesElem& a, const SeriesElem& b) {
    check_same_ring(a, b);
    SeriesElem r(a.ring_ ? a.ring_ : b.ring_);
    if (!r.ring_) return r;
    const int order = r.ring_->order();
    for (const auto& [ka, ca] : a.terms_) {
        const int da = ka.exp_degree();
        for (const auto& [kb, cb] : b.terms_) {
            if (da + kb.exp_degree() > order) continue;
            TermKey k = ka;
            for (size_t i = 0; i < k.beta.size(); ++i) k.beta[i] += kb.beta[i];
            for (size_t i = 0; i < k.mono.size(); ++i) k.mono[i] += kb.mono[i];
            r.insert(std::move(k), ca * cb);
        }
    }
    return r;
}

SeriesElem operator*(const SeriesElem& a, const Rational& s) {
    SeriesElem r(a.ring_);
    if (s == 0) return r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, c * s);
    return r;
}

bool operator==(const SeriesElem& a, const SeriesElem& b) {
    if (a.is_zero() && b.is_zero()) return true;
    check_same_ring(a, b);
    return a.terms_ == b.terms_;
}

SeriesElem SeriesElem::derive(const std::string& var) const {
    auto [plain, weighted] = derive_split(var);
    return plain + weighted;
}

std::pair<SeriesElem, SeriesElem> SeriesElem::derive_split(const std::string& var) const {
    SeriesElem plain(ring_), weighted(ring_);
    if (!ring_) return {plain, weighted};
    int pidx = ring_->poly_index(var);
    bool known = pidx >= 0;
    for (const auto& [k, c] : terms_) {
        if (pidx >= 0 && k.mono[pidx] > 0) {
            TermKey nk = k;
            nk.mono[pidx] -= 1;
            plain.insert(std::move(nk), c * k.mono[pidx]);
        }
        for (int e = 0; e < ring_->nexp(); ++e) {
            if (k.beta[e] == 0) continue;
            const ExpVar& ev = ring_->exp_vars()[e];
            auto it = ev.dlog.find(var);
            if (it == ev.dlog.end()) continue;
            (ev.hbar ? weighted : plain).insert(k, c * it->second * k.beta[e]);
        }
    }
    if (!known) {
        for (const ExpVar& ev : ring_->exp_vars())
            if (ev.dlog.count(var)) { known = true; break; }
    }
    if (!known) throw std::invalid_argument("unknown derivation variable " + var);
    return {plain, weighted};
}

SeriesElem SeriesElem::hbar_partial() const {
    SeriesElem r(ring_);
    if (!ring_) return r;
    for (const auto& [k, c] : terms_) {
        for (int e = 0; e < ring_->nexp(); ++e) {
            if (k.beta[e] == 0) continue;
            const ExpVar& ev = ring_->exp_vars()[e];
            if (!ev.hbar) continue;
            for (const auto& [v, coef] : ev.dlog) {
                int pidx = ring_->poly_index(v);
                if (pidx < 0) throw std::logic_error("hbar exponential over undeclared poly var " + v);
                TermKey nk = k;
                nk.mono[pidx] += 1;
                r.insert(std::move(nk), c * coef * k.beta[e]);
            }
        }
    }
    return r;
}

SeriesElem SeriesElem::specialize_poly(const std::string& var, const Rational& value) const {
    int idx = ring_ ? ring_->poly_index(var) : -1;
    if (idx < 0) throw std::invalid_argument("unknown poly var " + var);
    SeriesElem r(ring_);
    for (const auto& [k, c] : terms_) {
        TermKey nk = k;
        int d = nk.mono[idx];
        nk.mono[idx] = 0;
        r.insert(std::move(nk), c * rat_pow(value, d));
    }
    return r;
}

SeriesElem SeriesElem::specialize_exp(const std::string& var, int value) const {
    int idx = ring_ ? ring_->exp_index(var) : -1;
    if (idx < 0) throw std::invalid_argument("unknown exp var " + var);
    if (value != 0 && value != 1) throw std::invalid_argument("exp vars specialize to 0 or 1 only");
    SeriesElem r(ring_);
    for (const auto& [k, c] : terms_) {
        if (value == 0 && k.beta[idx] > 0) continue;
        TermKey nk = k;
        nk.beta[idx] = 0;
        r.insert(std::move(nk), c);
    }
    return r;
}

SeriesElem SeriesElem::substitute_poly_linear(
    const std::string& var, const std::vector<std::pair<std::string, Rational>>& lin) const {
    int idx = ring_ ? ring_->poly_index(var) : -1;
    if (idx < 0) throw std::invalid_argument("unknown poly var " + var);
    SeriesElem image(ring_);
    for (const auto& [name, coef] : lin) image += SeriesElem::poly(ring_, name) * coef;
    SeriesElem r(ring_);
    for (const auto& [k, c] : terms_) {
        TermKey nk = k;
        int d = nk.mono[idx];
        nk.mono[idx] = 0;
        SeriesElem piece = SeriesElem::monomial(ring_, std::move(nk), c);
        for (int t = 0; t < d; ++t) piece = piece * image;
        r += piece;
    }
    return r;
}

SeriesElem SeriesElem::cast(const RingPtr& target) const {
    if (!ring_) return SeriesElem(target);
    std::vector<int> pmap(ring_->npoly()), emap(ring_->nexp());
    for (int i = 0; i < ring_->npoly(); ++i) {
        pmap[i] = target->poly_index(ring_->poly_vars()[i]);
        if (pmap[i] < 0) throw std::invalid_argument("cast loses poly var " + ring_->poly_vars()[i]);
    }
    for (int i = 0; i < ring_->nexp(); ++i) {
        emap[i] = target->exp_index(ring_->exp_vars()[i].name);
        if (emap[i] < 0) throw std::invalid_argument("cast loses exp var " + ring_->exp_vars()[i].name);
    }
    SeriesElem r(target);
    for (const auto& [k, c] : terms_) {
        TermKey nk{std::vector<int>(target->nexp(), 0), std::vector<int>(target->npoly(), 0)};
        for (int i = 0; i < ring_->nexp(); ++i) nk.beta[emap[i]] = k.beta[i];
        for (int i = 0; i < ring_->npoly(); ++i) nk.mono[pmap[i]] = k.mono[i];
        r.insert(std::move(nk), c);
    }
    return r;
}

std::string SeriesElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_str(c) << ")";
        for (size_t i = 0; i < k.mono.size(); ++i)
            if (k.mono[i]) os << "*" << ring_->poly_vars()[i] << "^" << k.mono[i];
        for (size_t i = 0; i < k.beta.size(); ++i)
            if (k.beta[i]) os << "*" << ring_->exp_vars()[i].name << "^" << k.beta[i];
    }
    return os.str();
}

}  // namespace mfslab
