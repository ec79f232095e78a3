#include "ncdg/torus_algebra.hpp"

#include <sstream>
#include <vector>

namespace ncdg {

TorusElement TorusElement::monomial(Mono m, ScalarQ coeff) {
    TorusElement e;
    if (!coeff.is_zero()) e.terms_[m] = std::move(coeff);
    return e;
}

bool TorusElement::is_scalar() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Mono{0, 0};
}

ScalarQ TorusElement::scalar_value() const {
    if (!is_scalar()) throw std::domain_error("TorusElement: not a scalar multiple of 1");
    return terms_.empty() ? ScalarQ() : terms_.begin()->second;
}

ScalarQ TorusElement::coefficient(Mono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ScalarQ() : it->second;
}

void TorusElement::add_term(Mono m, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TorusElement TorusElement::operator-() const {
    TorusElement r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
    TorusElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const {
    TorusElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

TorusElement TorusElement::operator*(const TorusElement& o) const {
    // (v^r u^s)(v^n u^m) = q^{s n} v^{r+n} u^{s+m}
    TorusElement r;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_)
            r.add_term({a.r + b.r, a.s + b.s}, ca * cb * ScalarQ::q_power(a.s * b.r));
    return r;
}

TorusElement TorusElement::scaled(const ScalarQ& c) const {
    TorusElement r;
    if (c.is_zero()) return r;
    for (const auto& [m, a] : terms_) r.terms_[m] = a * c;
    return r;
}

namespace {

/// A coefficient that can stand alone without parentheses: a single
/// non-negative polynomial term over denominator 1.
bool scalar_is_bare(const ScalarQ& c) {
    return c.den().is_one() && c.num().terms().size() <= 1 &&
           c.num().leading_coefficient() >= 0;
}

}  // namespace

std::string TorusElement::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Terms sorted by descending (r, s): iterate the ordered map backwards.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) out << " + ";
        first = false;
        const bool constant_mono = (m == Mono{0, 0});
        if (constant_mono && scalar_is_bare(c))
            out << c.render();
        else
            out << "(" << c.render() << ")";
        if (m.r != 0) out << " v^" << m.r;
        if (m.s != 0) out << " u^" << m.s;
    }
    return out.str();
}

}  // namespace ncdg
