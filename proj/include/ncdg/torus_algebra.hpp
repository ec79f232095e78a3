/**
 * @file torus_algebra.hpp
 * @brief Coordinate algebra of the noncommutative torus: Laurent monomials
 *        v^r u^s with Q(q) coefficients and the product induced by uv = qvu.
 *
 * Normal order is v-power first, then u-power. Bilinear product rule:
 *   (v^r u^s)(v^n u^m) = q^{s n} v^{r+n} u^{s+m}.
 */
#pragma once

#include "ncdg/scalars.hpp"

#include <map>
#include <string>
#include <utility>

namespace ncdg {

/// Normal-ordered monomial exponents: v^r u^s.
struct Mono {
    long r = 0;  // exponent of v
    long s = 0;  // exponent of u
    auto operator<=>(const Mono&) const = default;
};

class TorusElement {
public:
    using Terms = std::map<Mono, ScalarQ>;

    TorusElement() = default;

    static TorusElement zero() { return {}; }
    static TorusElement one() { return monomial({0, 0}, ScalarQ::integer(1)); }
    static TorusElement monomial(Mono m, ScalarQ coeff = ScalarQ::integer(1));
    static TorusElement scalar(ScalarQ c) { return monomial({0, 0}, std::move(c)); }
    /// u^s and v^r generators (any integer exponent; u, v are invertible).
    static TorusElement u_power(long s) { return monomial({0, s}); }
    static TorusElement v_power(long r) { return monomial({r, 0}); }

    bool is_zero() const { return terms_.empty(); }
    /// True when the element is c·v^0u^0 (including c = 0).
    bool is_scalar() const;
    /// The coefficient of v^0u^0 if is_scalar(), otherwise throws.
    ScalarQ scalar_value() const;

    const Terms& terms() const { return terms_; }
    ScalarQ coefficient(Mono m) const;

    TorusElement operator-() const;
    TorusElement operator+(const TorusElement& o) const;
    TorusElement operator-(const TorusElement& o) const;
    TorusElement operator*(const TorusElement& o) const;
    TorusElement& operator+=(const TorusElement& o) { return *this = *this + o; }
    TorusElement& operator-=(const TorusElement& o) { return *this = *this - o; }
    TorusElement& operator*=(const TorusElement& o) { return *this = *this * o; }

    TorusElement scaled(const ScalarQ& c) const;

    bool operator==(const TorusElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    /// Deterministic rendering; terms sorted by descending (r, s), e.g.
    /// "(1) u^1 + (1) v^-1", "(q) v^1 u^1", "1".
    std::string render() const;

private:
    Terms terms_;

    void add_term(Mono m, const ScalarQ& c);
};

inline TorusElement algebra_mul(const TorusElement& a, const TorusElement& b) { return a * b; }
inline bool algebra_equal(const TorusElement& a, const TorusElement& b) { return a == b; }
inline std::string algebra_render(const TorusElement& a) { return a.render(); }

}  // namespace ncdg
