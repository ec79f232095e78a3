/**
 * @file scalars.hpp
 * @brief Exact coefficient field Q(q): integer polynomials in q and their
 *        fraction field, with canonical normal forms and numeric evaluation.
 *
 * q is a formal transcendental. Every identity checked elsewhere in the
 * library is an identity of rational functions in q, so it holds for every
 * complex specialization of q away from denominator zeros.
 */
#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace ncdg {

/// Univariate polynomial in q with arbitrary-precision integer coefficients.
/// Stored sparsely as degree -> coefficient; zero coefficients are never kept,
/// and the zero polynomial is the empty map.
class PolyZ {
public:
    using Terms = std::map<long, mpz_class>;

    PolyZ() = default;

    static PolyZ constant(mpz_class c);
    static PolyZ monomial(long degree, mpz_class c);
    /// q^degree, degree >= 0.
    static PolyZ q_power(long degree);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Degree of the polynomial; -1 for the zero polynomial.
    long degree() const;
    /// Leading coefficient; 0 for the zero polynomial.
    mpz_class leading_coefficient() const;
    /// Positive gcd of all coefficients; 0 for the zero polynomial.
    mpz_class content() const;
    /// this / content(); zero stays zero. Sign of the leading term is kept.
    PolyZ primitive_part() const;

    const Terms& terms() const { return terms_; }
    /// Coefficient of q^degree (0 if absent).
    mpz_class coefficient(long degree) const;

    PolyZ operator-() const;
    PolyZ operator+(const PolyZ& o) const;
    PolyZ operator-(const PolyZ& o) const;
    PolyZ operator*(const PolyZ& o) const;

    /// Multiply every coefficient by c.
    PolyZ scaled(const mpz_class& c) const;
    /// Divide every coefficient by c exactly; throws std::domain_error if a
    /// coefficient is not divisible.
    PolyZ divided_by_content(const mpz_class& c) const;

    /// Exact polynomial division; throws std::domain_error when the division
    /// leaves a remainder (callers only divide by known factors).
    static PolyZ div_exact(const PolyZ& a, const PolyZ& b);

    /// Primitive gcd with positive leading coefficient; gcd(0,0) = 0.
    static PolyZ gcd(const PolyZ& a, const PolyZ& b);

    /// Substitute an exact rational for q.
    mpq_class eval(const mpq_class& q0) const;

    /// "q^2 - 1" style: integer-coefficient terms in decreasing degree.
    std::string render() const;

    bool operator==(const PolyZ& o) const { return terms_ == o.terms_; }
    bool operator!=(const PolyZ& o) const { return terms_ != o.terms_; }
    /// Arbitrary total order (for use as a map key).
    bool operator<(const PolyZ& o) const { return terms_ < o.terms_; }

private:
    void trim();  // drop zero coefficients

    Terms terms_;
};

/// Element of Q(q) as a canonical fraction num/den of PolyZ:
///   den != 0; primitive parts of num and den are coprime; the integer
///   contents of num and den are coprime; leading coefficient of den > 0;
///   zero is 0/1.
class ScalarQ {
public:
    ScalarQ() : num_(), den_(PolyZ::constant(1)) {}
    ScalarQ(long n) : ScalarQ(PolyZ::constant(n), PolyZ::constant(1)) {}

    ScalarQ(PolyZ num, PolyZ den);

    static ScalarQ integer(long n) { return ScalarQ(n); }
    static ScalarQ rational(long num, long den);
    /// q^k for any integer k (negative k goes to the denominator).
    static ScalarQ q_power(long k);
    static ScalarQ from_poly(PolyZ p) { return ScalarQ(std::move(p), PolyZ::constant(1)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    const PolyZ& num() const { return num_; }
    const PolyZ& den() const { return den_; }

    ScalarQ operator-() const;
    ScalarQ operator+(const ScalarQ& o) const;
    ScalarQ operator-(const ScalarQ& o) const;
    ScalarQ operator*(const ScalarQ& o) const;
    /// Throws std::domain_error on division by zero.
    ScalarQ operator/(const ScalarQ& o) const;
    ScalarQ& operator+=(const ScalarQ& o) { return *this = *this + o; }
    ScalarQ& operator-=(const ScalarQ& o) { return *this = *this - o; }
    ScalarQ& operator*=(const ScalarQ& o) { return *this = *this * o; }
    ScalarQ& operator/=(const ScalarQ& o) { return *this = *this / o; }

    ScalarQ inverse() const;

    /// Substitute an exact rational for q; throws std::domain_error on a pole.
    mpq_class eval(const mpq_class& q0) const;

    /// "num/den" with "/1" suppressed; multi-term or non-atomic operands are
    /// parenthesized so the output is unambiguous.
    std::string render() const;

    bool operator==(const ScalarQ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ScalarQ& o) const { return !(*this == o); }
    /// Arbitrary total order (for deterministic containers).
    bool operator<(const ScalarQ& o) const;

private:
    void canonicalize();

    PolyZ num_, den_;
};

/// Named entry points mirroring the module contract (thin wrappers over the
/// member operators; kept for table-driven tests and the CLI).
enum class ScalarOp { add, sub, mul, div };
ScalarQ scalar_arith(ScalarOp op, const ScalarQ& a, const ScalarQ& b);
inline PolyZ poly_gcd(const PolyZ& a, const PolyZ& b) { return PolyZ::gcd(a, b); }
inline mpq_class scalar_eval(const ScalarQ& a, const mpq_class& q0) { return a.eval(q0); }

}  // namespace ncdg
