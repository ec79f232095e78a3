#include "ncdg/scalars.hpp"

#include <sstream>
#include <utility>

namespace ncdg {

/* ---------------------------------------------------------------- PolyZ */

void PolyZ::trim() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

PolyZ PolyZ::constant(mpz_class c) { return monomial(0, std::move(c)); }

PolyZ PolyZ::monomial(long degree, mpz_class c) {
    if (degree < 0) throw std::domain_error("PolyZ::monomial: negative degree");
    PolyZ p;
    if (c != 0) p.terms_[degree] = std::move(c);
    return p;
}

PolyZ PolyZ::q_power(long degree) { return monomial(degree, 1); }

bool PolyZ::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

long PolyZ::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

mpz_class PolyZ::leading_coefficient() const {
    return terms_.empty() ? mpz_class(0) : terms_.rbegin()->second;
}

mpz_class PolyZ::content() const {
    mpz_class g = 0;
    for (const auto& [d, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

PolyZ PolyZ::primitive_part() const {
    if (is_zero()) return {};
    return divided_by_content(content());
}

mpz_class PolyZ::coefficient(long degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

PolyZ PolyZ::operator-() const {
    PolyZ r;
    for (const auto& [d, c] : terms_) r.terms_[d] = -c;
    return r;
}

PolyZ PolyZ::operator+(const PolyZ& o) const {
    PolyZ r = *this;
    for (const auto& [d, c] : o.terms_) r.terms_[d] += c;
    r.trim();
    return r;
}

PolyZ PolyZ::operator-(const PolyZ& o) const {
    PolyZ r = *this;
    for (const auto& [d, c] : o.terms_) r.terms_[d] -= c;
    r.trim();
    return r;
}

PolyZ PolyZ::operator*(const PolyZ& o) const {
    PolyZ r;
    for (const auto& [da, ca] : terms_)
        for (const auto& [db, cb] : o.terms_) r.terms_[da + db] += ca * cb;
    r.trim();
    return r;
}

PolyZ PolyZ::scaled(const mpz_class& c) const {
    PolyZ r;
    if (c == 0) return r;
    for (const auto& [d, a] : terms_) r.terms_[d] = a * c;
    return r;
}

PolyZ PolyZ::divided_by_content(const mpz_class& c) const {
    if (c == 0) throw std::domain_error("PolyZ: division by zero content");
    PolyZ r;
    for (const auto& [d, a] : terms_) {
        mpz_class quotient, remainder;
        mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (remainder != 0) throw std::domain_error("PolyZ: inexact coefficient division");
        r.terms_[d] = std::move(quotient);
    }
    return r;
}

PolyZ PolyZ::div_exact(const PolyZ& a, const PolyZ& b) {
    if (b.is_zero()) throw std::domain_error("PolyZ: division by zero polynomial");
    PolyZ rem = a, quot;
    const long db = b.degree();
    const mpz_class lb = b.leading_coefficient();
    while (!rem.is_zero()) {
        const long dr = rem.degree();
        if (dr < db) throw std::domain_error("PolyZ: inexact polynomial division");
        mpz_class lr = rem.leading_coefficient(), t, r;
        mpz_tdiv_qr(t.get_mpz_t(), r.get_mpz_t(), lr.get_mpz_t(), lb.get_mpz_t());
        if (r != 0) throw std::domain_error("PolyZ: inexact polynomial division");
        PolyZ step = monomial(dr - db, t);
        quot = quot + step;
        rem = rem - step * b;
    }
    return quot;
}

namespace {

/// One full pseudo-division pass: returns prem(a, b), the remainder of
/// lc(b)^(deg a - deg b + 1) * a under division by b (deg a >= deg b > -1).
PolyZ pseudo_remainder(PolyZ a, const PolyZ& b) {
    const long db = b.degree();
    const mpz_class lb = b.leading_coefficient();
    while (!a.is_zero() && a.degree() >= db) {
        const long shift = a.degree() - db;
        const mpz_class la = a.leading_coefficient();
        a = a.scaled(lb) - b.scaled(la) * PolyZ::q_power(shift);
    }
    return a;
}

}  // namespace

PolyZ PolyZ::gcd(const PolyZ& a, const PolyZ& b) {
    auto normalize = [](PolyZ p) {
        if (p.is_zero()) return p;
        p = p.primitive_part();
        if (p.leading_coefficient() < 0) p = -p;
        return p;
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);

    // Primitive polynomial remainder sequence on the primitive parts.
    PolyZ x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        PolyZ r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.is_zero() ? PolyZ() : r.primitive_part();
    }
    return normalize(x);
}

mpq_class PolyZ::eval(const mpq_class& q0) const {
    mpq_class acc = 0;
    for (const auto& [d, c] : terms_) {
        mpz_class pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), q0.get_num_mpz_t(), static_cast<unsigned long>(d));
        mpz_pow_ui(pd.get_mpz_t(), q0.get_den_mpz_t(), static_cast<unsigned long>(d));
        mpq_class p(pn, pd);
        p.canonicalize();
        acc += c * p;
    }
    return acc;
}

std::string PolyZ::render() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // Decreasing degree.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const long d = it->first;
        const mpz_class& c = it->second;
        const mpz_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (d == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << " ";
            out << "q";
            if (d != 1) out << "^" << d;
        }
    }
    return out.str();
}

/* -------------------------------------------------------------- ScalarQ */

ScalarQ::ScalarQ(PolyZ num, PolyZ den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("ScalarQ: zero denominator");
    canonicalize();
}

void ScalarQ::canonicalize() {
    if (num_.is_zero()) {
        den_ = PolyZ::constant(1);
        return;
    }
    PolyZ g = PolyZ::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = PolyZ::div_exact(num_, g);
        den_ = PolyZ::div_exact(den_, g);
    }
    mpz_class cn = num_.content(), cd = den_.content(), cg;
    mpz_gcd(cg.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (cg != 1) {
        num_ = num_.divided_by_content(cg);
        den_ = den_.divided_by_content(cg);
    }
    if (den_.leading_coefficient() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ScalarQ ScalarQ::rational(long num, long den) {
    return ScalarQ(PolyZ::constant(num), PolyZ::constant(den));
}

ScalarQ ScalarQ::q_power(long k) {
    if (k >= 0) return ScalarQ(PolyZ::q_power(k), PolyZ::constant(1));
    return ScalarQ(PolyZ::constant(1), PolyZ::q_power(-k));
}

ScalarQ ScalarQ::operator-() const {
    ScalarQ r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarQ ScalarQ::operator+(const ScalarQ& o) const {
    return ScalarQ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarQ ScalarQ::operator-(const ScalarQ& o) const {
    return ScalarQ(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

ScalarQ ScalarQ::operator*(const ScalarQ& o) const {
    return ScalarQ(num_ * o.num_, den_ * o.den_);
}

ScalarQ ScalarQ::operator/(const ScalarQ& o) const {
    if (o.is_zero()) throw std::domain_error("ScalarQ: division by zero");
    return ScalarQ(num_ * o.den_, den_ * o.num_);
}

ScalarQ ScalarQ::inverse() const {
    if (is_zero()) throw std::domain_error("ScalarQ: inverse of zero");
    return ScalarQ(den_, num_);
}

mpq_class ScalarQ::eval(const mpq_class& q0) const {
    mpq_class d = den_.eval(q0);
    if (d == 0) throw std::domain_error("ScalarQ: pole at the evaluation point");
    mpq_class r = num_.eval(q0) / d;
    r.canonicalize();
    return r;
}

namespace {

/// True when a polynomial renders as a single atom that binds tighter than
/// '/': a bare integer, q, or q^k. Anything else gets parentheses.
bool renders_atomically(const PolyZ& p) {
    if (p.terms().size() != 1) return false;
    const auto& [d, c] = *p.terms().begin();
    if (c < 0) return false;
    return d == 0 || c == 1;
}

std::string maybe_paren(const PolyZ& p) {
    std::string s = p.render();
    return renders_atomically(p) ? s : "(" + s + ")";
}

}  // namespace

std::string ScalarQ::render() const {
    if (den_.is_one()) return num_.render();
    // A single-term numerator (even signed or coefficiented) reads
    // unambiguously before '/'; the denominator must be a tight atom.
    std::string n = num_.terms().size() > 1 ? "(" + num_.render() + ")" : num_.render();
    return n + "/" + maybe_paren(den_);
}

bool ScalarQ::operator<(const ScalarQ& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
}

ScalarQ scalar_arith(ScalarOp op, const ScalarQ& a, const ScalarQ& b) {
    switch (op) {
        case ScalarOp::add: return a + b;
        case ScalarOp::sub: return a - b;
        case ScalarOp::mul: return a * b;
        case ScalarOp::div: return a / b;
    }
    throw std::invalid_argument("scalar_arith: unknown op");
}

}  // namespace ncdg
