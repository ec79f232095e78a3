#include "ncdg/torus_calculus.hpp"

#include <sstream>
#include <stdexcept>

namespace ncdg {

std::string letter_name(Letter l) {
    switch (l) {
        case Letter::du: return "du";
        case Letter::dv: return "dv";
        case Letter::xu: return "Xu";
        case Letter::xv: return "Xv";
    }
    throw std::invalid_argument("letter_name: bad letter");
}

ScalarQ move_right_twist(Letter l, Mono m) {
    switch (l) {
        case Letter::du: return ScalarQ::q_power(-m.r);
        case Letter::dv: return ScalarQ::q_power(m.s);
        case Letter::xu: return ScalarQ::q_power(m.r);
        case Letter::xv: return ScalarQ::q_power(-m.s);
    }
    throw std::invalid_argument("move_right_twist: bad letter");
}

namespace {

/// Move an algebra element from the left of a word to its right:
/// m·w = w·(moved m). Each monomial picks up the product of letter twists.
TorusElement move_through_word(const Word& w, const TorusElement& m) {
    TorusElement out;
    for (const auto& [mono, c] : m.terms()) {
        ScalarQ twist = c;
        for (Letter l : w) twist *= move_right_twist(l, mono);
        out += TorusElement::monomial(mono, twist);
    }
    return out;
}

}  // namespace

/* ----------------------------------------------------------- TensorForm */

TensorForm TensorForm::from_algebra(const TorusElement& m) {
    TensorForm t(0);
    if (!m.is_zero()) t.terms_[Word{}] = m;
    return t;
}

TensorForm TensorForm::term(Word w, TorusElement coeff) {
    TensorForm t(static_cast<int>(w.size()));
    if (!coeff.is_zero()) t.terms_[std::move(w)] = std::move(coeff);
    return t;
}

TensorForm TensorForm::basis_word(std::initializer_list<Letter> ls) {
    return term(Word(ls), TorusElement::one());
}

TorusElement TensorForm::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? TorusElement() : it->second;
}

bool TensorForm::pure_form() const {
    for (const auto& [w, c] : terms_)
        for (Letter l : w)
            if (!is_form_letter(l)) return false;
    return true;
}

TorusElement TensorForm::algebra_part() const {
    if (degree_ != 0) throw std::domain_error("TensorForm: algebra_part needs degree 0");
    return terms_.empty() ? TorusElement() : terms_.begin()->second;
}

void TensorForm::add_term(const Word& w, const TorusElement& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(w.size()) != degree_)
        throw std::domain_error("TensorForm: word length != degree");
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorForm TensorForm::operator-() const {
    TensorForm r(degree_);
    for (const auto& [w, c] : terms_) r.terms_[w] = -c;
    return r;
}

TensorForm TensorForm::operator+(const TensorForm& o) const {
    if (degree_ != o.degree_) throw std::domain_error("TensorForm: degree mismatch in +");
    TensorForm r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

TensorForm TensorForm::operator-(const TensorForm& o) const {
    if (degree_ != o.degree_) throw std::domain_error("TensorForm: degree mismatch in -");
    TensorForm r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
}

TensorForm TensorForm::scaled(const ScalarQ& c) const {
    TensorForm r(degree_);
    if (c.is_zero()) return r;
    for (const auto& [w, a] : terms_) r.terms_[w] = a.scaled(c);
    return r;
}

TensorForm TensorForm::right_act(const TorusElement& m) const {
    TensorForm r(degree_);
    for (const auto& [w, a] : terms_) r.add_term(w, a * m);
    return r;
}

TensorForm TensorForm::left_act(const TorusElement& m) const {
    TensorForm r(degree_);
    for (const auto& [w, a] : terms_) r.add_term(w, move_through_word(w, m) * a);
    return r;
}

TensorForm tensor(const TensorForm& a, const TensorForm& b) {
    TensorForm r(a.degree_ + b.degree_);
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, move_through_word(wb, ca) * cb);
        }
    return r;
}

TensorForm contract_front(const TensorForm& t) { return contract_at(t, 1); }

TensorForm contract_at(const TensorForm& t, int slot) {
    if (slot < 1 || slot + 1 > t.degree())
        throw std::domain_error("contract_at: slot out of range");
    const size_t i = static_cast<size_t>(slot - 1);
    TensorForm r(t.degree() - 2);
    for (const auto& [w, c] : t.terms_) {
        if (!is_field_letter(w[i]) || !is_form_letter(w[i + 1]))
            throw std::domain_error("contract_at: slots are not a field/form pair");
        if (dual_form(w[i]) != w[i + 1]) continue;
        Word rest(w.begin(), w.begin() + i);
        rest.insert(rest.end(), w.begin() + i + 2, w.end());
        r.add_term(rest, c);
    }
    return r;
}

std::string TensorForm::render() const {
    if (terms_.empty()) return "0";
    if (degree_ == 0) return terms_.begin()->second.render();
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        bool first_letter = true;
        for (Letter l : w) {
            if (!first_letter) out << "⊗";
            first_letter = false;
            out << letter_name(l);
        }
        out << "·(" << c.render() << ")";
    }
    return out.str();
}

/* -------------------------------------------------------------- TwoForm */

TwoForm TwoForm::left_act(const TorusElement& m) const {
    TorusElement moved;
    for (const auto& [mono, c] : m.terms())
        moved += TorusElement::monomial(mono, c * ScalarQ::q_power(mono.s - mono.r));
    return TwoForm(moved * coeff_);
}

std::string TwoForm::render() const {
    if (is_zero()) return "0";
    return "(du∧dv)·(" + coeff_.render() + ")";
}

/* ------------------------------------------------------- differential d */

TensorForm d0(const TorusElement& m) {
    TensorForm r(1);
    for (const auto& [mono, c] : m.terms()) {
        const auto [vr, us] = mono;
        if (vr != 0)
            r += TensorForm::term({Letter::dv},
                                  TorusElement::monomial({vr - 1, us}, c * ScalarQ::integer(vr)));
        if (us != 0)
            r += TensorForm::term(
                {Letter::du},
                TorusElement::monomial({vr, us - 1},
                                       c * ScalarQ::integer(us) * ScalarQ::q_power(-vr)));
    }
    return r;
}

TwoForm d1(const TensorForm& omega) {
    if (omega.degree() != 1 || !omega.pure_form())
        throw std::domain_error("d1: input must be a one-form");
    // d(du·a) = -du∧d0(a): keep the dv-part of d0(a).
    // d(dv·b) = -dv∧d0(b): dv∧du = -q^{-1} du∧dv, so keep +q^{-1}·(du-part).
    const TensorForm da = d0(omega.coefficient({Letter::du}));
    const TensorForm db = d0(omega.coefficient({Letter::dv}));
    TorusElement coeff = -da.coefficient({Letter::dv});
    coeff += db.coefficient({Letter::du}).scaled(ScalarQ::q_power(-1));
    return TwoForm(coeff);
}

TwoForm wedge_collapse(const TensorForm& z) {
    if (z.degree() != 2 || !z.pure_form())
        throw std::domain_error("wedge_collapse: input must be a two-tensor of one-forms");
    TorusElement coeff = z.coefficient({Letter::du, Letter::dv});
    coeff -= z.coefficient({Letter::dv, Letter::du}).scaled(ScalarQ::q_power(-1));
    return TwoForm(coeff);
}

TensorForm lift_two_form(const TwoForm& w) {
    return TensorForm::term({Letter::du, Letter::dv}, w.coefficient());
}

TensorForm lift_two_form_alt(const TwoForm& w) {
    return TensorForm::term({Letter::dv, Letter::du},
                            w.coefficient().scaled(-ScalarQ::q_power(1)));
}

ThetaSpace theta_generators(int n) {
    if (n == 2) {
        TensorForm mixed = TensorForm::basis_word({Letter::du, Letter::dv}) +
                           TensorForm::basis_word({Letter::dv, Letter::du})
                               .scaled(ScalarQ::q_power(1));
        return {2,
                {TensorForm::basis_word({Letter::du, Letter::du}),
                 TensorForm::basis_word({Letter::dv, Letter::dv}), mixed}};
    }
    if (n == 3) {
        ThetaSpace t{3, {}};
        for (Letter a : {Letter::du, Letter::dv})
            for (Letter b : {Letter::du, Letter::dv})
                for (Letter c : {Letter::du, Letter::dv})
                    t.generators.push_back(TensorForm::basis_word({a, b, c}));
        return t;
    }
    throw std::invalid_argument("theta_generators: n must be 2 or 3");
}

}  // namespace ncdg
