/**
 * @file torus_calculus.hpp
 * @brief Differential calculus on the noncommutative torus: tensor powers of
 *        the one-form bimodule, the differential, wedge collapse, canonical
 *        lifts, and the wedge-kernel generators.
 *
 * Basis relations (right-coefficient normal form):
 *   u dv = q dv u,   v du = q^{-1} du v,   [u, du] = [v, dv] = 0,
 *   du∧dv = -q dv∧du,   du∧du = dv∧dv = 0.
 *
 * Everything is stored with algebra coefficients on the far right of the
 * tensor word; moving a monomial v^r u^s across a letter multiplies by a
 * power of q:
 *   past du: q^{-r}     past dv: q^{+s}
 *   past Xu: q^{+r}     past Xv: q^{-s}
 * (Xu, Xv are the basis vector fields dual to du, dv; the twists are inverse
 * to the form twists so that evaluation is a bimodule map.)
 */
#pragma once

#include "ncdg/torus_algebra.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace ncdg {

/// Tensor letters: basis one-forms and basis vector fields.
enum class Letter : unsigned char { du = 0, dv = 1, xu = 2, xv = 3 };

inline bool is_form_letter(Letter l) { return l == Letter::du || l == Letter::dv; }
inline bool is_field_letter(Letter l) { return l == Letter::xu || l == Letter::xv; }
/// The form letter a field letter evaluates against (Xu ~ du, Xv ~ dv).
inline Letter dual_form(Letter l) {
    return l == Letter::xu ? Letter::du : Letter::dv;
}
std::string letter_name(Letter l);

using Word = std::vector<Letter>;

/// q-twist picked up when the monomial m moves from the left of `l` to its
/// right: m·l = twist·l·m.
ScalarQ move_right_twist(Letter l, Mono m);

/// Element of a tensor product (over the torus algebra) of one-form and
/// vector-field bimodules. Terms are words with a single right coefficient.
class TensorForm {
public:
    using Terms = std::map<Word, TorusElement>;

    TensorForm() : degree_(0) {}
    explicit TensorForm(int degree) : degree_(degree) {}

    /// Degree-0 element: a bare algebra coefficient.
    static TensorForm from_algebra(const TorusElement& m);
    /// word·coefficient single term.
    static TensorForm term(Word w, TorusElement coeff);
    static TensorForm basis_word(std::initializer_list<Letter> ls);

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    TorusElement coefficient(const Word& w) const;
    /// True when every letter of every word is a one-form letter.
    bool pure_form() const;
    /// The degree-0 coefficient (requires degree() == 0).
    TorusElement algebra_part() const;

    TensorForm operator-() const;
    TensorForm operator+(const TensorForm& o) const;
    TensorForm operator-(const TensorForm& o) const;
    TensorForm& operator+=(const TensorForm& o) { return *this = *this + o; }
    TensorForm& operator-=(const TensorForm& o) { return *this = *this - o; }

    TensorForm scaled(const ScalarQ& c) const;
    /// Right action: (w·a)·m = w·(a m).
    TensorForm right_act(const TorusElement& m) const;
    /// Left action: move m through the word with the q-twists.
    TensorForm left_act(const TorusElement& m) const;

    bool operator==(const TensorForm& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorForm& o) const { return !(*this == o); }

    /// "du⊗dv·((q) v^1 u^1)" style; degree-0 elements render as the bare
    /// coefficient, zero as "0".
    std::string render() const;

private:
    int degree_;
    Terms terms_;

    void add_term(const Word& w, const TorusElement& c);
    friend TensorForm tensor(const TensorForm& a, const TensorForm& b);
    friend TensorForm contract_front(const TensorForm& t);
    friend TensorForm contract_at(const TensorForm& t, int slot);
};

/// Tensor product over the algebra: coefficients of the left factor are
/// moved right across the right factor's word.
TensorForm tensor(const TensorForm& a, const TensorForm& b);

/// Evaluation of the two leading slots: words must start with a field letter
/// followed by a form letter; Xa⊗db·rest·c ↦ (matching pair) rest·c, with
/// non-matching pairs dropped. Degree drops by 2.
TensorForm contract_front(const TensorForm& t);

/// Evaluation of slots (slot, slot+1), 1-based: every word must carry a field
/// letter at `slot` and a form letter right after it. Matching pairs are
/// removed, non-matching pairs drop the term.
TensorForm contract_at(const TensorForm& t, int slot);

/// The quotient two-form module: Ω² is free of rank 1 on du∧dv.
class TwoForm {
public:
    TwoForm() = default;
    explicit TwoForm(TorusElement coeff) : coeff_(std::move(coeff)) {}

    const TorusElement& coefficient() const { return coeff_; }
    bool is_zero() const { return coeff_.is_zero(); }

    TwoForm operator-() const { return TwoForm(-coeff_); }
    TwoForm operator+(const TwoForm& o) const { return TwoForm(coeff_ + o.coeff_); }
    TwoForm operator-(const TwoForm& o) const { return TwoForm(coeff_ - o.coeff_); }
    TwoForm& operator+=(const TwoForm& o) { return *this = *this + o; }

    TwoForm scaled(const ScalarQ& c) const { return TwoForm(coeff_.scaled(c)); }
    TwoForm right_act(const TorusElement& m) const { return TwoForm(coeff_ * m); }
    /// m·(du∧dv) = q^{s-r} (du∧dv)·m for a monomial m = v^r u^s.
    TwoForm left_act(const TorusElement& m) const;

    bool operator==(const TwoForm& o) const { return coeff_ == o.coeff_; }
    bool operator!=(const TwoForm& o) const { return !(*this == o); }

    /// "(du∧dv)·(coeff)"; zero renders "0".
    std::string render() const;

private:
    TorusElement coeff_;
};

/// Differential on degree 0, by the monomial formula
///   d(v^r u^s) = r dv·v^{r-1}u^s + s q^{-r} du·v^r u^{s-1}
/// extended linearly (Leibniz becomes a theorem, checked in tests).
TensorForm d0(const TorusElement& m);

/// Differential on degree 1: d(du·a) = -du∧d0(a), d(dv·a) = -dv∧d0(a).
TwoForm d1(const TensorForm& omega);

/// du⊗dv·a ↦ (du∧dv)·a; dv⊗du·a ↦ -q^{-1}(du∧dv)·a; diagonals ↦ 0.
TwoForm wedge_collapse(const TensorForm& z);

/// Canonical lift (du∧dv)·a ↦ du⊗dv·a (a section of wedge_collapse).
TensorForm lift_two_form(const TwoForm& w);
/// The other natural section, -q·dv⊗du·a; used to test lift-independence.
TensorForm lift_two_form_alt(const TwoForm& w);

/// Generators of the wedge-collapse kernel as a right module.
struct ThetaSpace {
    int degree;
    std::vector<TensorForm> generators;
};

/// n = 2: {du⊗du, dv⊗dv, du⊗dv + q dv⊗du}. n = 3: all eight basis words
/// (the top degree is 2, so the collapse out of degree 3 is zero).
/// Other n are rejected.
ThetaSpace theta_generators(int n);

inline TensorForm left_act(const TorusElement& m, const TensorForm& omega) {
    return omega.left_act(m);
}

}  // namespace ncdg
