/**
 * @file interior_lie.hpp
 * @brief Alternating operators T_n, interior products, compatibility checks,
 *        Lie derivatives on degrees 0/1/2, antisymmetric field tensors, the
 *        bracket map phi, curvature, and torsion — on the torus calculus.
 *
 * Conventions:
 *   T_n = -Σ_{r=1..n} (-1)^r σ_r⊗id^{n-r};  X⌟z = (ev⊗id^{n-1})(X⊗T_n z);
 *   L_X = X⌟d + d(X⌟·)  (the degree-0 interior product is 0 by convention);
 *   φ(X⊗Y)(ξ) = D_X(Y(ξ)) + ev(id⊗ev⊗id)(X⊗Y⊗lift(dξ));
 *   R(X⊗Y)(e) = ∇_X∇_Y(e) − ∇_{φ(X⊗Y)}(e);  T(X⊗Y) = ∇_X(Y) − φ(X⊗Y).
 *
 * φ is defined on antisymmetric elements; there the choice of lift in φ does
 * not matter and the result is a right-module map. The ungated *_pair
 * entry points fix the canonical lift and are what the defect identities
 * (right-module failure formulas) are stated on.
 */
#pragma once

#include "ncdg/connections.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ncdg {

/// Formal sum of field-letter words with a single far-left coefficient per
/// word: the term c·(∂_a⊗∂_b) stands for the pair (c·∂_a)⊗∂_b of the full
/// (unbalanced) tensor product. Operations read it slotwise through pairs().
class VecTensor {
public:
    VecTensor() = default;

    static VecTensor term(Word w, TorusElement left_coeff);

    const std::map<Word, TorusElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    VecTensor operator-() const;
    VecTensor operator+(const VecTensor& o) const;
    VecTensor operator-(const VecTensor& o) const { return *this + (-o); }
    VecTensor scaled(const ScalarQ& c) const;
    /// m·x merges into the far-left coefficients (left action on the tensor).
    VecTensor left_mul(const TorusElement& m) const;

    /// Slotwise reading: term c·(∂_a⊗∂_b) ↦ (c·∂_a, ∂_b).
    std::vector<std::pair<VecElement, VecElement>> pairs() const;
    /// The image in the balanced tensor product (the quotient map π), in the
    /// shared right-coefficient word representation.
    TensorForm projected() const;

    bool operator==(const VecTensor& o) const;
    std::string render() const;

private:
    std::map<Word, TorusElement> terms_;  // word (field letters) -> left coeff
    void add(const Word& w, const TorusElement& c);
};

/// ∂_v⊗∂_u − q⁻¹ ∂_u⊗∂_v, the generator of the antisymmetric elements.
VecTensor canonical_antisymmetric();

/* ------------------------------------------- interior products and T_n */

/// T_n on a degree-n form tensor (n ≥ 1): the alternating sum above.
TensorForm t_n_apply(const BraidMap& sigma, const TensorForm& z);

/// X⌟z = (ev⊗id^{n-1})(X⊗T_n z) on a form tensor of degree n ≥ 1.
TensorForm interior_tensor(const BraidMap& sigma, const VecElement& x, const TensorForm& z);

/// X⌟m = 0 in degree 0 (the convention that makes the Cartan formula work).
inline TorusElement interior_zero_form(const VecElement&, const TorusElement&) { return {}; }

/// X⌟ω = X(ω) for a one-form.
TorusElement interior_one_form(const VecElement& x, const TensorForm& omega);

/// X⌟w through the canonical lift (compatibility makes it lift-independent).
TensorForm interior_two_form(const BraidMap& sigma, const VecElement& x, const TwoForm& w);

/// Compatibility of the braiding with the calculus:
///  (i) Θ² is fixed by σ (equivalently T₂Θ² = 0);
///  (ii) T₃ maps every degree-3 basis word into the right-module span of
///       {du,dv}⊗(Θ² generators), decided by an exact linear solve.
struct CompatibilityReport {
    bool theta2_fixed = false;
    bool theta3_into_theta2 = false;
    std::string witness;  // first failing generator or word; empty when both pass
    bool pass() const { return theta2_fixed && theta3_into_theta2; }
};
CompatibilityReport compatibility_check(const BraidMap& sigma);

/* --------------------------------------------------------- derivatives */

/// D_X m = X(d m).
TorusElement directional(const VecElement& x, const TorusElement& m);

/// Lie derivatives by the Cartan formula, degree by degree.
TorusElement lie_derivative0(const BraidMap& sigma, const VecElement& x, const TorusElement& m);
TensorForm lie_derivative1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega);
TwoForm lie_derivative2(const BraidMap& sigma, const VecElement& x, const TwoForm& w);

/* ------------------------------------------------- antisymmetry and phi */

/// ev(id⊗ev⊗id)(πx⊗k) for k a degree-2 form tensor.
TorusElement theta_pairing(const VecTensor& x, const TensorForm& k);

/// True when the pairing with all Θ² generators vanishes (right-linearity
/// in k reduces the defining condition to the generators).
bool antisymmetry_check(const VecTensor& x);

/// φ(X⊗Y) evaluated at an arbitrary one-form, canonical lift for d ξ.
TorusElement phi_eval(const VecElement& x, const VecElement& y, const TensorForm& xi);

/// φ(X⊗Y) as a vector field (values on du, dv); ungated single pair.
VecElement phi_pair(const VecElement& x, const VecElement& y);

/// φ on an antisymmetric element; throws std::domain_error otherwise.
VecElement phi(const VecTensor& x);

/* -------------------------------------------------- curvature / torsion */

/// ∇_X ω = (ev⊗id)(X⊗∇ω) on one-forms, and ∇_X Y on vector fields.
TensorForm covariant_at_form(const ConnectionParams& p, const VecElement& x,
                             const TensorForm& omega);
VecElement covariant_at_vec(const ConnectionParams& p, const VecElement& x, const VecElement& y);

/// Single-pair curvature/torsion with the canonical-lift φ (ungated).
TensorForm curvature_pair_form(const ConnectionParams& p, const VecElement& x,
                               const VecElement& y, const TensorForm& e);
VecElement curvature_pair_vec(const ConnectionParams& p, const VecElement& x,
                              const VecElement& y, const VecElement& e);
VecElement torsion_pair(const ConnectionParams& p, const VecElement& x, const VecElement& y);

/// Gated versions on antisymmetric elements (throw std::domain_error
/// when antisymmetry_check fails).
TensorForm curvature_form(const ConnectionParams& p, const VecTensor& x, const TensorForm& e);
VecElement curvature_vec(const ConnectionParams& p, const VecTensor& x, const VecElement& e);
VecElement torsion(const ConnectionParams& p, const VecTensor& x);

}  // namespace ncdg
