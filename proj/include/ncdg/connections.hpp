/**
 * @file connections.hpp
 * @brief The eight-parameter family of bimodule covariant derivatives on the
 *        torus one-forms, the braiding derived from it, braidings and the
 *        paired covariant derivative on vector fields, tensor-power and
 *        two-form connections, the Kronecker delta, and the differential
 *        dimension.
 *
 * Connection family (right coefficients):
 *   ∇(du) = r_uu du⊗du·u⁻¹ + r_vu dv⊗du·v⁻¹ + r_uv du⊗dv·v⁻¹ + r_vv dv⊗dv·u v⁻²
 *   ∇(dv) = s_vv dv⊗dv·v⁻¹ + s_vu dv⊗du·u⁻¹ + s_uv du⊗dv·u⁻¹ + s_uu du⊗du·v u⁻²
 *
 * The braiding is *derived* from the connection via
 *   σ(e⊗d(b)) = ∇(e·b) − ∇(e)·b,   b ∈ {u, v},
 * and comes out parameter-independent:
 *   σ(du⊗du) = du⊗du          σ(du⊗dv) = q dv⊗du
 *   σ(dv⊗dv) = dv⊗dv          σ(dv⊗du) = q⁻¹ du⊗dv.
 */
#pragma once

#include "ncdg/prng.hpp"
#include "ncdg/qlinalg.hpp"
#include "ncdg/torus_calculus.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ncdg {

struct ConnectionParams {
    ScalarQ r_uu, r_vu, r_uv, r_vv;
    ScalarQ s_vv, s_vu, s_uv, s_uu;

    static ConnectionParams zero() { return {}; }
    /// Small random Laurent-polynomial parameters (deterministic in the rng).
    static ConnectionParams random(SplitMix64& rng);
};

/// Vector field a·∂_u + b·∂_v (left coefficients). Internally stored in the
/// shared right-coefficient tensor representation so module actions and
/// tensor products come from the calculus layer.
class VecElement {
public:
    VecElement() : t_(1) {}

    static VecElement basis_u();  // ∂_u
    static VecElement basis_v();  // ∂_v
    static VecElement from_components(const TorusElement& a, const TorusElement& b);
    static VecElement from_tensor(TensorForm t);

    /// Left coefficient of ∂_u (resp. ∂_v) in a·∂_u + b·∂_v.
    TorusElement component_u() const;
    TorusElement component_v() const;

    const TensorForm& tensor_rep() const { return t_; }
    bool is_zero() const { return t_.is_zero(); }

    /// Evaluation against a one-form (vector fields are right-module maps).
    TorusElement operator()(const TensorForm& one_form) const;

    VecElement operator-() const { return VecElement(-t_); }
    VecElement operator+(const VecElement& o) const { return VecElement(t_ + o.t_); }
    VecElement operator-(const VecElement& o) const { return VecElement(t_ - o.t_); }
    VecElement& operator+=(const VecElement& o) { return *this = *this + o; }
    VecElement scaled(const ScalarQ& c) const { return VecElement(t_.scaled(c)); }
    VecElement left_mul(const TorusElement& m) const { return VecElement(t_.left_act(m)); }
    VecElement right_mul(const TorusElement& m) const { return VecElement(t_.right_act(m)); }

    bool operator==(const VecElement& o) const { return t_ == o.t_; }
    bool operator!=(const VecElement& o) const { return !(*this == o); }

    /// "(a)·Xu + (b)·Xv" with zero parts omitted.
    std::string render() const;

private:
    explicit VecElement(TensorForm t) : t_(std::move(t)) {}
    TensorForm t_;
};

/// Constant-coefficient braiding data: images of two-letter basis words as
/// formal scalar combinations of two-letter words. Extends to a bimodule map
/// on normal forms because the coefficients are central scalars.
class BraidMap {
public:
    using Key = std::pair<Letter, Letter>;
    using Image = std::vector<std::pair<Key, ScalarQ>>;

    BraidMap() = default;
    static BraidMap from_images(std::map<Key, Image> images);

    bool has(Key k) const { return images_.count(k) != 0; }
    const Image& image(Key k) const;
    const std::map<Key, Image>& images() const { return images_; }

    /// Rewrite slots (slot, slot+1) of every word, 1-based. Throws when a
    /// word's letter pair is outside the stored domain.
    TensorForm apply_at(const TensorForm& z, int slot) const;
    /// Degree-2 convenience: apply at slot 1.
    TensorForm apply(const TensorForm& z) const { return apply_at(z, 1); }

    /// Matrix with column j = coordinates of image(domain[j]) in `codomain`.
    /// Throws when an image leaves the codomain basis.
    QMatrix to_matrix(const std::vector<Key>& domain, const std::vector<Key>& codomain) const;
    static BraidMap from_matrix(const QMatrix& m, const std::vector<Key>& domain,
                                const std::vector<Key>& codomain);
    /// Inverse map (codomain words back to domain combinations).
    BraidMap inverse(const std::vector<Key>& domain, const std::vector<Key>& codomain) const;

    bool operator==(const BraidMap& o) const;

private:
    std::map<Key, Image> images_;
};

/// Ordered two-letter word bases used for matrix forms of braidings.
const std::vector<BraidMap::Key>& form_form_basis();  // du⊗du, du⊗dv, dv⊗du, dv⊗dv
const std::vector<BraidMap::Key>& field_form_basis(); // Xu⊗du, Xu⊗dv, Xv⊗du, Xv⊗dv
const std::vector<BraidMap::Key>& form_field_basis(); // du⊗Xu, du⊗Xv, dv⊗Xu, dv⊗Xv
const std::vector<BraidMap::Key>& field_field_basis();// Xu⊗Xu, Xu⊗Xv, Xv⊗Xu, Xv⊗Xv

/// ∇ on the generator du or dv (the four-term family display).
TensorForm nabla_generator(const ConnectionParams& p, Letter g);

/// ∇ on a general one-form via the left Leibniz rule
/// ∇(m·e) = d(m)⊗e + m·∇(e) after rewriting to left coefficients.
TensorForm nabla_one_form(const ConnectionParams& p, const TensorForm& omega);

/// Braiding derived from the connection; throws std::domain_error if the
/// computed images fail to be constant-coefficient (never happens for this
/// family — the error path is the well-definedness guard).
BraidMap derive_sigma(const ConnectionParams& p);

/// The constant braiding table shared by the whole connection family
/// (golden value for derive_sigma): σ(du⊗dv) = q dv⊗du,
/// σ(dv⊗du) = q⁻¹ du⊗dv, squares fixed.
BraidMap torus_sigma_table();

/// Composed braiding σ_r on the first r slots: σ_1 = id, σ_2 = σ,
/// σ_{r+1} = (σ⊗id^{r-1})(id⊗σ_r); unrolled, apply σ at slots
/// r-1, r-2, …, 1 in that order.
TensorForm sigma_r_apply(const BraidMap& sigma, int r, const TensorForm& z);

/// Tensor-power connection on ⊗ⁿΩ¹ (n ≥ 1):
///   ∇ = Σ_{i=1..n} (σ_i⊗id^{n+1-i})(id^{i-1}⊗∇⊗id^{n-i}).
TensorForm nabla_tensor(const ConnectionParams& p, const BraidMap& sigma, const TensorForm& z);
TensorForm nabla_tensor(const ConnectionParams& p, const TensorForm& z);

/// ∇ on the two-form module, through the canonical lift; components of
/// du⊗(du∧dv)·a + dv⊗(du∧dv)·b.
struct TwoFormDerivative {
    TwoForm du_part, dv_part;
    bool operator==(const TwoFormDerivative& o) const {
        return du_part == o.du_part && dv_part == o.dv_part;
    }
    std::string render() const;
};

/// True when (id⊗wedge)∘∇₂ kills the Θ² generators (quotient well-defined).
bool theta2_preserved(const ConnectionParams& p);

/// Quotient connection on Ω²; throws std::domain_error when Θ² preservation
/// fails (never happens for this family).
TwoFormDerivative nabla_two_form(const ConnectionParams& p, const TwoForm& w);

/// Paired covariant derivative on vector fields (dual-basis formula):
///   ∇α = Σ d(α(e_i))⊗α_i − Σ (ev⊗id)(id⊗σ⁻¹)(id⊗∇)(α⊗e_i)⊗α_i,
/// with values in Ω¹⊗Vec (words [form, field]).
TensorForm nabla_vec(const ConnectionParams& p, const VecElement& x);

/// Braiding Vec⊗Ω¹ → Ω¹⊗Vec:
///   σ_Vec(α⊗ξ) = Σ (ev⊗id)(id⊗σ⁻¹)(α⊗ξ⊗e_i)⊗α_i.
BraidMap sigma_vec(const ConnectionParams& p);
/// Its inverse Ω¹⊗Vec → Vec⊗Ω¹ (via the 4×4 matrix).
BraidMap sigma_vec_inverse(const ConnectionParams& p);

/// Braiding σ⁻¹ on Vec⊗Vec:
///   σ⁻¹(X⊗Y) = Σ (ev⊗id)(X⊗σ_Vec(Y⊗ξ_i))⊗X_i.
BraidMap sigma_inv_vecvec(const ConnectionParams& p);

/// δ = du⊗∂_u + dv⊗∂_v ∈ Ω¹⊗Vec.
TensorForm kronecker_delta();
/// δ̂ = σ_Vec⁻¹(δ) ∈ Vec⊗Ω¹.
TensorForm delta_hat(const ConnectionParams& p);
/// dim = ev(δ̂); a scalar (and equal to 2 for every parameter choice).
ScalarQ dim_torus(const ConnectionParams& p);

/// Tensor connection on Ω¹⊗Vec (used to check ∇(δ) = 0):
///   ∇(e⊗Y) = ∇e⊗Y + (σ⊗id)(e⊗∇Y).
TensorForm nabla_form_vec(const ConnectionParams& p, const TensorForm& z);

/// Random small elements for property checks (exponents in [-3,3], ≤3 terms).
TorusElement random_torus_element(SplitMix64& rng, int max_terms = 3);
VecElement random_vec_element(SplitMix64& rng);
TensorForm random_one_form(SplitMix64& rng);

}  // namespace ncdg
