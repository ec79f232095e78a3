/**
 * @file sphere_braiding.hpp
 * @brief Constant-coefficient braiding analysis for the q-deformed sphere in
 *        stereographic coordinates: the four-parameter braiding family, the
 *        wedge-kernel and interior-product compatibility checks, the braid
 *        relation, invertibility and σ², the induced braiding on vector
 *        fields, and the differential dimension.
 *
 * The coordinate algebra is generated by z, z̄ with z z̄ = q⁻² z̄ z + q⁻² − 1,
 * and the first-order calculus has relations
 *   dz∧dz̄ = −q⁻² dz̄∧dz,   dz∧dz = dz̄∧dz̄ = 0,
 *   z·dz = q⁻² dz·z,  z·dz̄ = q⁻² dz̄·z,  z̄·dz = q² dz·z̄,  z̄·dz̄ = q² dz̄·z̄.
 *
 * Every admissible braiding acts with *constant* coefficients on the ordered
 * word basis
 *   (dz⊗dz, dz⊗dz̄, dz̄⊗dz, dz̄⊗dz̄),
 * parameterised by four constants h111, h121, h211, h221:
 *   σ(dz⊗dz)  = dz⊗dz
 *   σ(dz̄⊗dz̄) = dz̄⊗dz̄
 *   σ(dz⊗dz̄)  = q⁻² dz̄⊗dz + (q²−1)·Σ hᵢⱼ₁ dzⁱ⊗dzʲ
 *   σ(dz̄⊗dz)  = q²  dz⊗dz̄ − q²(q²−1)·Σ hᵢⱼ₁ dzⁱ⊗dzʲ
 * (z¹ = z, z² = z̄; the last line is the q⁻² dz̄⊗dz image rescaled by q²).
 * Since the whole analysis happens in this constant span, it reduces to exact
 * 4×4 and 8×8 matrix algebra over ℚ(q); the coordinate algebra itself never
 * has to be represented.
 */
#pragma once

#include "ncdg/prng.hpp"
#include "ncdg/qlinalg.hpp"

#include <string>
#include <vector>

namespace ncdg {

struct SphereParams {
    ScalarQ h111, h121, h211, h221;

    static SphereParams zero() { return {}; }
    /// Small random Laurent-polynomial parameters (deterministic in the rng).
    static SphereParams random(SplitMix64& rng);
};

/// 4×4 (or, for triple tensors, 8×8) matrix of ℚ(q) constants; column j holds
/// the image of the j-th basis word.
using BraidMatrix = QMatrix;

/// Index of dzⁱ⊗dzʲ (i, j ∈ {0, 1}; 0 ↔ z, 1 ↔ z̄) in the word basis.
inline int sphere_word_index(int i, int j) { return 2 * i + j; }

/// Human-readable label for a basis word, e.g. "dz⊗dz̄".
std::string sphere_word_name(int index);

/// x = (q²−1)(h121 − q²·h211) − 1.  σ is invertible exactly when x ≠ 0, and
/// x is also the determinant of the mixed 2×2 block of σ.
ScalarQ sphere_x(const SphereParams& h);

/// The braiding matrix on Ω¹⊗Ω¹ in the word basis.
BraidMatrix sphere_sigma(const SphereParams& h);

/// Generators of the kernel of ∧ on two-tensors, as coefficient 4-vectors:
/// {dz⊗dz, dz̄⊗dz̄, dz⊗dz̄ + q⁻² dz̄⊗dz}.
std::vector<std::vector<ScalarQ>> sphere_theta2();

/// Wedge collapse of a constant two-tensor: the coefficient of dz∧dz̄ after
/// applying dz̄∧dz = −q² dz∧dz̄ and killing the squares.
ScalarQ sphere_wedge_collapse(const std::vector<ScalarQ>& two_tensor);

/// Lift σ to the 8-dimensional triple tensor space, acting at slot 1
/// (letters 1,2) or slot 2 (letters 2,3).
BraidMatrix sphere_sigma_at_slot(const BraidMatrix& sigma, int slot);

/// T₃ = id − σ₁ + σ₁σ₂ on triple tensors (σᵣ = σ acting at slot r).
BraidMatrix sphere_t3(const BraidMatrix& sigma);

/// Parameter families under which the interior product defined by σ is
/// compatible with the calculus:
///   a) h221 = h211 = 0, h121 = 1/(q²−1)            (h111 free)
///   b) h111 = h121 = 0, h211 = 1/(q²−q⁴)           (h221 free)
///   c) h111 = h221 = 0, h211·h121 = 0
///   d) h111 = h221 = 0, h121 = 1/(q²−1), h211 = 1/(q²−q⁴)
/// Returns the subset of {'a','b','c','d'} whose conditions h satisfies.
std::vector<char> sphere_compat_cases(const SphereParams& h);

/// Parameter families satisfying the braid relation:
///   a) h111 = h221 = 0, h211·h121 = 0
///   b) h111 = h221 = 0, h121 = 1/(q²−1), h211 = 1/(q²−q⁴)
std::vector<char> sphere_braid_cases(const SphereParams& h);

/// Parameter families with σ² = id:
///   a) h121 − q²·h211 = 0                          (h111, h221 free)
///   b) h111 = h221 = 0, h121 = 1/(q²−1), h211 = 1/(q²−q⁴)
std::vector<char> sphere_sigma_square_cases(const SphereParams& h);

struct SphereCompatReport {
    /// Every wedge-kernel generator is fixed by σ.
    bool theta2_fixed = false;
    /// T₃ of every basis word lies in span{dzⁱ ⊗ (wedge-kernel generator)}.
    bool t3_in_span = false;
    /// Which of the parameter families a–d the values satisfy (may be empty).
    std::vector<char> matching_cases;
    /// First failure, when there is one.
    std::string witness;

    bool pass() const { return theta2_fixed && t3_in_span; }
};

/// Interior-product compatibility: the wedge kernel must be fixed pointwise
/// by σ, and T₃ must map all eight triple words into Ω¹⊗(wedge kernel); both
/// checks are exact linear algebra over ℚ(q).
SphereCompatReport sphere_compat(const SphereParams& h);

/// Whether (σ⊗id)(id⊗σ)(σ⊗id) = (id⊗σ)(σ⊗id)(id⊗σ) on triple tensors.
bool sphere_braid_relation(const SphereParams& h);

struct SphereSigmaSquareReport {
    ScalarQ x;
    bool invertible = false;             ///< x ≠ 0
    bool squares_to_identity = false;    ///< σ² = id as a 4×4 matrix
    std::vector<char> matching_cases;    ///< σ²-families a/b satisfied by h
};

SphereSigmaSquareReport sphere_sigma_square(const SphereParams& h);

/// Braiding on vector fields σ: Vec⊗Ω¹ → Ω¹⊗Vec, obtained by solving the
/// evaluation-preservation constraint
///   (ev⊗id) = (id⊗ev)(σ_Vec⊗id)(id⊗σ)  on  Vec⊗Ω¹⊗Ω¹
/// as a 16×16 exact linear system.  Columns are indexed by
/// (∂_z⊗dz, ∂_z⊗dz̄, ∂_z̄⊗dz, ∂_z̄⊗dz̄) and rows by
/// (dz⊗∂_z, dz⊗∂_z̄, dz̄⊗∂_z, dz̄⊗∂_z̄).
/// Throws std::domain_error when σ is singular (x = 0).
BraidMatrix sphere_vec_sigma(const SphereParams& h);

/// The same matrix from the closed-form entries with denominator x:
///   σ(∂_z⊗dz)  = dz⊗∂_z + h111(1−q²)/x · dz⊗∂_z̄ + h211(q²−q⁴)/x · dz̄⊗∂_z̄
///   σ(∂_z⊗dz̄)  = h111(q⁴−q²)/x · dz⊗∂_z + (h121(q⁴−q²)−q²)/x · dz̄⊗∂_z
///   σ(∂_z̄⊗dz)  = (h211(1−q²)−q⁻²)/x · dz⊗∂_z̄ + h221(1−q²)/x · dz̄⊗∂_z̄
///   σ(∂_z̄⊗dz̄) = h121(q²−1)/x · dz⊗∂_z + h221(q⁴−q²)/x · dz̄⊗∂_z + dz̄⊗∂_z̄
/// Throws std::domain_error when x = 0.
BraidMatrix sphere_vec_sigma_closed_form(const SphereParams& h);

/// The same matrix a third way, from the dual-basis formula
///   σ_Vec(X⊗ξ) = Σᵢ (ev⊗id)(X ⊗ σ⁻¹(ξ⊗dzⁱ)) ⊗ ∂ᵢ,
/// i.e. the entry of dz^g⊗∂_i in σ_Vec(∂_a⊗dz^b) is the entry of dz^a⊗dz^g
/// in σ⁻¹(dz^b⊗dzⁱ).  Throws std::domain_error when x = 0.
BraidMatrix sphere_vec_sigma_dual_basis(const SphereParams& h);

/// Differential dimension dim = ev(σ_Vec⁻¹ δ) with δ = dz⊗∂_z + dz̄⊗∂_z̄.
/// Throws std::domain_error when σ or σ_Vec is singular.
ScalarQ sphere_dim(const SphereParams& h);

/// Closed formula x(x−1) / (x² + q²(q²−1)²(h121·h211 − h111·h221)).
/// Throws std::domain_error when the denominator vanishes.
ScalarQ sphere_dim_closed_form(const SphereParams& h);

}  // namespace ncdg
