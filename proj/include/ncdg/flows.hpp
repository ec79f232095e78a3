/**
 * @file flows.hpp
 * @brief Truncated formal power series in a central time parameter t:
 *        exponentiation of time-independent vector fields on degrees 0–2
 *        (K(t) with K' = K∘L_X, K(0) = id, i.e. the exponential series
 *        Σ tᵏ/k!·L_Xᵏ), the closed-form series for the two generator fields,
 *        cochain and homotopy identities, parallel transport, and geodesics.
 *
 * All series are exact: coefficients live in the same Q(q)-exact payload
 * types as the rest of the calculus, and t is central by fiat.
 */
#pragma once

#include "ncdg/interior_lie.hpp"

#include <string>
#include <vector>

namespace ncdg {

/// Truncated series c₀ + t·c₁ + … + t^N·c_N over an exact payload
/// (TorusElement, TensorForm, TwoForm, or VecElement).
template <class T>
class FormalSeries {
public:
    FormalSeries() : coeffs_(1) {}
    explicit FormalSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.resize(1);
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const T& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    T& coeff(int k) { return coeffs_.at(static_cast<size_t>(k)); }
    const std::vector<T>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const T& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const FormalSeries& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const FormalSeries& o) const { return !(*this == o); }

    /// "c0 + t·(c1) + t^2·(c2)" with zero terms skipped; "0" when all vanish.
    std::string render() const {
        std::string out;
        for (size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += coeffs_[k].render();
            } else {
                out += (k == 1) ? "t·(" : "t^" + std::to_string(k) + "·(";
                out += coeffs_[k].render() + ")";
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    std::vector<T> coeffs_;
};

/// Generalized binomial coefficient C(s,k) = s(s−1)…(s−k+1)/k! for integer s.
ScalarQ binomial_general(long s, int k);

/* -------------------------------------------------------- exponentials */

/// Exponential series of the Lie derivative, cₖ = L_Xᵏ(ω)/k!, through t^N.
FormalSeries<TorusElement> exp_lie0(const BraidMap& sigma, const VecElement& x,
                                    const TorusElement& m, int order);
FormalSeries<TensorForm> exp_lie1(const BraidMap& sigma, const VecElement& x,
                                  const TensorForm& omega, int order);
FormalSeries<TwoForm> exp_lie2(const BraidMap& sigma, const VecElement& x, const TwoForm& w,
                               int order);

/// The two generator fields whose exponentials have closed forms.
enum class ExpKind { partial_u, u_partial_u };

/// Taylor coefficients of the closed forms:
///   partial_u:   (1+t·u⁻¹)^s·v^r u^s          (degree 0)
///   u_partial_u: v^r u^s·e^{st}               (degree 0)
/// degree 1 applies the factors (1+t·u⁻¹)^s / e^{(s+1)t} to du·v^r u^s and
/// (1+t·u⁻¹)^m / e^{mt} to dv·v^n u^m; degree 2 uses (1+t·u⁻¹)^s·(du∧dv)·v^r u^s
/// and (du∧dv)·v^r u^s·e^{(s+1)t}.
FormalSeries<TorusElement> closed_form_series0(ExpKind kind, long r, long s, int order);
FormalSeries<TensorForm> closed_form_series1(ExpKind kind, long r, long s, long n, long m,
                                             int order);
FormalSeries<TwoForm> closed_form_series2(ExpKind kind, long r, long s, int order);

/* ----------------------------------------------- cochain and homotopy */

/// d∘K = K∘d coefficientwise through t^N (degree 0 → 1 and 1 → 2).
bool cochain_check0(const BraidMap& sigma, const VecElement& x, const TorusElement& m,
                    int order);
bool cochain_check1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega,
                    int order);

/// K' is cochain homotopic to zero via h = K∘(X⌟): verifies
/// K'(ω) = d(h(ω)) + h(dω) through t^{N−1}.
bool homotopy_check1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega,
                     int order);
bool homotopy_check2(const BraidMap& sigma, const VecElement& x, const TwoForm& w, int order);

/* ------------------------------------------------------------ transport */

/// Solution of ċ = −∇_X c with c(0) = c0, termwise: cₖ₊₁ = −∇_X(cₖ)/(k+1).
FormalSeries<VecElement> parallel_transport_vec(const ConnectionParams& p, const VecElement& x,
                                                const VecElement& c0, int order);
FormalSeries<TensorForm> parallel_transport_form(const ConnectionParams& p,
                                                 const VecElement& x, const TensorForm& c0,
                                                 int order);

/// Solution of the nonlinear geodesic equation ċ = −∇_c c with c(0) = c0:
/// (k+1)cₖ₊₁ = −Σ_{i+j=k} ∇_{c_i}(c_j).
FormalSeries<VecElement> geodesic(const ConnectionParams& p, const VecElement& c0, int order);

/// True when ċ + ∇_c c vanishes termwise through t^{N−1} (self-consistency
/// oracle for geodesic outputs, applicable to any vector-field series).
bool geodesic_residual_vanishes(const ConnectionParams& p, const FormalSeries<VecElement>& c);

}  // namespace ncdg
