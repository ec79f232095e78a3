#include "ncdg/flows.hpp"

#include <stdexcept>

namespace ncdg {

namespace {

constexpr Letter DU = Letter::du;
constexpr Letter DV = Letter::dv;

ScalarQ inv_int(int n) { return ScalarQ::rational(1, n); }

}  // namespace

ScalarQ binomial_general(long s, int k) {
    ScalarQ c = ScalarQ::integer(1);
    for (int i = 1; i <= k; ++i)
        c = c * ScalarQ::integer(s - i + 1) * inv_int(i);
    return c;
}

/* -------------------------------------------------------- exponentials */

FormalSeries<TorusElement> exp_lie0(const BraidMap& sigma, const VecElement& x,
                                    const TorusElement& m, int order) {
    std::vector<TorusElement> c(static_cast<size_t>(order) + 1);
    c[0] = m;
    for (int k = 0; k < order; ++k)
        c[k + 1] = lie_derivative0(sigma, x, c[k]).scaled(inv_int(k + 1));
    return FormalSeries<TorusElement>(std::move(c));
}

FormalSeries<TensorForm> exp_lie1(const BraidMap& sigma, const VecElement& x,
                                  const TensorForm& omega, int order) {
    std::vector<TensorForm> c(static_cast<size_t>(order) + 1, TensorForm(1));
    c[0] = omega;
    for (int k = 0; k < order; ++k)
        c[k + 1] = lie_derivative1(sigma, x, c[k]).scaled(inv_int(k + 1));
    return FormalSeries<TensorForm>(std::move(c));
}

FormalSeries<TwoForm> exp_lie2(const BraidMap& sigma, const VecElement& x, const TwoForm& w,
                               int order) {
    std::vector<TwoForm> c(static_cast<size_t>(order) + 1);
    c[0] = w;
    for (int k = 0; k < order; ++k)
        c[k + 1] = lie_derivative2(sigma, x, c[k]).scaled(inv_int(k + 1));
    return FormalSeries<TwoForm>(std::move(c));
}

/* -------------------------------------------------------- closed forms */

FormalSeries<TorusElement> closed_form_series0(ExpKind kind, long r, long s, int order) {
    const TorusElement base = TorusElement::monomial({r, s});
    std::vector<TorusElement> c(static_cast<size_t>(order) + 1);
    ScalarQ exp_coeff = ScalarQ::integer(1);  // s^k / k! accumulator
    for (int k = 0; k <= order; ++k) {
        if (kind == ExpKind::partial_u) {
            // coefficient of t^k in (1+t·u⁻¹)^s·v^r u^s
            c[k] = (TorusElement::u_power(-k) * base).scaled(binomial_general(s, k));
        } else {
            c[k] = base.scaled(exp_coeff);
            exp_coeff = exp_coeff * ScalarQ::integer(s) * inv_int(k + 1);
        }
    }
    return FormalSeries<TorusElement>(std::move(c));
}

FormalSeries<TensorForm> closed_form_series1(ExpKind kind, long r, long s, long n, long m,
                                             int order) {
    const TensorForm du_part =
        TensorForm::basis_word({DU}).right_act(TorusElement::monomial({r, s}));
    const TensorForm dv_part =
        TensorForm::basis_word({DV}).right_act(TorusElement::monomial({n, m}));
    std::vector<TensorForm> c(static_cast<size_t>(order) + 1, TensorForm(1));
    ScalarQ exp_du = ScalarQ::integer(1);  // (s+1)^k / k!
    ScalarQ exp_dv = ScalarQ::integer(1);  // m^k / k!
    for (int k = 0; k <= order; ++k) {
        if (kind == ExpKind::partial_u) {
            const TorusElement uk = TorusElement::u_power(-k);
            c[k] = du_part.left_act(uk).scaled(binomial_general(s, k)) +
                   dv_part.left_act(uk).scaled(binomial_general(m, k));
        } else {
            c[k] = du_part.scaled(exp_du) + dv_part.scaled(exp_dv);
            exp_du = exp_du * ScalarQ::integer(s + 1) * inv_int(k + 1);
            exp_dv = exp_dv * ScalarQ::integer(m) * inv_int(k + 1);
        }
    }
    return FormalSeries<TensorForm>(std::move(c));
}

FormalSeries<TwoForm> closed_form_series2(ExpKind kind, long r, long s, int order) {
    const TwoForm base(TorusElement::monomial({r, s}));
    std::vector<TwoForm> c(static_cast<size_t>(order) + 1);
    ScalarQ exp_coeff = ScalarQ::integer(1);  // (s+1)^k / k!
    for (int k = 0; k <= order; ++k) {
        if (kind == ExpKind::partial_u) {
            c[k] = base.left_act(TorusElement::u_power(-k)).scaled(binomial_general(s, k));
        } else {
            c[k] = base.scaled(exp_coeff);
            exp_coeff = exp_coeff * ScalarQ::integer(s + 1) * inv_int(k + 1);
        }
    }
    return FormalSeries<TwoForm>(std::move(c));
}

/* ----------------------------------------------- cochain and homotopy */

bool cochain_check0(const BraidMap& sigma, const VecElement& x, const TorusElement& m,
                    int order) {
    const FormalSeries<TorusElement> below = exp_lie0(sigma, x, m, order);
    const FormalSeries<TensorForm> above = exp_lie1(sigma, x, d0(m), order);
    for (int k = 0; k <= order; ++k)
        if (d0(below.coeff(k)) != above.coeff(k)) return false;
    return true;
}

bool cochain_check1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega,
                    int order) {
    const FormalSeries<TensorForm> below = exp_lie1(sigma, x, omega, order);
    const FormalSeries<TwoForm> above = exp_lie2(sigma, x, d1(omega), order);
    for (int k = 0; k <= order; ++k)
        if (d1(below.coeff(k)) != above.coeff(k)) return false;
    return true;
}

bool homotopy_check1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega,
                     int order) {
    // K'(ω)ⱼ = (j+1)·c_{j+1} against d(K(X⌟ω))ⱼ + K(X⌟dω)ⱼ.
    const FormalSeries<TensorForm> k1 = exp_lie1(sigma, x, omega, order);
    const FormalSeries<TorusElement> h0 =
        exp_lie0(sigma, x, interior_one_form(x, omega), order);
    const FormalSeries<TensorForm> h1 =
        exp_lie1(sigma, x, interior_two_form(sigma, x, d1(omega)), order);
    for (int j = 0; j + 1 <= order; ++j) {
        const TensorForm lhs = k1.coeff(j + 1).scaled(ScalarQ::integer(j + 1));
        if (lhs != d0(h0.coeff(j)) + h1.coeff(j)) return false;
    }
    return true;
}

bool homotopy_check2(const BraidMap& sigma, const VecElement& x, const TwoForm& w, int order) {
    // degree 3 vanishes, so only the d∘h term remains on the right.
    const FormalSeries<TwoForm> k2 = exp_lie2(sigma, x, w, order);
    const FormalSeries<TensorForm> h1 =
        exp_lie1(sigma, x, interior_two_form(sigma, x, w), order);
    for (int j = 0; j + 1 <= order; ++j) {
        const TwoForm lhs = k2.coeff(j + 1).scaled(ScalarQ::integer(j + 1));
        if (lhs != d1(h1.coeff(j))) return false;
    }
    return true;
}

/* ------------------------------------------------------------ transport */

FormalSeries<VecElement> parallel_transport_vec(const ConnectionParams& p, const VecElement& x,
                                                const VecElement& c0, int order) {
    std::vector<VecElement> c(static_cast<size_t>(order) + 1);
    c[0] = c0;
    for (int k = 0; k < order; ++k)
        c[k + 1] = (-covariant_at_vec(p, x, c[k])).scaled(inv_int(k + 1));
    return FormalSeries<VecElement>(std::move(c));
}

FormalSeries<TensorForm> parallel_transport_form(const ConnectionParams& p,
                                                 const VecElement& x, const TensorForm& c0,
                                                 int order) {
    std::vector<TensorForm> c(static_cast<size_t>(order) + 1, TensorForm(1));
    c[0] = c0;
    for (int k = 0; k < order; ++k)
        c[k + 1] = (-covariant_at_form(p, x, c[k])).scaled(inv_int(k + 1));
    return FormalSeries<TensorForm>(std::move(c));
}

FormalSeries<VecElement> geodesic(const ConnectionParams& p, const VecElement& c0, int order) {
    std::vector<VecElement> c(static_cast<size_t>(order) + 1);
    c[0] = c0;
    for (int k = 0; k < order; ++k) {
        VecElement sum;
        for (int i = 0; i <= k; ++i) sum += covariant_at_vec(p, c[i], c[k - i]);
        c[k + 1] = (-sum).scaled(inv_int(k + 1));
    }
    return FormalSeries<VecElement>(std::move(c));
}

bool geodesic_residual_vanishes(const ConnectionParams& p, const FormalSeries<VecElement>& c) {
    for (int j = 0; j + 1 <= c.order(); ++j) {
        VecElement residual = c.coeff(j + 1).scaled(ScalarQ::integer(j + 1));
        for (int i = 0; i <= j; ++i) residual += covariant_at_vec(p, c.coeff(i), c.coeff(j - i));
        if (!residual.is_zero()) return false;
    }
    return true;
}

}  // namespace ncdg
