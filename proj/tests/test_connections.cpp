// Covariant derivatives on one-forms, the derived braiding, braidings and the
// paired derivative on vector fields, tensor-power and two-form connections,
// the Kronecker delta, and the differential dimension.
#include "ncdg/connections.hpp"

#include "doctest.h"

#include <vector>

using namespace ncdg;

namespace {

const Letter DU = Letter::du, DV = Letter::dv, XU = Letter::xu, XV = Letter::xv;

ScalarQ qp(long k) { return ScalarQ::q_power(k); }

TensorForm b1(Letter l) { return TensorForm::basis_word({l}); }

/// (id⊗wedge_collapse) of a degree-3 form tensor, as (du part, dv part).
TwoFormDerivative collapse_last_two(const TensorForm& z) {
    TensorForm du_block(2), dv_block(2);
    for (const auto& [w, c] : z.terms()) {
        const TensorForm tail = TensorForm::term({w[1], w[2]}, c);
        if (w[0] == DU)
            du_block += tail;
        else
            dv_block += tail;
    }
    return {wedge_collapse(du_block), wedge_collapse(dv_block)};
}

}  // namespace

TEST_CASE("derived braiding equals the constant table for every parameter choice") {
    CHECK(derive_sigma(ConnectionParams::zero()) == torus_sigma_table());
    SplitMix64 rng(0x5eedD00dULL);
    for (int i = 0; i < 12; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        CHECK(derive_sigma(p) == torus_sigma_table());
    }
}

TEST_CASE("one-form covariant derivative satisfies both Leibniz rules") {
    SplitMix64 rng(42);
    const BraidMap sigma = torus_sigma_table();
    for (int i = 0; i < 25; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const TorusElement m = random_torus_element(rng);
        const TensorForm w = random_one_form(rng);
        // left: nabla(m w) = d m (x) w + m nabla(w)
        CHECK(nabla_one_form(p, w.left_act(m)) ==
              tensor(d0(m), w) + nabla_one_form(p, w).left_act(m));
        // right: nabla(w m) = nabla(w) m + sigma(w (x) d m)
        CHECK(nabla_one_form(p, w.right_act(m)) ==
              nabla_one_form(p, w).right_act(m) + sigma.apply(tensor(w, d0(m))));
    }
}

TEST_CASE("braiding is a bimodule map") {
    SplitMix64 rng(7);
    const BraidMap sigma = torus_sigma_table();
    for (int i = 0; i < 25; ++i) {
        const TorusElement m = random_torus_element(rng);
        const TensorForm z = tensor(random_one_form(rng), random_one_form(rng));
        CHECK(sigma.apply(z.left_act(m)) == sigma.apply(z).left_act(m));
        CHECK(sigma.apply(z.right_act(m)) == sigma.apply(z).right_act(m));
    }
}

TEST_CASE("braiding squares to the identity and satisfies the braid relation") {
    const BraidMap sigma = torus_sigma_table();
    for (const auto& [a, b] : form_form_basis()) {
        const TensorForm w = TensorForm::basis_word({a, b});
        CHECK(sigma.apply(sigma.apply(w)) == w);
    }
    for (Letter a : {DU, DV})
        for (Letter b : {DU, DV})
            for (Letter c : {DU, DV}) {
                const TensorForm w = TensorForm::basis_word({a, b, c});
                const TensorForm lhs =
                    sigma.apply_at(sigma.apply_at(sigma.apply_at(w, 1), 2), 1);
                const TensorForm rhs =
                    sigma.apply_at(sigma.apply_at(sigma.apply_at(w, 2), 1), 2);
                CHECK(lhs == rhs);
            }
    // matrix form: sigma^2 = 1 on the ordered basis
    const QMatrix m = sigma.to_matrix(form_form_basis(), form_form_basis());
    CHECK(m * m == QMatrix::identity(4));
}

TEST_CASE("evaluation against vector fields is a bimodule map") {
    SplitMix64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const TorusElement m = random_torus_element(rng);
        const VecElement x = random_vec_element(rng);
        const TensorForm w = random_one_form(rng);
        // (X.m)(w) = X(m w) and X(w m) = X(w) m
        CHECK(x.right_mul(m)(w) == x(w.left_act(m)));
        CHECK(x(w.right_act(m)) == x(w) * m);
        // (m.X)(w) = m X(w)
        CHECK(x.left_mul(m)(w) == m * x(w));
    }
    // dual-basis pairing
    CHECK(VecElement::basis_u()(b1(DU)) == TorusElement::one());
    CHECK(VecElement::basis_u()(b1(DV)) == TorusElement::zero());
    CHECK(VecElement::basis_v()(b1(DV)) == TorusElement::one());
    CHECK(VecElement::basis_v()(b1(DU)) == TorusElement::zero());
}

TEST_CASE("vector-field braiding tables are parameter-independent") {
    SplitMix64 rng(0xabcdULL);
    for (int i = 0; i < 8; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const BraidMap sv = sigma_vec(p);
        // sigma(Xu (x) du) = du (x) Xu         sigma(Xv (x) du) = q du (x) Xv
        // sigma(Xv (x) dv) = dv (x) Xv         sigma(Xu (x) dv) = q^-1 dv (x) Xu
        CHECK(sv.apply(TensorForm::basis_word({XU, DU})) == TensorForm::basis_word({DU, XU}));
        CHECK(sv.apply(TensorForm::basis_word({XV, DU})) ==
              TensorForm::basis_word({DU, XV}).scaled(qp(1)));
        CHECK(sv.apply(TensorForm::basis_word({XV, DV})) == TensorForm::basis_word({DV, XV}));
        CHECK(sv.apply(TensorForm::basis_word({XU, DV})) ==
              TensorForm::basis_word({DV, XU}).scaled(qp(-1)));

        const BraidMap svv = sigma_inv_vecvec(p);
        CHECK(svv.apply(TensorForm::basis_word({XU, XU})) == TensorForm::basis_word({XU, XU}));
        CHECK(svv.apply(TensorForm::basis_word({XV, XU})) ==
              TensorForm::basis_word({XU, XV}).scaled(qp(-1)));
        CHECK(svv.apply(TensorForm::basis_word({XV, XV})) == TensorForm::basis_word({XV, XV}));
        CHECK(svv.apply(TensorForm::basis_word({XU, XV})) ==
              TensorForm::basis_word({XV, XU}).scaled(qp(1)));
    }
}

TEST_CASE("evaluation is preserved by the paired braidings") {
    // (ev (x) id) = (id (x) ev)(sigma_vec (x) id)(id (x) sigma) on Vec (x) O1 (x) O1
    SplitMix64 rng(0xfeedULL);
    for (int i = 0; i < 6; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const BraidMap sigma = derive_sigma(p);
        const BraidMap sv = sigma_vec(p);
        for (Letter x : {XU, XV})
            for (Letter a : {DU, DV})
                for (Letter b : {DU, DV}) {
                    const TensorForm z =
                        TensorForm::term({x, a, b}, random_torus_element(rng));
                    const TensorForm lhs = contract_front(z);
                    const TensorForm rhs =
                        contract_at(sv.apply_at(sigma.apply_at(z, 2), 1), 2);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("paired derivative on vector fields: closed form on the basis") {
    SplitMix64 rng(0x1234ULL);
    const TorusElement uinv = TorusElement::u_power(-1);
    const TorusElement vinv = TorusElement::v_power(-1);
    const TorusElement v_uinv2 = TorusElement::v_power(1) * TorusElement::u_power(-2);
    const TorusElement u_vinv2 = TorusElement::u_power(1) * TorusElement::v_power(-2);
    for (int i = 0; i < 10; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        // nabla(Xu) = -r_uu du u^-1 (x) Xu - q^-1 r_vu dv v^-1 (x) Xu
        //             - q^-1 s_vu dv u^-1 (x) Xv - s_uu du v u^-2 (x) Xv
        TensorForm exp_u(2);
        exp_u += tensor(TensorForm::term({DU}, uinv).scaled(-p.r_uu), b1(XU));
        exp_u += tensor(TensorForm::term({DV}, vinv).scaled(-(qp(-1) * p.r_vu)), b1(XU));
        exp_u += tensor(TensorForm::term({DV}, uinv).scaled(-(qp(-1) * p.s_vu)), b1(XV));
        exp_u += tensor(TensorForm::term({DU}, v_uinv2).scaled(-p.s_uu), b1(XV));
        CHECK(nabla_vec(p, VecElement::basis_u()) == exp_u);
        // nabla(Xv) = -s_vv dv v^-1 (x) Xv - q s_uv du u^-1 (x) Xv
        //             - q r_uv du v^-1 (x) Xu - r_vv dv u v^-2 (x) Xu
        TensorForm exp_v(2);
        exp_v += tensor(TensorForm::term({DV}, vinv).scaled(-p.s_vv), b1(XV));
        exp_v += tensor(TensorForm::term({DU}, uinv).scaled(-(qp(1) * p.s_uv)), b1(XV));
        exp_v += tensor(TensorForm::term({DU}, vinv).scaled(-(qp(1) * p.r_uv)), b1(XU));
        exp_v += tensor(TensorForm::term({DV}, u_vinv2).scaled(-p.r_vv), b1(XU));
        CHECK(nabla_vec(p, VecElement::basis_v()) == exp_v);
    }
}

TEST_CASE("paired derivative on vector fields: Leibniz rules") {
    SplitMix64 rng(0x9999ULL);
    for (int i = 0; i < 15; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const BraidMap sv = sigma_vec(p);
        const TorusElement m = random_torus_element(rng);
        const VecElement x = random_vec_element(rng);
        // left: nabla(m X) = d m (x) X + m nabla(X)
        CHECK(nabla_vec(p, x.left_mul(m)) ==
              tensor(d0(m), x.tensor_rep()) + nabla_vec(p, x).left_act(m));
        // right: nabla(X m) = nabla(X) m + sigma_vec(X (x) d m)
        CHECK(nabla_vec(p, x.right_mul(m)) ==
              nabla_vec(p, x).right_act(m) + sv.apply(tensor(x.tensor_rep(), d0(m))));
    }
}

TEST_CASE("Kronecker delta is central, flat, and evaluates to dimension two") {
    SplitMix64 rng(0xd1d1ULL);
    const TensorForm delta = kronecker_delta();
    for (int i = 0; i < 10; ++i) {
        const TorusElement m = random_torus_element(rng);
        CHECK(delta.left_act(m) == delta.right_act(m));
        const ConnectionParams p = ConnectionParams::random(rng);
        CHECK(nabla_form_vec(p, delta).is_zero());
        CHECK(dim_torus(p) == ScalarQ::integer(2));
        // delta-hat is the flipped sum, independent of the parameters
        CHECK(delta_hat(p) ==
              TensorForm::basis_word({XU, DU}) + TensorForm::basis_word({XV, DV}));
    }
}

TEST_CASE("tensor-power connection satisfies both Leibniz rules") {
    SplitMix64 rng(0x7777ULL);
    const BraidMap sigma = torus_sigma_table();
    for (int deg = 2; deg <= 3; ++deg) {
        for (int i = 0; i < 8; ++i) {
            const ConnectionParams p = ConnectionParams::random(rng);
            TensorForm z = (deg == 2) ? tensor(random_one_form(rng), random_one_form(rng))
                                      : tensor(tensor(random_one_form(rng), random_one_form(rng)),
                                               random_one_form(rng));
            const TorusElement m = random_torus_element(rng);
            CHECK(nabla_tensor(p, z.left_act(m)) ==
                  tensor(d0(m), z) + nabla_tensor(p, z).left_act(m));
            CHECK(nabla_tensor(p, z.right_act(m)) ==
                  nabla_tensor(p, z).right_act(m) +
                      sigma_r_apply(sigma, deg + 1, tensor(z, d0(m))));
        }
    }
    // degree 1 reduces to the one-form derivative
    SplitMix64 rng2(3);
    const ConnectionParams p = ConnectionParams::random(rng2);
    const TensorForm w = random_one_form(rng2);
    CHECK(nabla_tensor(p, w) == nabla_one_form(p, w));
}

TEST_CASE("wedge-kernel generators are preserved by the tensor-square connection") {
    SplitMix64 rng(0x2222ULL);
    for (int i = 0; i < 10; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        CHECK(theta2_preserved(p));
        // the whole right submodule is killed, not just the generators
        const TorusElement m = random_torus_element(rng);
        for (const TensorForm& g : theta_generators(2).generators) {
            const TwoFormDerivative r = collapse_last_two(nabla_tensor(p, g.right_act(m)));
            CHECK(r.du_part.is_zero());
            CHECK(r.dv_part.is_zero());
        }
    }
}

TEST_CASE("two-form connection: closed form and lift independence") {
    SplitMix64 rng(0x3333ULL);
    for (int i = 0; i < 10; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        // nabla(du^dv) = du (x) (du^dv)(q^-1 r_uu + s_uv) u^-1
        //              + dv (x) (du^dv)(r_vu + q s_vv) v^-1
        const TwoFormDerivative got = nabla_two_form(p, TwoForm(TorusElement::one()));
        const TwoFormDerivative expect = {
            TwoForm(TorusElement::u_power(-1).scaled(qp(-1) * p.r_uu + p.s_uv)),
            TwoForm(TorusElement::v_power(-1).scaled(p.r_vu + qp(1) * p.s_vv))};
        CHECK(got == expect);

        const TwoForm w(random_torus_element(rng));
        const TwoFormDerivative via_alt =
            collapse_last_two(nabla_tensor(p, lift_two_form_alt(w)));
        CHECK(nabla_two_form(p, w) == via_alt);
    }
}

TEST_CASE("two-form connection satisfies both Leibniz rules") {
    SplitMix64 rng(0x4444ULL);
    for (int i = 0; i < 10; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const TorusElement m = random_torus_element(rng);
        const TwoForm w(random_torus_element(rng));
        // left: nabla(m w) = d m (x) w + m nabla(w), compared through the lift
        // (the collapse of the last two slots commutes with the left action)
        const TensorForm dm = d0(m);
        const TwoFormDerivative nw = nabla_two_form(p, w);
        const TensorForm nw3 = tensor(b1(DU), lift_two_form(nw.du_part)) +
                               tensor(b1(DV), lift_two_form(nw.dv_part));
        const TensorForm rhs3 = tensor(dm, lift_two_form(w)) + nw3.left_act(m);
        const TwoFormDerivative left_got = nabla_two_form(p, w.left_act(m));
        CHECK(left_got == collapse_last_two(rhs3));
        // right: nabla(w m) = nabla(w) m + (id (x) wedge)(sigma_3(lift(w) (x) d m))
        const BraidMap sigma = torus_sigma_table();
        const TwoFormDerivative tail =
            collapse_last_two(sigma_r_apply(sigma, 3, tensor(lift_two_form(w), dm)));
        const TwoFormDerivative right_expect = {nw.du_part.right_act(m) + tail.du_part,
                                                nw.dv_part.right_act(m) + tail.dv_part};
        CHECK(nabla_two_form(p, w.right_act(m)) == right_expect);
    }
}

TEST_CASE("braid-map matrix round trip and inverses") {
    SplitMix64 rng(5);
    const ConnectionParams p = ConnectionParams::random(rng);
    const BraidMap sigma = derive_sigma(p);
    const QMatrix m = sigma.to_matrix(form_form_basis(), form_form_basis());
    CHECK(BraidMap::from_matrix(m, form_form_basis(), form_form_basis()) == sigma);
    // sigma is an involution, so its inverse is itself
    CHECK(sigma.inverse(form_form_basis(), form_form_basis()) == sigma);
    // sigma_vec inverse undoes sigma_vec on all basis words
    const BraidMap sv = sigma_vec(p);
    const BraidMap svi = sigma_vec_inverse(p);
    for (const auto& k : field_form_basis()) {
        const TensorForm w = TensorForm::basis_word({k.first, k.second});
        CHECK(svi.apply(sv.apply(w)) == w);
    }
}

TEST_CASE("vector-field components and rendering") {
    const TorusElement a = TorusElement::monomial({1, 2}, qp(1));
    const TorusElement b = TorusElement::monomial({-1, 0}, ScalarQ::integer(-3));
    const VecElement x = VecElement::from_components(a, b);
    CHECK(x.component_u() == a);
    CHECK(x.component_v() == b);
    CHECK(VecElement::basis_u().render() == "(1)·Xu");
    CHECK(x.render() == "((q) v^1 u^2)·Xu + ((-3) v^-1)·Xv");
}
