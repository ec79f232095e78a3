// Acceptance gate: one line per criterion, exact Q(q) equality throughout.
// Exits nonzero when any criterion fails. Criterion 7 carries a wall-clock
// budget; everything else is pure algebra.
#include "ncdg/cli.hpp"

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

using namespace ncdg;

namespace {

ScalarQ qp(long k) { return ScalarQ::q_power(k); }
ScalarQ qi(long n) { return ScalarQ::integer(n); }

struct Line {
    int number;
    bool pass;
    std::string text;
};

std::vector<Line> lines;

void report(int number, bool pass, const std::string& text) {
    lines.push_back({number, pass, text});
}

using PairList = std::vector<std::pair<VecElement, VecElement>>;

PairList antisymmetric_pairs(const TorusElement& a, const TorusElement& b) {
    return {{VecElement::basis_v().left_mul(a), VecElement::basis_u().right_mul(b)},
            {VecElement::basis_u().left_mul(a).scaled(-qp(-1)),
             VecElement::basis_v().right_mul(b)}};
}

/* 1. The braiding derived from any connection equals the constant table. */
void criterion1() {
    const BraidMap table = torus_sigma_table();
    SplitMix64 rng(101);
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i)
        ok = derive_sigma(ConnectionParams::random(rng)) == table;
    report(1, ok,
           "braiding from 20 random connections equals the constant table "
           "(du⊗dv -> q dv⊗du, dv⊗du -> q^-1 du⊗dv, squares fixed)");
}

/* 2. The differential dimension of the torus calculus is 2. */
void criterion2() {
    SplitMix64 rng(102);
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i)
        ok = dim_torus(ConnectionParams::random(rng)) == qi(2);
    report(2, ok, "differential dimension = 2 for 20 random connections");
}

/* 3. The canonical element delta is flat and central, and evaluation is
      preserved by the paired braidings. */
void criterion3() {
    const TensorForm delta = kronecker_delta();
    SplitMix64 rng(103);
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        ok = nabla_form_vec(p, delta).is_zero();
        const TorusElement m = random_torus_element(rng);
        ok = ok && delta.left_act(m) == delta.right_act(m);
        const BraidMap sigma = derive_sigma(p);
        const BraidMap sv = sigma_vec(p);
        for (Letter x : {Letter::xu, Letter::xv})
            for (Letter a : {Letter::du, Letter::dv})
                for (Letter b : {Letter::du, Letter::dv}) {
                    const TensorForm z = TensorForm::term({x, a, b}, random_torus_element(rng));
                    ok = ok && contract_front(z) ==
                                   contract_at(sv.apply_at(sigma.apply_at(z, 2), 1), 2);
                }
    }
    report(3, ok,
           "nabla(delta) = 0, delta is central, and evaluation is preserved "
           "by the braiding pair for 20 random connections");
}

/* 4. Interior products of the volume form. */
void criterion4() {
    const BraidMap table = torus_sigma_table();
    const TwoForm vol(TorusElement::one());
    const bool ok =
        interior_two_form(table, VecElement::basis_u(), vol) ==
            TensorForm::basis_word({Letter::dv}) &&
        interior_two_form(table, VecElement::basis_v(), vol) ==
            TensorForm::basis_word({Letter::du}).scaled(-qp(1));
    report(4, ok, "Xu -| (du^dv) = dv and Xv -| (du^dv) = -q du, exactly");
}

/* 5. The bracket map kills the antisymmetric generator and satisfies the
      right-module defect identities. */
void criterion5() {
    bool ok = phi(canonical_antisymmetric()).is_zero();
    SplitMix64 rng(105);
    for (int i = 0; i < 50 && ok; ++i) {
        const VecElement x = random_vec_element(rng);
        const VecElement y = random_vec_element(rng);
        const TorusElement m = random_torus_element(rng);
        ok = phi_pair(x, y.left_mul(m)) ==
             phi_pair(x.right_mul(m), y) + y.left_mul(directional(x, m));
    }
    for (int i = 0; i < 50 && ok; ++i) {
        const PairList ps =
            antisymmetric_pairs(random_torus_element(rng), random_torus_element(rng));
        const TorusElement m = random_torus_element(rng);
        VecElement lhs, rhs;
        for (const auto& [first, second] : ps) {
            lhs += phi_pair(first, second);
            rhs += phi_pair(first, second.right_mul(m));
            rhs += first.right_mul(directional(second, m));
        }
        ok = lhs.right_mul(m) == rhs;
    }
    report(5, ok,
           "phi(Xv⊗Xu - q^-1 Xu⊗Xv) = 0 and the right-module defect "
           "identities hold on 100 random inputs");
}

/* 6. The torus braiding is compatible: wedge-kernel eigenspace, triple
      descent, braid relation, sigma squared. */
void criterion6() {
    const BraidMap table = torus_sigma_table();
    bool ok = true;
    for (const TensorForm& g : theta_generators(2).generators)
        ok = ok && table.apply(g) == g;
    ok = ok && compatibility_check(table).pass();
    for (Letter a : {Letter::du, Letter::dv})
        for (Letter b : {Letter::du, Letter::dv}) {
            const TensorForm w2 = TensorForm::basis_word({a, b});
            ok = ok && table.apply(table.apply(w2)) == w2;
            for (Letter l : {Letter::du, Letter::dv}) {
                const TensorForm w3 = TensorForm::basis_word({a, b, l});
                ok = ok && table.apply_at(table.apply_at(table.apply_at(w3, 1), 2), 1) ==
                               table.apply_at(table.apply_at(table.apply_at(w3, 2), 1), 2);
            }
        }
    report(6, ok,
           "torus braiding fixes the wedge kernel, T3 descends, and the "
           "braid relation and sigma^2 = id hold on all basis words");
}

/* 7. Exponentials match their closed forms through order 8, within 5s. */
void criterion7() {
    const BraidMap table = torus_sigma_table();
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (ExpKind kind : {ExpKind::partial_u, ExpKind::u_partial_u}) {
        const VecElement x = kind == ExpKind::partial_u
                                 ? VecElement::basis_u()
                                 : VecElement::basis_u().left_mul(TorusElement::u_power(1));
        for (long r = -3; r <= 3 && ok; ++r)
            for (long s = -3; s <= 3 && ok; ++s) {
                const TorusElement mono = TorusElement::monomial({r, s});
                const TensorForm omega =
                    TensorForm::basis_word({Letter::du}).right_act(mono) +
                    TensorForm::basis_word({Letter::dv})
                        .right_act(TorusElement::monomial({s, r}));
                ok = exp_lie0(table, x, mono, 8) == closed_form_series0(kind, r, s, 8) &&
                     exp_lie1(table, x, omega, 8) ==
                         closed_form_series1(kind, r, s, s, r, 8) &&
                     exp_lie2(table, x, TwoForm(mono), 8) ==
                         closed_form_series2(kind, r, s, 8);
            }
    }
    const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    const bool in_budget = ms <= 5000;
    std::ostringstream text;
    text << "exponentials match the closed forms through order 8 for both "
            "generator fields, degrees 0/1/2, all |r|,|s| <= 3 ("
         << ms << " ms " << (in_budget ? "<=" : ">") << " 5000 ms)";
    report(7, ok && in_budget, text.str());
}

/* 8. Cochain exchange and homotopy-derivative identities through order 7. */
void criterion8() {
    const BraidMap table = torus_sigma_table();
    SplitMix64 rng(108);
    bool ok = true;
    for (ExpKind kind : {ExpKind::partial_u, ExpKind::u_partial_u}) {
        const VecElement x = kind == ExpKind::partial_u
                                 ? VecElement::basis_u()
                                 : VecElement::basis_u().left_mul(TorusElement::u_power(1));
        for (int i = 0; i < 25 && ok; ++i) {
            const TorusElement m = random_torus_element(rng, 1);
            const TensorForm w1 =
                TensorForm::basis_word({Letter::du}).right_act(random_torus_element(rng, 1)) +
                TensorForm::basis_word({Letter::dv}).right_act(random_torus_element(rng, 1));
            const TwoForm w2(random_torus_element(rng, 1));
            ok = cochain_check0(table, x, m, 7) && cochain_check1(table, x, w1, 7) &&
                 homotopy_check1(table, x, w1, 7) && homotopy_check2(table, x, w2, 7);
        }
    }
    report(8, ok,
           "d∘K = K∘d and K' = d∘h + h∘d through order 7 for both generator "
           "fields on 50 random forms each");
}

/* 9. Curvature and torsion descend, and vanish for the flat connection. */
void criterion9() {
    SplitMix64 rng(109);
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        const ConnectionParams p = ConnectionParams::random(rng);
        const TorusElement m = random_torus_element(rng, 2);
        const VecElement x = random_vec_element(rng);
        const VecElement y = random_vec_element(rng);
        const TensorForm e_form = random_one_form(rng);
        const VecElement e_vec = random_vec_element(rng);
        ok = curvature_pair_form(p, x, y.left_mul(m), e_form) ==
                 curvature_pair_form(p, x.right_mul(m), y, e_form) &&
             curvature_pair_vec(p, x, y.left_mul(m), e_vec) ==
                 curvature_pair_vec(p, x.right_mul(m), y, e_vec) &&
             torsion_pair(p, x, y.left_mul(m)) == torsion_pair(p, x.right_mul(m), y) &&
             torsion_pair(p, x.left_mul(m), y) == torsion_pair(p, x, y).left_mul(m) &&
             curvature_pair_form(p, x.left_mul(m), y, e_form) ==
                 curvature_pair_form(p, x, y, e_form).left_act(m);
    }
    const ConnectionParams p0 = ConnectionParams::zero();
    for (int i = 0; i < 8 && ok; ++i) {
        const PairList ps = antisymmetric_pairs(random_torus_element(rng, 2),
                                                random_torus_element(rng, 2));
        const TensorForm e_form = random_one_form(rng);
        const VecElement e_vec = random_vec_element(rng);
        TensorForm r_form(1);
        VecElement r_vec, t_val;
        for (const auto& [first, second] : ps) {
            r_form += curvature_pair_form(p0, first, second, e_form);
            r_vec += curvature_pair_vec(p0, first, second, e_vec);
            t_val += torsion_pair(p0, first, second);
        }
        ok = r_form.is_zero() && r_vec.is_zero() && t_val.is_zero();
    }
    report(9, ok,
           "curvature/torsion descent identities hold on 100 random "
           "instances and both vanish for the flat connection");
}

/* 10. The sphere case tables, with the known divergence reported honestly. */
void criterion10() {
    std::vector<std::string> failures;
    const ScalarQ row_a_121 = qi(1) / (qp(2) - qi(1));
    const ScalarQ row_b_211 = qi(1) / (qp(2) - qp(4));
    SphereParams identity_point;
    identity_point.h121 = row_a_121;
    identity_point.h211 = row_b_211;

    SplitMix64 rng(110);
    auto coin = [&rng]() {
        return qi(rng.range(1, 3) * (rng.below(2) ? 1 : -1)) * qp(rng.range(-2, 2));
    };

    // Compatibility table rows a-c: 20 samples each.
    for (int i = 0; i < 20; ++i) {
        SphereParams s;
        s.h121 = row_a_121;
        s.h111 = (i == 0) ? ScalarQ() : coin();
        if (!sphere_compat(s).pass()) {
            failures.push_back("compatibility row a fails");
            break;
        }
    }
    for (int i = 0; i < 20; ++i) {
        SphereParams s;
        s.h211 = row_b_211;
        s.h221 = (i == 0) ? ScalarQ() : coin();
        if (!sphere_compat(s).pass()) {
            failures.push_back("compatibility row b fails");
            break;
        }
    }
    for (int i = 0; i < 20; ++i) {
        SphereParams s;
        (rng.below(2) ? s.h121 : s.h211) = coin();
        if (!sphere_compat(s).pass()) {
            failures.push_back("compatibility row c fails");
            break;
        }
    }
    // Compatibility table row d: the recorded table marks this point
    // compatible, but at it the braiding degenerates to the identity matrix,
    // and the identity braiding admits no compatible interior product (the
    // triple-descent target pins two contradictory coefficients). The engine
    // reports what it computes; this sub-check stays red rather than being
    // glossed over.
    if (!sphere_compat(identity_point).pass())
        failures.push_back(
            "compatibility row d diverges: at h121 = 1/(q^2-1), h211 = 1/(q^2-q^4) "
            "the braiding is the identity matrix and the compatibility check "
            "correctly rejects it, against the recorded table");

    // Braid-relation table.
    for (int i = 0; i < 20; ++i) {
        SphereParams s;
        (rng.below(2) ? s.h121 : s.h211) = coin();
        if (!sphere_braid_relation(s)) {
            failures.push_back("braid-relation row a fails");
            break;
        }
    }
    if (!sphere_braid_relation(identity_point))
        failures.push_back("braid-relation row b fails");

    // Sigma-squared / invertibility table.
    for (int i = 0; i < 20; ++i) {
        SphereParams s = SphereParams::random(rng);
        s.h121 = qp(2) * s.h211;
        const auto rep = sphere_sigma_square(s);
        if (!rep.squares_to_identity || rep.x != qi(-1)) {
            failures.push_back("sigma-squared row a fails");
            break;
        }
    }
    if (!sphere_sigma_square(identity_point).squares_to_identity)
        failures.push_back("sigma-squared row b fails");

    // Random-sample classification: verdicts must coincide with membership
    // in the recorded rows (random points never hit the divergent special
    // point).
    for (int i = 0; i < 20; ++i) {
        const SphereParams s = SphereParams::random(rng);
        if (sphere_compat(s).pass() != !sphere_compat_cases(s).empty() ||
            sphere_braid_relation(s) != !sphere_braid_cases(s).empty() ||
            sphere_sigma_square(s).squares_to_identity !=
                !sphere_sigma_square_cases(s).empty()) {
            failures.push_back("random-sample classification mismatch");
            break;
        }
    }

    // Differential dimension: closed formula at every defined sample, 2 at 0.
    if (sphere_dim(SphereParams::zero()) != qi(2)) failures.push_back("dim(0) != 2");
    for (int i = 0; i < 20; ++i) {
        const SphereParams s = SphereParams::random(rng);
        if (sphere_x(s).is_zero()) continue;
        if (sphere_vec_sigma(s).determinant().is_zero()) continue;
        if (sphere_dim(s) != sphere_dim_closed_form(s)) {
            failures.push_back("dimension formula mismatch");
            break;
        }
    }

    std::string text =
        "sphere case tables (compatibility, braid relation, sigma^2), random-"
        "sample classification, and the dimension formula";
    if (!failures.empty()) {
        text += " — " + std::to_string(failures.size()) + " sub-check(s) failed: ";
        for (size_t i = 0; i < failures.size(); ++i)
            text += (i ? "; " : "") + failures[i];
    }
    report(10, failures.empty(), text);
}

/* 11. Parser round-trip, report determinism, normal forms, exit codes. */
void criterion11() {
    using namespace ncdg::cli;
    bool ok = true;
    std::string detail;

    const std::vector<std::string> corpus = {
        "0", "1", "-1", "q", "-q", "q^2", "q^-3", "2*q^2 - q + 3",
        "(q^2 - 1)/q^2", "1/(q^2 - 1)", "-7/2", "3/4*q",
        "u", "v", "u*v", "v*u", "u^2*v^-1", "u + v", "u - v", "1 - u",
        "q*v*u", "(q^2 - 1)*u + 3", "u^-3", "v^2 - q^2",
        "du", "dv", "du + dv", "du*(v + u)", "dv*(q*v*u)", "du*v - dv*u",
        "0*du", "du*(-q)", "dv*(v^-1)",
        "du^^dv", "0*(du^^dv)", "(du^^dv)*(u)", "(du^^dv)*(-1/q)",
        "(du^^dv)*(v^2*u^2 + 1)",
        "Xu", "Xv", "Xu + Xv", "(u)*Xu", "(v + 1)*Xv", "0*Xu",
        "(q*v*u)*Xu + (v^2)*Xv",
        "d(u)", "d(u*v)", "d(v^-1)", "int(Xu, du^^dv)", "int(Xv, du*u)",
        "q^2*u*du + dv*(v - 1)", "-du*(u)", "u*du*v",
    };
    size_t round_tripped = 0;
    for (const std::string& text : corpus) {
        const Value val = evaluate(parse(text));
        if (evaluate(parse(render_value(val))) == val) ++round_tripped;
    }
    ok = round_tripped == corpus.size();
    if (!ok)
        detail = "only " + std::to_string(round_tripped) + " of " +
                 std::to_string(corpus.size()) + " expressions round-trip";

    SuiteConfig cfg;
    cfg.seed = 11;
    if (ok && emit_json(run_suite("all", cfg)) != emit_json(run_suite("all", cfg))) {
        ok = false;
        detail = "reports are not byte-identical under a fixed seed";
    }

    if (ok) {
        std::ostringstream out, err;
        if (run_cli({"eval", "u*v"}, out, err) != 0 || out.str() != "q*v*u\n") {
            ok = false;
            detail = "eval \"u*v\" did not print q*v*u";
        }
    }
    if (ok) {
        std::ostringstream o1, e1, o2, e2, o3, e3;
        const bool codes = run_cli({"verify", "torus"}, o1, e1) == 0 &&
                           run_cli({"verify", "sphere"}, o2, e2) == 1 &&
                           run_cli({"eval", "(u"}, o3, e3) != 0;
        if (!codes) {
            ok = false;
            detail = "exit-status contract violated";
        }
    }

    std::string text =
        std::to_string(corpus.size()) +
        " expressions round-trip, reports are byte-identical under a fixed "
        "seed, eval \"u*v\" prints q*v*u, and exit codes follow the contract";
    if (!detail.empty()) text += " — " + detail;
    report(11, ok, text);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();

    int failed = 0;
    for (const Line& l : lines) {
        std::cout << "criterion " << l.number << ": " << (l.pass ? "PASS" : "FAIL") << " — "
                  << l.text << "\n";
        if (!l.pass) ++failed;
    }
    std::cout << (failed == 0 ? "acceptance: all criteria pass"
                              : "acceptance: " + std::to_string(failed) +
                                    " criterion(s) failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}
