#include "ncdg/sphere_braiding.hpp"

#include <stdexcept>

namespace ncdg {

namespace {

ScalarQ qp(long k) { return ScalarQ::q_power(k); }
ScalarQ qint(long n) { return ScalarQ::integer(n); }

// q² − 1 and its friends show up in every family condition.
const ScalarQ& q2_minus_1() {
    static const ScalarQ c = qp(2) - qint(1);
    return c;
}
const ScalarQ& inv_q2_minus_1() {
    static const ScalarQ c = qint(1) / q2_minus_1();
    return c;
}
// 1/(q²−q⁴) = −q⁻²/(q²−1).
const ScalarQ& inv_q2_minus_q4() {
    static const ScalarQ c = qint(1) / (qp(2) - qp(4));
    return c;
}

std::vector<ScalarQ> mat_vec(const QMatrix& m, const std::vector<ScalarQ>& v) {
    std::vector<ScalarQ> out(static_cast<size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out[static_cast<size_t>(r)] += m.at(r, c) * v[static_cast<size_t>(c)];
    return out;
}

std::string render_two_tensor(const std::vector<ScalarQ>& t) {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (t[static_cast<size_t>(i)].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + t[static_cast<size_t>(i)].render() + ")·" + sphere_word_name(i);
    }
    return s.empty() ? "0" : s;
}

std::string triple_word_name(int w) {
    const char* letter[2] = {"dz", "dz̄"};
    return std::string(letter[(w >> 2) & 1]) + "⊗" + letter[(w >> 1) & 1] + "⊗" +
           letter[w & 1];
}

}  // namespace

SphereParams SphereParams::random(SplitMix64& rng) {
    auto coin = [&rng]() {
        // small Laurent monomial or binomial, occasionally zero
        const long kind = rng.range(0, 5);
        if (kind == 0) return ScalarQ();
        ScalarQ c = ScalarQ::integer(rng.range(-3, 3)) * ScalarQ::q_power(rng.range(-2, 2));
        if (kind == 1) c += ScalarQ::integer(rng.range(-2, 2));
        return c;
    };
    SphereParams h;
    h.h111 = coin();
    h.h121 = coin();
    h.h211 = coin();
    h.h221 = coin();
    return h;
}

std::string sphere_word_name(int index) {
    const char* names[4] = {"dz⊗dz", "dz⊗dz̄", "dz̄⊗dz", "dz̄⊗dz̄"};
    if (index < 0 || index > 3) throw std::domain_error("sphere_word_name: bad index");
    return names[index];
}

ScalarQ sphere_x(const SphereParams& h) {
    return q2_minus_1() * (h.h121 - qp(2) * h.h211) - qint(1);
}

BraidMatrix sphere_sigma(const SphereParams& h) {
    const ScalarQ hv[4] = {h.h111, h.h121, h.h211, h.h221};
    BraidMatrix m(4, 4);
    m.at(0, 0) = qint(1);
    m.at(3, 3) = qint(1);
    // σ(dz⊗dz̄) = q⁻² dz̄⊗dz + (q²−1)·Σ hᵢⱼ₁ dzⁱ⊗dzʲ
    m.at(2, 1) = qp(-2);
    for (int r = 0; r < 4; ++r) m.at(r, 1) += q2_minus_1() * hv[r];
    // σ(dz̄⊗dz) = q² dz⊗dz̄ − q²(q²−1)·Σ hᵢⱼ₁ dzⁱ⊗dzʲ
    m.at(1, 2) = qp(2);
    for (int r = 0; r < 4; ++r) m.at(r, 2) -= qp(2) * q2_minus_1() * hv[r];
    return m;
}

std::vector<std::vector<ScalarQ>> sphere_theta2() {
    std::vector<std::vector<ScalarQ>> gens(3, std::vector<ScalarQ>(4));
    gens[0][0] = qint(1);                            // dz⊗dz
    gens[1][3] = qint(1);                            // dz̄⊗dz̄
    gens[2][1] = qint(1);                            // dz⊗dz̄ + q⁻² dz̄⊗dz
    gens[2][2] = qp(-2);
    return gens;
}

ScalarQ sphere_wedge_collapse(const std::vector<ScalarQ>& t) {
    // dz∧dz = dz̄∧dz̄ = 0 and dz̄∧dz = −q² dz∧dz̄.
    return t[1] - qp(2) * t[2];
}

BraidMatrix sphere_sigma_at_slot(const BraidMatrix& sigma, int slot) {
    if (slot != 1 && slot != 2)
        throw std::domain_error("sphere_sigma_at_slot: slot must be 1 or 2");
    BraidMatrix out(8, 8);
    for (int w = 0; w < 8; ++w) {
        const int i1 = (w >> 2) & 1, i2 = (w >> 1) & 1, i3 = w & 1;
        const int pair_in = (slot == 1) ? sphere_word_index(i1, i2) : sphere_word_index(i2, i3);
        for (int pair_out = 0; pair_out < 4; ++pair_out) {
            const ScalarQ& c = sigma.at(pair_out, pair_in);
            if (c.is_zero()) continue;
            const int j = pair_out >> 1, k = pair_out & 1;
            const int w_out = (slot == 1) ? (j << 2) | (k << 1) | i3 : (i1 << 2) | (j << 1) | k;
            out.at(w_out, w) += c;
        }
    }
    return out;
}

BraidMatrix sphere_t3(const BraidMatrix& sigma) {
    const BraidMatrix s1 = sphere_sigma_at_slot(sigma, 1);
    const BraidMatrix s2 = sphere_sigma_at_slot(sigma, 2);
    return QMatrix::identity(8) - s1 + s1 * s2;
}

std::vector<char> sphere_compat_cases(const SphereParams& h) {
    std::vector<char> cases;
    if (h.h221.is_zero() && h.h211.is_zero() && h.h121 == inv_q2_minus_1())
        cases.push_back('a');
    if (h.h111.is_zero() && h.h121.is_zero() && h.h211 == inv_q2_minus_q4())
        cases.push_back('b');
    if (h.h111.is_zero() && h.h221.is_zero() && (h.h211 * h.h121).is_zero())
        cases.push_back('c');
    if (h.h111.is_zero() && h.h221.is_zero() && h.h121 == inv_q2_minus_1() &&
        h.h211 == inv_q2_minus_q4())
        cases.push_back('d');
    return cases;
}

std::vector<char> sphere_braid_cases(const SphereParams& h) {
    std::vector<char> cases;
    if (h.h111.is_zero() && h.h221.is_zero() && (h.h211 * h.h121).is_zero())
        cases.push_back('a');
    if (h.h111.is_zero() && h.h221.is_zero() && h.h121 == inv_q2_minus_1() &&
        h.h211 == inv_q2_minus_q4())
        cases.push_back('b');
    return cases;
}

std::vector<char> sphere_sigma_square_cases(const SphereParams& h) {
    std::vector<char> cases;
    if ((h.h121 - qp(2) * h.h211).is_zero()) cases.push_back('a');
    if (h.h111.is_zero() && h.h221.is_zero() && h.h121 == inv_q2_minus_1() &&
        h.h211 == inv_q2_minus_q4())
        cases.push_back('b');
    return cases;
}

SphereCompatReport sphere_compat(const SphereParams& h) {
    SphereCompatReport report;
    report.matching_cases = sphere_compat_cases(h);

    const BraidMatrix sigma = sphere_sigma(h);
    report.theta2_fixed = true;
    for (const auto& g : sphere_theta2()) {
        if (mat_vec(sigma, g) != g) {
            report.theta2_fixed = false;
            report.witness = "sigma moves " + render_two_tensor(g);
            break;
        }
    }

    // Span matrix: columns dzⁱ ⊗ (wedge-kernel generator) as 8-vectors.
    QMatrix span(8, 6);
    {
        const auto gens = sphere_theta2();
        int col = 0;
        for (int a = 0; a < 2; ++a)
            for (const auto& g : gens) {
                for (int tail = 0; tail < 4; ++tail)
                    span.at((a << 2) | tail, col) = g[static_cast<size_t>(tail)];
                ++col;
            }
    }
    const BraidMatrix t3 = sphere_t3(sigma);
    report.t3_in_span = true;
    for (int w = 0; w < 8 && report.t3_in_span; ++w) {
        std::vector<ScalarQ> b(8);
        for (int r = 0; r < 8; ++r) b[static_cast<size_t>(r)] = t3.at(r, w);
        if (!solve_linear(span, b)) {
            report.t3_in_span = false;
            if (report.witness.empty())
                report.witness =
                    "T3(" + triple_word_name(w) + ") outside the wedge-kernel span";
        }
    }
    return report;
}

bool sphere_braid_relation(const SphereParams& h) {
    const BraidMatrix sigma = sphere_sigma(h);
    const BraidMatrix s1 = sphere_sigma_at_slot(sigma, 1);
    const BraidMatrix s2 = sphere_sigma_at_slot(sigma, 2);
    return s1 * s2 * s1 == s2 * s1 * s2;
}

SphereSigmaSquareReport sphere_sigma_square(const SphereParams& h) {
    SphereSigmaSquareReport report;
    report.x = sphere_x(h);
    report.invertible = !report.x.is_zero();
    const BraidMatrix sigma = sphere_sigma(h);
    report.squares_to_identity = (sigma * sigma == QMatrix::identity(4));
    report.matching_cases = sphere_sigma_square_cases(h);
    return report;
}

BraidMatrix sphere_vec_sigma(const SphereParams& h) {
    if (sphere_x(h).is_zero())
        throw std::domain_error("sphere_vec_sigma: braiding is singular (x = 0)");
    const BraidMatrix sigma = sphere_sigma(h);

    // Unknowns S(2c+g, 2a+f) flattened as 4·row + col; one equation per
    // (a, b, e, c):  Σ_{f,g} σ(2f+g, 2b+e) · S(2c+g, 2a+f) = [a=b][c=e].
    QMatrix system(16, 16);
    std::vector<ScalarQ> rhs(16);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int e = 0; e < 2; ++e)
                for (int c = 0; c < 2; ++c) {
                    const int eq = (a << 3) | (b << 2) | (e << 1) | c;
                    for (int f = 0; f < 2; ++f)
                        for (int g = 0; g < 2; ++g)
                            system.at(eq, 4 * sphere_word_index(c, g) +
                                              sphere_word_index(a, f)) +=
                                sigma.at(sphere_word_index(f, g), sphere_word_index(b, e));
                    if (a == b && c == e) rhs[static_cast<size_t>(eq)] = qint(1);
                }
    const auto sol = solve_linear(system, rhs);
    if (!sol)
        throw std::domain_error("sphere_vec_sigma: evaluation constraint is inconsistent");
    BraidMatrix out(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out.at(r, c) = (*sol)[static_cast<size_t>(4 * r + c)];
    return out;
}

BraidMatrix sphere_vec_sigma_closed_form(const SphereParams& h) {
    const ScalarQ x = sphere_x(h);
    if (x.is_zero())
        throw std::domain_error("sphere_vec_sigma_closed_form: braiding is singular (x = 0)");
    const ScalarQ ix = x.inverse();
    const ScalarQ one_m_q2 = qint(1) - qp(2);    // 1 − q²
    const ScalarQ q4_m_q2 = qp(4) - qp(2);       // q⁴ − q²
    BraidMatrix m(4, 4);
    // Rows: dz⊗∂_z, dz⊗∂_z̄, dz̄⊗∂_z, dz̄⊗∂_z̄.  Columns: ∂_z⊗dz, ∂_z⊗dz̄,
    // ∂_z̄⊗dz, ∂_z̄⊗dz̄.
    m.at(0, 0) = qint(1);
    m.at(1, 0) = h.h111 * one_m_q2 * ix;
    m.at(3, 0) = h.h211 * (qp(2) - qp(4)) * ix;
    m.at(0, 1) = h.h111 * q4_m_q2 * ix;
    m.at(2, 1) = (h.h121 * q4_m_q2 - qp(2)) * ix;
    m.at(1, 2) = (h.h211 * one_m_q2 - qp(-2)) * ix;
    m.at(3, 2) = h.h221 * one_m_q2 * ix;
    m.at(0, 3) = h.h121 * q2_minus_1() * ix;
    m.at(2, 3) = h.h221 * q4_m_q2 * ix;
    m.at(3, 3) = qint(1);
    return m;
}

BraidMatrix sphere_vec_sigma_dual_basis(const SphereParams& h) {
    if (sphere_x(h).is_zero())
        throw std::domain_error("sphere_vec_sigma_dual_basis: braiding is singular (x = 0)");
    const BraidMatrix inv = sphere_sigma(h).inverse();
    BraidMatrix out(4, 4);
    // Entry of dz^g⊗∂_i in σ_Vec(∂_a⊗dz^b) is the entry of dz^a⊗dz^g in
    // σ⁻¹(dz^b⊗dzⁱ).
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int i = 0; i < 2; ++i)
                    out.at(sphere_word_index(g, i), sphere_word_index(a, b)) =
                        inv.at(sphere_word_index(a, g), sphere_word_index(b, i));
    return out;
}

ScalarQ sphere_dim(const SphereParams& h) {
    const BraidMatrix vec_sigma = sphere_vec_sigma(h);
    if (vec_sigma.determinant().is_zero())
        throw std::domain_error("sphere_dim: vector-field braiding is singular");
    const BraidMatrix inv = vec_sigma.inverse();
    // δ = dz⊗∂_z + dz̄⊗∂_z̄ (codomain indices 0 and 3); ev picks the
    // ∂_z⊗dz and ∂_z̄⊗dz̄ components (domain indices 0 and 3).
    std::vector<ScalarQ> delta(4);
    delta[0] = qint(1);
    delta[3] = qint(1);
    const auto hat = mat_vec(inv, delta);
    return hat[0] + hat[3];
}

ScalarQ sphere_dim_closed_form(const SphereParams& h) {
    const ScalarQ x = sphere_x(h);
    const ScalarQ den =
        x * x + qp(2) * q2_minus_1() * q2_minus_1() * (h.h121 * h.h211 - h.h111 * h.h221);
    if (den.is_zero())
        throw std::domain_error("sphere_dim_closed_form: degenerate parameters");
    return x * (x - qint(1)) / den;
}

}  // namespace ncdg
