#include "ncdg/connections.hpp"

#include <sstream>
#include <stdexcept>

namespace ncdg {

namespace {

const Letter DU = Letter::du, DV = Letter::dv, XU = Letter::xu, XV = Letter::xv;

TensorForm basis1(Letter l) { return TensorForm::basis_word({l}); }

/// Move a right coefficient to the left of a single letter: l·c = (moved c)·l.
TorusElement move_left_of(Letter l, const TorusElement& c) {
    TorusElement out;
    for (const auto& [mono, s] : c.terms())
        out += TorusElement::monomial(mono, s / move_right_twist(l, mono));
    return out;
}

}  // namespace

/* ----------------------------------------------------- ConnectionParams */

ConnectionParams ConnectionParams::random(SplitMix64& rng) {
    auto coin = [&rng]() {
        // small Laurent monomial or binomial, occasionally zero
        const long kind = rng.range(0, 5);
        if (kind == 0) return ScalarQ();
        ScalarQ c = ScalarQ::integer(rng.range(-3, 3)) * ScalarQ::q_power(rng.range(-2, 2));
        if (kind == 1) c += ScalarQ::integer(rng.range(-2, 2));
        return c;
    };
    ConnectionParams p;
    p.r_uu = coin(); p.r_vu = coin(); p.r_uv = coin(); p.r_vv = coin();
    p.s_vv = coin(); p.s_vu = coin(); p.s_uv = coin(); p.s_uu = coin();
    return p;
}

/* ----------------------------------------------------------- VecElement */

VecElement VecElement::basis_u() { return VecElement(TensorForm::basis_word({XU})); }
VecElement VecElement::basis_v() { return VecElement(TensorForm::basis_word({XV})); }

VecElement VecElement::from_components(const TorusElement& a, const TorusElement& b) {
    return VecElement(TensorForm::basis_word({XU}).left_act(a) +
                      TensorForm::basis_word({XV}).left_act(b));
}

VecElement VecElement::from_tensor(TensorForm t) {
    if (t.degree() != 1) throw std::domain_error("VecElement: tensor degree must be 1");
    for (const auto& [w, c] : t.terms())
        if (!is_field_letter(w[0]))
            throw std::domain_error("VecElement: tensor must use field letters");
    return VecElement(std::move(t));
}

TorusElement VecElement::component_u() const {
    return move_left_of(XU, t_.coefficient({XU}));
}
TorusElement VecElement::component_v() const {
    return move_left_of(XV, t_.coefficient({XV}));
}

TorusElement VecElement::operator()(const TensorForm& one_form) const {
    if (one_form.degree() != 1 || !one_form.pure_form())
        throw std::domain_error("VecElement: evaluation needs a one-form");
    return contract_front(tensor(t_, one_form)).algebra_part();
}

std::string VecElement::render() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    const TorusElement a = component_u(), b = component_v();
    if (!a.is_zero()) {
        out << "(" << a.render() << ")·Xu";
        first = false;
    }
    if (!b.is_zero()) {
        if (!first) out << " + ";
        out << "(" << b.render() << ")·Xv";
    }
    return out.str();
}

/* ------------------------------------------------------------- BraidMap */

BraidMap BraidMap::from_images(std::map<Key, Image> images) {
    BraidMap b;
    for (auto& [k, img] : images) {
        Image cleaned;
        for (auto& [w, c] : img)
            if (!c.is_zero()) cleaned.emplace_back(w, c);
        b.images_[k] = std::move(cleaned);
    }
    return b;
}

const BraidMap::Image& BraidMap::image(Key k) const {
    auto it = images_.find(k);
    if (it == images_.end()) throw std::domain_error("BraidMap: word pair outside domain");
    return it->second;
}

TensorForm BraidMap::apply_at(const TensorForm& z, int slot) const {
    if (slot < 1 || slot + 1 > z.degree())
        throw std::domain_error("BraidMap: slot out of range");
    const size_t i = static_cast<size_t>(slot - 1);
    TensorForm r(z.degree());
    for (const auto& [w, c] : z.terms()) {
        for (const auto& [pair, s] : image({w[i], w[i + 1]})) {
            Word nw = w;
            nw[i] = pair.first;
            nw[i + 1] = pair.second;
            r += TensorForm::term(std::move(nw), c.scaled(s));
        }
    }
    return r;
}

QMatrix BraidMap::to_matrix(const std::vector<Key>& domain,
                            const std::vector<Key>& codomain) const {
    const int n = static_cast<int>(codomain.size()), m = static_cast<int>(domain.size());
    QMatrix mat(n, m);
    for (int j = 0; j < m; ++j) {
        for (const auto& [w, c] : image(domain[static_cast<size_t>(j)])) {
            int row = -1;
            for (int i = 0; i < n; ++i)
                if (codomain[static_cast<size_t>(i)] == w) {
                    row = i;
                    break;
                }
            if (row < 0) throw std::domain_error("BraidMap: image leaves the codomain basis");
            mat.at(row, j) += c;
        }
    }
    return mat;
}

BraidMap BraidMap::from_matrix(const QMatrix& m, const std::vector<Key>& domain,
                               const std::vector<Key>& codomain) {
    std::map<Key, Image> images;
    for (size_t j = 0; j < domain.size(); ++j) {
        Image img;
        for (size_t i = 0; i < codomain.size(); ++i) {
            const ScalarQ& c = m.at(static_cast<int>(i), static_cast<int>(j));
            if (!c.is_zero()) img.emplace_back(codomain[i], c);
        }
        images[domain[j]] = std::move(img);
    }
    return from_images(std::move(images));
}

BraidMap BraidMap::inverse(const std::vector<Key>& domain,
                           const std::vector<Key>& codomain) const {
    return from_matrix(to_matrix(domain, codomain).inverse(), codomain, domain);
}

bool BraidMap::operator==(const BraidMap& o) const {
    if (images_.size() != o.images_.size()) return false;
    for (const auto& [k, img] : images_) {
        if (!o.has(k)) return false;
        // Compare as maps to ignore term order.
        std::map<Key, ScalarQ> a, b;
        for (const auto& [w, c] : img) a[w] += c;
        for (const auto& [w, c] : o.image(k)) b[w] += c;
        for (auto it = a.begin(); it != a.end();)
            it = it->second.is_zero() ? a.erase(it) : std::next(it);
        for (auto it = b.begin(); it != b.end();)
            it = it->second.is_zero() ? b.erase(it) : std::next(it);
        if (a != b) return false;
    }
    return true;
}

const std::vector<BraidMap::Key>& form_form_basis() {
    static const std::vector<BraidMap::Key> b = {{DU, DU}, {DU, DV}, {DV, DU}, {DV, DV}};
    return b;
}
const std::vector<BraidMap::Key>& field_form_basis() {
    static const std::vector<BraidMap::Key> b = {{XU, DU}, {XU, DV}, {XV, DU}, {XV, DV}};
    return b;
}
const std::vector<BraidMap::Key>& form_field_basis() {
    static const std::vector<BraidMap::Key> b = {{DU, XU}, {DU, XV}, {DV, XU}, {DV, XV}};
    return b;
}
const std::vector<BraidMap::Key>& field_field_basis() {
    static const std::vector<BraidMap::Key> b = {{XU, XU}, {XU, XV}, {XV, XU}, {XV, XV}};
    return b;
}

/* ------------------------------------------------- connection on Ω¹, σ */

TensorForm nabla_generator(const ConnectionParams& p, Letter g) {
    const TorusElement uinv = TorusElement::u_power(-1);
    const TorusElement vinv = TorusElement::v_power(-1);
    if (g == DU) {
        TensorForm r(2);
        r += TensorForm::term({DU, DU}, uinv.scaled(p.r_uu));
        r += TensorForm::term({DV, DU}, vinv.scaled(p.r_vu));
        r += TensorForm::term({DU, DV}, vinv.scaled(p.r_uv));
        r += TensorForm::term({DV, DV},
                              (TorusElement::u_power(1) * TorusElement::v_power(-2)).scaled(p.r_vv));
        return r;
    }
    if (g == DV) {
        TensorForm r(2);
        r += TensorForm::term({DV, DV}, vinv.scaled(p.s_vv));
        r += TensorForm::term({DV, DU}, uinv.scaled(p.s_vu));
        r += TensorForm::term({DU, DV}, uinv.scaled(p.s_uv));
        r += TensorForm::term({DU, DU},
                              (TorusElement::v_power(1) * TorusElement::u_power(-2)).scaled(p.s_uu));
        return r;
    }
    throw std::invalid_argument("nabla_generator: generator must be du or dv");
}

TensorForm nabla_one_form(const ConnectionParams& p, const TensorForm& omega) {
    if (omega.degree() != 1 || !omega.pure_form())
        throw std::domain_error("nabla_one_form: input must be a one-form");
    TensorForm r(2);
    for (const auto& [w, c] : omega.terms()) {
        // l·c = c~ · l, then ∇(c~·l) = d(c~)⊗l + c~·∇(l).
        const TorusElement moved = move_left_of(w[0], c);
        r += tensor(d0(moved), basis1(w[0]));
        r += nabla_generator(p, w[0]).left_act(moved);
    }
    return r;
}

BraidMap derive_sigma(const ConnectionParams& p) {
    std::map<BraidMap::Key, BraidMap::Image> images;
    const struct {
        Letter b;          // algebra generator b with d(b) the second slot
        TorusElement m;    // the generator as an algebra element
    } gens[2] = {{DU, TorusElement::u_power(1)}, {DV, TorusElement::v_power(1)}};
    for (Letter e : {DU, DV}) {
        for (const auto& [db, m] : gens) {
            // σ(e⊗db) = ∇(e·b) − ∇(e)·b
            const TensorForm img =
                nabla_one_form(p, TensorForm::term({e}, m)) -
                nabla_generator(p, e).right_act(m);
            BraidMap::Image entry;
            for (const auto& [w, c] : img.terms()) {
                if (!c.is_scalar())
                    throw std::domain_error(
                        "derive_sigma: non-constant braiding image (well-definedness failure)");
                entry.emplace_back(BraidMap::Key{w[0], w[1]}, c.scalar_value());
            }
            images[{e, db}] = std::move(entry);
        }
    }
    return BraidMap::from_images(std::move(images));
}

BraidMap torus_sigma_table() {
    const ScalarQ one = ScalarQ::integer(1);
    std::map<BraidMap::Key, BraidMap::Image> images;
    images[{DU, DU}] = {{{DU, DU}, one}};
    images[{DV, DV}] = {{{DV, DV}, one}};
    images[{DU, DV}] = {{{DV, DU}, ScalarQ::q_power(1)}};
    images[{DV, DU}] = {{{DU, DV}, ScalarQ::q_power(-1)}};
    return BraidMap::from_images(std::move(images));
}

TensorForm sigma_r_apply(const BraidMap& sigma, int r, const TensorForm& z) {
    if (r < 1 || r > z.degree()) throw std::domain_error("sigma_r_apply: r out of range");
    TensorForm out = z;
    for (int j = r - 1; j >= 1; --j) out = sigma.apply_at(out, j);
    return out;
}

/* ------------------------------------------- tensor-power and Ω² connections */

TensorForm nabla_tensor(const ConnectionParams& p, const BraidMap& sigma, const TensorForm& z) {
    const int n = z.degree();
    if (n < 1 || !z.pure_form())
        throw std::domain_error("nabla_tensor: input must be a form tensor of degree >= 1");
    TensorForm out(n + 1);
    for (const auto& [w, c] : z.terms()) {
        for (int i = 1; i <= n; ++i) {
            // factor i is the basis letter w[i-1]; the far-right coefficient
            // belongs to the last factor.
            TensorForm mid = (i == n)
                                 ? nabla_one_form(p, TensorForm::term({w[n - 1]}, c))
                                 : nabla_generator(p, w[static_cast<size_t>(i - 1)]);
            TensorForm summand = tensor(
                TensorForm::term(Word(w.begin(), w.begin() + (i - 1)), TorusElement::one()), mid);
            if (i < n)
                summand = tensor(summand,
                                 TensorForm::term(Word(w.begin() + i, w.end()), c));
            out += sigma_r_apply(sigma, i, summand);
        }
    }
    return out;
}

TensorForm nabla_tensor(const ConnectionParams& p, const TensorForm& z) {
    return nabla_tensor(p, derive_sigma(p), z);
}

namespace {

/// (id⊗wedge_collapse)∘∇₂ as components (du part, dv part).
TwoFormDerivative collapse_after_nabla2(const ConnectionParams& p, const BraidMap& sigma,
                                        const TensorForm& z) {
    const TensorForm nz = nabla_tensor(p, sigma, z);
    TensorForm du_block(2), dv_block(2);
    for (const auto& [w, c] : nz.terms()) {
        const TensorForm tail = TensorForm::term({w[1], w[2]}, c);
        if (w[0] == DU)
            du_block += tail;
        else
            dv_block += tail;
    }
    return {wedge_collapse(du_block), wedge_collapse(dv_block)};
}

}  // namespace

bool theta2_preserved(const ConnectionParams& p) {
    const BraidMap sigma = derive_sigma(p);
    for (const TensorForm& g : theta_generators(2).generators) {
        const TwoFormDerivative r = collapse_after_nabla2(p, sigma, g);
        if (!r.du_part.is_zero() || !r.dv_part.is_zero()) return false;
    }
    return true;
}

TwoFormDerivative nabla_two_form(const ConnectionParams& p, const TwoForm& w) {
    if (!theta2_preserved(p))
        throw std::domain_error("nabla_two_form: connection does not preserve the wedge kernel");
    return collapse_after_nabla2(p, derive_sigma(p), lift_two_form(w));
}

std::string TwoFormDerivative::render() const {
    if (du_part.is_zero() && dv_part.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (!du_part.is_zero()) {
        out << "du⊗" << du_part.render();
        first = false;
    }
    if (!dv_part.is_zero()) {
        if (!first) out << " + ";
        out << "dv⊗" << dv_part.render();
    }
    return out.str();
}

/* ----------------------------------- dual connection and vector braidings */

namespace {

struct DualBasis {
    Letter form;   // e_i
    Letter field;  // α_i
};
constexpr DualBasis kDual[2] = {{Letter::du, Letter::xu}, {Letter::dv, Letter::xv}};

BraidMap sigma_inverse_form(const ConnectionParams& p) {
    return derive_sigma(p).inverse(form_form_basis(), form_form_basis());
}

}  // namespace

TensorForm nabla_vec(const ConnectionParams& p, const VecElement& x) {
    const BraidMap sigma_inv = sigma_inverse_form(p);
    TensorForm out(2);
    for (const auto& [ei, ai] : kDual) {
        // Σ d(α(e_i))⊗α_i
        out += tensor(d0(x(basis1(ei))), basis1(ai));
        // − Σ (ev⊗id)(id⊗σ⁻¹)(id⊗∇)(α⊗e_i)⊗α_i
        TensorForm t = tensor(x.tensor_rep(), nabla_generator(p, ei));
        t = sigma_inv.apply_at(t, 2);
        out -= tensor(contract_front(t), basis1(ai));
    }
    return out;
}

BraidMap sigma_vec(const ConnectionParams& p) {
    const BraidMap sigma_inv = sigma_inverse_form(p);
    std::map<BraidMap::Key, BraidMap::Image> images;
    for (Letter a : {XU, XV}) {
        for (Letter xi : {DU, DV}) {
            TensorForm acc(2);
            for (const auto& [ei, alpha_i] : kDual) {
                TensorForm t = TensorForm::basis_word({a, xi, ei});
                t = sigma_inv.apply_at(t, 2);
                acc += tensor(contract_front(t), basis1(alpha_i));
            }
            BraidMap::Image entry;
            for (const auto& [w, c] : acc.terms()) {
                if (!c.is_scalar())
                    throw std::domain_error("sigma_vec: non-constant braiding image");
                entry.emplace_back(BraidMap::Key{w[0], w[1]}, c.scalar_value());
            }
            images[{a, xi}] = std::move(entry);
        }
    }
    return BraidMap::from_images(std::move(images));
}

BraidMap sigma_vec_inverse(const ConnectionParams& p) {
    return sigma_vec(p).inverse(field_form_basis(), form_field_basis());
}

BraidMap sigma_inv_vecvec(const ConnectionParams& p) {
    const BraidMap sv = sigma_vec(p);
    std::map<BraidMap::Key, BraidMap::Image> images;
    for (Letter a : {XU, XV}) {
        for (Letter b : {XU, XV}) {
            TensorForm acc(2);
            for (const auto& [xi_i, x_i] : kDual) {
                // X⊗σ_Vec(Y⊗ξ_i), then ev on the front pair, then ⊗X_i.
                TensorForm t = tensor(TensorForm::basis_word({a}),
                                      sv.apply(TensorForm::basis_word({b, xi_i})));
                acc += tensor(contract_front(t), basis1(x_i));
            }
            BraidMap::Image entry;
            for (const auto& [w, c] : acc.terms()) {
                if (!c.is_scalar())
                    throw std::domain_error("sigma_inv_vecvec: non-constant braiding image");
                entry.emplace_back(BraidMap::Key{w[0], w[1]}, c.scalar_value());
            }
            images[{a, b}] = std::move(entry);
        }
    }
    return BraidMap::from_images(std::move(images));
}

TensorForm kronecker_delta() {
    return TensorForm::basis_word({DU, XU}) + TensorForm::basis_word({DV, XV});
}

TensorForm delta_hat(const ConnectionParams& p) {
    return sigma_vec_inverse(p).apply(kronecker_delta());
}

ScalarQ dim_torus(const ConnectionParams& p) {
    return contract_front(delta_hat(p)).algebra_part().scalar_value();
}

TensorForm nabla_form_vec(const ConnectionParams& p, const TensorForm& z) {
    if (z.degree() != 2) throw std::domain_error("nabla_form_vec: degree must be 2");
    const BraidMap sigma = derive_sigma(p);
    TensorForm out(3);
    for (const auto& [w, c] : z.terms()) {
        if (!is_form_letter(w[0]) || !is_field_letter(w[1]))
            throw std::domain_error("nabla_form_vec: words must be form⊗field");
        const VecElement y = VecElement::from_tensor(TensorForm::term({w[1]}, c));
        // ∇e⊗Y
        out += tensor(nabla_generator(p, w[0]), y.tensor_rep());
        // (σ⊗id)(e⊗∇Y)
        out += sigma.apply_at(tensor(basis1(w[0]), nabla_vec(p, y)), 1);
    }
    return out;
}

/* ------------------------------------------------------- random samples */

TorusElement random_torus_element(SplitMix64& rng, int max_terms) {
    TorusElement e;
    const int terms = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_terms)));
    for (int i = 0; i < terms; ++i)
        e += TorusElement::monomial(
            {rng.range(-3, 3), rng.range(-3, 3)},
            ScalarQ::integer(rng.range(-4, 4)) * ScalarQ::q_power(rng.range(-2, 2)));
    return e;
}

VecElement random_vec_element(SplitMix64& rng) {
    return VecElement::from_components(random_torus_element(rng), random_torus_element(rng));
}

TensorForm random_one_form(SplitMix64& rng) {
    return basis1(DU).right_act(random_torus_element(rng)) +
           basis1(DV).right_act(random_torus_element(rng));
}

}  // namespace ncdg
