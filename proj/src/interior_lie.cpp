#include "ncdg/interior_lie.hpp"

#include <sstream>
#include <stdexcept>

namespace ncdg {

namespace {

constexpr Letter DU = Letter::du;
constexpr Letter DV = Letter::dv;
constexpr Letter XU = Letter::xu;
constexpr Letter XV = Letter::xv;

const TensorForm& one_form_basis(Letter l) {
    static const TensorForm bu = TensorForm::basis_word({DU});
    static const TensorForm bv = TensorForm::basis_word({DV});
    return l == DU ? bu : bv;
}

std::string word_name(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += "⊗";
        s += letter_name(w[i]);
    }
    return s;
}

}  // namespace

/* ----------------------------------------------------------- VecTensor */

void VecTensor::add(const Word& w, const TorusElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

VecTensor VecTensor::term(Word w, TorusElement left_coeff) {
    for (Letter l : w)
        if (!is_field_letter(l))
            throw std::domain_error("VecTensor words use field letters only");
    VecTensor out;
    out.add(w, left_coeff);
    return out;
}

VecTensor VecTensor::operator-() const {
    VecTensor out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

VecTensor VecTensor::operator+(const VecTensor& o) const {
    VecTensor out = *this;
    for (const auto& [w, c] : o.terms_) out.add(w, c);
    return out;
}

VecTensor VecTensor::scaled(const ScalarQ& c) const {
    VecTensor out;
    if (c.is_zero()) return out;
    for (const auto& [w, t] : terms_) out.terms_.emplace(w, t.scaled(c));
    return out;
}

VecTensor VecTensor::left_mul(const TorusElement& m) const {
    VecTensor out;
    for (const auto& [w, c] : terms_) out.add(w, m * c);
    return out;
}

std::vector<std::pair<VecElement, VecElement>> VecTensor::pairs() const {
    std::vector<std::pair<VecElement, VecElement>> out;
    const TorusElement zero;
    for (const auto& [w, c] : terms_) {
        if (w.size() != 2)
            throw std::domain_error("VecTensor operation requires degree 2");
        VecElement first = (w[0] == XU) ? VecElement::from_components(c, zero)
                                        : VecElement::from_components(zero, c);
        VecElement second = (w[1] == XU) ? VecElement::basis_u() : VecElement::basis_v();
        out.emplace_back(std::move(first), std::move(second));
    }
    return out;
}

TensorForm VecTensor::projected() const {
    if (terms_.empty()) return TensorForm(2);
    const int degree = static_cast<int>(terms_.begin()->first.size());
    TensorForm out(degree);
    for (const auto& [w, c] : terms_) {
        if (static_cast<int>(w.size()) != degree)
            throw std::domain_error("VecTensor with mixed degrees");
        out += TensorForm::term(w, TorusElement::one()).left_act(c);
    }
    return out;
}

bool VecTensor::operator==(const VecTensor& o) const { return terms_ == o.terms_; }

std::string VecTensor::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.render() << ")·" << word_name(w);
    }
    return os.str();
}

VecTensor canonical_antisymmetric() {
    return VecTensor::term({XV, XU}, TorusElement::one()) +
           VecTensor::term({XU, XV}, TorusElement::scalar(-ScalarQ::q_power(-1)));
}

/* ------------------------------------------- interior products and T_n */

TensorForm t_n_apply(const BraidMap& sigma, const TensorForm& z) {
    const int n = z.degree();
    if (n < 1 || !z.pure_form())
        throw std::domain_error("t_n_apply needs a form tensor of degree >= 1");
    TensorForm out(n);
    for (int r = 1; r <= n; ++r) {
        const TensorForm part = sigma_r_apply(sigma, r, z);
        out += (r % 2 == 1) ? part : -part;
    }
    return out;
}

TensorForm interior_tensor(const BraidMap& sigma, const VecElement& x, const TensorForm& z) {
    return contract_front(tensor(x.tensor_rep(), t_n_apply(sigma, z)));
}

TorusElement interior_one_form(const VecElement& x, const TensorForm& omega) {
    return x(omega);
}

TensorForm interior_two_form(const BraidMap& sigma, const VecElement& x, const TwoForm& w) {
    return interior_tensor(sigma, x, lift_two_form(w));
}

CompatibilityReport compatibility_check(const BraidMap& sigma) {
    CompatibilityReport report;

    // (i) the wedge-kernel generators in degree 2 are fixed points of sigma.
    report.theta2_fixed = true;
    for (const TensorForm& g : theta_generators(2).generators) {
        if (sigma.apply(g) != g) {
            report.theta2_fixed = false;
            report.witness = "sigma moves " + g.render();
            break;
        }
    }

    // (ii) T3 of every degree-3 basis word lies in the right-module span of
    // {du,dv}(x)(degree-2 kernel generators). Both sides have constant
    // coefficients, so membership over the algebra reduces to an exact
    // Q(q) linear solve against the six constant generator columns.
    std::vector<Word> degree3;
    for (Letter a : {DU, DV})
        for (Letter b : {DU, DV})
            for (Letter c : {DU, DV}) degree3.push_back({a, b, c});

    std::vector<TensorForm> span;
    for (Letter a : {DU, DV})
        for (const TensorForm& g : theta_generators(2).generators)
            span.push_back(tensor(one_form_basis(a), g));

    QMatrix A(static_cast<int>(degree3.size()), static_cast<int>(span.size()));
    for (size_t j = 0; j < span.size(); ++j)
        for (size_t i = 0; i < degree3.size(); ++i)
            A.at(static_cast<int>(i), static_cast<int>(j)) =
                span[j].coefficient(degree3[i]).scalar_value();

    report.theta3_into_theta2 = true;
    for (const Word& w : degree3) {
        const TensorForm image = t_n_apply(sigma, TensorForm::basis_word({w[0], w[1], w[2]}));
        std::vector<ScalarQ> b(degree3.size());
        bool constant = true;
        for (size_t i = 0; i < degree3.size(); ++i) {
            const TorusElement c = image.coefficient(degree3[i]);
            if (!c.is_scalar()) {
                constant = false;
                break;
            }
            b[i] = c.scalar_value();
        }
        if (!constant || !solve_linear(A, b)) {
            report.theta3_into_theta2 = false;
            if (report.witness.empty())
                report.witness = "T3(" + word_name(w) + ") outside the degree-2 kernel span";
            break;
        }
    }
    return report;
}

/* --------------------------------------------------------- derivatives */

TorusElement directional(const VecElement& x, const TorusElement& m) { return x(d0(m)); }

TorusElement lie_derivative0(const BraidMap&, const VecElement& x, const TorusElement& m) {
    // X _| m = 0 in degree 0, so the Cartan formula reduces to X(d m);
    // degree-1 interior products do not involve the braiding.
    return directional(x, m);
}

TensorForm lie_derivative1(const BraidMap& sigma, const VecElement& x, const TensorForm& omega) {
    if (omega.degree() != 1 || !omega.pure_form())
        throw std::domain_error("lie_derivative1 needs a one-form");
    return interior_two_form(sigma, x, d1(omega)) + d0(interior_one_form(x, omega));
}

TwoForm lie_derivative2(const BraidMap& sigma, const VecElement& x, const TwoForm& w) {
    // d w = 0 at top degree, so only d(X _| w) remains.
    return d1(interior_two_form(sigma, x, w));
}

/* ------------------------------------------------- antisymmetry and phi */

TorusElement theta_pairing(const VecTensor& x, const TensorForm& k) {
    if (k.degree() != 2 || !k.pure_form())
        throw std::domain_error("theta_pairing needs a degree-2 form tensor");
    const TensorForm t = tensor(x.projected(), k);
    return contract_front(contract_at(t, 2)).algebra_part();
}

bool antisymmetry_check(const VecTensor& x) {
    for (const auto& [w, c] : x.terms())
        if (w.size() != 2) throw std::domain_error("antisymmetry_check needs degree 2");
    for (const TensorForm& g : theta_generators(2).generators)
        if (!theta_pairing(x, g).is_zero()) return false;
    return true;
}

TorusElement phi_eval(const VecElement& x, const VecElement& y, const TensorForm& xi) {
    if (xi.degree() != 1 || !xi.pure_form())
        throw std::domain_error("phi_eval needs a one-form");
    TorusElement out = directional(x, y(xi));
    const TensorForm lift = lift_two_form(d1(xi));
    if (!lift.is_zero()) {
        const TensorForm t = tensor(x.tensor_rep(), tensor(y.tensor_rep(), lift));
        out += contract_front(contract_at(t, 2)).algebra_part();
    }
    return out;
}

VecElement phi_pair(const VecElement& x, const VecElement& y) {
    return VecElement::from_components(phi_eval(x, y, one_form_basis(DU)),
                                       phi_eval(x, y, one_form_basis(DV)));
}

VecElement phi(const VecTensor& x) {
    if (!antisymmetry_check(x))
        throw std::domain_error("phi: non-antisymmetric input rejected");
    VecElement out;
    for (const auto& [first, second] : x.pairs()) out += phi_pair(first, second);
    return out;
}

/* -------------------------------------------------- curvature / torsion */

TensorForm covariant_at_form(const ConnectionParams& p, const VecElement& x,
                             const TensorForm& omega) {
    return contract_front(tensor(x.tensor_rep(), nabla_one_form(p, omega)));
}

VecElement covariant_at_vec(const ConnectionParams& p, const VecElement& x, const VecElement& y) {
    return VecElement::from_tensor(contract_front(tensor(x.tensor_rep(), nabla_vec(p, y))));
}

TensorForm curvature_pair_form(const ConnectionParams& p, const VecElement& x,
                               const VecElement& y, const TensorForm& e) {
    return covariant_at_form(p, x, covariant_at_form(p, y, e)) -
           covariant_at_form(p, phi_pair(x, y), e);
}

VecElement curvature_pair_vec(const ConnectionParams& p, const VecElement& x,
                              const VecElement& y, const VecElement& e) {
    return covariant_at_vec(p, x, covariant_at_vec(p, y, e)) -
           covariant_at_vec(p, phi_pair(x, y), e);
}

VecElement torsion_pair(const ConnectionParams& p, const VecElement& x, const VecElement& y) {
    return covariant_at_vec(p, x, y) - phi_pair(x, y);
}

namespace {

void require_antisymmetric(const VecTensor& x, const char* who) {
    if (!antisymmetry_check(x))
        throw std::domain_error(std::string(who) + ": non-antisymmetric input rejected");
}

}  // namespace

TensorForm curvature_form(const ConnectionParams& p, const VecTensor& x, const TensorForm& e) {
    require_antisymmetric(x, "curvature_form");
    TensorForm out(1);
    for (const auto& [first, second] : x.pairs())
        out += curvature_pair_form(p, first, second, e);
    return out;
}

VecElement curvature_vec(const ConnectionParams& p, const VecTensor& x, const VecElement& e) {
    require_antisymmetric(x, "curvature_vec");
    VecElement out;
    for (const auto& [first, second] : x.pairs())
        out += curvature_pair_vec(p, first, second, e);
    return out;
}

VecElement torsion(const ConnectionParams& p, const VecTensor& x) {
    require_antisymmetric(x, "torsion");
    VecElement out;
    for (const auto& [first, second] : x.pairs()) out += torsion_pair(p, first, second);
    return out;
}

}  // namespace ncdg
