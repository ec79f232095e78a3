/**
 * @file cli.hpp
 * @brief Expression parser and evaluator over the torus calculus, the
 *        verification-suite runner, and the report emitters — the human and
 *        CI entry point of the library.
 *
 * Expression grammar (all errors carry a byte offset and an expected-token
 * set):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/' | '^^') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ['^' ['-'] integer]
 *   primary := integer | 'q' | 'u' | 'v' | 'du' | 'dv' | 'Xu' | 'Xv'
 *            | 'd' '(' expr ')' | 'int' '(' expr ',' expr ')' | '(' expr ')'
 *
 * '^' binds tighter than unary minus, which binds tighter than '*', '/' and
 * '^^', which bind tighter than binary '+'/'-'. Exponents are integer
 * literals. '^^' is the wedge product of one-forms; 'd' is the differential;
 * 'int(X, w)' is the interior product of the vector field X with the form w
 * (taken with the canonical torus braiding). Division is defined by nonzero
 * scalars only.
 *
 * Values are exact and typed: scalars in Q(q), algebra elements, one-forms,
 * two-forms, and vector fields. render_value produces text the parser maps
 * back to an equal value.
 */
#pragma once

#include "ncdg/flows.hpp"
#include "ncdg/sphere_braiding.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdg::cli {

/// Lexical or grammatical failure: what went wrong, where (byte offset into
/// the input), and which tokens would have been accepted at that point.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, size_t offset, std::vector<std::string> expected)
        : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

    size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    size_t offset_;
    std::vector<std::string> expected_;
};

/// Failure during evaluation of a well-formed expression (type mismatch,
/// division by zero, negative power of a non-invertible element, ...).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Abstract syntax tree. Leaves are integer literals and named atoms; inner
/// nodes are the operators. `power` keeps its literal exponent inline.
struct Expr {
    enum class Node {
        integer,       // number
        atom,          // name: one of q, u, v, du, dv, Xu, Xv
        negate,        // args[0]
        add,           // args[0] + args[1]
        sub,           // args[0] - args[1]
        mul,           // args[0] * args[1]
        div,           // args[0] / args[1]
        power,         // args[0] ^ exponent
        wedge,         // args[0] ^^ args[1]
        differential,  // d(args[0])
        interior       // int(args[0], args[1])
    };

    Node node = Node::integer;
    long number = 0;
    std::string name;
    long exponent = 0;
    std::vector<Expr> args;
};

/// Parse text into an AST; throws SyntaxError.
Expr parse(const std::string& text);

/// Typed exact value of an expression.
class Value {
public:
    enum class Kind { scalar, element, one_form, two_form, field };

    Value() = default;

    static Value scalar(ScalarQ s);
    static Value element(TorusElement m);
    static Value one_form(TensorForm w);
    static Value two_form(TwoForm w);
    static Value field(VecElement x);

    Kind kind() const { return kind_; }
    /// Human name of the kind ("scalar", "algebra element", ...).
    std::string kind_name() const;

    const ScalarQ& scalar_value() const { return scalar_; }
    const TorusElement& element_value() const { return element_; }
    const TensorForm& one_form_value() const { return form_; }
    const TwoForm& two_form_value() const { return two_form_; }
    const VecElement& field_value() const { return field_; }

    /// Scalars compare equal to scalar-valued algebra elements; otherwise
    /// kinds must match.
    bool operator==(const Value& o) const;
    bool operator!=(const Value& o) const { return !(*this == o); }

private:
    Kind kind_ = Kind::scalar;
    ScalarQ scalar_;
    TorusElement element_;
    TensorForm form_;
    TwoForm two_form_;
    VecElement field_;
};

/// Evaluate an AST; throws EvalError on type or domain failures.
Value evaluate(const Expr& e);

/// Render a value as text the parser maps back to an equal value
/// (evaluate(parse(render_value(v))) == v).
std::string render_value(const Value& v);

/// Render with every coefficient evaluated at the exact rational q = q0
/// (the numeric spot-check channel); throws EvalError when a coefficient has
/// a pole at q0. The output is still parseable.
std::string render_value_at(const Value& v, const mpq_class& q0);

/* ------------------------------------------------------------- reports */

enum class CheckStatus { pass, fail, error };

/// One verification check. `ms` is pinned to 0 so that reports are
/// byte-identical across runs with a fixed seed (the determinism contract
/// outranks wall-clock reporting; timing lives in the acceptance runner).
struct Check {
    std::string name;
    CheckStatus status = CheckStatus::error;
    std::string expected;
    std::string actual;
    long ms = 0;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool all_pass() const {
        for (const Check& c : checks)
            if (c.status != CheckStatus::pass) return false;
        return true;
    }
};

/// Configuration for the suites. `h` and `case_label` drive the sphere
/// braiding analyzer: when `case_label` is set, the parameter point is pinned
/// to that row of the recorded case tables (free parameters keep their values
/// from `h`); when any explicit point is given, the sphere suite analyzes only
/// that point, otherwise it also re-derives the full case tables.
struct SuiteConfig {
    std::uint64_t seed = 0;
    int order = 8;  // truncation order for the flow suite
    SphereParams h = SphereParams::zero();
    std::optional<char> case_label;
    bool point_only = false;
};

/// Run a named suite: "torus", "sphere", "flows", or "all" (concatenation
/// with "<suite>/" name prefixes). Deterministic under a fixed config.
/// Throws std::invalid_argument for unknown names.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

/// Plain-text table, one block per check, with a summary line.
std::string emit_text(const Report& r);

/// Stable JSON: {"suite": ..., "checks": [{"name", "status", "expected",
/// "actual", "ms"}, ...]}. Field order is frozen; output ends in a newline.
std::string emit_json(const Report& r);

/// Full command-line entry point (args exclude the program name). Writes
/// results to `out`, diagnostics to `err`. Returns 0 on success; nonzero
/// when any check fails or errors, on parse/usage errors, and on evaluation
/// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncdg::cli
