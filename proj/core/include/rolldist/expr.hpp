#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rolldist/jet.hpp"
#include "rolldist/linalg.hpp"

namespace rolldist {

// Expression language for parametrized surfaces and distribution fields.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)?
//   atom   := number | 'i' | variable | name '(' expr ')' | name | '(' expr ')'
//
// Variables are u, v, w1, w2; functions are sin, cos, sinh, cosh, exp,
// sqrt; numeric literals are real, the imaginary unit is the identifier i.

enum class ExprKind { Constant, Variable, NamedConstant, Unary, Binary };

enum class UnaryOp { Neg, Sin, Cos, Sinh, Cosh, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    cplx constant{};       // Constant
    int variable = -1;     // Variable: 0=u 1=v 2=w1 3=w2
    std::string name;      // NamedConstant
    UnaryOp uop{};
    BinaryOp bop{};
    int exponent = 0;      // Pow right-hand side (integer literal only)
    ExprPtr lhs, rhs;
    size_t offset = 0;     // byte offset in source text, for diagnostics

    static ExprPtr make_constant(cplx value);
    static ExprPtr make_variable(int index);
    static ExprPtr make_named(std::string name);
    static ExprPtr make_unary(UnaryOp op, ExprPtr arg);
    static ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr make_pow(ExprPtr base, int exponent);
};

// Throws SyntaxError (with byte offset in the message) or UnknownIdentifier.
ExprPtr parse(const std::string& text);

// Canonical rendering; parse(print(e)) reproduces the AST.
std::string print(const ExprPtr& e);

bool same_ast(const ExprPtr& a, const ExprPtr& b);

using Bindings = std::map<std::string, cplx>;

// Evaluates to a jet at the base point (u, v, w1, w2).
Jet eval_jet(const ExprPtr& e, const std::array<cplx, 4>& base, int order,
             const Bindings& consts = {});

// Plain value evaluation (no derivatives); used by independent oracles.
cplx eval_value(const ExprPtr& e, const std::array<cplx, 4>& base,
                const Bindings& consts = {});

struct SurfacePatch {
    std::array<ExprPtr, 3> comp;
    Bindings consts;

    JVec3 eval(cplx u, cplx v, int order) const;
};

// Builtin registry. Parameters:
//   ellipsoid(a,b,c), associate(theta), torus(Rmaj,rmin); others take none.
SurfacePatch builtin_surface(const std::string& name, const std::vector<double>& params = {});

std::vector<std::string> builtin_surface_names();

// Rigid image Q*x0 + c of a patch, assembled at the AST level.
SurfacePatch rigid_motion_patch(const SurfacePatch& base, const CMat3& q, const CVec3& c);

} // namespace rolldist
