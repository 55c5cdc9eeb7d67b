#include "rolldist/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace rolldist {

ExprPtr Expr::make_constant(cplx value) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Constant;
    e->constant = value;
    return e;
}

ExprPtr Expr::make_variable(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Variable;
    e->variable = index;
    return e;
}

ExprPtr Expr::make_named(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::NamedConstant;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Unary;
    e->uop = op;
    e->lhs = std::move(arg);
    return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->bop = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr Expr::make_pow(ExprPtr base, int exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->bop = BinaryOp::Pow;
    e->lhs = std::move(base);
    e->exponent = exponent;
    return e;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void error(const std::string& expected) {
        std::ostringstream os;
        os << "syntax error at offset " << pos << ": expected " << expected;
        fail(ErrorKind::SyntaxError, os.str());
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+'))
                e = Expr::make_binary(BinaryOp::Add, e, parse_term());
            else if (eat('-'))
                e = Expr::make_binary(BinaryOp::Sub, e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat('*'))
                e = Expr::make_binary(BinaryOp::Mul, e, parse_factor());
            else if (eat('/'))
                e = Expr::make_binary(BinaryOp::Div, e, parse_factor());
            else
                return e;
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) return Expr::make_unary(UnaryOp::Neg, parse_factor());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                error("an integer exponent");
            int exp = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                exp = exp * 10 + (text[pos++] - '0');
            return Expr::make_pow(base, neg ? -exp : exp);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size()) error("an operand");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t end;
            double value = std::stod(text.substr(pos), &end);
            pos += end;
            auto e = Expr::make_constant(cplx(value, 0.0));
            const_cast<Expr&>(*e).offset = start;
            return e;
        }
        if (eat('(')) {
            ExprPtr e = parse_expr();
            if (!eat(')')) error("')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos;
            while (end < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
                ++end;
            std::string name = text.substr(pos, end - pos);
            pos = end;
            if (name == "u") return Expr::make_variable(0);
            if (name == "v") return Expr::make_variable(1);
            if (name == "w1") return Expr::make_variable(2);
            if (name == "w2") return Expr::make_variable(3);
            if (name == "i") return Expr::make_constant(cplx(0.0, 1.0));
            if (name == "pi") return Expr::make_constant(cplx(M_PI, 0.0));
            static const std::map<std::string, UnaryOp> fns = {
                {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos}, {"sinh", UnaryOp::Sinh},
                {"cosh", UnaryOp::Cosh}, {"exp", UnaryOp::Exp}, {"sqrt", UnaryOp::Sqrt},
            };
            auto it = fns.find(name);
            if (it != fns.end()) {
                if (!eat('(')) error("'(' after function name");
                ExprPtr arg = parse_expr();
                if (!eat(')')) error("')'");
                auto e = Expr::make_unary(it->second, arg);
                const_cast<Expr&>(*e).offset = start;
                return e;
            }
            auto e = Expr::make_named(name);
            const_cast<Expr&>(*e).offset = start;
            return e;
        }
        error("an operand");
    }
};

const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Sinh: return "sinh";
        case UnaryOp::Cosh: return "cosh";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Sqrt: return "sqrt";
    }
    return "?";
}

} // namespace

ExprPtr parse(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.error("end of input");
    return e;
}

namespace {

void print_rec(std::ostream& os, const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (e->constant.imag() == 0.0) {
                os << e->constant.real();
            } else if (e->constant == cplx(0.0, 1.0)) {
                os << "i";
            } else {
                os << "(" << e->constant.real() << "+" << e->constant.imag() << "*i)";
            }
            break;
        case ExprKind::Variable: {
            static const char* names[4] = {"u", "v", "w1", "w2"};
            os << names[e->variable];
            break;
        }
        case ExprKind::NamedConstant:
            os << e->name;
            break;
        case ExprKind::Unary:
            if (e->uop == UnaryOp::Neg) {
                os << "(-";
                print_rec(os, e->lhs);
                os << ")";
            } else {
                os << unary_name(e->uop) << "(";
                print_rec(os, e->lhs);
                os << ")";
            }
            break;
        case ExprKind::Binary: {
            if (e->bop == BinaryOp::Pow) {
                os << "(";
                print_rec(os, e->lhs);
                os << ")^" << e->exponent;
                break;
            }
            const char* op = e->bop == BinaryOp::Add   ? "+"
                             : e->bop == BinaryOp::Sub ? "-"
                             : e->bop == BinaryOp::Mul ? "*"
                                                       : "/";
            os << "(";
            print_rec(os, e->lhs);
            os << op;
            print_rec(os, e->rhs);
            os << ")";
            break;
        }
    }
}

} // namespace

std::string print(const ExprPtr& e) {
    std::ostringstream os;
    os.precision(17);
    print_rec(os, e);
    return os.str();
}

bool same_ast(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Constant: return a->constant == b->constant;
        case ExprKind::Variable: return a->variable == b->variable;
        case ExprKind::NamedConstant: return a->name == b->name;
        case ExprKind::Unary: return a->uop == b->uop && same_ast(a->lhs, b->lhs);
        case ExprKind::Binary:
            if (a->bop != b->bop) return false;
            if (a->bop == BinaryOp::Pow)
                return a->exponent == b->exponent && same_ast(a->lhs, b->lhs);
            return same_ast(a->lhs, b->lhs) && same_ast(a->rhs, b->rhs);
    }
    return false;
}

namespace {

template <class T, class VarFn, class ConstFn>
T eval_generic(const ExprPtr& e, VarFn&& var, ConstFn&& lift, const Bindings& consts) {
    switch (e->kind) {
        case ExprKind::Constant:
            return lift(e->constant);
        case ExprKind::Variable:
            return var(e->variable);
        case ExprKind::NamedConstant: {
            auto it = consts.find(e->name);
            if (it == consts.end())
                fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + e->name + "'");
            return lift(it->second);
        }
        case ExprKind::Unary: {
            T a = eval_generic<T>(e->lhs, var, lift, consts);
            switch (e->uop) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Sin: return sin(a);
                case UnaryOp::Cos: return cos(a);
                case UnaryOp::Sinh: return sinh(a);
                case UnaryOp::Cosh: return cosh(a);
                case UnaryOp::Exp: return exp(a);
                case UnaryOp::Sqrt: return sqrt(a);
            }
            break;
        }
        case ExprKind::Binary: {
            T a = eval_generic<T>(e->lhs, var, lift, consts);
            if (e->bop == BinaryOp::Pow) {
                int n = e->exponent;
                bool invert = n < 0;
                if (invert) n = -n;
                T r = lift(cplx(1.0, 0.0));
                for (int k = 0; k < n; ++k) r = r * a;
                return invert ? lift(cplx(1.0, 0.0)) / r : r;
            }
            T b = eval_generic<T>(e->rhs, var, lift, consts);
            switch (e->bop) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div: return a / b;
                default: break;
            }
            break;
        }
    }
    fail(ErrorKind::SyntaxError, "malformed expression node");
}

} // namespace

Jet eval_jet(const ExprPtr& e, const std::array<cplx, 4>& base, int order, const Bindings& consts) {
    return eval_generic<Jet>(
        e, [&](int i) { return Jet::variable(i, base[i], order); },
        [&](cplx z) { return Jet::constant(z, order); }, consts);
}

cplx eval_value(const ExprPtr& e, const std::array<cplx, 4>& base, const Bindings& consts) {
    return eval_generic<cplx>(
        e, [&](int i) { return base[i]; }, [](cplx z) { return z; }, consts);
}

JVec3 SurfacePatch::eval(cplx u, cplx v, int order) const {
    std::array<cplx, 4> base{u, v, cplx{}, cplx{}};
    return {eval_jet(comp[0], base, order, consts), eval_jet(comp[1], base, order, consts),
            eval_jet(comp[2], base, order, consts)};
}

namespace {

SurfacePatch patch_from(const std::string& x, const std::string& y, const std::string& z,
                        Bindings consts = {}) {
    SurfacePatch p;
    p.comp = {parse(x), parse(y), parse(z)};
    p.consts = std::move(consts);
    return p;
}

} // namespace

std::vector<std::string> builtin_surface_names() {
    return {"plane",    "sphere",       "ellipsoid", "catenoid", "helicoid",
            "associate", "cylinder",    "pseudosphere", "torus"};
}

SurfacePatch builtin_surface(const std::string& name, const std::vector<double>& params) {
    if (name == "plane") return patch_from("u", "v", "0");
    if (name == "sphere") return patch_from("cos(u)*cos(v)", "sin(u)*cos(v)", "sin(v)");
    if (name == "ellipsoid") {
        if (params.size() != 3)
            fail(ErrorKind::UnknownSurface, "ellipsoid requires parameters (a,b,c)");
        return patch_from("a*cos(u)*cos(v)", "b*sin(u)*cos(v)", "c*sin(v)",
                          {{"a", params[0]}, {"b", params[1]}, {"c", params[2]}});
    }
    if (name == "catenoid") return patch_from("cos(u)*cosh(v)", "sin(u)*cosh(v)", "v");
    if (name == "helicoid") return patch_from("sinh(v)*sin(u)", "-sinh(v)*cos(u)", "u");
    if (name == "associate") {
        if (params.size() != 1)
            fail(ErrorKind::UnknownSurface, "associate requires parameter (theta)");
        Bindings b{{"ct", std::cos(params[0])}, {"st", std::sin(params[0])}};
        return patch_from("ct*cos(u)*cosh(v) + st*sinh(v)*sin(u)",
                          "ct*sin(u)*cosh(v) - st*sinh(v)*cos(u)", "ct*v + st*u", b);
    }
    if (name == "cylinder") return patch_from("cos(u)", "sin(u)", "v");
    if (name == "pseudosphere")
        // tractrix profile; valid away from v = 0
        return patch_from("cos(u)/cosh(v)", "sin(u)/cosh(v)", "v - sinh(v)/cosh(v)");
    if (name == "torus") {
        if (params.size() != 2)
            fail(ErrorKind::UnknownSurface, "torus requires parameters (Rmaj,rmin)");
        return patch_from("(Rm + rm*cos(v))*cos(u)", "(Rm + rm*cos(v))*sin(u)", "rm*sin(v)",
                          {{"Rm", params[0]}, {"rm", params[1]}});
    }
    fail(ErrorKind::UnknownSurface, "unknown surface '" + name + "'");
}

SurfacePatch rigid_motion_patch(const SurfacePatch& base, const CMat3& q, const CVec3& c) {
    SurfacePatch p;
    p.consts = base.consts;
    for (int r = 0; r < 3; ++r) {
        ExprPtr acc = Expr::make_constant(c[r]);
        for (int k = 0; k < 3; ++k) {
            if (q(r, k) == cplx{}) continue;
            acc = Expr::make_binary(BinaryOp::Add, acc,
                                    Expr::make_binary(BinaryOp::Mul,
                                                      Expr::make_constant(q(r, k)), base.comp[k]));
        }
        p.comp[r] = acc;
    }
    return p;
}

} // namespace rolldist
