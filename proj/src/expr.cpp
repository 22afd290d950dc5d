#include "braidgate/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace braidgate {

struct Expr::Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Conj, Abs, Cos, Sin, Exp } kind;
    cplx value{};
    std::string name;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodeP make(Kind k, std::vector<NodeP> args = {}, cplx v = {}, std::string name = {})
{
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->value = v;
    n->name = std::move(name);
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse()
    {
        NodeP n = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const
    {
        throw ExprSyntaxError("expression '" + s_ + "': " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodeP sum()
    {
        NodeP lhs = product();
        for (;;) {
            if (accept('+'))
                lhs = make(Kind::Add, {lhs, product()});
            else if (accept('-'))
                lhs = make(Kind::Sub, {lhs, product()});
            else
                return lhs;
        }
    }

    NodeP product()
    {
        NodeP lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Kind::Mul, {lhs, unary()});
            else if (accept('/'))
                lhs = make(Kind::Div, {lhs, unary()});
            else
                return lhs;
        }
    }

    NodeP unary()
    {
        if (accept('-')) return make(Kind::Neg, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodeP power()
    {
        NodeP base = primary();
        if (accept('^')) return make(Kind::Pow, {base, unary()});
        return base;
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    NodeP primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodeP inner = sum();
            if (!accept(')')) fail("missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 == s_.size() || !ident_char(s_[pos_ + 1]))) {
                ++pos_;
                return make(Kind::Number, {}, cplx(0.0, v));
            }
            return make(Kind::Number, {}, cplx(v, 0.0));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            static const std::pair<const char*, Kind> functions[] = {
                {"sqrt", Kind::Sqrt}, {"conj", Kind::Conj}, {"abs", Kind::Abs},
                {"cos", Kind::Cos},   {"sin", Kind::Sin},   {"exp", Kind::Exp}};
            for (const auto& [fname, kind] : functions) {
                if (id != fname) continue;
                if (!accept('(')) fail("expected '(' after " + id);
                NodeP arg = sum();
                if (!accept(')')) fail("missing ')'");
                return make(kind, {arg});
            }
            if (id == "i") return make(Kind::Number, {}, cplx(0.0, 1.0));
            if (id == "pi") return make(Kind::Number, {}, cplx(std::numbers::pi, 0.0));
            return make(Kind::Var, {}, {}, id);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

cplx int_power(cplx b, long e)
{
    if (e < 0) return 1.0 / int_power(b, -e);
    cplx out = 1.0;
    while (e) {
        if (e & 1) out *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return out;
}

cplx evaluate(const Expr::Node& n, const ParamMap& scope, const std::string& text)
{
    switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Var: {
        auto it = scope.find(n.name);
        if (it == scope.end()) throw std::out_of_range("expression '" + text + "': unknown variable " + n.name);
        return it->second;
    }
    case Kind::Neg: return -evaluate(*n.args[0], scope, text);
    case Kind::Add: return evaluate(*n.args[0], scope, text) + evaluate(*n.args[1], scope, text);
    case Kind::Sub: return evaluate(*n.args[0], scope, text) - evaluate(*n.args[1], scope, text);
    case Kind::Mul: return evaluate(*n.args[0], scope, text) * evaluate(*n.args[1], scope, text);
    case Kind::Div: {
        const cplx den = evaluate(*n.args[1], scope, text);
        if (den == cplx(0.0, 0.0)) throw InadmissibleParams("division by zero in '" + text + "'");
        return evaluate(*n.args[0], scope, text) / den;
    }
    case Kind::Pow: {
        const cplx b = evaluate(*n.args[0], scope, text);
        const cplx e = evaluate(*n.args[1], scope, text);
        if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) < 64)
            return int_power(b, static_cast<long>(e.real()));
        return std::pow(b, e);
    }
    case Kind::Sqrt: return psqrt(evaluate(*n.args[0], scope, text));
    case Kind::Conj: return std::conj(evaluate(*n.args[0], scope, text));
    case Kind::Abs: return std::abs(evaluate(*n.args[0], scope, text));
    case Kind::Cos: return std::cos(evaluate(*n.args[0], scope, text));
    case Kind::Sin: return std::sin(evaluate(*n.args[0], scope, text));
    case Kind::Exp: return std::exp(evaluate(*n.args[0], scope, text));
    }
    return {};
}

}  // namespace

Expr::Expr(const std::string& text) : text_(text), root_(Parser(text).parse()) {}

cplx Expr::eval(const ParamMap& scope) const
{
    if (!root_) throw ExprSyntaxError("empty expression");
    return evaluate(*root_, scope, text_);
}

cplx eval_expr(const std::string& text, const ParamMap& scope) { return Expr(text).eval(scope); }

}  // namespace braidgate
