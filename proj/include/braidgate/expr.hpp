#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "braidgate/matrix.hpp"

namespace braidgate {

using ParamMap = std::map<std::string, cplx>;

class InadmissibleParams : public std::invalid_argument {
public:
    explicit InadmissibleParams(const std::string& what) : std::invalid_argument(what) {}
};

class ExprSyntaxError : public std::invalid_argument {
public:
    explicit ExprSyntaxError(const std::string& what) : std::invalid_argument(what) {}
};

// Small complex arithmetic expression, e.g. "h1/h4*(h1-h6)" or
// "-sqrt((h1^2+h8^2)/2)".  Supports + - * / ^, unary minus, parentheses,
// decimal literals, an imaginary suffix ("2i", "0.5i"), the constants i and
// pi, and the functions sqrt (principal branch), conj, abs, cos, sin and
// exp.
// Integer powers are evaluated by repeated multiplication.
class Expr {
public:
    Expr() = default;
    explicit Expr(const std::string& text);

    const std::string& text() const { return text_; }

    // Throws InadmissibleParams on division by an exact zero and
    // std::out_of_range when a variable is missing from `scope`.
    cplx eval(const ParamMap& scope) const;

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

cplx eval_expr(const std::string& text, const ParamMap& scope = {});

}  // namespace braidgate
