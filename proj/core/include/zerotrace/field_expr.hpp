#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "zerotrace/labelling.hpp"
#include "zerotrace/vec3.hpp"

namespace zerotrace {

namespace detail {
struct ExprNode;
}

/// Parsed arithmetic expression over x, y, z and pi.
class FieldExpression {
  public:
    FieldExpression() = default;
    explicit FieldExpression(std::shared_ptr<const detail::ExprNode> root)
        : root_(std::move(root)) {}

    const detail::ExprNode* root() const { return root_.get(); }
    bool empty() const { return root_ == nullptr; }

  private:
    std::shared_ptr<const detail::ExprNode> root_;
};

/// Grammar: + - * / ^ with standard precedence (^ binds tighter than unary
/// minus, ^ is right associative, everything else left associative),
/// functions sin cos exp abs sqrt, constants pi and numeric literals.
/// Whitespace insensitive.
FieldExpression parse(std::string_view text);

/// Plain real arithmetic. Non-finite intermediate results (division by
/// zero, domain errors) raise EvaluationError.
double evaluate(const FieldExpression& expr, const Vec3& p);

/// Canonical fully parenthesized form; parse(to_string(e)) reproduces e.
std::string to_string(const FieldExpression& expr);

bool structurally_equal(const FieldExpression& a, const FieldExpression& b);

/// Wraps the expression as a ScalarField sharing ownership of the tree.
ScalarField make_field(const FieldExpression& expr);

}  // namespace zerotrace
