#include "zerotrace/field_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "zerotrace/errors.hpp"

namespace zerotrace {

namespace detail {

enum class NodeKind { Number, Variable, Pi, Unary, Binary, Call };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Sin, Cos, Exp, Abs, Sqrt };

struct ExprNode {
    NodeKind kind;
    double number = 0.0;
    int axis = 0;  // 0 = x, 1 = y, 2 = z
    BinOp op = BinOp::Add;
    FuncId func = FuncId::Sin;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

}  // namespace detail

namespace {

using detail::BinOp;
using detail::ExprNode;
using detail::FuncId;
using detail::NodeKind;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Number;
    n->number = v;
    return n;
}

NodePtr make_variable(int axis) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Variable;
    n->axis = axis;
    return n;
}

NodePtr make_pi() {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Pi;
    return n;
}

NodePtr make_unary(NodePtr e) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Unary;
    n->lhs = std::move(e);
    return n;
}

NodePtr make_binary(BinOp op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

NodePtr make_call(FuncId f, NodePtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

// Recursive descent parser. Grammar:
//   expr    = term { ("+" | "-") term }
//   term    = factor { ("*" | "/") factor }
//   factor  = "-" factor | power
//   power   = primary [ "^" factor ]          (right associative)
//   primary = number | ident | ident "(" expr ")" | "(" expr ")"
class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected character", pos_);
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = make_binary(BinOp::Add, std::move(lhs), parse_term());
            else if (eat('-'))
                lhs = make_binary(BinOp::Sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (eat('*'))
                lhs = make_binary(BinOp::Mul, std::move(lhs), parse_factor());
            else if (eat('/'))
                lhs = make_binary(BinOp::Div, std::move(lhs), parse_factor());
            else
                return lhs;
        }
    }

    NodePtr parse_factor() {
        if (eat('-')) return make_unary(parse_factor());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) return make_binary(BinOp::Pow, std::move(base), parse_factor());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw SyntaxError("unexpected character", pos_);
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' belongs to something else
            }
        }
        std::string token(text_.substr(start, pos_ - start));
        if (token == ".") throw SyntaxError("malformed number", start);
        return make_number(std::stod(token));
    }

    NodePtr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "x") return make_variable(0);
        if (name == "y") return make_variable(1);
        if (name == "z") return make_variable(2);
        if (name == "pi") return make_pi();

        FuncId f;
        if (name == "sin")
            f = FuncId::Sin;
        else if (name == "cos")
            f = FuncId::Cos;
        else if (name == "exp")
            f = FuncId::Exp;
        else if (name == "abs")
            f = FuncId::Abs;
        else if (name == "sqrt")
            f = FuncId::Sqrt;
        else
            throw UnknownIdentifier(name, start);

        if (!eat('(')) throw SyntaxError("expected '(' after function name", pos_);
        NodePtr arg = parse_expr();
        if (!eat(')')) throw SyntaxError("expected ')'", pos_);
        return make_call(f, std::move(arg));
    }
};

double eval_node(const ExprNode& n, const Vec3& p) {
    switch (n.kind) {
        case NodeKind::Number:
            return n.number;
        case NodeKind::Pi:
            return std::numbers::pi;
        case NodeKind::Variable:
            return n.axis == 0 ? p.x : (n.axis == 1 ? p.y : p.z);
        case NodeKind::Unary: {
            return -eval_node(*n.lhs, p);
        }
        case NodeKind::Binary: {
            double a = eval_node(*n.lhs, p);
            double b = eval_node(*n.rhs, p);
            double r = 0.0;
            switch (n.op) {
                case BinOp::Add: r = a + b; break;
                case BinOp::Sub: r = a - b; break;
                case BinOp::Mul: r = a * b; break;
                case BinOp::Div: r = a / b; break;
                case BinOp::Pow: r = std::pow(a, b); break;
            }
            if (!std::isfinite(r)) throw EvaluationError("non-finite value in arithmetic");
            return r;
        }
        case NodeKind::Call: {
            double a = eval_node(*n.lhs, p);
            double r = 0.0;
            switch (n.func) {
                case FuncId::Sin: r = std::sin(a); break;
                case FuncId::Cos: r = std::cos(a); break;
                case FuncId::Exp: r = std::exp(a); break;
                case FuncId::Abs: r = std::abs(a); break;
                case FuncId::Sqrt: r = std::sqrt(a); break;
            }
            if (!std::isfinite(r)) throw EvaluationError("non-finite value in function call");
            return r;
        }
    }
    throw EvaluationError("corrupt expression node");
}

std::string number_to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Number:
            out += number_to_string(n.number);
            return;
        case NodeKind::Pi:
            out += "pi";
            return;
        case NodeKind::Variable:
            out += (n.axis == 0 ? "x" : (n.axis == 1 ? "y" : "z"));
            return;
        case NodeKind::Unary:
            out += "(-";
            print_node(*n.lhs, out);
            out += ")";
            return;
        case NodeKind::Binary: {
            const char* op = "+";
            switch (n.op) {
                case BinOp::Add: op = "+"; break;
                case BinOp::Sub: op = "-"; break;
                case BinOp::Mul: op = "*"; break;
                case BinOp::Div: op = "/"; break;
                case BinOp::Pow: op = "^"; break;
            }
            out += "(";
            print_node(*n.lhs, out);
            out += " ";
            out += op;
            out += " ";
            print_node(*n.rhs, out);
            out += ")";
            return;
        }
        case NodeKind::Call: {
            const char* f = "sin";
            switch (n.func) {
                case FuncId::Sin: f = "sin"; break;
                case FuncId::Cos: f = "cos"; break;
                case FuncId::Exp: f = "exp"; break;
                case FuncId::Abs: f = "abs"; break;
                case FuncId::Sqrt: f = "sqrt"; break;
            }
            out += f;
            out += "(";
            print_node(*n.lhs, out);
            out += ")";
            return;
        }
    }
}

bool equal_nodes(const ExprNode* a, const ExprNode* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Number:
            return a->number == b->number;
        case NodeKind::Pi:
            return true;
        case NodeKind::Variable:
            return a->axis == b->axis;
        case NodeKind::Unary:
            return equal_nodes(a->lhs.get(), b->lhs.get());
        case NodeKind::Binary:
            return a->op == b->op && equal_nodes(a->lhs.get(), b->lhs.get()) &&
                   equal_nodes(a->rhs.get(), b->rhs.get());
        case NodeKind::Call:
            return a->func == b->func && equal_nodes(a->lhs.get(), b->lhs.get());
    }
    return false;
}

}  // namespace

FieldExpression parse(std::string_view text) {
    Parser parser(text);
    return FieldExpression(parser.run());
}

double evaluate(const FieldExpression& expr, const Vec3& p) {
    if (expr.empty()) throw EvaluationError("empty expression");
    return eval_node(*expr.root(), p);
}

std::string to_string(const FieldExpression& expr) {
    if (expr.empty()) return "";
    std::string out;
    print_node(*expr.root(), out);
    return out;
}

bool structurally_equal(const FieldExpression& a, const FieldExpression& b) {
    return equal_nodes(a.root(), b.root());
}

ScalarField make_field(const FieldExpression& expr) {
    if (expr.empty()) throw EvaluationError("empty expression");
    return [expr](const Vec3& p) { return evaluate(expr, p); };
}

}  // namespace zerotrace
