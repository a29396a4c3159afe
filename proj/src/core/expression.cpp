#include "fractalab/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "fractalab/errors.hpp"

namespace fractalab {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, int dim) : text_(text), dim_(dim) {}

    Expression run() {
        Expression e;
        e.source_ = std::string(text_);
        program_ = &e.program_;
        parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        if (max_depth_ > Expression::kMaxStack) fail("expression nests too deeply");
        return e;
    }

private:
    using Op = Expression::Op;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression '" + std::string(text_) + "': " + msg, 1, pos_ + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void emit(Op op, int var = 0, double value = 0.0) {
        program_->push_back({op, var, value});
        switch (op) {
            case Op::Const:
            case Op::Var: ++depth_; break;
            case Op::Add:
            case Op::Sub:
            case Op::Mul:
            case Op::Div:
            case Op::Pow: --depth_; break;
            default: break;
        }
        max_depth_ = std::max(max_depth_, depth_);
    }

    void parse_sum() {
        parse_product();
        for (;;) {
            if (accept('+')) {
                parse_product();
                emit(Op::Add);
            } else if (accept('-')) {
                parse_product();
                emit(Op::Sub);
            } else {
                return;
            }
        }
    }

    void parse_product() {
        parse_unary();
        for (;;) {
            if (accept('*')) {
                parse_unary();
                emit(Op::Mul);
            } else if (accept('/')) {
                parse_unary();
                emit(Op::Div);
            } else {
                return;
            }
        }
    }

    void parse_unary() {
        if (accept('-')) {
            parse_unary();
            emit(Op::Neg);
        } else if (accept('+')) {
            parse_unary();
        } else {
            parse_power();
        }
    }

    void parse_power() {
        parse_primary();
        if (accept('^')) {
            parse_unary();
            emit(Op::Pow);
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            parse_sum();
            if (!accept(')')) fail("expected ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            parse_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            parse_identifier(name, start);
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            bool exp_sign = (c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || exp_sign) {
                ++pos_;
            } else {
                break;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        emit(Op::Const, 0, v);
    }

    void parse_identifier(std::string_view name, std::size_t start) {
        if (name == "pi") {
            emit(Op::Const, 0, std::numbers::pi);
            return;
        }
        if (name == "x" && dim_ == 1) {
            emit(Op::Var, 0);
            return;
        }
        if (name.size() >= 2 && name[0] == 'x') {
            int idx = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (ec == std::errc{} && ptr == name.data() + name.size()) {
                if (idx < 1 || idx > dim_) {
                    pos_ = start;
                    fail("variable " + std::string(name) + " out of range for dimension " + std::to_string(dim_));
                }
                emit(Op::Var, idx - 1);
                return;
            }
        }
        Op fn;
        if (name == "sin") fn = Op::Sin;
        else if (name == "cos") fn = Op::Cos;
        else if (name == "exp") fn = Op::Exp;
        else if (name == "sqrt") fn = Op::Sqrt;
        else if (name == "log") fn = Op::Log;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!accept('(')) fail("expected '(' after function name");
        parse_sum();
        if (!accept(')')) fail("expected ')'");
        emit(fn);
    }

    std::string_view text_;
    int dim_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    int max_depth_ = 0;
    std::vector<Expression::Instr>* program_ = nullptr;
};

Expression Expression::parse(std::string_view text, int dim) {
    return ExpressionParser(text, dim).run();
}

double Expression::operator()(std::span<const double> x) const {
    std::array<double, kMaxStack> stack;
    int top = -1;
    for (const Instr& in : program_) {
        switch (in.op) {
            case Op::Const: stack[++top] = in.value; break;
            case Op::Var: stack[++top] = x[in.var]; break;
            case Op::Add: stack[top - 1] += stack[top]; --top; break;
            case Op::Sub: stack[top - 1] -= stack[top]; --top; break;
            case Op::Mul: stack[top - 1] *= stack[top]; --top; break;
            case Op::Div: stack[top - 1] /= stack[top]; --top; break;
            case Op::Pow: stack[top - 1] = std::pow(stack[top - 1], stack[top]); --top; break;
            case Op::Neg: stack[top] = -stack[top]; break;
            case Op::Sin: stack[top] = std::sin(stack[top]); break;
            case Op::Cos: stack[top] = std::cos(stack[top]); break;
            case Op::Exp: stack[top] = std::exp(stack[top]); break;
            case Op::Sqrt: stack[top] = std::sqrt(stack[top]); break;
            case Op::Log: stack[top] = std::log(stack[top]); break;
        }
    }
    return stack[0];
}

}  // namespace fractalab
