#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fractalab {

/// Compiled scalar arithmetic expression over variables x1..xd.
///
/// Grammar: `+ - * / ^`, unary minus, parentheses, numeric literals,
/// the constant `pi`, and the functions `sin cos exp sqrt log`. When the
/// ambient dimension is 1, `x` is accepted as an alias for `x1`.
/// `^` is right-associative and binds tighter than unary minus.
class Expression {
public:
    /// Throws ParseError with line 1 and the 1-based column of the offending token.
    static Expression parse(std::string_view text, int dim);

    double operator()(std::span<const double> x) const;

    const std::string& source() const noexcept { return source_; }

private:
    enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt, Log };
    struct Instr {
        Op op;
        int var = 0;
        double value = 0.0;
    };
    static constexpr int kMaxStack = 48;

    friend class ExpressionParser;

    std::string source_;
    std::vector<Instr> program_;
};

}  // namespace fractalab
