#pragma once

#include "ccps/value.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace ccps {

class Expr;
class BoolExpr;
using ExprPtr = std::shared_ptr<const Expr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;

/// Renaming applied when printing (used for alpha-canonical keys).
using Renaming = std::map<std::string, std::string>;

/// Arithmetic expression over data variables and literal values.
class Expr {
public:
    enum class Kind { Literal, Var, Add, Sub, Mul, Neg };

    static ExprPtr literal(Value v);
    static ExprPtr var(std::string name);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);

    Kind kind() const { return kind_; }
    const Value& value() const { return value_; }
    const std::string& name() const { return name_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

    bool mentions(const std::string& var) const;
    void collectFree(std::set<std::string>& out) const;

    /// Throws TermError when a variable is still free or arithmetic is ill-typed.
    Value evaluate() const;

    /// Writes the expression as c * var + k when it is affine in `var` and
    /// mentions no other variable.
    std::optional<std::pair<Rational, Rational>> affineIn(const std::string& var) const;

    std::string str(const Renaming& renaming = {}) const;

private:
    Expr(Kind kind) : kind_(kind) {}
    Kind kind_;
    Value value_;
    std::string name_;
    ExprPtr lhs_, rhs_;
};

ExprPtr substitute(const ExprPtr& e, const std::string& var, const Value& v);

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };
std::string to_string(CmpOp op);

/// Decidable guard: comparisons joined by and/or/not.
class BoolExpr {
public:
    enum class Kind { True, False, Cmp, And, Or, Not };

    static BoolPtr constant(bool b);
    static BoolPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs);
    static BoolPtr conj(BoolPtr a, BoolPtr b);
    static BoolPtr disj(BoolPtr a, BoolPtr b);
    static BoolPtr negate(BoolPtr a);

    Kind kind() const { return kind_; }
    CmpOp op() const { return op_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }
    const BoolPtr& left() const { return a_; }
    const BoolPtr& right() const { return b_; }

    bool mentions(const std::string& var) const;
    void collectFree(std::set<std::string>& out) const;
    bool isClosed() const;

    bool evaluate() const;

    std::string str(const Renaming& renaming = {}) const;

private:
    BoolExpr(Kind kind) : kind_(kind) {}
    Kind kind_;
    CmpOp op_ = CmpOp::Eq;
    ExprPtr lhs_, rhs_;
    BoolPtr a_, b_;
};

BoolPtr substitute(const BoolPtr& b, const std::string& var, const Value& v);

} // namespace ccps
