#include "ccps/expr.hpp"

#include "ccps/error.hpp"

namespace ccps {

namespace {

int precedence(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
    }
}

std::string wrap(const ExprPtr& e, int minPrec, const Renaming& r)
{
    std::string s = e->str(r);
    return precedence(e->kind()) < minPrec ? "(" + s + ")" : s;
}

const Rational& asReal(const Value& v)
{
    if (!v.isReal()) throw TermError("arithmetic on non-numeric value '" + v.str() + "'");
    return v.real();
}

} // namespace


ExprPtr Expr::literal(Value v)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Literal));
    e->value_ = std::move(v);
    return e;
}

ExprPtr Expr::var(std::string name)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Var));
    e->name_ = std::move(name);
    return e;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Add));
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Sub));
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Mul));
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

ExprPtr Expr::neg(ExprPtr a)
{
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Neg));
    e->lhs_ = std::move(a);
    return e;
}

bool Expr::mentions(const std::string& var) const
{
    switch (kind_) {
    case Kind::Literal: return false;
    case Kind::Var: return name_ == var;
    case Kind::Neg: return lhs_->mentions(var);
    default: return lhs_->mentions(var) || rhs_->mentions(var);
    }
}

void Expr::collectFree(std::set<std::string>& out) const
{
    switch (kind_) {
    case Kind::Literal: return;
    case Kind::Var: out.insert(name_); return;
    case Kind::Neg: lhs_->collectFree(out); return;
    default:
        lhs_->collectFree(out);
        rhs_->collectFree(out);
    }
}

Value Expr::evaluate() const
{
    switch (kind_) {
    case Kind::Literal: return value_;
    case Kind::Var: throw TermError("unbound data variable '" + name_ + "'");
    case Kind::Neg: return Value(Rational(-asReal(lhs_->evaluate())));
    case Kind::Add: return Value(Rational(asReal(lhs_->evaluate()) + asReal(rhs_->evaluate())));
    case Kind::Sub: return Value(Rational(asReal(lhs_->evaluate()) - asReal(rhs_->evaluate())));
    case Kind::Mul: return Value(Rational(asReal(lhs_->evaluate()) * asReal(rhs_->evaluate())));
    }
    return value_;
}

std::optional<std::pair<Rational, Rational>> Expr::affineIn(const std::string& var) const
{
    using Affine = std::pair<Rational, Rational>;
    switch (kind_) {
    case Kind::Literal:
        if (!value_.isReal()) return std::nullopt;
        return Affine{0, value_.real()};
    case Kind::Var:
        if (name_ != var) return std::nullopt;
        return Affine{1, 0};
    case Kind::Neg: {
        auto a = lhs_->affineIn(var);
        if (!a) return std::nullopt;
        return Affine{-a->first, -a->second};
    }
    case Kind::Add:
    case Kind::Sub: {
        auto a = lhs_->affineIn(var);
        auto b = rhs_->affineIn(var);
        if (!a || !b) return std::nullopt;
        if (kind_ == Kind::Add) return Affine{a->first + b->first, a->second + b->second};
        return Affine{a->first - b->first, a->second - b->second};
    }
    case Kind::Mul: {
        auto a = lhs_->affineIn(var);
        auto b = rhs_->affineIn(var);
        if (!a || !b) return std::nullopt;
        if (a->first != 0 && b->first != 0) return std::nullopt;
        return Affine{a->first * b->second + b->first * a->second, a->second * b->second};
    }
    }
    return std::nullopt;
}

std::string Expr::str(const Renaming& renaming) const
{
    switch (kind_) {
    case Kind::Literal: return value_.str();
    case Kind::Var: {
        auto it = renaming.find(name_);
        return it == renaming.end() ? name_ : it->second;
    }
    case Kind::Neg: return "-" + wrap(lhs_, 4, renaming);
    case Kind::Add: return wrap(lhs_, 1, renaming) + " + " + wrap(rhs_, 2, renaming);
    case Kind::Sub: return wrap(lhs_, 1, renaming) + " - " + wrap(rhs_, 2, renaming);
    case Kind::Mul: return wrap(lhs_, 2, renaming) + " * " + wrap(rhs_, 3, renaming);
    }
    return {};
}

ExprPtr substitute(const ExprPtr& e, const std::string& var, const Value& v)
{
    if (!e->mentions(var)) return e;
    switch (e->kind()) {
    case Expr::Kind::Var: return Expr::literal(v);
    case Expr::Kind::Neg: return Expr::neg(substitute(e->lhs(), var, v));
    case Expr::Kind::Add: return Expr::add(substitute(e->lhs(), var, v), substitute(e->rhs(), var, v));
    case Expr::Kind::Sub: return Expr::sub(substitute(e->lhs(), var, v), substitute(e->rhs(), var, v));
    case Expr::Kind::Mul: return Expr::mul(substitute(e->lhs(), var, v), substitute(e->rhs(), var, v));
    default: return e;
    }
}

std::string to_string(CmpOp op)
{
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    }
    return "?";
}

BoolPtr BoolExpr::constant(bool b)
{
    return std::shared_ptr<BoolExpr>(new BoolExpr(b ? Kind::True : Kind::False));
}

BoolPtr BoolExpr::cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs)
{
    auto e = std::shared_ptr<BoolExpr>(new BoolExpr(Kind::Cmp));
    e->op_ = op;
    e->lhs_ = std::move(lhs);
    e->rhs_ = std::move(rhs);
    return e;
}

BoolPtr BoolExpr::conj(BoolPtr a, BoolPtr b)
{
    auto e = std::shared_ptr<BoolExpr>(new BoolExpr(Kind::And));
    e->a_ = std::move(a);
    e->b_ = std::move(b);
    return e;
}

BoolPtr BoolExpr::disj(BoolPtr a, BoolPtr b)
{
    auto e = std::shared_ptr<BoolExpr>(new BoolExpr(Kind::Or));
    e->a_ = std::move(a);
    e->b_ = std::move(b);
    return e;
}

BoolPtr BoolExpr::negate(BoolPtr a)
{
    auto e = std::shared_ptr<BoolExpr>(new BoolExpr(Kind::Not));
    e->a_ = std::move(a);
    return e;
}

bool BoolExpr::mentions(const std::string& var) const
{
    switch (kind_) {
    case Kind::True:
    case Kind::False: return false;
    case Kind::Cmp: return lhs_->mentions(var) || rhs_->mentions(var);
    case Kind::Not: return a_->mentions(var);
    default: return a_->mentions(var) || b_->mentions(var);
    }
}

void BoolExpr::collectFree(std::set<std::string>& out) const
{
    switch (kind_) {
    case Kind::True:
    case Kind::False: return;
    case Kind::Cmp:
        lhs_->collectFree(out);
        rhs_->collectFree(out);
        return;
    case Kind::Not: a_->collectFree(out); return;
    default:
        a_->collectFree(out);
        b_->collectFree(out);
    }
}

bool BoolExpr::isClosed() const
{
    std::set<std::string> free;
    collectFree(free);
    return free.empty();
}

bool BoolExpr::evaluate() const
{
    switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: return !a_->evaluate();
    case Kind::And: return a_->evaluate() && b_->evaluate();
    case Kind::Or: return a_->evaluate() || b_->evaluate();
    case Kind::Cmp: break;
    }
    Value l = lhs_->evaluate();
    Value r = rhs_->evaluate();
    if (op_ == CmpOp::Eq) return l == r;
    if (op_ == CmpOp::Ne) return l != r;
    const Rational& a = asReal(l);
    const Rational& b = asReal(r);
    switch (op_) {
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    default: return false;
    }
}

std::string BoolExpr::str(const Renaming& renaming) const
{
    switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Cmp: return lhs_->str(renaming) + " " + to_string(op_) + " " + rhs_->str(renaming);
    case Kind::Not: return "!(" + a_->str(renaming) + ")";
    case Kind::And: return "(" + a_->str(renaming) + " && " + b_->str(renaming) + ")";
    case Kind::Or: return "(" + a_->str(renaming) + " || " + b_->str(renaming) + ")";
    }
    return {};
}

BoolPtr substitute(const BoolPtr& b, const std::string& var, const Value& v)
{
    if (!b->mentions(var)) return b;
    switch (b->kind()) {
    case BoolExpr::Kind::Cmp:
        return BoolExpr::cmp(b->op(), substitute(b->lhs(), var, v), substitute(b->rhs(), var, v));
    case BoolExpr::Kind::Not: return BoolExpr::negate(substitute(b->left(), var, v));
    case BoolExpr::Kind::And:
        return BoolExpr::conj(substitute(b->left(), var, v), substitute(b->right(), var, v));
    case BoolExpr::Kind::Or:
        return BoolExpr::disj(substitute(b->left(), var, v), substitute(b->right(), var, v));
    default: return b;
    }
}

} // namespace ccps
