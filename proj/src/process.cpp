#include "ccps/process.hpp"

#include "ccps/error.hpp"

#include <algorithm>
#include <map>

namespace ccps {

Prefix Prefix::send(std::string channel, ExprPtr value)
{
    return Prefix{Kind::Send, std::move(channel), {}, std::move(value)};
}

Prefix Prefix::signal(std::string channel)
{
    return Prefix{Kind::Send, std::move(channel), {}, Expr::literal(Unit{})};
}

Prefix Prefix::receive(std::string channel, std::string var)
{
    return Prefix{Kind::Receive, std::move(channel), std::move(var), nullptr};
}

Prefix Prefix::await(std::string channel)
{
    return Prefix{Kind::Receive, std::move(channel), {}, nullptr};
}

Prefix Prefix::read(std::string var, std::string sensor)
{
    return Prefix{Kind::Read, std::move(sensor), std::move(var), nullptr};
}

Prefix Prefix::write(ExprPtr value, std::string actuator)
{
    return Prefix{Kind::Write, std::move(actuator), {}, std::move(value)};
}

struct ProcessBuilder {
    static std::shared_ptr<Process> make(Process::Kind kind)
    {
        return std::make_shared<Process>(Process::Token{}, kind);
    }

    static void inherit(Process& p, const ProcPtr& child)
    {
        p.freeProc_.insert(child->freeProc_.begin(), child->freeProc_.end());
        p.freeData_.insert(child->freeData_.begin(), child->freeData_.end());
    }

    static ProcPtr tick(ProcPtr body)
    {
        auto p = make(Process::Kind::Tick);
        inherit(*p, body);
        p->a_ = std::move(body);
        return p;
    }

    static ProcPtr par(ProcPtr l, ProcPtr r)
    {
        auto p = make(Process::Kind::Par);
        inherit(*p, l);
        inherit(*p, r);
        p->a_ = std::move(l);
        p->b_ = std::move(r);
        return p;
    }

    static ProcPtr timeout(Prefix prefix, ProcPtr cont, ProcPtr tb)
    {
        auto p = make(Process::Kind::Timeout);
        inherit(*p, cont);
        if (prefix.binds()) p->freeData_.erase(prefix.var);
        inherit(*p, tb);
        if (prefix.value) prefix.value->collectFree(p->freeData_);
        p->prefix_ = std::move(prefix);
        p->a_ = std::move(cont);
        p->b_ = std::move(tb);
        return p;
    }

    static ProcPtr ite(BoolPtr guard, ProcPtr a, ProcPtr b)
    {
        auto p = make(Process::Kind::If);
        guard->collectFree(p->freeData_);
        inherit(*p, a);
        inherit(*p, b);
        p->guard_ = std::move(guard);
        p->a_ = std::move(a);
        p->b_ = std::move(b);
        return p;
    }

    static ProcPtr restrict(ProcPtr body, std::string channel)
    {
        auto p = make(Process::Kind::Restrict);
        inherit(*p, body);
        p->a_ = std::move(body);
        p->name_ = std::move(channel);
        return p;
    }

    static ProcPtr var(std::string name)
    {
        auto p = make(Process::Kind::Var);
        p->freeProc_.insert(name);
        p->name_ = std::move(name);
        return p;
    }

    static ProcPtr fix(std::string var, ProcPtr body)
    {
        auto p = make(Process::Kind::Fix);
        inherit(*p, body);
        p->freeProc_.erase(var);
        p->a_ = std::move(body);
        p->name_ = std::move(var);
        return p;
    }
};

namespace {

using B = ProcessBuilder;

bool guardedIn(const std::string& x, const ProcPtr& p, bool guarded)
{
    if (!p->freeProcVars().count(x)) return true;
    switch (p->kind()) {
    case Process::Kind::Var: return guarded;
    case Process::Kind::Tick: return guardedIn(x, p->body(), true);
    case Process::Kind::Timeout:
        return guardedIn(x, p->continuation(), guarded) && guardedIn(x, p->timeoutBranch(), true);
    case Process::Kind::Par:
    case Process::Kind::If:
        return guardedIn(x, p->left(), guarded) && guardedIn(x, p->right(), guarded);
    case Process::Kind::Restrict:
    case Process::Kind::Fix: return guardedIn(x, p->body(), guarded);
    case Process::Kind::Nil: return true;
    }
    return true;
}

std::set<std::string> allNames(const ProcPtr& p)
{
    std::set<std::string> names = p->freeProcVars();
    names.insert(p->freeDataVars().begin(), p->freeDataVars().end());
    return names;
}

ProcPtr renameProcVar(const ProcPtr& p, const std::string& from, const std::string& to);

ProcPtr substProcImpl(const ProcPtr& p, const std::string& x, const ProcPtr& s)
{
    if (!p->freeProcVars().count(x)) return p;
    switch (p->kind()) {
    case Process::Kind::Var: return s;
    case Process::Kind::Tick: return B::tick(substProcImpl(p->body(), x, s));
    case Process::Kind::Par:
        return B::par(substProcImpl(p->left(), x, s), substProcImpl(p->right(), x, s));
    case Process::Kind::Restrict: return B::restrict(substProcImpl(p->body(), x, s), p->name());
    case Process::Kind::If:
        return B::ite(p->guard(), substProcImpl(p->thenBranch(), x, s),
                      substProcImpl(p->elseBranch(), x, s));
    case Process::Kind::Timeout: {
        Prefix prefix = p->prefix();
        ProcPtr cont = p->continuation();
        if (prefix.binds() && s->freeDataVars().count(prefix.var) &&
            cont->freeProcVars().count(x)) {
            std::set<std::string> avoid = allNames(s);
            auto more = allNames(cont);
            avoid.insert(more.begin(), more.end());
            std::string fresh = fresh_name(prefix.var, avoid);
            struct Renamer {
                static ExprPtr expr(const ExprPtr& e, const std::string& a, const std::string& b)
                {
                    if (!e || !e->mentions(a)) return e;
                    switch (e->kind()) {
                    case Expr::Kind::Var: return Expr::var(b);
                    case Expr::Kind::Neg: return Expr::neg(expr(e->lhs(), a, b));
                    case Expr::Kind::Add: return Expr::add(expr(e->lhs(), a, b), expr(e->rhs(), a, b));
                    case Expr::Kind::Sub: return Expr::sub(expr(e->lhs(), a, b), expr(e->rhs(), a, b));
                    case Expr::Kind::Mul: return Expr::mul(expr(e->lhs(), a, b), expr(e->rhs(), a, b));
                    default: return e;
                    }
                }
                static BoolPtr guard(const BoolPtr& g, const std::string& a, const std::string& b)
                {
                    if (!g->mentions(a)) return g;
                    switch (g->kind()) {
                    case BoolExpr::Kind::Cmp: return BoolExpr::cmp(g->op(), expr(g->lhs(), a, b), expr(g->rhs(), a, b));
                    case BoolExpr::Kind::Not: return BoolExpr::negate(guard(g->left(), a, b));
                    case BoolExpr::Kind::And: return BoolExpr::conj(guard(g->left(), a, b), guard(g->right(), a, b));
                    case BoolExpr::Kind::Or: return BoolExpr::disj(guard(g->left(), a, b), guard(g->right(), a, b));
                    default: return g;
                    }
                }
                static ProcPtr proc(const ProcPtr& q, const std::string& a, const std::string& b)
                {
                    if (!q->freeDataVars().count(a)) return q;
                    switch (q->kind()) {
                    case Process::Kind::Tick: return B::tick(proc(q->body(), a, b));
                    case Process::Kind::Par: return B::par(proc(q->left(), a, b), proc(q->right(), a, b));
                    case Process::Kind::Restrict: return B::restrict(proc(q->body(), a, b), q->name());
                    case Process::Kind::Fix: return B::fix(q->name(), proc(q->body(), a, b));
                    case Process::Kind::If:
                        return B::ite(guard(q->guard(), a, b), proc(q->thenBranch(), a, b),
                                      proc(q->elseBranch(), a, b));
                    case Process::Kind::Timeout: {
                        Prefix pre = q->prefix();
                        pre.value = expr(pre.value, a, b);
                        ProcPtr c = q->continuation();
                        if (!(pre.binds() && pre.var == a)) c = proc(c, a, b);
                        return B::timeout(pre, c, proc(q->timeoutBranch(), a, b));
                    }
                    default: return q;
                    }
                }
            };
            cont = Renamer::proc(cont, prefix.var, fresh);
            prefix.var = fresh;
        }
        return B::timeout(prefix, substProcImpl(cont, x, s), substProcImpl(p->timeoutBranch(), x, s));
    }
    case Process::Kind::Fix: {
        if (p->name() == x) return p;
        std::string y = p->name();
        ProcPtr body = p->body();
        if (s->freeProcVars().count(y)) {
            std::set<std::string> avoid = allNames(s);
            auto more = allNames(body);
            avoid.insert(more.begin(), more.end());
            avoid.insert(x);
            std::string fresh = fresh_name(y, avoid);
            body = renameProcVar(body, y, fresh);
            y = fresh;
        }
        return B::fix(y, substProcImpl(body, x, s));
    }
    case Process::Kind::Nil: return p;
    }
    return p;
}

ProcPtr renameProcVar(const ProcPtr& p, const std::string& from, const std::string& to)
{
    return substProcImpl(p, from, B::var(to));
}

// ---------------------------------------------------------------------------
// canonical keys

struct KeyContext {
    Renaming data;
    std::map<std::string, std::string> proc;
    unsigned dataDepth = 0;
    unsigned procDepth = 0;
};

std::string prefixKey(const Prefix& prefix, KeyContext& ctx)
{
    switch (prefix.kind) {
    case Prefix::Kind::Send: return "out " + prefix.device + "<" + prefix.value->str(ctx.data) + ">";
    case Prefix::Kind::Write: return "write " + prefix.value->str(ctx.data) + "(" + prefix.device + ")";
    case Prefix::Kind::Receive: return "in " + prefix.device;
    case Prefix::Kind::Read: return "read " + prefix.device;
    }
    return {};
}

std::string keyOf(const ProcPtr& p, KeyContext& ctx);

void collectParallel(const ProcPtr& p, KeyContext& ctx, std::vector<std::string>& out)
{
    if (p->kind() == Process::Kind::Par) {
        collectParallel(p->left(), ctx, out);
        collectParallel(p->right(), ctx, out);
        return;
    }
    std::string k = keyOf(p, ctx);
    if (k != "0") out.push_back(std::move(k));
}

std::string keyOf(const ProcPtr& p, KeyContext& ctx)
{
    switch (p->kind()) {
    case Process::Kind::Nil: return "0";
    case Process::Kind::Tick: return "t." + keyOf(p->body(), ctx);
    case Process::Kind::Par: {
        std::vector<std::string> parts;
        collectParallel(p, ctx, parts);
        if (parts.empty()) return "0";
        if (parts.size() == 1) return parts.front();
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " | ";
            out += parts[i];
        }
        return out + ")";
    }
    case Process::Kind::Restrict: return "(" + keyOf(p->body(), ctx) + ")\\" + p->name();
    case Process::Kind::Var: {
        auto it = ctx.proc.find(p->name());
        return it == ctx.proc.end() ? p->name() : it->second;
    }
    case Process::Kind::Fix: {
        std::string name = "#" + std::to_string(ctx.procDepth);
        auto saved = ctx.proc.find(p->name()) == ctx.proc.end()
                         ? std::optional<std::string>{}
                         : std::optional<std::string>{ctx.proc[p->name()]};
        ctx.proc[p->name()] = name;
        ++ctx.procDepth;
        std::string body = keyOf(p->body(), ctx);
        --ctx.procDepth;
        if (saved) ctx.proc[p->name()] = *saved;
        else ctx.proc.erase(p->name());
        return "fix " + name + "." + body;
    }
    case Process::Kind::If:
        return "if(" + p->guard()->str(ctx.data) + "){" + keyOf(p->thenBranch(), ctx) + "}{" +
               keyOf(p->elseBranch(), ctx) + "}";
    case Process::Kind::Timeout: {
        const Prefix& prefix = p->prefix();
        std::string head = prefixKey(prefix, ctx);
        std::string cont;
        if (prefix.binds()) {
            std::string name = "$" + std::to_string(ctx.dataDepth);
            auto it = ctx.data.find(prefix.var);
            std::optional<std::string> saved;
            if (it != ctx.data.end()) saved = it->second;
            ctx.data[prefix.var] = name;
            ++ctx.dataDepth;
            cont = keyOf(p->continuation(), ctx);
            --ctx.dataDepth;
            if (saved) ctx.data[prefix.var] = *saved;
            else ctx.data.erase(prefix.var);
            head += "(" + name + ")";
        } else {
            cont = keyOf(p->continuation(), ctx);
        }
        return "[" + head + "." + cont + "]" + keyOf(p->timeoutBranch(), ctx);
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// printing

enum Level { kPar = 0, kRestrict = 1, kUnary = 2 };

std::string exprText(const ExprPtr& e)
{
    std::string s = e->str();
    bool atomic = e->kind() == Expr::Kind::Literal || e->kind() == Expr::Kind::Var;
    if (e->kind() == Expr::Kind::Literal && e->value().isReal() && e->value().real() < 0) atomic = false;
    return atomic ? s : "(" + s + ")";
}

std::string prefixText(const Prefix& prefix)
{
    switch (prefix.kind) {
    case Prefix::Kind::Send:
        if (prefix.value->kind() == Expr::Kind::Literal && prefix.value->value().isUnit())
            return "out " + prefix.device;
        return "out " + prefix.device + "<" + prefix.value->str() + ">";
    case Prefix::Kind::Receive:
        return prefix.var.empty() ? "in " + prefix.device : "in " + prefix.device + "(" + prefix.var + ")";
    case Prefix::Kind::Read: return "read " + prefix.device + "(" + prefix.var + ")";
    case Prefix::Kind::Write: return "write " + exprText(prefix.value) + "(" + prefix.device + ")";
    }
    return {};
}

std::string printAt(const ProcPtr& p, Level level);

std::string wrapIf(bool cond, std::string s)
{
    return cond ? "(" + s + ")" : s;
}

std::string printAt(const ProcPtr& p, Level level)
{
    switch (p->kind()) {
    case Process::Kind::Nil: return "nil";
    case Process::Kind::Var: return p->name();
    case Process::Kind::Tick: {
        unsigned k = 0;
        ProcPtr q = p;
        while (q->kind() == Process::Kind::Tick) {
            ++k;
            q = q->body();
        }
        std::string head = k == 1 ? "tick" : "tick^" + std::to_string(k);
        return head + "." + printAt(q, kUnary);
    }
    case Process::Kind::Par:
        return wrapIf(level > kPar, printAt(p->left(), kPar) + " | " + printAt(p->right(), kRestrict));
    case Process::Kind::Restrict:
        return wrapIf(level > kRestrict, printAt(p->body(), kRestrict) + " \\ " + p->name());
    case Process::Kind::If:
        return "if " + p->guard()->str() + " then " + printAt(p->thenBranch(), kPar) + " else " +
               printAt(p->elseBranch(), kUnary);
    case Process::Kind::Timeout:
        return "[" + prefixText(p->prefix()) + "." + printAt(p->continuation(), kPar) + "]" +
               printAt(p->timeoutBranch(), kUnary);
    case Process::Kind::Fix: {
        const ProcPtr& body = p->body();
        if (body->kind() == Process::Kind::Timeout &&
            body->timeoutBranch()->kind() == Process::Kind::Var &&
            body->timeoutBranch()->name() == p->name() &&
            !body->continuation()->freeProcVars().count(p->name())) {
            return prefixText(body->prefix()) + "." + printAt(body->continuation(), kUnary);
        }
        return "fix " + p->name() + ". " + printAt(body, kUnary);
    }
    }
    return {};
}

void collectDevices(const ProcPtr& p, Prefix::Kind kind, std::set<std::string>& out)
{
    switch (p->kind()) {
    case Process::Kind::Nil:
    case Process::Kind::Var: return;
    case Process::Kind::Timeout:
        if (p->prefix().kind == kind) out.insert(p->prefix().device);
        collectDevices(p->continuation(), kind, out);
        collectDevices(p->timeoutBranch(), kind, out);
        return;
    case Process::Kind::Par:
    case Process::Kind::If:
        collectDevices(p->left(), kind, out);
        collectDevices(p->right(), kind, out);
        return;
    default: collectDevices(p->body(), kind, out);
    }
}

} // namespace

ProcPtr nil()
{
    static const ProcPtr instance = B::make(Process::Kind::Nil);
    return instance;
}

ProcPtr tick(ProcPtr body) { return B::tick(std::move(body)); }

ProcPtr ticks(unsigned k, ProcPtr body)
{
    for (unsigned i = 0; i < k; ++i) body = B::tick(std::move(body));
    return body;
}

ProcPtr par(ProcPtr left, ProcPtr right) { return B::par(std::move(left), std::move(right)); }

ProcPtr timeout(Prefix prefix, ProcPtr continuation, ProcPtr timeoutBranch)
{
    return B::timeout(std::move(prefix), std::move(continuation), std::move(timeoutBranch));
}

ProcPtr ite(BoolPtr guard, ProcPtr thenBranch, ProcPtr elseBranch)
{
    return B::ite(std::move(guard), std::move(thenBranch), std::move(elseBranch));
}

ProcPtr restrict(ProcPtr body, std::string channel)
{
    return B::restrict(std::move(body), std::move(channel));
}

ProcPtr pvar(std::string name) { return B::var(std::move(name)); }

ProcPtr fix(std::string var, ProcPtr body)
{
    if (!timeGuarded(var, body))
        throw TermError("recursion variable '" + var + "' is not time-guarded in " + print(body));
    return B::fix(std::move(var), std::move(body));
}

ProcPtr prefixed(Prefix prefix, ProcPtr continuation)
{
    std::set<std::string> avoid = allNames(continuation);
    if (prefix.value) prefix.value->collectFree(avoid);
    std::string x = fresh_name("R", avoid);
    return B::fix(x, B::timeout(std::move(prefix), std::move(continuation), B::var(x)));
}

bool timeGuarded(const std::string& var, const ProcPtr& p)
{
    return guardedIn(var, p, false);
}

ProcPtr substitute_value(const ProcPtr& p, const std::string& var, const Value& v)
{
    if (!p->freeDataVars().count(var)) return p;
    switch (p->kind()) {
    case Process::Kind::Tick: return B::tick(substitute_value(p->body(), var, v));
    case Process::Kind::Par:
        return B::par(substitute_value(p->left(), var, v), substitute_value(p->right(), var, v));
    case Process::Kind::Restrict: return B::restrict(substitute_value(p->body(), var, v), p->name());
    case Process::Kind::Fix: return B::fix(p->name(), substitute_value(p->body(), var, v));
    case Process::Kind::If:
        return B::ite(substitute(p->guard(), var, v), substitute_value(p->thenBranch(), var, v),
                      substitute_value(p->elseBranch(), var, v));
    case Process::Kind::Timeout: {
        Prefix prefix = p->prefix();
        if (prefix.value) prefix.value = substitute(prefix.value, var, v);
        ProcPtr cont = p->continuation();
        if (!(prefix.binds() && prefix.var == var)) cont = substitute_value(cont, var, v);
        return B::timeout(std::move(prefix), cont, substitute_value(p->timeoutBranch(), var, v));
    }
    default: return p;
    }
}

ProcPtr substitute_process(const ProcPtr& p, const std::string& var, const ProcPtr& s)
{
    return substProcImpl(p, var, s);
}

ProcPtr unfold_fix(const ProcPtr& fixTerm)
{
    if (fixTerm->kind() != Process::Kind::Fix) throw TermError("unfold_fix applied to a non-recursive term");
    return substProcImpl(fixTerm->body(), fixTerm->name(), fixTerm);
}

ProcPtr resolve_conditionals(const ProcPtr& p)
{
    switch (p->kind()) {
    case Process::Kind::Nil:
    case Process::Kind::Var: return p;
    case Process::Kind::If:
        if (p->guard()->isClosed())
            return resolve_conditionals(p->guard()->evaluate() ? p->thenBranch() : p->elseBranch());
        {
            auto a = resolve_conditionals(p->thenBranch());
            auto b = resolve_conditionals(p->elseBranch());
            if (a == p->thenBranch() && b == p->elseBranch()) return p;
            return B::ite(p->guard(), a, b);
        }
    case Process::Kind::Tick: {
        auto b = resolve_conditionals(p->body());
        return b == p->body() ? p : B::tick(b);
    }
    case Process::Kind::Restrict: {
        auto b = resolve_conditionals(p->body());
        return b == p->body() ? p : B::restrict(b, p->name());
    }
    case Process::Kind::Fix: {
        auto b = resolve_conditionals(p->body());
        return b == p->body() ? p : B::fix(p->name(), b);
    }
    case Process::Kind::Par: {
        auto a = resolve_conditionals(p->left());
        auto b = resolve_conditionals(p->right());
        return a == p->left() && b == p->right() ? p : B::par(a, b);
    }
    case Process::Kind::Timeout: {
        auto a = resolve_conditionals(p->continuation());
        auto b = resolve_conditionals(p->timeoutBranch());
        return a == p->continuation() && b == p->timeoutBranch() ? p : B::timeout(p->prefix(), a, b);
    }
    }
    return p;
}

std::string canonical_key(const ProcPtr& p)
{
    KeyContext ctx;
    return keyOf(resolve_conditionals(p), ctx);
}

bool structurally_congruent(const ProcPtr& p, const ProcPtr& q)
{
    return canonical_key(p) == canonical_key(q);
}

std::string print(const ProcPtr& p)
{
    return printAt(p, kPar);
}

std::set<std::string> sensors_read(const ProcPtr& p)
{
    std::set<std::string> out;
    collectDevices(p, Prefix::Kind::Read, out);
    return out;
}

std::set<std::string> actuators_written(const ProcPtr& p)
{
    std::set<std::string> out;
    collectDevices(p, Prefix::Kind::Write, out);
    return out;
}

std::set<std::string> channels_used(const ProcPtr& p)
{
    std::set<std::string> out;
    collectDevices(p, Prefix::Kind::Send, out);
    collectDevices(p, Prefix::Kind::Receive, out);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid)
{
    if (!avoid.count(base)) return base;
    for (unsigned i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

} // namespace ccps
