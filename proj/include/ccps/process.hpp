#pragma once

#include "ccps/expr.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ccps {

/// The prefix of a timeout construct: send, receive, sensor read or actuator write.
struct Prefix {
    enum class Kind { Send, Receive, Read, Write };

    Kind kind = Kind::Send;
    /// Channel, sensor or actuator name depending on kind.
    std::string device;
    /// Bound data variable of Receive/Read; empty for a pure-synchronisation receive.
    std::string var;
    /// Payload of Send/Write.
    ExprPtr value;

    static Prefix send(std::string channel, ExprPtr value);
    static Prefix signal(std::string channel);
    static Prefix receive(std::string channel, std::string var);
    static Prefix await(std::string channel);
    static Prefix read(std::string var, std::string sensor);
    static Prefix write(ExprPtr value, std::string actuator);

    bool binds() const { return (kind == Kind::Receive || kind == Kind::Read) && !var.empty(); }
};

class Process;
using ProcPtr = std::shared_ptr<const Process>;

/// Immutable process term. Build with the free functions below.
class Process {
public:
    enum class Kind { Nil, Tick, Par, Timeout, If, Restrict, Var, Fix };

    Kind kind() const { return kind_; }

    /// Tick, Restrict and Fix bodies.
    const ProcPtr& body() const { return a_; }
    const ProcPtr& left() const { return a_; }
    const ProcPtr& right() const { return b_; }
    const Prefix& prefix() const { return prefix_; }
    /// Timeout: the process after the prefix fires.
    const ProcPtr& continuation() const { return a_; }
    /// Timeout: the process after one time unit without the prefix firing.
    const ProcPtr& timeoutBranch() const { return b_; }
    const BoolPtr& guard() const { return guard_; }
    const ProcPtr& thenBranch() const { return a_; }
    const ProcPtr& elseBranch() const { return b_; }
    /// Restricted channel, or the process variable of Var/Fix.
    const std::string& name() const { return name_; }

    const std::set<std::string>& freeProcVars() const { return freeProc_; }
    const std::set<std::string>& freeDataVars() const { return freeData_; }
    bool isClosed() const { return freeProc_.empty() && freeData_.empty(); }

    struct Token {};
    Process(Token, Kind kind) : kind_(kind) {}

private:
    friend struct ProcessBuilder;
    Kind kind_;
    ProcPtr a_, b_;
    Prefix prefix_;
    BoolPtr guard_;
    std::string name_;
    std::set<std::string> freeProc_;
    std::set<std::string> freeData_;
};

ProcPtr nil();
ProcPtr tick(ProcPtr body);
/// tick^k.body
ProcPtr ticks(unsigned k, ProcPtr body);
ProcPtr par(ProcPtr left, ProcPtr right);
/// [prefix.continuation]timeoutBranch
ProcPtr timeout(Prefix prefix, ProcPtr continuation, ProcPtr timeoutBranch);
ProcPtr ite(BoolPtr guard, ProcPtr thenBranch, ProcPtr elseBranch);
ProcPtr restrict(ProcPtr body, std::string channel);
ProcPtr pvar(std::string name);
/// fix X.body; throws TermError unless every free X in body is time-guarded.
ProcPtr fix(std::string var, ProcPtr body);
/// The derived form pi.P = fix X.[pi.P]X with X fresh for P.
ProcPtr prefixed(Prefix prefix, ProcPtr continuation);

/// True when every free occurrence of `var` sits under a tick or in a timeout branch.
bool timeGuarded(const std::string& var, const ProcPtr& p);

/// P{v/x}: replaces free occurrences of data variable x.
ProcPtr substitute_value(const ProcPtr& p, const std::string& var, const Value& v);
/// P{S/X}, renaming binders that would capture free names of S.
ProcPtr substitute_process(const ProcPtr& p, const std::string& var, const ProcPtr& s);
/// P{fix X.P / X}. Throws TermError when the term is not a Fix.
ProcPtr unfold_fix(const ProcPtr& fixTerm);

/// Replaces every conditional whose guard is closed by the branch it selects.
ProcPtr resolve_conditionals(const ProcPtr& p);

/// Canonical representative modulo alpha-conversion, associativity and
/// commutativity of parallel composition with nil as unit, and the
/// identification of a decided conditional with its branch.
std::string canonical_key(const ProcPtr& p);
bool structurally_congruent(const ProcPtr& p, const ProcPtr& q);

/// Concrete syntax, re-parsable by the model parser.
std::string print(const ProcPtr& p);

std::set<std::string> sensors_read(const ProcPtr& p);
std::set<std::string> actuators_written(const ProcPtr& p);
/// Channels used by prefixes, whether restricted or not.
std::set<std::string> channels_used(const ProcPtr& p);

/// A name of the form base, base1, base2, ... not contained in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

} // namespace ccps
