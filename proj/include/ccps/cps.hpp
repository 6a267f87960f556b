#pragma once

#include "ccps/error.hpp"
#include "ccps/physics.hpp"
#include "ccps/process.hpp"

#include <optional>
#include <string>

namespace ccps {

/// A cyber-physical system E |><| P.
struct Cps {
    PhysicalEnv env;
    ProcPtr proc;
};

/// Empty optional when every sensor read and actuator written by the
/// process is declared in the environment.
std::optional<WellFormednessError> well_formed(const PhysicalEnv& env, const ProcPtr& proc);
inline std::optional<WellFormednessError> well_formed(const Cps& m) { return well_formed(m.env, m.proc); }

/// Checked constructor: the process must be closed and well formed.
Cps make_cps(PhysicalEnv env, ProcPtr proc);

/// Equal environments and structurally congruent processes.
bool same_system(const Cps& m, const Cps& n);

/// Disjoint variable, sensor and actuator name sets.
bool non_interfering(const Cps& m, const Cps& n);
/// A process that never reads a sensor nor writes an actuator.
bool non_interfering(const ProcPtr& p);

/// M |+| O = (E1 |+| E2) |><| (P1 | P2).
Cps uplus(const Cps& m, const Cps& o);
/// M | Q
Cps parallel(const Cps& m, const ProcPtr& q);
/// M \ c
Cps restrict(const Cps& m, const std::string& channel);

} // namespace ccps
