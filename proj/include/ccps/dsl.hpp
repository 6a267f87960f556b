#pragma once

#include "ccps/lts.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ccps {

/// A parsed model file: the system, the input values it may receive from
/// its surroundings, and the named process definitions as written.
struct Model {
    Cps system;
    InputAlphabet inputs;
    /// Name of the process given in the `system` entry.
    std::string systemName = "Main";
    /// (name, source text of the body) in declaration order.
    std::vector<std::pair<std::string, std::string>> definitions;
};

/// Parses the model language:
///
///   vars      { temp = 0, uncertainty 0.4, invariant [0, 30]; }
///   actuators { cool = off; }
///   sensors   { st measures temp, error 0.1; }
///   dynamics  { temp { when cool = on: -1; default: 1; } }
///   inputs    { warning: L, R; alarm; }
///   process Ctrl = fix X. read st(x). if x > 10 then Cooling else tick.X;
///   system Ctrl;
///
/// Process definitions are macros: a reference is replaced by the body,
/// whose free process variables are bound by the enclosing fix. Identifiers
/// in data positions denote the innermost bound data variable of that name
/// and otherwise a name value. Throws ParseError (with position and expected
/// tokens) or WellFormednessError.
Model parse_model(const std::string& text);

/// Reads and parses a file. Throws Error when the file cannot be read.
Model load_model(const std::string& path);

/// A closed process term in the concrete syntax used by print().
ProcPtr parse_process(const std::string& text);

/// Normal form: one block per section and the system inlined as a single
/// process definition. parse_model(print_model(m)) is structurally equal to m.
std::string print_model(const Model& model);

/// Equal environments and inputs, structurally congruent processes.
bool same_model(const Model& a, const Model& b);

} // namespace ccps
