#pragma once

#include "ccps/cps.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ccps {

/// Parameters of the engine model. Device names are temp, cool and st
/// followed by `suffix`.
struct EngineParams {
    Rational initialTemp = 0;
    Rational delta = Rational(2, 5);
    Rational epsilon = Rational(1, 10);
    Rational heatOff = 1;
    Rational heatOn = -1;
    Rational threshold = 10;
    unsigned coolTicks = 5;
    Interval invariantBox = Interval(0, 30);
    std::string engineId = "ID";
    std::string suffix;

    /// Eng: full cooling power.
    static EngineParams standard();
    /// Eng-bar: cooling power reduced by 20%.
    static EngineParams reduced();
    /// Eng-hat: cooling power reduced by 30%.
    static EngineParams weak();

    /// Copy with renamed devices and identifier, e.g. ("_l", "L").
    EngineParams renamed(std::string suffix, std::string id) const;

    std::string temp() const { return "temp" + suffix; }
    std::string cool() const { return "cool" + suffix; }
    std::string sensor() const { return "st" + suffix; }

    /// Throws Error unless delta, epsilon >= 0 and coolTicks >= 1.
    void validate() const;
};

PhysicalEnv build_engine_env(const EngineParams& params);
ProcPtr build_controller(const EngineParams& params);
/// Env |><| Ctrl.
Cps build_engine(const EngineParams& params);

/// The warning monitor of the airplane, over engine identifiers `left` and `right`.
ProcPtr build_check(const std::string& left = "L", const std::string& right = "R");

/// (Eng_L |+| Eng_R) with devices suffixed _l/_r and identifiers L/R.
Cps build_engine_pair(const EngineParams& variant);
/// ((Eng_L |+| Eng_R) | Check) \ warning.
Cps build_airplane(const EngineParams& variant);

/// Expected envelopes of the engine, derived from its parameters.
Interval expected_turn_on(const EngineParams& p);
Interval expected_turn_off(const EngineParams& p);

struct SuiteConfig {
    EngineParams eng = EngineParams::standard();
    EngineParams engBar = EngineParams::reduced();
    EngineParams engHat = EngineParams::weak();
    std::size_t traceBound = 17;
    /// Sampled runs per model in the timing checks; zero skips them.
    std::size_t timeSamples = 100;
    std::size_t timeDepth = 30;
    std::uint64_t seed = 0;

    /// The three variants of `base` differing only in cooling power.
    static SuiteConfig fromBase(const EngineParams& base);
};

struct SuiteEntry {
    std::string name;
    bool passed = false;
    std::vector<std::string> details;
};

struct SuiteReport {
    std::vector<SuiteEntry> entries;
    bool allPassed() const;
    /// One "PASS name" / "FAIL name" line per entry, details indented below.
    std::string str() const;
};

SuiteReport proposition_suite(const SuiteConfig& config = {});

} // namespace ccps
