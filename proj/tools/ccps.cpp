#include "ccps/analysis.hpp"
#include "ccps/casestudy.hpp"
#include "ccps/dsl.hpp"
#include "ccps/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <iostream>

namespace {

using namespace ccps;

void writeFile(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

AbstractionConfig abstractionFor(const Model& model, std::size_t depth, std::size_t maxStates)
{
    AbstractionConfig c;
    c.inputs = model.inputs;
    c.maxStates = maxStates;
    if (depth > 0) {
        c.policy = WideningPolicy::Exact;
        c.maxTicks = depth;
    }
    return c;
}

std::string edgeSummary(const FiniteLts& lts)
{
    std::ostringstream out;
    out << lts.edges.size() << " (tau " << lts.countEdges(Action::Kind::Tau) << ", tick "
        << lts.countEdges(Action::Kind::Tick) << ", out " << lts.countEdges(Action::Kind::Out) << ", in "
        << lts.countEdges(Action::Kind::In) << ")";
    return out.str();
}

/// Step-by-step replay of run 0 of a simulation campaign.
Trace firstRun(const Model& model, const MonteCarloConfig& config)
{
    SeededSampler sampler(derive_seed(config.seed, 0), config.grid);
    Cps cur = model.system;
    Trace trace;
    trace.variables = cur.env.plant().variables;
    trace.actuators = cur.env.plant().actuators;
    std::size_t ticks = 0;
    while (ticks < config.horizon) {
        auto steps = system_steps(cur, sampler, model.inputs);
        const SysStep* step = choose_step(steps, sampler.engine());
        if (!step) break;
        trace.append(*step);
        if (step->action.kind == Action::Kind::Tick) ++ticks;
        cur = step->successor;
    }
    return trace;
}

int run(int argc, char** argv)
{
    CLI::App app{"Analyses of hybrid process-calculus models of cyber-physical systems"};
    app.require_subcommand(1);

    std::string file, file2, tracePath, where, target, exportPath, csvPath, jsonPath;
    std::size_t runs = 0, horizon = 0, depth = 0, samples = 0, bound = 0, maxStates = 100000;
    std::uint64_t seed = 0;
    bool json = false;
    MonteCarloConfig mc;

    auto* parseCmd = app.add_subcommand("parse", "Validate a model and print its normal form");
    parseCmd->add_option("FILE", file, "Model file")->required();

    auto* simCmd = app.add_subcommand("simulate", "Sample concrete runs and report switching statistics");
    simCmd->add_option("FILE", file, "Model file")->required();
    simCmd->add_option("--runs", runs, "Number of runs")->required();
    simCmd->add_option("--horizon", horizon, "Ticks per run")->required();
    simCmd->add_option("--seed", seed, "Campaign seed")->required();
    simCmd->add_option("--csv", csvPath, "Write one row per run plus a summary row");
    simCmd->add_option("--trace", tracePath, "Write the step trace of the first run as CSV");
    simCmd->add_option("--variable", mc.variable, "Variable sampled at switching steps")->capture_default_str();
    simCmd->add_option("--actuator", mc.actuator, "Switched actuator")->capture_default_str();
    simCmd->add_option("--warning-channel", mc.warningChannel, "Channel counted as warnings")
        ->capture_default_str();

    auto* exploreCmd = app.add_subcommand("explore", "Build the abstract LTS and print statistics");
    exploreCmd->add_option("FILE", file, "Model file")->required();
    exploreCmd->add_option("--depth", depth, "Tick depth of an exact exploration; 0 joins boxes per location")
        ->capture_default_str();
    exploreCmd->add_option("--max-states", maxStates, "State budget")->capture_default_str();
    exploreCmd->add_option("--export", exportPath, "Write the LTS in line format");

    auto* reachCmd = app.add_subcommand("reach", "Envelope of every variable at the selected locations");
    reachCmd->add_option("FILE", file, "Model file")->required();
    reachCmd->add_option("--where", where, "Location query, e.g. turn_on or ticks_after(turn_on)=5")->required();

    auto* bisimCmd = app.add_subcommand("bisim", "Weak bisimilarity of two abstract systems");
    bisimCmd->add_option("FILE1", file, "First model")->required();
    bisimCmd->add_option("FILE2", file2, "Second model")->required();
    bisimCmd->add_flag("--json", json, "Print the verdict as JSON");

    auto* traceCmd = app.add_subcommand("find-trace", "Concrete run reaching an action");
    traceCmd->add_option("FILE", file, "Model file")->required();
    traceCmd->add_option("--target", target, "Action, e.g. \"out warning\"")->required();
    traceCmd->add_option("--bound", bound, "Maximum number of ticks before the action")->required();
    traceCmd->add_option("--csv", csvPath, "Write the trace as CSV instead of printing it");
    traceCmd->add_option("--json", jsonPath, "Write the trace as JSON");

    SuiteConfig suite;
    auto* propsCmd = app.add_subcommand("props", "Run the case-study suite");
    propsCmd->add_option("--seed", suite.seed, "Seed of the sampled timing checks")->capture_default_str();
    propsCmd->add_option("--samples", suite.timeSamples, "Sampled runs per model; 0 skips them")
        ->capture_default_str();

    auto* timeCmd = app.add_subcommand("check-time", "Check the timing properties");
    timeCmd->add_option("FILE", file, "Model file")->required();
    timeCmd->add_option("--depth", depth, "Ticks per sampled run")->required();
    timeCmd->add_option("--samples", samples, "Sampled runs")->required();
    timeCmd->add_option("--seed", seed, "Seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*parseCmd) {
        std::cout << print_model(load_model(file));
        return 0;
    }
    if (*simCmd) {
        Model model = load_model(file);
        mc.runs = runs;
        mc.horizon = horizon;
        mc.seed = seed;
        mc.inputs = model.inputs;
        RunStats stats = monte_carlo(model.system, mc);
        if (!csvPath.empty()) writeFile(csvPath, stats.toCsv());
        if (!tracePath.empty()) writeFile(tracePath, trace_to_csv(firstRun(model, mc)));
        std::cout << stats.toJson() << '\n';
        return 0;
    }
    if (*exploreCmd) {
        Model model = load_model(file);
        FiniteLts lts = build_abstract_lts(model.system, abstractionFor(model, depth, maxStates));
        auto succ = lts.successors();
        bool deadlock = false;
        std::size_t terminal = 0;
        for (const auto& e : lts.edges)
            if (lts.deadlock && e.dst == *lts.deadlock) deadlock = true;
        for (std::size_t s = 0; s < lts.numStates; ++s) {
            bool frontier = depth > 0 && s < lts.tickDepth.size() && lts.tickDepth[s] >= depth;
            if (succ[s].empty() && !lts.states[s].deadlock && !frontier) ++terminal;
        }
        std::cout << "policy: " << (depth > 0 ? "exact, " + std::to_string(depth) + " ticks" : std::string("hull"))
                  << '\n'
                  << "states: " << lts.numStates << '\n'
                  << "edges: " << edgeSummary(lts) << '\n'
                  << "deadlock: " << (deadlock ? "reachable" : "unreachable") << '\n'
                  << "states without successors: " << terminal << '\n';
        if (lts.truncated) std::cout << "truncated at the tick depth\n";
        if (!exportPath.empty()) writeFile(exportPath, export_lts(lts));
        return 0;
    }
    if (*reachCmd) {
        Model model = load_model(file);
        FiniteLts lts = build_abstract_lts(model.system, abstractionFor(model, 0, maxStates));
        for (const auto& [var, iv] : reach_envelope(lts, LocationQuery::parse(where)))
            std::cout << var << " in " << iv.str() << '\n';
        return 0;
    }
    if (*bisimCmd) {
        Model a = load_model(file), b = load_model(file2);
        FiniteLts la = build_abstract_lts(a.system, abstractionFor(a, 0, maxStates));
        FiniteLts lb = build_abstract_lts(b.system, abstractionFor(b, 0, maxStates));
        BisimVerdict v = weak_bisim(la, lb);
        if (json) {
            std::cout << verdict_to_json(v) << '\n';
        } else {
            std::cout << (v.bisimilar ? "bisimilar" : "not bisimilar") << '\n';
            if (v.witness) {
                std::cout << "witness: " << v.witness->formula->str() << '\n'
                          << "satisfied by: " << (v.witness->side == 1 ? file : file2) << '\n'
                          << "actions:";
                for (const auto& act : v.witness->actions) std::cout << ' ' << act.str();
                std::cout << '\n';
            }
        }
        return v.bisimilar ? 0 : 1;
    }
    if (*traceCmd) {
        Model model = load_model(file);
        AbstractionConfig c = abstractionFor(model, 0, maxStates);
        auto found = find_trace_to(model.system, ActionSelector::parse(target), bound, c);
        if (!found) {
            std::cout << "no run reaches " << target << " within " << bound << " ticks\n";
            return 1;
        }
        std::cout << "reached " << found->trace.records.back().action.str() << " in time slot " << found->slot
                  << " after " << found->trace.records.size() << " steps\n";
        if (!jsonPath.empty()) writeFile(jsonPath, trace_to_json(found->trace));
        if (!csvPath.empty()) writeFile(csvPath, trace_to_csv(found->trace));
        else std::cout << trace_to_csv(found->trace);
        return 0;
    }
    if (*propsCmd) {
        SuiteReport report = proposition_suite(suite);
        std::cout << report.str();
        return report.allPassed() ? 0 : 1;
    }
    if (*timeCmd) {
        Model model = load_model(file);
        TimeCheckConfig c;
        c.depth = depth;
        c.samples = samples;
        c.seed = seed;
        c.abstraction = abstractionFor(model, 0, maxStates);
        TimeReport report = check_time_properties(model.system, c);
        std::cout << report.toJson() << '\n';
        return report.ok() ? 0 : 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
