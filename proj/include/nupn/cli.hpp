#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nupn/backward.hpp"
#include "nupn/canonical.hpp"
#include "nupn/firing.hpp"
#include "nupn/forward.hpp"
#include "nupn/io.hpp"

namespace nupn::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kGaveUp = 3 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LoadedNet load_file(const std::string& path) {
    try {
        return load(parse(read_file(path)));
    } catch (const ParseError& e) {
        throw Error(path + ":" + e.what());
    }
}

struct Options {
    std::string file;
    std::string target;
    std::string report;
    std::size_t limit_nodes = Limits{}.max_nodes;
    std::size_t limit_basis = Limits{}.max_basis;
    std::size_t limit_iterations = Limits{}.max_iterations;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    bool steps_given = false;

    [[nodiscard]] Limits limits() const { return Limits{limit_basis, limit_iterations, limit_nodes}; }
};

inline int cover_exit(CoverVerdict v) {
    switch (v) {
    case CoverVerdict::coverable: return kOk;
    case CoverVerdict::not_coverable: return kNegative;
    case CoverVerdict::resource_exhausted: return kGaveUp;
    }
    return kGaveUp;
}

inline int analysis_exit(Verdict v) {
    switch (v) {
    case Verdict::terminating:
    case Verdict::bounded:
    case Verdict::reachable: return kOk;
    case Verdict::non_terminating:
    case Verdict::unbounded:
    case Verdict::not_reachable: return kNegative;
    case Verdict::not_applicable:
    case Verdict::resource_exhausted: return kGaveUp;
    }
    return kGaveUp;
}

inline int cmd_validate(const Options& o, std::ostream& out) {
    auto doc = parse(read_file(o.file));
    std::vector<std::string> problems;
    PlaceCounts m0;
    if (doc.kind == NetKind::reset) problems = validate_reset(ResetNet{detail::control_net(doc, m0)});
    if (doc.kind == NetKind::inhibitor) problems = validate_inhibitor(InhibitorNet{detail::control_net(doc, m0)});
    if (problems.empty()) {
        auto ln = load(doc);
        for (const auto& v : validate_net(ln.net)) problems.push_back(v.message);
        out << "kind: " << to_string(ln.kind) << "\n";
        out << "normal: " << (is_normal(ln.net) ? "yes" : "no") << "\n";
    }
    for (const auto& p : problems) out << "violation: " << p << "\n";
    out << (problems.empty() ? "valid" : "invalid") << "\n";
    return problems.empty() ? kOk : kNegative;
}

inline int cmd_canon(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    out << to_string(canonicalize(ln.net, ln.initial), ln.net.places()) << "\n";
    return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    const std::size_t steps = o.steps_given ? o.steps : 20;
    std::mt19937_64 rng(o.seed);
    Marking m = ln.initial;
    out << "seed: " << o.seed << "\n";
    out << "witness:\n";
    std::size_t done = 0;
    for (; done < steps; ++done) {
        auto firings = enabled_firings(ln.net, m);
        if (firings.empty()) break;
        const auto& f = firings[rng() % firings.size()];
        out << render_firing(ln.net, f, ln.names) << "\n";
        m = fire(ln.net, m, f);
    }
    out << "steps: " << done << (done < steps ? " (deadlock)" : "") << "\n";
    for (PlaceId p = 0; p < m.num_places(); ++p)
        if (!m[p].empty()) out << "marking " << ln.net.place_name(p) << " = " << render_marking_tokens(m[p], ln.names) << "\n";
    out << "canon: " << to_string(canonicalize(m), ln.net.places()) << "\n";
    return kOk;
}

inline int cmd_cover(const Options& o, std::ostream& out, bool restricted) {
    auto ln = load_file(o.file);
    if (o.target.empty()) throw Error("--target is required");
    auto target = ln.target(parse_markings(read_file(o.target)));
    auto r = restricted ? restricted_coverable(ln.net, ln.initial, target, o.limits())
                        : coverable(ln.net, ln.initial, target, o.limits());
    out << render_result(r, ln.net, ln.names);
    return cover_exit(r.verdict);
}

inline int cmd_terminates(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    auto r = terminates(ln.net, ln.initial, o.limits());
    out << render_result(r, ln.net, ln.names);
    return analysis_exit(r.verdict);
}

inline int cmd_bounded(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    auto r = bounded(ln.net, ln.initial, o.limits());
    out << render_result(r, ln.net, ln.names);
    return analysis_exit(r.verdict);
}

inline int cmd_reach(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    if (o.target.empty()) throw Error("--target is required");
    auto target = ln.target(parse_markings(read_file(o.target)));
    auto r = reachable_alpha(ln.net, ln.initial, target, o.limits());
    out << render_result(r, ln.net, ln.names);
    return analysis_exit(r.verdict);
}

inline int cmd_measure(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    const std::size_t steps = o.steps_given ? o.steps : 1000;
    auto m = measure(ln.net, ln.initial, steps, o.limits());
    out << "verdict: " << (m.exact ? "exact" : "truncated") << "\n";
    out << "stats: nodes=" << m.nodes << " width=" << m.width << " depth=" << m.depth << "\n";
    return kOk;
}

inline int cmd_translate(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    std::vector<std::string> comments = ln.comments;
    if (ln.kind != NetKind::nu) comments.insert(comments.begin(), std::string("translated from ") + to_string(ln.kind) + " net");
    out << render(document_of(ln.net, ln.initial, ln.names, ln.name, comments));
    return kOk;
}

inline int cmd_replay(const Options& o, std::ostream& out) {
    auto ln = load_file(o.file);
    auto seq = parse_witness(read_file(o.report), ln.net, ln.names);
    Marking m = ln.initial;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            m = fire(ln.net, m, seq[i]);
        } catch (const ModeError& e) {
            out << "replay: failed at step " << i + 1 << ": " << e.what() << "\n";
            return kNegative;
        }
    }
    out << "replay: ok\n";
    out << "steps: " << seq.size() << "\n";
    out << "canon: " << to_string(canonicalize(m), ln.net.places()) << "\n";
    return kOk;
}

/// Runs the tool on `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analyses for Petri nets with fresh name creation"};
    app.require_subcommand(1);
    Options o;

    auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--limit-nodes", o.limit_nodes, "Maximum number of explored states");
        sub->add_option("--limit-basis", o.limit_basis, "Maximum size of the backward basis");
        sub->add_option("--limit-iterations", o.limit_iterations, "Maximum number of backward iterations");
    };
    auto net_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Net file")->required(); };

    auto* validate = app.add_subcommand("validate", "Check the structural conditions of a net");
    net_arg(validate);
    auto* canon = app.add_subcommand("canon", "Print the canonical form of the initial marking");
    net_arg(canon);
    auto* simulate = app.add_subcommand("simulate", "Random walk from the initial marking");
    net_arg(simulate);
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--steps", o.steps, "Number of steps")->each([&](const std::string&) { o.steps_given = true; });
    auto* cover = app.add_subcommand("cover", "Decide coverability of a target marking");
    auto* cover_r = app.add_subcommand("cover-restricted", "Coverability without renaming shared names");
    for (auto* sub : {cover, cover_r}) {
        net_arg(sub);
        sub->add_option("--target", o.target, "Target marking file")->required();
        add_limits(sub);
    }
    auto* term = app.add_subcommand("terminates", "Decide termination");
    auto* bound = app.add_subcommand("bounded", "Decide boundedness");
    for (auto* sub : {term, bound}) {
        net_arg(sub);
        add_limits(sub);
    }
    auto* reach = app.add_subcommand("reach", "Reachability up to renaming, for bounded nets");
    net_arg(reach);
    reach->add_option("--target", o.target, "Target marking file")->required();
    add_limits(reach);
    auto* meas = app.add_subcommand("measure", "Observed width and depth over an exploration");
    net_arg(meas);
    meas->add_option("--steps", o.steps, "Number of explored states")->each([&](const std::string&) { o.steps_given = true; });
    add_limits(meas);
    auto* translate = app.add_subcommand("translate", "Print the ν-PN document of a net");
    net_arg(translate);
    auto* replay_cmd = app.add_subcommand("replay", "Replay the witness of a report");
    net_arg(replay_cmd);
    replay_cmd->add_option("report", o.report, "Report containing 'fire' lines")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (canon->parsed()) return cmd_canon(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (cover->parsed()) return cmd_cover(o, out, false);
        if (cover_r->parsed()) return cmd_cover(o, out, true);
        if (term->parsed()) return cmd_terminates(o, out);
        if (bound->parsed()) return cmd_bounded(o, out);
        if (reach->parsed()) return cmd_reach(o, out);
        if (meas->parsed()) return cmd_measure(o, out);
        if (translate->parsed()) return cmd_translate(o, out);
        if (replay_cmd->parsed()) return cmd_replay(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace nupn::cli
