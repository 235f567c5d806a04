// Command-line front end: classification, simulation, probability scans and
// the machine-reduction builders, with reproducible seeded output.

#include <cstdio>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "fca/blockcode.hpp"
#include "fca/classifier.hpp"
#include "fca/engine.hpp"
#include "fca/ftca.hpp"
#include "fca/io.hpp"
#include "fca/percolation.hpp"
#include "fca/rng.hpp"
#include "fca/twophase.hpp"

using namespace fca;
using nlohmann::json;

namespace {

struct Global {
    uint64_t seed = 1;
    int threads = 1;
    std::string out;       // empty: stdout
    std::string format;    // per-command default
};

void emit(const Global& g, const std::string& data) {
    if (g.out.empty())
        std::cout << data;
    else
        write_file(g.out, data);
}

json arcset_json(const ArcSet& s) {
    if (s.is_full()) return "full";
    json arr = json::array();
    for (const Arc& a : s.arcs())
        arr.push_back({{"start", {a.start.v.x, a.start.v.y}},
                       {"end", {a.end.v.x, a.end.v.y}},
                       {"start_closed", a.start_closed},
                       {"end_closed", a.end_closed}});
    return arr;
}

struct RuleChoice {
    RuleKernel kernel;
    json config;
};

struct TwoPhaseFlags {
    int n_block = 4;
    std::string eps1 = "1/4", eps2 = "1/2", delta = "1/8";
    std::string eps;  // when set, the solver derives the other three
    TwoPhaseParams params() const {
        if (!eps.empty()) return exploration_params(n_block, parse_rat(eps));
        TwoPhaseParams p;
        p.n_block = n_block;
        p.eps1 = parse_rat(eps1);
        p.eps2 = parse_rat(eps2);
        p.delta = parse_rat(delta);
        p.validate();
        return p;
    }
};

RuleChoice resolve_rule(const std::string& spec, const TwoPhaseFlags& tp, int n_code) {
    RuleChoice rc;
    rc.config["rule"] = spec;
    if (spec == "simpleca") {
        rc.kernel = rule_from_family(canonicalize_family({NeighborSet::of({{0, 1}, {1, 1}})}));
        return rc;
    }
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "family") {
        rc.kernel = rule_from_family(family_from_json(read_file(arg)));
        return rc;
    }
    if (kind == "twophase") {
        TwoPhaseParams p = tp.params();
        rc.config["n_block"] = p.n_block;
        rc.config["eps1"] = p.eps1.str();
        rc.config["eps2"] = p.eps2.str();
        rc.config["delta"] = p.delta.str();
        if (arg == "f") rc.kernel = f_kernel(p);
        else if (arg == "g") rc.kernel = g_kernel(p);
        else if (arg == "h") rc.kernel = h_kernel(p);
        else if (arg == "gprime") rc.kernel = gprime_kernel(p);
        else fail(Err::ParseError, "unknown twophase rule: " + arg);
        return rc;
    }
    if (kind == "ft") {
        CompiledFT ft = compile_tm(tm_from_json(read_file(arg)));
        rc.kernel = ft.kernel;
        return rc;
    }
    if (kind == "gt") {
        CompiledFT ft = compile_tm(tm_from_json(read_file(arg)));
        BlockCode code = BlockCode::for_alphabet(ft.alphabet, n_code);
        rc.config["n_code"] = n_code;
        rc.kernel = gt_kernel(code, ft);
        return rc;
    }
    fail(Err::ParseError, "unknown rule: " + spec);
}

std::vector<Rat> parse_grid(const std::string& s) {
    std::vector<Rat> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(parse_rat(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    require(!out.empty(), Err::ParseError, "empty probability grid");
    for (const Rat& p : out)
        require(Rat(0) <= p && p <= Rat(1), Err::ParseError, "probability outside [0,1]");
    return out;
}

Boundary parse_boundary(const std::string& s) {
    if (s == "zero") return Boundary::Zero;
    if (s == "one") return Boundary::One;
    if (s == "periodic") return Boundary::Periodic;
    fail(Err::ParseError, "boundary must be zero, one or periodic");
}

json base_config(const Global& g) {
    // thread count is scheduling only and deliberately left out: outputs are
    // byte-identical for any value
    return json{{"seed", g.seed}, {"version", kVersion}};
}

int cmd_classify(const Global& g, const std::string& family_path, const std::string& obstacle_pbm) {
    NeighborFamily e = family_from_json(read_file(family_path));
    Criticality c = classify(e);
    if (!obstacle_pbm.empty() && c.obstacle) {
        // the punched all-one configuration, with margin, ready for simulate
        int64_t maxc = 0;
        for (auto& z : *c.obstacle) maxc = std::max({maxc, z.x, z.y});
        int margin = 4, side = static_cast<int>(maxc) + 1 + 2 * margin;
        Window w(side, side, Boundary::One, 2, 1);
        for (auto& z : *c.obstacle)
            w.set(static_cast<int>(z.x) + margin, static_cast<int>(z.y) + margin, 0);
        write_file(obstacle_pbm, to_pbm(w, false));
    }
    json j;
    j["config"] = base_config(g);
    j["config"]["family"] = json::parse(family_to_json(e));
    j["tag"] = to_string(c.tag);
    j["stable_arcs"] = arcset_json(c.stable_set);
    j["strongly_stable_arcs"] = arcset_json(c.strongly_stable_set);
    if (c.obstacle) {
        json cells = json::array();
        for (const IntVec2& z : *c.obstacle) cells.push_back({z.x, z.y});
        j["witness"] = {{"kind", "obstacle"}, {"cells", cells}};
    } else if (c.uncovered_arc) {
        j["witness"] = {{"kind", "stable_free_arc"},
                        {"start", {c.uncovered_arc->start.v.x, c.uncovered_arc->start.v.y}},
                        {"end", {c.uncovered_arc->end.v.x, c.uncovered_arc->end.v.y}}};
    } else {
        j["witness"] = nullptr;
    }
    emit(g, j.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const Global& g, const RuleChoice& rc, const std::string& init, int w, int h,
                 const std::string& boundary, int64_t horizon, int64_t snapshot_every,
                 const std::string& prefix) {
    Window win(w, h, parse_boundary(boundary), rc.kernel.alphabet_size, 0);
    if (init.rfind("bernoulli:", 0) == 0) {
        require(rc.kernel.alphabet_size == 2, Err::InvalidArgument,
                "bernoulli init needs a binary rule");
        win = sample_window({parse_rat(init.substr(10)), g.seed}, w, h, 0, parse_boundary(boundary));
    } else if (init.rfind("pbm:", 0) == 0) {
        win = from_pbm(read_file(init.substr(4)));
        win.set_boundary(parse_boundary(boundary));
    } else if (init.rfind("grid:", 0) == 0) {
        win = state_grid_from_json(read_file(init.substr(5)));
        win.set_boundary(parse_boundary(boundary));
    } else {
        fail(Err::ParseError, "init must be bernoulli:<p>, pbm:<path> or grid:<path>");
    }
    require(win.alphabet_size() == rc.kernel.alphabet_size, Err::AlphabetMismatch,
            "window alphabet does not match the rule");

    bool binary = rc.kernel.alphabet_size == 2;
    bool use_pbm = g.format.empty() ? binary : g.format == "pbm";
    auto snap = [&](const Window& x, int64_t t) {
        if (prefix.empty()) return;
        char name[64];
        std::snprintf(name, sizeof name, "%08lld", static_cast<long long>(t));
        if (use_pbm && binary)
            write_file(prefix + name + ".pbm", to_pbm(x, true));
        else {
            std::vector<std::string> names;
            for (int i = 0; i < x.alphabet_size(); ++i) names.push_back(std::to_string(i));
            write_file(prefix + name + ".json", state_grid_to_json(x, names));
        }
    };

    RunReport total;
    Window cur = win;
    snap(cur, 0);
    int64_t t = 0;
    bool fixed = false;
    while (t < horizon && !fixed) {
        int64_t chunk = snapshot_every > 0 ? std::min(snapshot_every, horizon - t) : horizon - t;
        auto [next, rep] = run_until_fixed(std::move(cur), rc.kernel, chunk);
        cur = std::move(next);
        t += static_cast<int64_t>(rep.changed_cells_per_step.size());
        for (int64_t c : rep.changed_cells_per_step) total.changed_cells_per_step.push_back(c);
        total.steps_taken += rep.steps_taken;
        fixed = rep.fixed;
        snap(cur, t);
    }
    total.fixed = fixed;

    json j;
    j["config"] = base_config(g);
    j["config"]["rule"] = rc.config;
    j["config"]["init"] = init;
    j["config"]["width"] = w;
    j["config"]["height"] = h;
    j["config"]["boundary"] = boundary;
    j["config"]["horizon"] = horizon;
    j["steps_taken"] = total.steps_taken;
    j["fixed"] = total.fixed;
    j["changed_cells_per_step"] = total.changed_cells_per_step;
    j["final_maximal_fraction"] =
        static_cast<double>(cur.count_state(rc.kernel.max_state)) / (static_cast<double>(w) * h);
    if (win.exact_margin() < cur.exact_margin())
        j["exactness_note"] = "cells closer than " + std::to_string(cur.exact_margin()) +
                              " to the border no longer track the infinite lattice";
    emit(g, j.dump(2) + "\n");
    return 0;
}

int cmd_scan(const Global& g, const RuleChoice& rc, const std::string& grid, int w, int h,
             int64_t horizon, int64_t trials, bool exploratory) {
    std::vector<Rat> ps = parse_grid(grid);
    ScanResult r = fixation_scan(rc.kernel, ps, w, h, horizon, trials, g.seed, g.threads);
    if (g.format == "csv" || g.format.empty()) {
        emit(g, scan_to_csv(r));
        return 0;
    }
    json j;
    j["config"] = base_config(g);
    j["config"]["rule"] = rc.config;
    j["config"]["p_grid"] = grid;
    j["config"]["width"] = w;
    j["config"]["height"] = h;
    j["config"]["horizon"] = horizon;
    j["config"]["trials"] = trials;
    j["metadata"] = {{"boundary", r.meta.boundary},
                     {"caveat", r.meta.caveat},
                     {"seed", r.meta.seed},
                     {"exploratory", exploratory}};
    json rows = json::array();
    for (const ScanRow& row : r.rows)
        rows.push_back({{"p", row.p.str()},
                        {"trials", row.trials},
                        {"estimate", row.estimate},
                        {"ci_low", row.ci_low},
                        {"ci_high", row.ci_high}});
    j["rows"] = rows;
    emit(g, j.dump(2) + "\n");
    return 0;
}

int cmd_tmca(const Global& g, const std::string& mode, const std::string& tm_path, int64_t budget,
             int contexts, int64_t steps, bool sweep) {
    TMSpec tm = tm_from_json(read_file(tm_path));
    if (sweep) tm = with_right_sweep(tm);
    CompiledFT ft = compile_tm(tm);
    json j;
    j["config"] = base_config(g);
    j["config"]["tm"] = tm_path;
    j["config"]["mode"] = mode;
    j["config"]["right_sweep"] = sweep;

    if (mode == "build") {
        j["alphabet"] = ft.alphabet.names(tm);
        j["alphabet_size"] = ft.alphabet.size();
        j["valid_patterns"] = ft.valid2x2->size();
        j["radius"] = ft.kernel.radius;
        emit(g, j.dump(2) + "\n");
        return 0;
    }
    if (mode == "obstacle") {
        Window obs = halting_obstacle(ft, budget);
        emit(g, state_grid_to_json(obs, ft.alphabet.names(tm)) + "\n");
        return 0;
    }
    if (mode == "verify") {
        Window obs = halting_obstacle(ft, budget);
        int64_t checked = 0;
        for (int ctx = 0; ctx < contexts; ++ctx) {
            Window big(obs.width() + 12, obs.height() + 12, Boundary::One,
                       static_cast<uint8_t>(ft.alphabet.size()), ft.alphabet.m());
            for (int y = 0; y < big.height(); ++y)
                for (int x = 0; x < big.width(); ++x)
                    big.set(x, y, static_cast<uint8_t>(
                                      cell_hash(g.seed, x, y, static_cast<uint64_t>(ctx)) %
                                      ft.alphabet.size()));
            for (int y = 0; y < obs.height(); ++y)
                for (int x = 0; x < obs.width(); ++x) big.set(6 + x, 6 + y, obs.get(x, y));
            Window cur = big;
            for (int64_t s = 0; s < steps; ++s) cur = step(cur, ft.kernel);
            for (int y = 0; y < obs.height(); ++y)
                for (int x = 0; x < obs.width(); ++x)
                    require(cur.get(6 + x, 6 + y) == obs.get(x, y), Err::ObstacleVerificationFailed,
                            "obstacle cell changed during verification");
            ++checked;
        }
        j["contexts_checked"] = checked;
        j["steps_per_context"] = steps;
        j["obstacle_cells"] = obs.width() * obs.height();
        j["result"] = "fixed";
        emit(g, j.dump(2) + "\n");
        return 0;
    }
    fail(Err::ParseError, "tmca mode must be build, obstacle or verify");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"freezing cellular automata toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--seed", g.seed, "base seed for all randomness");
    app.add_option("--threads", g.threads, "worker threads (scheduling only; output-invariant)");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "output format: json, csv or pbm (command-specific default)");

    TwoPhaseFlags tp;
    app.add_option("--n-block", tp.n_block, "two-phase block side");
    app.add_option("--eps1", tp.eps1, "two-phase lower density");
    app.add_option("--eps2", tp.eps2, "two-phase upper density");
    app.add_option("--delta", tp.delta, "two-phase density half-width");
    app.add_option("--eps", tp.eps, "exploration solver: derive densities from one target");
    int n_code = 7;
    app.add_option("--n-code", n_code, "block side for the binary encoding");

    auto* c_classify = app.add_subcommand("classify", "criticality of a neighbor family");
    c_classify->fallthrough();
    std::string family_path, obstacle_pbm;
    c_classify->add_option("--family", family_path, "family JSON file")->required();
    c_classify->add_option("--obstacle-pbm", obstacle_pbm,
                           "also write the obstacle as a PBM window when one exists");

    auto* c_sim = app.add_subcommand("simulate", "run a rule on a window with snapshots");
    c_sim->fallthrough();
    std::string rule = "simpleca", init = "bernoulli:1/2", boundary = "periodic", prefix;
    int w = 128, h = 128;
    int64_t horizon = -1, snapshot_every = 0, trials = 200;
    c_sim->add_option("--rule", rule, "rule reference");
    c_sim->add_option("--init", init, "bernoulli:<p>, pbm:<path> or grid:<path>");
    c_sim->add_option("--width", w);
    c_sim->add_option("--height", h);
    c_sim->add_option("--boundary", boundary, "zero, one or periodic");
    c_sim->add_option("--horizon", horizon, "max steps (default width*height)");
    c_sim->add_option("--snapshot-every", snapshot_every, "snapshot period (0: ends only)");
    c_sim->add_option("--snapshot-prefix", prefix, "path prefix for snapshot files");

    auto* c_scan = app.add_subcommand("scan", "fixation probability over a p grid");
    c_scan->fallthrough();
    std::string grid = "1/10,2/10,3/10,4/10,5/10,6/10,7/10,8/10,9/10";
    bool exploratory = false;
    c_scan->add_option("--rule", rule, "rule reference");
    c_scan->add_option("--p-grid", grid, "comma-separated probabilities");
    c_scan->add_option("--width", w);
    c_scan->add_option("--height", h);
    c_scan->add_option("--horizon", horizon);
    c_scan->add_option("--trials", trials);
    c_scan->add_flag("--exploratory", exploratory, "label output as non-gating exploration");

    auto* c_tmca = app.add_subcommand("tmca", "machine-reduction builders");
    c_tmca->fallthrough();
    std::string mode = "build", tm_path;
    int64_t budget = 10000, steps = 50;
    int contexts = 20;
    bool sweep = false;
    c_tmca->add_option("mode", mode, "build, obstacle or verify")->required();
    c_tmca->add_option("--tm", tm_path, "machine JSON file")->required();
    c_tmca->add_option("--budget", budget, "halting step budget");
    c_tmca->add_option("--contexts", contexts, "random contexts for verify");
    c_tmca->add_option("--steps", steps, "steps per context for verify");
    c_tmca->add_flag("--right-sweep", sweep, "append the right-sweep normalization gadget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (horizon < 0) horizon = static_cast<int64_t>(w) * h;
        if (c_classify->parsed()) return cmd_classify(g, family_path, obstacle_pbm);
        if (c_sim->parsed()) {
            RuleChoice rc = resolve_rule(rule, tp, n_code);
            return cmd_simulate(g, rc, init, w, h, boundary, horizon, snapshot_every, prefix);
        }
        if (c_scan->parsed()) {
            RuleChoice rc = resolve_rule(rule, tp, n_code);
            return cmd_scan(g, rc, grid, w, h, horizon, trials, exploratory);
        }
        if (c_tmca->parsed()) return cmd_tmca(g, mode, tm_path, budget, contexts, steps, sweep);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Err::BudgetExceeded:
            case Err::ObstacleVerificationFailed:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
