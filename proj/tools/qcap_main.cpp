// Command-line entry point: quantity computation with certificates, parameter
// and code sweeps, property verification suites, hierarchy reports.
//
// Exit codes: 0 success (compute: converged), 2 solver non-convergence or
// failed verification (output still written), 1 bad input.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcap/channel_bounds.hpp"
#include "qcap/eg_codes.hpp"
#include "qcap/io_json.hpp"
#include "qcap/verify.hpp"
#include "qcap/zoo.hpp"

namespace {

using namespace qcap;

std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("QCAP_SEED")) {
        char* end = nullptr;
        const std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw std::runtime_error("QCAP_SEED is not an integer");
    }
    return flag_seed;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        grid.push_back(std::stod(tok));
    }
    if (grid.empty()) throw std::runtime_error("empty alpha grid");
    return grid;
}

// Channel source flags shared by the subcommands; exactly one of --zoo or
// --channel must be given.
struct ChannelArgs {
    std::string family;
    std::string file;
    int d = 2;
    double p = 0.0, c = 0.0, q = 0.0;
    CLI::Option* od = nullptr;
    CLI::Option* op = nullptr;
    CLI::Option* oc = nullptr;
    CLI::Option* oq = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--zoo", family, "channel family: identity|dephasing|gdephasing|erasure|depolarizing");
        cmd->add_option("--channel", file, "channel JSON file");
        od = cmd->add_option("--d", d, "input dimension (zoo families)");
        op = cmd->add_option("--p", p, "dephasing / erasure probability");
        oc = cmd->add_option("--c", c, "environment overlap (gdephasing)");
        oq = cmd->add_option("--q", q, "depolarizing weight");
    }

    QuantumChannel resolve() const {
        if (family.empty() == file.empty())
            throw std::runtime_error("exactly one of --zoo or --channel is required");
        if (!file.empty()) return load_channel_file(file);
        ChannelFamilySpec spec;
        spec.family = family;
        if (od->count()) spec.params["d"] = d;
        if (op->count()) spec.params["p"] = p;
        if (oc->count()) spec.params["c"] = c;
        if (oq->count()) spec.params["q"] = q;
        return make_from_family(spec);
    }
};

struct SolverArgs {
    int restarts = 8;
    int max_iters = 500;
    double tol = 1e-6;
    int inner_restarts = 4;
    int inner_iters = 5000;
    double inner_tol = 1e-8;
    std::string method = "auto";

    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", restarts, "input-state ascent restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--iters", max_iters, "ascent iteration cap")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", tol, "ascent relative tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--inner-restarts", inner_restarts, "inner solver random restarts")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--inner-iters", inner_iters, "inner solver iteration cap")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--inner-tol", inner_tol, "inner solver relative tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--method", method, "rains evaluation path: auto|general|covariant")
            ->check(CLI::IsMember({"auto", "general", "covariant"}));
    }

    RainsInfoOpts rains_opts(std::uint64_t seed) const {
        RainsInfoOpts o;
        o.ascent.restarts = restarts;
        o.ascent.max_iters = max_iters;
        o.ascent.tol = tol;
        o.ascent.seed = seed;
        o.inner.random_restarts = inner_restarts;
        o.inner.max_iters = inner_iters;
        o.inner.tol = inner_tol;
        o.inner.seed = seed;
        o.probe_inner.seed = seed;
        o.method = method == "general"     ? RainsMethod::general
                   : method == "covariant" ? RainsMethod::covariant
                                           : RainsMethod::automatic;
        return o;
    }

    AscentOpts ascent_opts(std::uint64_t seed) const {
        AscentOpts a;
        a.restarts = restarts;
        a.max_iters = max_iters;
        a.tol = tol;
        a.seed = seed;
        return a;
    }
};

BoundReport compute_quantity(const QuantumChannel& ch, const std::string& quantity,
                             const std::string& alpha_str, const SolverArgs& solver,
                             std::uint64_t seed) {
    if (quantity == "coherent") return coherent_info_channel(ch, solver.ascent_opts(seed));
    if (quantity == "rains" || quantity == "renyi-rains")
        return rains_info_channel(ch, Alpha::parse(alpha_str), solver.rains_opts(seed));
    throw std::runtime_error("unknown quantity " + quantity + " (expected rains|renyi-rains|coherent)");
}

int run_compute(const ChannelArgs& chan, const std::string& quantity, const std::string& alpha_str,
                const SolverArgs& solver, std::uint64_t seed, const std::string& out) {
    const QuantumChannel ch = chan.resolve();
    const BoundReport rep = compute_quantity(ch, quantity, alpha_str, solver, seed);
    emit(out, to_json(rep).dump(2) + "\n");
    return rep.converged ? 0 : 2;
}

int run_sweep(const ChannelArgs& chan, const std::vector<std::string>& quantities,
              const std::string& alpha_str, const std::string& alphas_csv,
              const std::string& code_family, int n_max, const std::string& param, double from,
              double to, int steps, const SolverArgs& solver, std::uint64_t seed,
              const std::string& out) {
    if (!code_family.empty()) {
        const QuantumChannel ch = chan.resolve();
        CodeFamily family;
        if (code_family == "trivial")
            family = trivial_family(ch);
        else if (code_family == "petz")
            family = petz_family(ch);
        else if (code_family == "rate2-identity")
            family = rate2_identity_family();
        else
            throw std::runtime_error("unknown code family " + code_family);
        const double alpha = alpha_str == "limit-1" ? 2.0 : Alpha::parse(alpha_str).value();
        const BoundReport single =
            rains_info_channel(ch, Alpha::of(alpha), solver.rains_opts(seed));
        emit(out, decay_csv(sc_decay_sweep(family, ch, n_max, alpha, single.value)));
        return 0;
    }
    if (!alphas_csv.empty()) {
        const QuantumChannel ch = chan.resolve();
        std::vector<std::vector<double>> rows;
        for (double a : parse_grid(alphas_csv)) {
            const BoundReport r = rains_info_channel(ch, Alpha::of(a), solver.rains_opts(seed));
            rows.push_back({a, r.value});
        }
        emit(out, csv_table({"alpha", "value"}, rows));
        return 0;
    }
    if (param.empty()) throw std::runtime_error("sweep needs --param, --alphas or --code-family");
    if (steps < 1) throw std::runtime_error("--steps must be >= 1");
    if (chan.family.empty()) throw std::runtime_error("parameter sweeps need a --zoo family");
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < steps; ++i) {
        const double value = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        ChannelFamilySpec spec;
        spec.family = chan.family;
        if (chan.od->count()) spec.params["d"] = chan.d;
        if (chan.op->count()) spec.params["p"] = chan.p;
        if (chan.oc->count()) spec.params["c"] = chan.c;
        if (chan.oq->count()) spec.params["q"] = chan.q;
        spec.params[param] = value;
        const QuantumChannel ch = make_from_family(spec);
        std::vector<double> row = {value};
        for (const std::string& q : quantities)
            row.push_back(compute_quantity(ch, q, alpha_str, solver, seed).value);
        rows.push_back(std::move(row));
    }
    std::vector<std::string> columns = {param};
    columns.insert(columns.end(), quantities.begin(), quantities.end());
    emit(out, csv_table(columns, rows));
    return 0;
}

int run_verify(const std::string& suite, int samples, std::uint64_t seed, const std::string& out) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    const std::vector<SuiteReport> reports = run_suites(suite, cfg);
    json j;
    j["schema"] = 1;
    json arr = json::array();
    bool pass = true;
    for (const SuiteReport& r : reports) {
        pass = pass && r.pass;
        arr.push_back(to_json(r));
    }
    j["suites"] = std::move(arr);
    j["pass"] = pass;
    emit(out, j.dump(2) + "\n");
    return pass ? 0 : 2;
}

int run_hierarchy(const ChannelArgs& chan, const std::string& alphas_csv, bool two_copy,
                  const SolverArgs& solver, std::uint64_t seed, const std::string& out) {
    const QuantumChannel ch = chan.resolve();
    const HierarchyReport h = hierarchy_report(ch, parse_grid(alphas_csv), solver.rains_opts(seed),
                                               two_copy, solver.ascent_opts(seed));
    emit(out, to_json(h).dump(2) + "\n");
    return h.consistent ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-converse channel capacity bounds toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string out;
    std::string quantity = "rains";
    std::string alpha_str = "limit-1";

    CLI::App* compute = app.add_subcommand("compute", "compute one quantity with certificates");
    ChannelArgs compute_chan;
    SolverArgs compute_solver;
    compute_chan.attach(compute);
    compute_solver.attach(compute);
    compute->add_option("--quantity", quantity, "rains|renyi-rains|coherent");
    compute->add_option("--alpha", alpha_str, "limit-1 or a real > 1");
    compute->add_option("--seed", seed, "base seed (QCAP_SEED overrides)");
    compute->add_option("--out", out, "output path (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "parameter, alpha or code-length sweeps (CSV)");
    ChannelArgs sweep_chan;
    SolverArgs sweep_solver;
    sweep_chan.attach(sweep);
    sweep_solver.attach(sweep);
    std::vector<std::string> quantities = {"rains"};
    std::string param, alphas_csv, code_family;
    double from = 0.0, to = 1.0;
    int steps = 1, n_max = 3;
    sweep->add_option("--quantity", quantities, "quantity columns (repeatable)");
    sweep->add_option("--alpha", alpha_str, "alpha for rains columns / code bounds");
    sweep->add_option("--param", param, "zoo parameter to sweep (p|c|q)");
    sweep->add_option("--from", from, "sweep start");
    sweep->add_option("--to", to, "sweep end");
    sweep->add_option("--steps", steps, "grid points");
    sweep->add_option("--alphas", alphas_csv, "comma list: sweep alpha instead of a parameter");
    sweep->add_option("--code-family", code_family, "trivial|petz|rate2-identity");
    sweep->add_option("--n-max", n_max, "channel uses for code sweeps");
    sweep->add_option("--seed", seed, "base seed (QCAP_SEED overrides)");
    sweep->add_option("--out", out, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run property suites");
    std::string suite = "all";
    int samples = 0;
    verify->add_option("--suite", suite, "suite name or all");
    verify->add_option("--samples", samples, "override per-check sample counts")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", seed, "base seed (QCAP_SEED overrides)");
    verify->add_option("--out", out, "output path (default stdout)");

    CLI::App* hierarchy = app.add_subcommand("hierarchy", "coherent info vs Rains quantities");
    ChannelArgs hier_chan;
    SolverArgs hier_solver;
    hier_chan.attach(hierarchy);
    hier_solver.attach(hierarchy);
    std::string hier_alphas = "1.5,2";
    bool two_copy = false;
    hierarchy->add_option("--alphas", hier_alphas, "comma list of alpha grid points");
    hierarchy->add_flag("--two-copy", two_copy, "include the two-copy rate in the l grid");
    hierarchy->add_option("--seed", seed, "base seed (QCAP_SEED overrides)");
    hierarchy->add_option("--out", out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::uint64_t s = resolve_seed(seed);
        if (compute->parsed())
            return run_compute(compute_chan, quantity, alpha_str, compute_solver, s, out);
        if (sweep->parsed())
            return run_sweep(sweep_chan, quantities, alpha_str, alphas_csv, code_family, n_max,
                             param, from, to, steps, sweep_solver, s, out);
        if (verify->parsed()) return run_verify(suite, samples, s, out);
        if (hierarchy->parsed())
            return run_hierarchy(hier_chan, hier_alphas, two_copy, hier_solver, s, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
