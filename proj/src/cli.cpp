#include "doqf/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "doqf/allocator.hpp"
#include "doqf/csv.hpp"
#include "doqf/dmt.hpp"
#include "doqf/dmt_oracle.hpp"
#include "doqf/error.hpp"
#include "doqf/gain.hpp"
#include "doqf/montecarlo.hpp"

namespace doqf {

namespace {

using std::to_string;

std::string fmt(double x) { return format_double(x); }

unsigned workers_for(const RunConfig& c) { return c.workers ? c.workers : default_workers(); }

CsvTable gain_table(const RunConfig& c) {
    const ProtocolParams p = c.protocol_params();
    const LinkConstants k = c.link_constants();
    const OutageGainResult cs = xi_cs_hd(p, k);
    CsvTable t;
    t.header = {"xi_cs_hd", "term_simo", "term_miso", "xi_doqf", "xi_df", "t0",
                "alpha0",   "alpha1",    "c01",       "c02",     "c12"};
    t.rows.push_back({fmt(cs.xi), fmt(cs.term_simo), fmt(cs.term_miso), fmt(cs.xi), fmt(xi_df(p, k)), fmt(p.t0),
                      fmt(p.alpha0), fmt(p.alpha1), fmt(k.c01), fmt(k.c02), fmt(k.c12)});
    return t;
}

CsvTable optimize_table(const RunConfig& c) {
    const LinkConstants k = c.link_constants();
    const double rate = c.rate_nats();
    const ProtocolParams start = c.protocol_params();
    AllocatorOptions opts;
    opts.t1_start = start.t1();
    opts.beta0_start = start.beta0();
    const AllocationResult a = minimize_outage_gain(k, rate, opts);
    CsvTable t;
    t.header = {"t1_star", "beta0_star", "beta1_star", "xi_star", "grad_norm", "iterations", "xi_start"};
    t.rows.push_back({fmt(a.t1_star), fmt(a.beta0_star), fmt(a.beta1_star), fmt(a.xi_star), fmt(a.grad_norm),
                      to_string(a.iterations), fmt(xi_cs_hd(start, k).xi)});
    return t;
}

CsvTable simulate_table(const RunConfig& c) {
    SimConfig sim;
    sim.params = c.protocol_params();
    sim.models = c.link_models();
    sim.delta_exponent = c.delta_exp;
    sim.n_samples = c.samples;
    sim.seed = c.seed;
    std::vector<Protocol> protocols;
    if (c.protocol == "all")
        protocols = {Protocol::cutset, Protocol::doqf, Protocol::df};
    else
        protocols = {protocol_from_string(c.protocol)};

    CsvTable t;
    t.header = {"snr_db", "protocol", "n_samples", "p_hat",   "ci_low",  "ci_high",
                "rho2_phat", "xi_ref", "branch1", "branch2", "branch3", "branch4"};
    const unsigned workers = workers_for(c);
    for (Protocol p : protocols) {
        for (const SweepRow& row : snr_sweep(sim, p, c.snr_db, workers)) {
            const auto& e = row.estimate;
            t.rows.push_back({fmt(row.snr_db), to_string(p), to_string(e.n_samples), fmt(e.p_hat), fmt(e.ci_low),
                              fmt(e.ci_high), fmt(row.rho2_phat), fmt(row.xi_ref), to_string(e.branch_counts[0]),
                              to_string(e.branch_counts[1]), to_string(e.branch_counts[2]),
                              to_string(e.branch_counts[3])});
        }
    }
    return t;
}

CsvTable dmt_table(const RunConfig& c) {
    CsvTable t;
    t.header = {"r", "d_doqf", "d_df", "d_miso", "t0_star", "delta_star"};
    for (double r : c.r_grid) {
        const auto s = dmt::dmt_doqf_star(r);
        t.rows.push_back({fmt(r), fmt(s.d), fmt(dmt::dmt_df_star(r).d), fmt(dmt::miso_bound(r)), fmt(s.t0_star),
                          fmt(s.delta_star)});
    }
    return t;
}

CsvTable dmt_verify_table(const RunConfig& c) {
    CsvTable t;
    t.header = {"r", "d_analytic", "d_oracle", "abs_error", "t0_star_analytic", "t0_best_oracle"};
    const unsigned workers = workers_for(c);
    for (double r : c.r_grid) {
        const auto s = dmt::dmt_doqf_star(r);
        const auto o = dmt::sup_refined(r, c.grid_step, dmt::SupMode::oracle, workers);
        t.rows.push_back({fmt(r), fmt(s.d), fmt(o.d_best), fmt(std::abs(o.d_best - s.d)), fmt(s.t0_star),
                          fmt(o.t0_best)});
    }
    return t;
}

}  // namespace

std::string render(const RunConfig& c) {
    switch (c.command) {
        case Command::gain: return to_csv(gain_table(c));
        case Command::optimize: return to_csv(optimize_table(c));
        case Command::simulate: return to_csv(simulate_table(c));
        case Command::dmt: return to_csv(dmt_table(c));
        case Command::dmt_verify: return to_csv(dmt_verify_table(c));
    }
    throw InvalidArgument("unknown command");
}

void run(const RunConfig& c, std::ostream& out) {
    const std::string text = render(c);
    if (c.out)
        write_file_atomic(*c.out, text);
    else
        out << text;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Outage and diversity analysis of decode-or-quantize-and-forward relaying", "doqf"};
    app.require_subcommand(1);

    Settings values;
    std::map<std::string, CLI::Option*> flags;
    const std::map<std::string, std::string> help{
        {"rate-bits", "target rate in bits per channel use"},
        {"t0", "first slot fraction"},
        {"beta0", "source energy share"},
        {"beta1", "relay energy share (alpha1 * t1)"},
        {"alpha0", "source power, first slot"},
        {"alpha1", "relay power, second slot"},
        {"geometry", "d01,d12,d02 distances"},
        {"exponent", "path-loss exponent"},
        {"channel", "rayleigh or rice"},
        {"rice-mean", "line-of-sight magnitude for rice"},
        {"snr-db", "start:stop:step in dB"},
        {"samples", "Monte Carlo draws per point"},
        {"seed", "RNG seed"},
        {"delta-exp", "quantization distortion exponent"},
        {"r-grid", "multiplexing gain grid start:stop:step"},
        {"grid-step", "oracle inner grid step"},
        {"out", "write CSV here instead of stdout"},
        {"protocol", "cutset, doqf, df or all"},
    };
    for (const std::string& key : known_keys()) {
        auto it = help.find(key);
        flags[key] = app.add_option("--" + key, values[key], it == help.end() ? "" : it->second);
    }
    std::string config_path;
    app.add_option("--config", config_path, "key=value settings file");

    std::map<std::string, CLI::App*> subs;
    const std::pair<const char*, const char*> commands[]{
        {"gain", "closed-form outage gains"},
        {"optimize", "minimize the outage gain over slot and power split"},
        {"simulate", "Monte Carlo outage sweep over SNR"},
        {"dmt", "diversity-multiplexing tradeoff curves"},
        {"dmt-verify", "compare the closed-form tradeoff with the grid oracle"},
    };
    for (const auto& [name, what] : commands)
        subs[name] = app.add_subcommand(name, what)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        Settings cli;
        for (const auto& [key, opt] : flags)
            if (opt->count() > 0) cli[key] = values[key];
        const Settings file = config_path.empty() ? Settings{} : read_config_file(config_path);
        std::string name;
        for (const auto& [n, sub] : subs)
            if (sub->parsed()) name = n;
        RunConfig config = resolve_run_config(command_from_string(name), cli, file);
        run(config, out);
        return 0;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace doqf
