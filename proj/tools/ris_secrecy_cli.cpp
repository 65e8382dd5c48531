// ris-secrecy: command-line driver for the RIS secrecy sweeps.
//
//   ris-secrecy run <config> [--out PATH] [--format csv|json] [--trials T] [--seed S] [--quad-order Q]
//   ris-secrecy preset fig2|fig3|fig4|fig5|fig6 [same options]
//   ris-secrecy selftest
//
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "presets.hpp"
#include "ris_secrecy/errors.hpp"
#include "ris_secrecy/oracles.hpp"
#include "ris_secrecy/secrecy_analysis.hpp"
#include "ris_secrecy/specfun.hpp"
#include "ris_secrecy/sweep.hpp"

namespace {

using namespace ris;

enum Exit { ok = 0, config_failure = 1, numeric_failure = 2, io_failure = 3 };

struct RunOptions {
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> quad_order;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--quad-order", o.quad_order, "Gauss-Chebyshev node count");
}

int run_spec(sweep::SweepSpec spec, const RunOptions& o) {
    if (o.trials) spec.mc.trials = *o.trials;
    if (o.seed) spec.mc.seed = *o.seed;
    if (o.quad_order) spec.numerics.quad_order = *o.quad_order;
    try {
        spec.validate();
    } catch (const invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_failure;
    }

    const sweep::Table table = sweep::run_sweep(spec);
    const auto format = o.format == "json" ? sweep::Format::json : sweep::Format::csv;
    if (o.out.empty()) {
        std::cout << sweep::format_table(table, format) << std::flush;
    } else {
        sweep::emit(table, format, o.out);
    }

    int failed = 0;
    for (const auto& row : table) {
        if (row.error.empty()) continue;
        ++failed;
        std::cerr << "point " << row.axis << "=" << row.axis_value << " " << row.metric
                  << " failed: " << row.error << "\n";
    }
    return failed > 0 ? numeric_failure : ok;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.2f", v);
    return buf;
}

// Oracle-equivalence suite over the N x SNR_D x SNR_E grid.
int selftest() {
    int failures = 0;
    const auto report = [&](bool pass, const std::string& line) {
        std::printf("%s %s\n", pass ? "PASS" : "FAIL", line.c_str());
        if (!pass) ++failures;
    };

    {
        double worst = 0.0;
        for (double s : {0.5, 1.5, 3.0, 10.5}) {
            for (double x : {0.1, 1.0, 4.0, 20.0}) {
                const double sum = specfun::lower_inc_gamma(s, x) + specfun::upper_inc_gamma(s, x);
                worst = std::max(worst, std::abs(sum / std::tgamma(s) - 1.0));
            }
        }
        report(worst < 1e-10, "incomplete gamma additivity, max rel err " + sci(worst));
    }
    {
        double worst = 0.0;
        for (double z : {0.01, 0.5, 1.0, 5.0, 20.0}) {
            const double ref = std::sqrt(2.0 / (M_PI * z)) * std::cosh(z);
            worst = std::max(worst, std::abs(specfun::bessel_i(-0.5, z) / ref - 1.0));
        }
        report(worst < 1e-10, "I_{-1/2} cosh identity, max rel err " + sci(worst));
    }

    secrecy::NumericsConfig numerics;
    numerics.quad_order = 8192;
    mc::McConfig approx;
    approx.trials = 1'000'000;
    approx.seed = 11;
    approx.law = mc::ChannelLaw::approximated;
    mc::McConfig physical = approx;
    physical.trials = 100'000;
    physical.law = mc::ChannelLaw::physical;

    for (int n : {5, 10}) {
        for (double snr_d : {0.0, 10.0, 20.0}) {
            for (double snr_e : {-10.0, 0.0}) {
                channel::SystemParams p;
                p.n_elements = n;
                p.kappa2_d_t = p.kappa2_d_r = p.kappa2_e_t = p.kappa2_e_r = 0.01;
                p.snr_d_db = snr_d;
                p.snr_e_db = snr_e;
                p.c_th = 1.0;
                const auto stats = channel::derive_stats(p);
                char tag[64];
                std::snprintf(tag, sizeof tag, "N=%d snr_d=%g snr_e=%g", n, snr_d, snr_e);

                const double sop = secrecy::sop(p, stats, numerics).value;
                const double asc = secrecy::avg_secrecy_capacity(p, stats, numerics).value;
                const double sop_q = oracle::sop(p);
                const double asc_q = oracle::legitimate_rate(p) - oracle::eavesdropper_rate(p);
                report(std::abs(sop - sop_q) <= 1e-6,
                       std::string(tag) + " sop vs quadrature |d|=" + sci(std::abs(sop - sop_q)));
                report(std::abs(asc - asc_q) <= 1e-6,
                       std::string(tag) + " asc vs quadrature |d|=" + sci(std::abs(asc - asc_q)));

                const auto ms = mc::estimate_sop(p, approx);
                const auto ma = mc::estimate_asc(p, approx);
                report(std::abs(sop - ms.value) <= 3.0 * ms.std_error,
                       std::string(tag) + " sop vs approximated-law MC z=" +
                           fixed2((sop - ms.value) / ms.std_error));
                report(std::abs(asc - ma.value) <= 3.0 * ma.std_error,
                       std::string(tag) + " asc vs approximated-law MC z=" +
                           fixed2((asc - ma.value) / ma.std_error));

                // The signal-level simulator is not gated here: the closed forms rest
                // on a CLT law that differs from it at these N.
                const auto ps = mc::estimate_sop(p, physical);
                const auto pa = mc::estimate_asc(p, physical);
                std::printf("INFO %s signal-level MC: sop %.4e (closed form %.4e) asc z=%.1f\n", tag,
                            ps.value, sop, (asc - pa.value) / pa.std_error);
            }
        }
    }
    std::printf("%s (%d failures)\n", failures == 0 ? "selftest passed" : "selftest failed", failures);
    return failures == 0 ? ok : numeric_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-aided wiretap secrecy metrics with hardware impairments"};
    app.require_subcommand(1);

    RunOptions run_opts;
    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a sweep config");
    run->add_option("config", config_path, "YAML sweep config")->required();
    add_run_options(run, run_opts);

    RunOptions preset_opts;
    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a bundled figure preset");
    std::vector<std::string> names;
    for (const auto& [name, text] : presets::all) names.emplace_back(name);
    preset->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(names));
    add_run_options(preset, preset_opts);

    auto* self = app.add_subcommand("selftest", "Run the oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_failure;
    }

    try {
        if (*run) return run_spec(sweep::load_config(config_path), run_opts);
        if (*preset) {
            for (const auto& [name, text] : presets::all) {
                if (name == preset_name) return run_spec(sweep::parse_config(std::string(text)), preset_opts);
            }
        }
        if (*self) return selftest();
    } catch (const sweep::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_failure;
    } catch (const invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_failure;
    } catch (const sweep::io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io_failure;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numeric_failure;
    }
    return ok;
}
