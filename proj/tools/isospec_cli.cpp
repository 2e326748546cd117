#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isospec/certify.hpp"
#include "isospec/common.hpp"
#include "isospec/jmaps.hpp"
#include "isospec/mat.hpp"
#include "isospec/serialize.hpp"

namespace {

// "--mu 1,0;0,1;1,1;2,-1" -> list of dual weights.
std::vector<isospec::DualWeight> parse_mu_list(const std::string& text) {
    std::vector<isospec::DualWeight> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int a = 0, b = 0;
        char extra = 0;
        if (std::sscanf(item.c_str(), "%d,%d%c", &a, &b, &extra) != 2)
            throw isospec::ConfigError("bad --mu entry '" + item + "', expected 'm1,m2'");
        out.push_back(isospec::DualWeight{a, b});
    }
    if (out.empty()) throw isospec::ConfigError("--mu parsed to an empty list");
    return out;
}

void print_check_line(const isospec::CheckResult& c) {
    std::printf("[%-7s] %-36s residual=%-12.3e tolerance=%-12.3e samples=%d\n",
                isospec::check_status_name(c.status).c_str(), c.id.c_str(), c.residual,
                c.tolerance, c.samples);
    if (!c.notes.empty()) std::printf("          %s\n", c.notes.c_str());
}

int run_certify(const std::string& config_path, const CLI::App* cmd, double t, double tprime,
                int n, const std::string& mu, int samples, std::uint64_t seed, bool heatprobe,
                int mc_samples, std::string out, const std::string& dump_curvature) {
    isospec::CertifyConfig cfg;
    if (!config_path.empty()) {
        const auto j = isospec::load_json_file(config_path);
        cfg = isospec::config_from_json(j);
        if (out.empty() && j.contains("out")) out = j["out"].get<std::string>();
    }
    // Explicit flags win over the config file.
    if (cmd->count("--t")) cfg.t = t;
    if (cmd->count("--tprime")) cfg.tprime = tprime;
    if (cmd->count("--n")) cfg.n = n;
    if (cmd->count("--mu")) cfg.mu = parse_mu_list(mu);
    if (cmd->count("--samples")) cfg.samples = samples;
    if (cmd->count("--seed")) cfg.seed = seed;
    if (cmd->count("--heatprobe")) cfg.heatprobe = heatprobe;
    if (cmd->count("--mc-samples")) cfg.mc_samples = mc_samples;
    if (cmd->count("--dump-curvature")) cfg.dump_curvature = dump_curvature;
    isospec::validate_config(cfg);

    const isospec::Certificate cert = isospec::run_certification(cfg);
    for (const auto& c : cert.checks) print_check_line(c);
    std::printf("verdict: %s\n", cert.pass ? "pass" : "fail");
    if (!cert.notes.empty()) std::printf("note: %s\n", cert.notes.c_str());
    const int code = isospec::emit_report(cert, out);
    if (!out.empty()) std::printf("certificate written to %s\n", out.c_str());
    return code;
}

int run_jmap_verify(const std::string& path, int z_samples) {
    const isospec::JMapPair pair = isospec::jmap_from_json(isospec::load_json_file(path));
    std::printf("loaded pair: m=%d (su(%d) generators validated)\n", pair.m(), pair.m());

    bool ok = true;

    double worst_su = 0.0;
    for (int k = 0; k < z_samples; ++k) {
        const double th = 3.14159265358979312 * k / z_samples;
        const isospec::CMatrix M = pair.evaluate(isospec::ZVector{std::cos(th), std::sin(th)});
        worst_su = std::max(worst_su, (M + M.adjoint()).cwiseAbs().maxCoeff());
        worst_su = std::max(worst_su, std::abs(M.trace()));
    }
    const bool su_ok = worst_su <= 1e-12;
    ok = ok && su_ok;
    std::printf("[%s] su-membership of j(Z) on %d samples, residual=%.3e\n",
                su_ok ? "pass" : "fail", z_samples, worst_su);

    try {
        const double obstruction = isospec::equivalence_obstruction(pair);
        std::printf("[pass] trace obstruction real, value=%.17g\n", obstruction);
    } catch (const isospec::NumericalError& e) {
        ok = false;
        std::printf("[fail] trace obstruction: %s\n", e.what());
    }

    const int cdim = isospec::commutant_dimension(pair.jZ1(), pair.jZ2());
    std::printf("[info] commutant dimension %d (%s)\n", cdim,
                cdim == 0 ? "generic" : "not generic");

    for (int k = 1; k <= 2; ++k) {
        const isospec::ZVector Z = k == 1 ? isospec::ZVector{1.0, 0.0} : isospec::ZVector{0.0, 1.0};
        const auto eigs = isospec::eigenvalue_multiset(pair.evaluate(Z));
        std::printf("[info] spectrum of jZ%d:", k);
        for (const auto& ev : eigs) std::printf(" %+.6g%+.6gi", ev.real(), ev.imag());
        std::printf("\n");
    }

    std::printf("verdict: %s\n", ok ? "pass" : "fail");
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for the isospectral torus-deformed metric family"};
    app.require_subcommand(1);

    // certify ----------------------------------------------------------------
    auto* certify = app.add_subcommand("certify", "run every hypothesis check, emit a certificate");
    double t = 1.5707963267948966, tprime = 0.7853981633974483;
    int n = 4, samples = 100, mc_samples = 20000;
    std::uint64_t seed = 42;
    bool heatprobe = false;
    std::string mu = "1,0;0,1;1,1;2,-1";
    std::string out, dump_curvature, config_path;
    certify->add_option("--t", t, "first family parameter (radians)");
    certify->add_option("--tprime", tprime, "second family parameter (radians)");
    certify->add_option("--n", n, "projective dimension; the sphere is S^(2n+1)");
    certify->add_option("--mu", mu, "semicolon-separated dual weights, e.g. \"1,0;0,1\"");
    certify->add_option("--samples", samples, "random draws per check");
    certify->add_option("--seed", seed, "base RNG seed");
    certify->add_flag("--heatprobe", heatprobe, "run the Monte Carlo curvature probe");
    certify->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
    certify->add_option("--out", out, "certificate JSON path");
    certify->add_option("--dump-curvature", dump_curvature, "CSV path for curvature samples");
    certify->add_option("--config", config_path, "JSON config file (flags override it)");

    // jmap verify --------------------------------------------------------------
    auto* jmap = app.add_subcommand("jmap", "operations on serialized j-map pairs");
    jmap->require_subcommand(1);
    auto* verify = jmap->add_subcommand("verify", "validate a pair file, run its invariant suite");
    std::string pair_path;
    int z_samples = 64;
    verify->add_option("pair", pair_path, "pair JSON file")->required();
    verify->add_option("--z-samples", z_samples, "Z samples for the su-membership sweep");

    // family emit ---------------------------------------------------------------
    auto* family = app.add_subcommand("family", "operations on the built-in family");
    family->require_subcommand(1);
    auto* emit = family->add_subcommand("emit", "write the j-map pair at parameter t");
    double emit_t = 1.5707963267948966;
    std::string emit_out;
    emit->add_option("--t", emit_t, "family parameter (radians)");
    emit->add_option("--out", emit_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (certify->parsed())
            return run_certify(config_path, certify, t, tprime, n, mu, samples, seed, heatprobe,
                               mc_samples, out, dump_curvature);
        if (verify->parsed()) return run_jmap_verify(pair_path, z_samples);
        if (emit->parsed()) {
            const auto j = isospec::jmap_to_json(isospec::schueth_family(emit_t));
            if (emit_out.empty())
                std::cout << j.dump(2) << "\n";
            else
                isospec::save_json_file(emit_out, j);
            return 0;
        }
    } catch (const isospec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 3;
}
