// jfx: norms of James-type function spaces, X-variation of paths, and
// density-constrained block-sum (CCP) experiments, from the command line.
//
// Subcommands:
//   norm <input.json>   norm certificate for a step/grid function
//   var <path.csv>      X-variation certificate for a piecewise-linear path,
//                       with optional --modulus / --split sub-reports
//   ccp                 CCP experiments: --levels/--sizes instance value,
//                       --schedule growth table, --rademacher prefix norms
//   verify <suite>      self-check suites (symnorm jfnorm variation ccp all)
//
// Exit codes: 0 = success with an exact certificate, 2 = success with a
// lower-bound certificate, 1 = any error.  With a fixed input, configuration,
// and seed the output is byte-identical across runs; wall-clock timing is
// reported only behind --timings so the default output stays reproducible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "jfx/ccp.hpp"
#include "jfx/jf_norm.hpp"
#include "jfx/json_io.hpp"
#include "jfx/variation.hpp"
#include "jfx/verify.hpp"

namespace {

struct Options {
    std::string space = "lp:2";
    std::string mode = "exact";
    std::size_t limit_breakpoints = 22;
    std::size_t limit_cells = 9;
    std::uint64_t limit_nodes = 4'000'000;
    std::uint64_t seed = 12345;
    std::string out = "json";
    bool timings = false;
};

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--space", opt.space,
                    "Sequence space descriptor: lp:<p> or lorentz:p=<p>,w=harmonic|<list>")
        ->capture_default_str();
    cmd->add_option("--mode", opt.mode,
                    "exact: fail rather than report a non-exhausted search; "
                    "bounded: degrade to a certified lower bound")
        ->check(CLI::IsMember({"exact", "bounded"}))
        ->capture_default_str();
    cmd->add_option("--limit-breakpoints", opt.limit_breakpoints,
                    "Exhaustive-search cap on one-dimensional cells")
        ->capture_default_str();
    cmd->add_option("--limit-cells", opt.limit_cells,
                    "Exhaustive-search cap on grid cells (d >= 2)")
        ->capture_default_str();
    cmd->add_option("--limit-nodes", opt.limit_nodes, "Branch-and-bound node budget")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Seed for randomized suites")->capture_default_str();
    cmd->add_option("--out", opt.out, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_flag("--timings", opt.timings,
                  "Report real elapsed milliseconds (off by default so output is "
                  "byte-identical for a fixed input and seed)");
}

jfx::SearchLimits to_limits(const Options& opt) {
    jfx::SearchLimits limits;
    limits.exhaustive_max_cells = opt.limit_breakpoints;
    limits.grid_exact_max_cells = opt.limit_cells;
    limits.node_budget = opt.limit_nodes;
    limits.allow_lower_bound = opt.mode == "bounded";
    return limits;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Shortest round-trip decimal form, identical to the JSON rendering.
std::string fmt(double x) { return jfx::json(x).dump(); }

int exit_code_for(jfx::CertMode mode) { return mode == jfx::CertMode::exact ? 0 : 2; }

std::string family_csv(const jfx::NormCertificate& cert) {
    std::string s;
    if (!cert.partition_points.empty()) {
        for (size_t i = 0; i < cert.partition_points.size(); ++i) {
            if (i)
                s += ';';
            s += jfx::to_string(cert.partition_points[i]);
        }
        return s;
    }
    for (size_t b = 0; b < cert.boxes.size(); ++b) {
        if (b)
            s += '|';
        for (size_t a = 0; a < cert.boxes[b].lo.size(); ++a)
            s += jfx::to_string(cert.boxes[b].lo[a]) + ' ';
        for (size_t a = 0; a < cert.boxes[b].hi.size(); ++a) {
            s += jfx::to_string(cert.boxes[b].hi[a]);
            if (a + 1 < cert.boxes[b].hi.size())
                s += ' ';
        }
    }
    return s;
}

int run_norm(const std::string& input_path, const Options& opt) {
    const auto space = jfx::parse_space(opt.space);
    const jfx::json j = jfx::json::parse(read_input(input_path));
    const jfx::AnyFunction f = jfx::function_from_json(j);
    jfx::NormCertificate cert =
        std::holds_alternative<jfx::StepFunction1D>(f)
            ? jfx::norm1d(space, std::get<jfx::StepFunction1D>(f), to_limits(opt))
            : jfx::norm_grid(space, std::get<jfx::GridFunction>(f), to_limits(opt));
    if (!opt.timings)
        cert.stats.elapsed_ms = 0;
    if (opt.out == "json") {
        std::cout << jfx::to_json(cert).dump(2) << "\n";
    } else {
        std::cout << "value,mode,nodes,elapsed_ms,family\n"
                  << fmt(cert.value) << ',' << jfx::to_string(cert.mode) << ','
                  << cert.stats.nodes << ',' << cert.stats.elapsed_ms << ','
                  << family_csv(cert) << "\n";
    }
    return exit_code_for(cert.mode);
}

int run_var(const std::string& csv_path, const std::string& modulus_delta,
            const std::string& split_eps, const Options& opt) {
    const auto space = jfx::parse_space(opt.space);
    const jfx::SampledPath path = jfx::parse_path_csv(read_input(csv_path));
    jfx::NormCertificate cert = jfx::vx_norm(space, path, to_limits(opt));
    if (!opt.timings)
        cert.stats.elapsed_ms = 0;

    bool have_modulus = !modulus_delta.empty();
    bool have_split = !split_eps.empty();
    double modulus_value = 0.0;
    jfx::Rational delta, eps;
    jfx::SplitResult split_result;
    if (have_modulus) {
        delta = jfx::parse_rational(modulus_delta);
        modulus_value = jfx::modulus(space, path, delta, to_limits(opt));
    }
    if (have_split) {
        eps = jfx::parse_rational(split_eps);
        split_result = jfx::split(path, eps);
    }

    if (opt.out == "json") {
        jfx::json j = jfx::to_json(cert);
        if (have_modulus)
            j["modulus"] = {{"delta", jfx::to_string(delta)}, {"value", modulus_value}};
        if (have_split) {
            j["split"] = jfx::to_json(split_result);
            j["split"]["eps"] = jfx::to_string(eps);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "value,mode,nodes,elapsed_ms,family,modulus_delta,modulus_value,"
                     "split_eps,split_support\n"
                  << fmt(cert.value) << ',' << jfx::to_string(cert.mode) << ','
                  << cert.stats.nodes << ',' << cert.stats.elapsed_ms << ','
                  << family_csv(cert) << ','
                  << (have_modulus ? jfx::to_string(delta) : "") << ','
                  << (have_modulus ? fmt(modulus_value) : "") << ','
                  << (have_split ? jfx::to_string(eps) : "") << ','
                  << (have_split ? jfx::to_string(split_result.support_measure) : "")
                  << "\n";
    }
    return exit_code_for(cert.mode);
}

std::vector<unsigned> parse_unsigned_list(const std::string& text, const char* what) {
    std::vector<unsigned> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            out.push_back(static_cast<unsigned>(std::stoul(token)));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": bad entry '" + token + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

int run_ccp(const std::string& schedule, const std::string& levels, const std::string& sizes,
            const std::string& rademacher_indices, const Options& opt) {
    const int chosen = (!schedule.empty()) + (!levels.empty() || !sizes.empty()) +
                       (!rademacher_indices.empty());
    if (chosen != 1)
        throw std::invalid_argument(
            "ccp: choose exactly one of --schedule, --levels/--sizes, --rademacher");

    if (!schedule.empty()) {
        const auto space = jfx::parse_space(opt.space);
        if (space.is_lp())
            throw std::invalid_argument(
                "ccp --schedule: the growth experiment runs in a Lorentz space "
                "(the lp control column is computed alongside)");
        const auto rows =
            jfx::lorentz_growth(space.p, parse_unsigned_list(schedule, "--schedule"));
        if (opt.out == "json") {
            jfx::json arr = jfx::json::array();
            for (const auto& row : rows)
                arr.push_back({{"K", row.K},
                               {"value", row.value},
                               {"control", row.control},
                               {"annotation", row.annotation}});
            std::cout << arr.dump(2) << "\n";
        } else {
            std::cout << "K,value,control,annotation\n";
            for (const auto& row : rows)
                std::cout << row.K << ',' << fmt(row.value) << ',' << fmt(row.control) << ','
                          << fmt(row.annotation) << "\n";
        }
        return 0;
    }

    if (!rademacher_indices.empty()) {
        const auto space = jfx::parse_space(opt.space);
        const auto indices = parse_unsigned_list(rademacher_indices, "--rademacher");
        if (opt.out == "json") {
            jfx::json arr = jfx::json::array();
            for (size_t len = 1; len <= indices.size(); ++len) {
                const std::vector<unsigned> prefix(indices.begin(), indices.begin() + len);
                arr.push_back({{"K", len},
                               {"index", indices[len - 1]},
                               {"value",
                                jfx::rademacher_sum_norm(space, prefix, to_limits(opt))}});
            }
            std::cout << arr.dump(2) << "\n";
        } else {
            std::cout << "K,index,value\n";
            for (size_t len = 1; len <= indices.size(); ++len) {
                const std::vector<unsigned> prefix(indices.begin(), indices.begin() + len);
                std::cout << len << ',' << indices[len - 1] << ','
                          << fmt(jfx::rademacher_sum_norm(space, prefix, to_limits(opt)))
                          << "\n";
            }
        }
        return 0;
    }

    if (levels.empty() || sizes.empty())
        throw std::invalid_argument("ccp: --levels and --sizes must be given together");
    const auto space = jfx::parse_space(opt.space);
    const auto lv = parse_unsigned_list(levels, "--levels");
    const auto sz = parse_unsigned_list(sizes, "--sizes");
    if (lv.size() != sz.size())
        throw std::invalid_argument("ccp: --levels and --sizes need the same length");
    const auto inst =
        jfx::CcpInstance::subsets(lv, std::vector<std::uint64_t>(sz.begin(), sz.end()));
    const double value = jfx::ccp_value(space, inst);
    if (opt.out == "json") {
        jfx::json j{{"levels", lv},
                    {"sizes", sz},
                    {"density", jfx::to_string(inst.density())},
                    {"value", value}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "density,value\n"
                  << jfx::to_string(inst.density()) << ',' << fmt(value) << "\n";
    }
    return 0;
}

int run_verify(const std::string& suite, const Options& opt) {
    const auto suites = jfx::verify::run(suite, opt.seed);
    size_t passed = 0, total = 0;
    if (opt.out == "json") {
        jfx::json arr = jfx::json::array();
        for (const auto& s : suites) {
            jfx::json js{{"suite", s.name}, {"checks", jfx::json::array()}};
            for (const auto& c : s.checks) {
                js["checks"].push_back({{"name", c.name},
                                        {"slack", c.slack},
                                        {"tolerance", c.tolerance},
                                        {"trials", c.trials},
                                        {"pass", c.pass}});
                ++total;
                passed += c.pass;
            }
            arr.push_back(std::move(js));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& s : suites) {
            for (const auto& c : s.checks) {
                std::printf("%s %s/%s slack=%.6g tol=%.6g trials=%zu\n",
                            c.pass ? "PASS" : "FAIL", s.name.c_str(), c.name.c_str(),
                            c.slack, c.tolerance, c.trials);
                ++total;
                passed += c.pass;
            }
        }
        std::printf("summary: %zu/%zu checks passed\n", passed, total);
    }
    return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Norms of James-type function spaces: certified partition/box-family "
        "searches, X-variation of paths, and block-sum experiments"};
    app.require_subcommand(1);

    Options norm_opt, var_opt, ccp_opt, verify_opt;
    std::string norm_input, var_input, var_modulus, var_split;
    std::string ccp_schedule, ccp_levels, ccp_sizes, ccp_rademacher;
    std::string verify_suite = "all";

    auto* norm_cmd = app.add_subcommand(
        "norm", "Norm certificate for a step/grid function described in JSON");
    norm_cmd->add_option("input", norm_input, "Input file ('-' for stdin)")->required();
    add_common_options(norm_cmd, norm_opt);

    auto* var_cmd = app.add_subcommand(
        "var", "X-variation certificate for a piecewise-linear path (CSV rows t,f(t))");
    var_cmd->add_option("input", var_input, "CSV file ('-' for stdin)")->required();
    var_cmd->add_option("--modulus", var_modulus,
                        "Also report the variation modulus at this width (rational)");
    var_cmd->add_option("--split", var_split,
                        "Also split the path at this height (rational)");
    add_common_options(var_cmd, var_opt);

    auto* ccp_cmd = app.add_subcommand("ccp", "Density-constrained block-sum experiments");
    ccp_cmd->add_option("--schedule", ccp_schedule,
                        "Growth experiment: comma list of block levels n_k "
                        "(block k keeps a 2^-k fraction)");
    ccp_cmd->add_option("--levels", ccp_levels, "Instance block levels (comma list)");
    ccp_cmd->add_option("--sizes", ccp_sizes, "Instance subset sizes (comma list)");
    ccp_cmd->add_option("--rademacher", ccp_rademacher,
                        "Prefix norms of normalized Rademacher sums at these indices");
    add_common_options(ccp_cmd, ccp_opt);

    auto* verify_cmd =
        app.add_subcommand("verify", "Run a self-check suite and report pass/fail lines");
    verify_cmd->add_option("suite", verify_suite,
                           "One of: symnorm jfnorm variation ccp all")
        ->capture_default_str();
    verify_opt.out = "csv";  // human-readable check lines unless --out json
    add_common_options(verify_cmd, verify_opt);

    try {
        app.parse(argc, argv);
        if (norm_cmd->parsed())
            return run_norm(norm_input, norm_opt);
        if (var_cmd->parsed())
            return run_var(var_input, var_modulus, var_split, var_opt);
        if (ccp_cmd->parsed())
            return run_ccp(ccp_schedule, ccp_levels, ccp_sizes, ccp_rademacher, ccp_opt);
        if (verify_cmd->parsed())
            return run_verify(verify_suite, verify_opt);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
