// gegamma: efficiency, timing and goodness-of-fit runs for the GE-envelope
// gamma generators.
//
//   gegamma efficiency [--alpha A|grid]... [--algo NAME|all]... [--n N]
//   gegamma bench1     ... [--repeats R]    single-draw setting
//   gegamma bench2     ... [--repeats R]    bulk setting
//   gegamma ks         ... [--seeds K]
//
// Results go to --out (or stdout) as CSV with a header row, or as JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "baselines.hpp"
#include "gegamma/gegamma.hpp"

namespace {

using nlohmann::json;

struct CommonOptions
{
    std::vector<std::string> alphas{"grid"};
    std::vector<std::string> algos{"all"};
    std::uint64_t n = 1000000;
    std::uint64_t seed = 20240601;
    std::string out;
    std::string format = "csv";
};

std::vector<double> expand_alphas(const std::vector<std::string>& specs)
{
    std::vector<double> out;
    for (const auto& spec : specs) {
        if (spec == "grid") {
            out.insert(out.end(), std::begin(gegamma::reference_alpha_grid),
                       std::end(gegamma::reference_alpha_grid));
            continue;
        }
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(spec, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != spec.size() || !(value > 0.0 && value < 1.0)) {
            throw CLI::ValidationError("--alpha", "expected a value in (0, 1) or grid, got '" +
                                                      spec + "'");
        }
        out.push_back(value);
    }
    return out;
}

std::vector<std::string> expand_algos(const std::vector<std::string>& specs,
                                      const gegamma::BenchRegistry& registry,
                                      bool builtin_only)
{
    std::vector<std::string> out;
    for (const auto& spec : specs) {
        if (spec == "all") {
            for (gegamma::Method m : gegamma::all_methods) {
                out.emplace_back(gegamma::method_name(m));
            }
            continue;
        }
        const bool builtin = gegamma::parse_method(spec).has_value();
        if (!builtin && (builtin_only || registry.find(spec) == nullptr)) {
            throw CLI::ValidationError("--algo", "unknown algorithm '" + spec + "'");
        }
        out.push_back(spec);
    }
    return out;
}

/// Writes to --out when given, otherwise stdout.
template<class Writer>
int emit(const std::string& path, Writer&& write)
{
    if (path.empty()) {
        write(std::cout);
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot open output file " << path << '\n';
        return 1;
    }
    write(file);
    file.flush();
    if (!file) {
        std::cerr << "error: failed writing output file " << path << '\n';
        return 1;
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opt)
{
    cmd->add_option("--alpha", opt.alphas, "Shape in (0,1), repeatable, or grid")
        ->capture_default_str();
    cmd->add_option("--algo", opt.algos, "alg1, alg2, alg3-star, alg3-unit or all")
        ->capture_default_str();
    cmd->add_option("--n", opt.n, "Variates per cell")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Base seed")->capture_default_str();
    cmd->add_option("--out", opt.out, "Output file (default stdout)");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

int run_efficiency(const CommonOptions& opt, bool parallel)
{
    const auto alphas = expand_alphas(opt.alphas);
    const auto algos = expand_algos(opt.algos, gegamma::BenchRegistry{}, true);
    std::vector<gegamma::EfficiencyReport> reports;
    for (const auto& name : algos) {
        auto rows = gegamma::efficiency_sweep(*gegamma::parse_method(name), alphas, opt.n,
                                              opt.seed, parallel);
        reports.insert(reports.end(), rows.begin(), rows.end());
    }
    return emit(opt.out, [&](std::ostream& os) {
        if (opt.format == "csv") {
            gegamma::write_efficiency_csv(os, reports);
            return;
        }
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back({{"algorithm", gegamma::method_name(r.algorithm)},
                            {"alpha", r.alpha},
                            {"n", r.n_outputs},
                            {"measured", r.pairs_per_output},
                            {"theoretical", r.theoretical},
                            {"rel_error", r.relative_error}});
        }
        os << rows.dump(2) << '\n';
    });
}

void report_ordinal(const std::vector<gegamma::OrdinalCheck>& checks)
{
    for (const auto& c : checks) {
        std::cerr << (c.holds ? "OK:   " : "WARN: ") << c.claim << " at alpha=" << c.alpha
                  << " (" << c.faster_seconds << " s vs " << c.slower_seconds << " s)\n";
    }
}

int run_bench(const CommonOptions& opt, unsigned repeats, gegamma::Setting setting)
{
    auto registry = gegamma::BenchRegistry::with_builtins();
    register_external_baselines(registry);
    const auto alphas = expand_alphas(opt.alphas);
    const auto algos = expand_algos(opt.algos, registry, false);
    std::vector<const gegamma::BenchEntry*> entries;
    for (const auto& name : algos) {
        entries.push_back(registry.find(name));
    }
    gegamma::Sink sink;
    const auto records =
        gegamma::run_setting(entries, alphas, opt.n, repeats, opt.seed, setting, &sink);
    report_ordinal(setting == gegamma::Setting::bulk
                       ? gegamma::bulk_ordinal_checks(records)
                       : gegamma::single_draw_ordinal_checks(records));
    std::cerr << "sink: sum=" << sink.sum << " xor=0x" << std::hex << sink.bits << std::dec
              << '\n';
    return emit(opt.out, [&](std::ostream& os) {
        if (opt.format == "csv") {
            gegamma::write_benchmark_csv(os, records);
            return;
        }
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back({{"algorithm", r.algorithm},
                            {"alpha", r.alpha},
                            {"setting", gegamma::setting_name(r.setting)},
                            {"n", r.n},
                            {"elapsed_seconds", r.elapsed_seconds},
                            {"repeats", r.repeats},
                            {"uniforms_per_output", r.uniforms_per_output}});
        }
        os << rows.dump(2) << '\n';
    });
}

struct KsRow
{
    std::string algorithm;
    double alpha;
    std::uint64_t n;
    std::uint64_t seed;
    gegamma::PositiveKsResult result;
};

int run_ks(const CommonOptions& opt, unsigned seeds)
{
    const auto alphas = expand_alphas(opt.alphas);
    const auto algos = expand_algos(opt.algos, gegamma::BenchRegistry{}, true);
    std::vector<KsRow> rows;
    for (const auto& name : algos) {
        const gegamma::Method m = *gegamma::parse_method(name);
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            const gegamma::PreparedMethod sampler(m, gegamma::ShapeParams(alphas[a]));
            for (unsigned k = 0; k < seeds; ++k) {
                const std::uint64_t seed =
                    gegamma::derive_seed(opt.seed, static_cast<std::uint64_t>(m), a * 1000 + k);
                gegamma::DefaultSource source(seed);
                std::vector<double> xs(opt.n);
                for (double& x : xs) {
                    x = sampler(source);
                }
                const double alpha = alphas[a];
                auto res = gegamma::ks_test_positive(
                    std::move(xs), [alpha](double x) { return gegamma::gamma_cdf(x, alpha, 1.0); });
                rows.push_back({name, alpha, opt.n, seed, res});
            }
        }
    }
    return emit(opt.out, [&](std::ostream& os) {
        if (opt.format == "csv") {
            os << "algorithm,alpha,n,seed,statistic,p_value,zeros,zero_fraction\n";
            os.precision(12);
            for (const auto& r : rows) {
                os << r.algorithm << ',' << r.alpha << ',' << r.n << ',' << r.seed << ','
                   << r.result.ks.statistic << ',' << r.result.ks.p_value << ','
                   << r.result.zeros << ',' << r.result.zero_fraction << '\n';
            }
            return;
        }
        json out = json::array();
        for (const auto& r : rows) {
            out.push_back({{"algorithm", r.algorithm},
                           {"alpha", r.alpha},
                           {"n", r.n},
                           {"seed", r.seed},
                           {"statistic", r.result.ks.statistic},
                           {"p_value", r.result.ks.p_value},
                           {"zeros", r.result.zeros},
                           {"zero_fraction", r.result.zero_fraction}});
        }
        os << out.dump(2) << '\n';
    });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gamma variates for shape below one: efficiency, timing and KS runs"};
    app.require_subcommand(1);

    CommonOptions eff_opt;
    bool parallel = false;
    auto* eff = app.add_subcommand("efficiency", "Measured vs. theoretical uniform pairs per output");
    add_common(eff, eff_opt);
    eff->add_flag("--parallel", parallel, "Run the shapes of a sweep concurrently");

    CommonOptions b1_opt;
    unsigned b1_repeats = 3;
    auto* b1 = app.add_subcommand("bench1", "Timing, sampler rebuilt on every draw");
    add_common(b1, b1_opt);
    b1->add_option("--repeats", b1_repeats, "Timed repeats per cell")
        ->check(CLI::Range(3u, 1000u))
        ->capture_default_str();

    CommonOptions b2_opt;
    unsigned b2_repeats = 3;
    auto* b2 = app.add_subcommand("bench2", "Timing, constants built once per cell");
    add_common(b2, b2_opt);
    b2->add_option("--repeats", b2_repeats, "Timed repeats per cell")
        ->check(CLI::Range(3u, 1000u))
        ->capture_default_str();

    CommonOptions ks_opt;
    unsigned ks_seeds = 1;
    auto* ks = app.add_subcommand("ks", "Kolmogorov-Smirnov test against the gamma CDF");
    add_common(ks, ks_opt);
    ks->add_option("--seeds", ks_seeds, "Independent seeds per cell")
        ->check(CLI::Range(1u, 100u))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eff->parsed()) {
            return run_efficiency(eff_opt, parallel);
        }
        if (b1->parsed()) {
            return run_bench(b1_opt, b1_repeats, gegamma::Setting::single_draw);
        }
        if (b2->parsed()) {
            return run_bench(b2_opt, b2_repeats, gegamma::Setting::bulk);
        }
        if (ks->parsed()) {
            return run_ks(ks_opt, ks_seeds);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
