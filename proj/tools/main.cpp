// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.
//
// Command-line driver. Subcommands map one-to-one onto the experiment
// runners in the library; `oracle` exposes the slow reference
// implementations used to validate the closed forms, and `verify`
// runs the built-in acceptance checks.
//
// Exit codes: 0 success, 1 verification failure, 2 bad usage or bad
// config, 3 I/O failure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jambound/jambound.hpp>

namespace {

using namespace jambound;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string out;
    bool svg = false;
    bool verbose = false;
    bool quick = false;
    unsigned threads = 1;
    bool seed_set = false;
    std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + path);
    return ss.str();
}

template <typename Renderable>
void save_csv(const Renderable& r, const std::string& path) {
    try {
        render_csv(r, path);
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
    std::printf("wrote %s\n", path.c_str());
}

void save_svg(const std::vector<Curve>& curves, const std::string& path,
              const AxesSpec& axes) {
    for (const auto& c : curves) {
        if (c.points.size() < 2) {
            std::fprintf(stderr, "skipping %s: curves need at least two points\n",
                         path.c_str());
            return;
        }
    }
    try {
        render_svg(curves, path, axes);
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
    std::printf("wrote %s\n", path.c_str());
}

// "bits=1" -> "bits-1", anything unusual -> '_'
std::string sanitize(const std::string& label) {
    std::string out;
    for (char ch : label) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' ||
            ch == '_') {
            out += ch;
        } else if (ch == '=') {
            out += '-';
        } else {
            out += '_';
        }
    }
    return out.empty() ? std::string("curve") : out;
}

std::string stem_of(const std::string& out, const std::string& fallback) {
    if (out.empty()) return fallback;
    if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") {
        return out.substr(0, out.size() - 4);
    }
    return out;
}

ExperimentSpec default_spec(ExperimentKind k) {
    ExperimentSpec spec;
    spec.kind = k;
    if (k == ExperimentKind::iota_sweep) {
        spec.bits_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    } else if (k == ExperimentKind::asymptotics) {
        spec.bits_list = {1};
        spec.grid = GridSpec{60.0, 200.0, 10.0};
    }
    return spec;
}

ExperimentSpec load_spec(const Options& opt, ExperimentKind k) {
    ExperimentSpec spec;
    if (opt.config.empty()) {
        spec = default_spec(k);
    } else {
        spec = parse_config(read_file(opt.config));
        if (spec.kind != k) {
            throw ConfigError("config 'kind' does not match the selected subcommand");
        }
    }
    if (opt.seed_set) spec.seed = opt.seed;
    if (opt.quick && spec.trials > 1000) spec.trials = 1000;
    spec.validate();
    return spec;
}

// One curve per distinct value in the group column; x and y are
// numeric columns.
std::vector<Curve> table_curves(const Table& t, std::size_t group_col, std::size_t x_col,
                                std::size_t y_col, const std::string& label_prefix) {
    std::vector<Curve> curves;
    for (const auto& row : t.rows) {
        const std::string key = label_prefix + cell_text(row[group_col]);
        auto it = std::find_if(curves.begin(), curves.end(),
                               [&](const Curve& c) { return c.label == key; });
        if (it == curves.end()) {
            curves.push_back(Curve{key, {}});
            it = curves.end() - 1;
        }
        it->points.emplace_back(std::get<double>(row[x_col]), std::get<double>(row[y_col]));
    }
    return curves;
}

std::vector<Curve> cdf_curves(const std::vector<CdfResult>& results) {
    std::vector<Curve> curves;
    for (const auto& r : results) {
        Curve c{r.label, {}};
        const double n = double(r.sorted_values.size());
        for (std::size_t k = 0; k < r.sorted_values.size(); ++k) {
            c.points.emplace_back(r.sorted_values[k], double(k + 1) / n);
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

int run_sweep(const Options& opt) {
    const ExperimentSpec spec = load_spec(opt, ExperimentKind::iota_sweep);
    const Table t = run_iota_sweep(spec);
    const std::string stem = stem_of(opt.out, "iota_sweep");
    save_csv(t, stem + ".csv");
    if (opt.svg) {
        auto curves = table_curves(t, 1, 0, 2, "");
        for (auto& c : curves) c.label += "-bit";
        AxesSpec axes;
        axes.x_label = "1/SINR [dB]";
        axes.y_label = "bits per ADC pair";
        save_svg(curves, stem + ".svg", axes);
    }
    return 0;
}

int run_cdf(const Options& opt) {
    const ExperimentSpec spec = load_spec(opt, ExperimentKind::cdf);
    const auto samples = run_cdf_samples(spec, opt.threads);
    if (opt.verbose) {
        for (std::size_t mi = 0; mi < samples.size(); ++mi) {
            for (std::size_t t = 0; t < samples[mi].size(); ++t) {
                const auto& s = samples[mi][t];
                std::printf("trial=%zu bits=%d sum=%s cap=%s value=%s\n", t,
                            spec.bits_list[mi], format_value(s.sum_term).c_str(),
                            format_value(s.capacity_term).c_str(),
                            format_value(s.value).c_str());
            }
        }
    }
    const auto results = make_cdf_results(spec, samples);
    const std::string stem = stem_of(opt.out, "cdf");
    for (const auto& r : results) save_csv(r, stem + "_" + sanitize(r.label) + ".csv");
    if (opt.svg) {
        AxesSpec axes;
        axes.x_label = "bits";
        axes.y_label = "empirical CDF";
        axes.cdf_steps = true;
        save_svg(cdf_curves(results), stem + ".svg", axes);
    }
    return 0;
}

int run_uncdf(const Options& opt) {
    const ExperimentSpec spec = load_spec(opt, ExperimentKind::unquantized_cdf);
    const auto results = run_unquantized_cdf(spec, opt.threads);
    const std::string stem = stem_of(opt.out, "unquantized_cdf");
    for (const auto& r : results) save_csv(r, stem + "_" + sanitize(r.label) + ".csv");
    if (opt.svg) {
        AxesSpec axes;
        axes.x_label = "bits";
        axes.y_label = "empirical CDF";
        axes.cdf_steps = true;
        save_svg(cdf_curves(results), stem + ".svg", axes);
    }
    return 0;
}

int run_asym(const Options& opt) {
    const ExperimentSpec spec = load_spec(opt, ExperimentKind::asymptotics);
    const Table t = run_asymptotics(spec);
    const std::string stem = stem_of(opt.out, "asymptotics");
    save_csv(t, stem + ".csv");
    if (opt.svg) {
        AxesSpec axes;
        axes.x_label = "jammer power [dB]";
        axes.y_label = "bound [bits]";
        save_svg(table_curves(t, 1, 0, 3, ""), stem + ".svg", axes);
    }
    return 0;
}

int run_oracle(const Options& opt, const std::string& name) {
    const auto p = [](const char* label, double v) {
        std::printf("  %s = %s\n", label, format_value(v).c_str());
    };
    if (name == "flip") {
        const ScalarQuantizer q(2, {0.0});
        const ScalarChannel ch = ScalarChannel::make_gaussian(1.0, 1.0);
        std::printf("sign quantizer, unit perturbation on a unit background:\n");
        p("numeric flip probability (exact value 0.25)",
          flip_probability_numeric(q, ch).value());
        p("closed-form ceiling f_bar(M=2, sinr=1)", f_bar(2, 1.0));
    } else if (name == "search") {
        SearchSettings s;
        if (opt.quick) {
            s.random_starts = 8;
            s.iterations = 60;
        }
        if (opt.seed_set) s.seed = opt.seed;
        const ScalarChannel ch = ScalarChannel::make_gaussian(1.0, 1.0);
        const SearchOutcome out = flip_probability_search(2, ch, s);
        std::printf("worst-case sign-quantizer boundary for M=2, sinr=1:\n");
        p("best flip probability found", out.value);
        p("boundary location", out.boundaries.at(0));
        p("closed-form ceiling f_bar(M=2, sinr=1)", f_bar(2, 1.0));
    } else if (name == "spread") {
        std::printf("spread integral against the closed form:\n");
        for (const auto& [m, sinr] : std::vector<std::pair<std::int64_t, double>>{
                 {2, 1.0}, {512, std::pow(10.0, -7.4)}}) {
            const ScalarChannel ch = ScalarChannel::make_gaussian(sinr, 1.0);
            const double sp = spread_bound_numeric(m, ch);
            const double fb = f_bar(m, sinr);
            std::printf("  M=%lld sinr=%s: spread=%s f_bar=%s diff=%s\n",
                        static_cast<long long>(m), format_value(sinr).c_str(),
                        format_value(sp).c_str(), format_value(fb).c_str(),
                        format_value(sp - fb).c_str());
        }
    } else if (name == "scalar-mi") {
        const ScalarQuantizer q(2, {0.0});
        std::printf("conditional MI through a sign quantizer:\n");
        for (double r : {1e-4, 1.0, 1e6}) {
            const ScalarChannel ch = ScalarChannel::make_gaussian(r, 1.0);
            std::printf("  sinr=%s: mi=%s iota_bar=%s\n", format_value(r).c_str(),
                        format_value(scalar_conditional_mi_numeric(q, ch)).c_str(),
                        format_value(iota_bar(2, r)).c_str());
        }
    } else if (name == "tiny-exact") {
        TinySystem jammed{ComplexMatrix(1, 1), ComplexMatrix(1, 1), 1e6, 1e-3};
        jammed.H(0, 0) = 1.0;
        jammed.J(0, 0) = 1.0;
        SystemConfig cfg;
        cfg.B = 1;
        cfg.U = 1;
        cfg.I = 1;
        cfg.rho = jammed.rho;
        cfg.n0 = jammed.n0;
        cfg.M = 2;
        std::printf("single-antenna QPSK link, 60 dB jammer:\n");
        p("exact mutual information", tiny_system_mi_exact(jammed));
        p("bound", mutual_info_upper_bound(cfg, ChannelPair{jammed.H, jammed.J}).value);
        TinySystem clean{ComplexMatrix(1, 1), ComplexMatrix(1, 0), 0.0, 1e-12};
        clean.H(0, 0) = 1.0;
        std::printf("same link, jammer off, vanishing noise:\n");
        p("exact mutual information (2 bits per QPSK symbol)", tiny_system_mi_exact(clean));
    } else if (name == "tiny-mc") {
        const SeededRng rng(opt.seed_set ? opt.seed : 1);
        TinySystem sys{sample_complex_gaussian(rng.substream(1), 2, 2, 1.0),
                       sample_complex_gaussian(rng.substream(2), 2, 1, 1.0), 100.0, 1e-2};
        SystemConfig cfg;
        cfg.B = 2;
        cfg.U = 2;
        cfg.I = 1;
        cfg.rho = sys.rho;
        cfg.n0 = sys.n0;
        cfg.M = 2;
        const McMiResult r = tiny_system_mi_mc(sys, 2, 100000, rng.substream(3));
        std::printf("two-antenna Rayleigh draw, 20 dB jammer, 1e5 trials:\n");
        p("Monte Carlo mutual information", r.mi);
        p("standard error", r.std_error);
        p("bound", mutual_info_upper_bound(cfg, ChannelPair{sys.H, sys.J}).value);
    } else if (name == "projection") {
        const std::size_t samples = opt.quick ? 1000 : 10000;
        const ProjectionReport rep = projection_equivalence_check(
            SeededRng(opt.seed_set ? opt.seed : 1), 16, 2, 1, samples, 1e-3);
        std::printf("projected 16x2 channel vs a fresh 15x2 channel (%zu samples):\n",
                    samples);
        p("KS distance between rate distributions", rep.ks_distance);
        p("max |projected entry mean|", rep.max_abs_entry_mean);
        p("max |projected entry variance - 1|", rep.max_entry_var_dev);
    } else {
        throw ConfigError("unknown oracle name: " + name);
    }
    return 0;
}

int run_verify_cmd(const Options& opt) {
    VerifyOptions vo;
    vo.quick = opt.quick;
    vo.workers = opt.threads;
    const auto results = run_verification(vo);
    const bool ok = report_verification(results, opt.verbose);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "jambound: fundamental limits on communication through coarsely "
        "quantized multi-antenna receivers facing a jammer"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config, "JSON experiment description");
    app.add_option("--out", opt.out, "output path or path stem");
    app.add_option("--seed", opt.seed, "override the experiment seed")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--svg", opt.svg, "also render an SVG plot next to the CSV");
    app.add_flag("--verbose", opt.verbose, "print per-trial details");
    app.add_flag("--quick", opt.quick, "smaller trial counts, widened tolerances");
    app.add_option("--threads", opt.threads, "worker threads for Monte Carlo runs")
        ->check(CLI::Range(1u, 64u));

    auto* sweep = app.add_subcommand(
        "sweep-iota", "per-ADC bound against inverse SINR for each resolution");
    auto* cdf = app.add_subcommand(
        "cdf", "empirical CDF of the system bound over random channels");
    auto* uncdf = app.add_subcommand(
        "unquantized-cdf",
        "infinite-resolution lower/upper rate CDFs over random channels");
    auto* asym = app.add_subcommand(
        "asymptotics", "system bound with resolution growing against jammer power");
    auto* oracle = app.add_subcommand(
        "oracle", "run a brute-force reference implementation");
    std::string oracle_name;
    oracle->add_option("name", oracle_name, "which oracle to run")
        ->required()
        ->check(CLI::IsMember({"flip", "search", "spread", "scalar-mi", "tiny-exact",
                               "tiny-mc", "projection"}));
    auto* verify = app.add_subcommand("verify", "run the built-in acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.seed_set = app.count("--seed") > 0;

    try {
        if (sweep->parsed()) return run_sweep(opt);
        if (cdf->parsed()) return run_cdf(opt);
        if (uncdf->parsed()) return run_uncdf(opt);
        if (asym->parsed()) return run_asym(opt);
        if (oracle->parsed()) return run_oracle(opt, oracle_name);
        if (verify->parsed()) return run_verify_cmd(opt);
    } catch (const jambound::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
