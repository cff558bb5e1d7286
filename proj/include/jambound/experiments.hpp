// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "channels.hpp"
#include "csv.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "philox.hpp"

namespace jambound {

// Configuration problems (malformed JSON, unknown or invalid fields).
// The CLI maps this to its config-error exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { iota_sweep, cdf, unquantized_cdf, asymptotics };

struct GridSpec {
    double start = 0.0;
    double stop = 120.0;
    double step = 0.2;
};

// A fully resolved experiment description. Power fields are in dB, as
// configs state them; conversions happen at evaluation time.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::cdf;
    int B = 16;
    int U = 2;
    int I = 1;
    double rho_db = 60.0;
    double n0_db = -30.0;
    ChannelModel model;  // defaults to rayleigh, 120-degree sector for LoS
    std::vector<int> bits_list = {1, 2, 3, 4, 5};
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    GridSpec grid;
    SinrVariant sinr_variant = SinrVariant::general;
    FVariant f_variant = FVariant::exact;

    void validate() const {
        if (B < 1 || U < 1 || I < 0) {
            throw ConfigError("system: need B >= 1, U >= 1, I >= 0");
        }
        if (bits_list.empty()) throw ConfigError("bits_list: must not be empty");
        for (int m : bits_list) {
            if (m < 1 || m > 40) throw ConfigError("bits_list: entries must be in [1, 40]");
        }
        if (trials < 1) throw ConfigError("trials: must be >= 1");
        if (!(grid.step > 0.0)) throw ConfigError("grid.step: must be > 0");
        if (!(grid.stop >= grid.start)) throw ConfigError("grid: need stop >= start");
        if (kind == ExperimentKind::unquantized_cdf && I >= B) {
            throw ConfigError("unquantized_cdf: needs I < B");
        }
    }

    SystemConfig system(std::int64_t m_levels) const {
        SystemConfig sys;
        sys.B = B;
        sys.U = U;
        sys.I = I;
        sys.rho = db_to_linear(rho_db);
        sys.n0 = db_to_linear(n0_db);
        sys.M = m_levels;
        return sys;
    }
};

inline std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    const double n = std::floor((g.stop - g.start) / g.step + 0.5);
    for (long i = 0; i <= long(n); ++i) {
        const double x = g.start + double(i) * g.step;
        if (x <= g.stop + 0.5 * g.step) pts.push_back(x);
    }
    return pts;
}

// ---------------------------------------------------------------- config

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const char* where,
                                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
        }
    }
}

template <typename T>
T get_field(const nlohmann::json& obj, const char* where, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(where) + "." + key + ": wrong type");
    }
}

}  // namespace detail

// Parses and validates a JSON experiment config. Unknown keys are
// rejected at every level so typos fail loudly instead of silently
// running a default. Defaults: trials 10^4, seed 1, general SINR
// variant, exact flip bound, 120-degree LoS sector, and a per-kind
// default grid (0..120 dB step 0.2 for sweeps, 60..200 dB step 10 for
// the asymptotic study).
inline ExperimentSpec parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(root, "config",
                                {"kind", "system", "model", "bits_list", "trials", "seed",
                                 "grid", "sinr_variant", "f_variant"});
    ExperimentSpec spec;

    if (!root.contains("kind")) throw ConfigError("config: field 'kind' is required");
    const std::string kind = detail::get_field<std::string>(root, "config", "kind", "");
    if (kind == "iota_sweep") {
        spec.kind = ExperimentKind::iota_sweep;
    } else if (kind == "cdf") {
        spec.kind = ExperimentKind::cdf;
    } else if (kind == "unquantized_cdf") {
        spec.kind = ExperimentKind::unquantized_cdf;
    } else if (kind == "asymptotics") {
        spec.kind = ExperimentKind::asymptotics;
    } else {
        throw ConfigError("kind: must be one of iota_sweep, cdf, unquantized_cdf, asymptotics");
    }

    if (root.contains("system")) {
        const auto& sys = root.at("system");
        if (!sys.is_object()) throw ConfigError("system: must be an object");
        detail::reject_unknown_keys(sys, "system", {"B", "U", "I", "rho_db", "n0_db"});
        spec.B = detail::get_field<int>(sys, "system", "B", spec.B);
        spec.U = detail::get_field<int>(sys, "system", "U", spec.U);
        spec.I = detail::get_field<int>(sys, "system", "I", spec.I);
        spec.rho_db = detail::get_field<double>(sys, "system", "rho_db", spec.rho_db);
        spec.n0_db = detail::get_field<double>(sys, "system", "n0_db", spec.n0_db);
    }

    const std::string model = detail::get_field<std::string>(root, "config", "model", "rayleigh");
    if (model == "rayleigh") {
        spec.model.tag = ChannelModel::Tag::rayleigh;
    } else if (model == "los_ula") {
        spec.model.tag = ChannelModel::Tag::los_ula;
    } else {
        throw ConfigError("model: must be 'rayleigh' or 'los_ula'");
    }

    if (root.contains("bits_list")) {
        try {
            spec.bits_list = root.at("bits_list").get<std::vector<int>>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError("bits_list: must be an array of integers");
        }
    } else if (spec.kind == ExperimentKind::iota_sweep) {
        spec.bits_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    } else if (spec.kind == ExperimentKind::asymptotics) {
        spec.bits_list = {1};
    }

    spec.trials = detail::get_field<std::int64_t>(root, "config", "trials", spec.trials);
    spec.seed = detail::get_field<std::uint64_t>(root, "config", "seed", spec.seed);

    if (spec.kind == ExperimentKind::asymptotics) {
        spec.grid = GridSpec{60.0, 200.0, 10.0};
    }
    if (root.contains("grid")) {
        const auto& g = root.at("grid");
        if (!g.is_object()) throw ConfigError("grid: must be an object");
        detail::reject_unknown_keys(g, "grid", {"start", "stop", "step"});
        spec.grid.start = detail::get_field<double>(g, "grid", "start", spec.grid.start);
        spec.grid.stop = detail::get_field<double>(g, "grid", "stop", spec.grid.stop);
        spec.grid.step = detail::get_field<double>(g, "grid", "step", spec.grid.step);
    }

    const std::string sv =
        detail::get_field<std::string>(root, "config", "sinr_variant", "general");
    if (sv == "general") {
        spec.sinr_variant = SinrVariant::general;
    } else if (sv == "gaussian_input") {
        spec.sinr_variant = SinrVariant::gaussian_input;
    } else {
        throw ConfigError("sinr_variant: must be 'general' or 'gaussian_input'");
    }
    const std::string fv = detail::get_field<std::string>(root, "config", "f_variant", "exact");
    if (fv == "exact") {
        spec.f_variant = FVariant::exact;
    } else if (fv == "simplified") {
        spec.f_variant = FVariant::simplified;
    } else {
        throw ConfigError("f_variant: must be 'exact' or 'simplified'");
    }

    spec.validate();
    return spec;
}

// ------------------------------------------------------------ evaluation

// Per-ADC information bound summed over the receiver, for the
// deterministic line-of-sight row norms |h_(b)|^2 = U, |j_(b)|^2 = I.
// This is the channel-independent first term of the system bound; the
// capacity term needs a concrete realization and is deliberately not
// part of this quantity.
inline double los_deterministic_sum_bound(int B, int U, int I, double rho, double n0,
                                          std::int64_t m_levels,
                                          SinrVariant variant = SinrVariant::general,
                                          FVariant f_variant = FVariant::exact) {
    const double numer = (variant == SinrVariant::general) ? 2.0 * double(U) : double(U);
    const double sinr = numer / (rho * double(I) + n0);
    return 2.0 * double(B) * iota_bar(m_levels, sinr, f_variant);
}

// Table of the per-ADC bound against inverse SINR in dB, one block of
// rows per resolution. Columns: inv_sinr_db, bits, iota_exact,
// iota_simplified; the exact column never exceeds the simplified one.
inline Table run_iota_sweep(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::iota_sweep) {
        throw ConfigError("run_iota_sweep: spec.kind must be iota_sweep");
    }
    spec.validate();
    Table t;
    t.columns = {"inv_sinr_db", "bits", "iota_exact", "iota_simplified"};
    for (int m : spec.bits_list) {
        const std::int64_t levels = std::int64_t(1) << m;
        for (double x : grid_points(spec.grid)) {
            const double sinr = db_to_linear(-x);
            t.add_row({x, double(m), iota_bar(levels, sinr, FVariant::exact),
                       iota_bar(levels, sinr, FVariant::simplified)});
        }
    }
    return t;
}

struct CdfSamplePoint {
    double value = 0.0;
    double sum_term = 0.0;
    double capacity_term = 0.0;
};

// Raw (unsorted) bound samples for each resolution in bits_list, in
// trial order: result[mi][t] belongs to bits_list[mi] and trial t.
// Each trial draws one channel pair, shared by all resolutions, from
// the sub-stream of its own index, so any worker count gives the same
// numbers.
inline std::vector<std::vector<CdfSamplePoint>> run_cdf_samples(const ExperimentSpec& spec,
                                                                unsigned workers = 1) {
    if (spec.kind != ExperimentKind::cdf) {
        throw ConfigError("run_cdf_samples: spec.kind must be cdf");
    }
    spec.validate();
    const SeededRng root(spec.seed);
    const std::size_t nm = spec.bits_list.size();
    std::vector<SystemConfig> systems;
    systems.reserve(nm);
    for (int m : spec.bits_list) systems.push_back(spec.system(std::int64_t(1) << m));

    auto per_trial = parallel_map<std::vector<CdfSamplePoint>>(
        std::size_t(spec.trials), workers, [&](std::size_t t) {
            const ChannelPair cp = sample_channel_pair(
                root.substream(t), std::size_t(spec.B), std::size_t(spec.U),
                std::size_t(spec.I), spec.model);
            std::vector<CdfSamplePoint> row(nm);
            for (std::size_t mi = 0; mi < nm; ++mi) {
                const BoundResult r =
                    mutual_info_upper_bound(systems[mi], cp, spec.sinr_variant, spec.f_variant);
                row[mi] = CdfSamplePoint{r.value, r.sum_term, r.capacity_term};
            }
            return row;
        });

    std::vector<std::vector<CdfSamplePoint>> out(
        nm, std::vector<CdfSamplePoint>(std::size_t(spec.trials)));
    for (std::size_t t = 0; t < per_trial.size(); ++t) {
        for (std::size_t mi = 0; mi < nm; ++mi) out[mi][t] = per_trial[t][mi];
    }
    return out;
}

inline std::vector<CdfResult> make_cdf_results(
    const ExperimentSpec& spec, const std::vector<std::vector<CdfSamplePoint>>& samples) {
    std::vector<CdfResult> res;
    res.reserve(samples.size());
    for (std::size_t mi = 0; mi < samples.size(); ++mi) {
        CdfResult c;
        c.label = "bits=" + std::to_string(spec.bits_list[mi]);
        c.trials = spec.trials;
        c.seed = spec.seed;
        c.sorted_values.reserve(samples[mi].size());
        for (const auto& s : samples[mi]) c.sorted_values.push_back(s.value);
        std::sort(c.sorted_values.begin(), c.sorted_values.end());
        res.push_back(std::move(c));
    }
    return res;
}

// Sorted bound samples per resolution: the CDF curves of the system
// bound over channel realizations.
inline std::vector<CdfResult> run_cdf_experiment(const ExperimentSpec& spec,
                                                 unsigned workers = 1) {
    return make_cdf_results(spec, run_cdf_samples(spec, workers));
}

// CDFs of the unquantized story: the post-projection lower bound, the
// jammer-free capacity of the full array, and (Rayleigh only) the
// jammer-free capacity of an array with I fewer antennas. The jammer
// power is not an input to any of the three.
inline std::vector<CdfResult> run_unquantized_cdf(const ExperimentSpec& spec,
                                                  unsigned workers = 1) {
    if (spec.kind != ExperimentKind::unquantized_cdf) {
        throw ConfigError("run_unquantized_cdf: spec.kind must be unquantized_cdf");
    }
    spec.validate();
    const SeededRng root(spec.seed);
    const double n0 = db_to_linear(spec.n0_db);
    const bool rayleigh = spec.model.tag == ChannelModel::Tag::rayleigh;

    struct Row {
        double lower, free, reduced;
    };
    auto rows = parallel_map<Row>(std::size_t(spec.trials), workers, [&](std::size_t t) {
        const ChannelPair cp =
            sample_channel_pair(root.substream(t), std::size_t(spec.B),
                                std::size_t(spec.U), std::size_t(spec.I), spec.model);
        Row r{};
        r.lower = unquantized_lower_bound(cp, n0);
        r.free = jammer_free_mi(cp.H, n0);
        r.reduced = 0.0;
        if (rayleigh) {
            const ComplexMatrix fresh = sample_complex_gaussian(
                root.substream(0x8000000000000000ull + t),
                std::size_t(spec.B - spec.I), std::size_t(spec.U), 1.0);
            r.reduced = jammer_free_mi(fresh, n0);
        }
        return r;
    });

    std::vector<CdfResult> res;
    const auto push = [&](const char* label, auto member) {
        CdfResult c;
        c.label = label;
        c.trials = spec.trials;
        c.seed = spec.seed;
        c.sorted_values.reserve(rows.size());
        for (const auto& r : rows) c.sorted_values.push_back(r.*member);
        std::sort(c.sorted_values.begin(), c.sorted_values.end());
        res.push_back(std::move(c));
    };
    push("lower_bound", &Row::lower);
    push("jammer_free", &Row::free);
    if (rayleigh) push("jammer_free_reduced", &Row::reduced);
    return res;
}

// Deterministic resolution-vs-power study on the line-of-sight row
// norms. Policies: every fixed resolution from bits_list, plus the two
// power-coupled rules M = ceil(rho^0.4) and M = ceil(rho^0.5) with rho
// linear. Columns: rho_db, policy, M, I_bar.
inline Table run_asymptotics(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::asymptotics) {
        throw ConfigError("run_asymptotics: spec.kind must be asymptotics");
    }
    spec.validate();
    const double n0 = db_to_linear(spec.n0_db);
    Table t;
    t.columns = {"rho_db", "policy", "M", "I_bar"};
    const auto grid = grid_points(spec.grid);

    const auto emit = [&](const std::string& policy, double rho_db, std::int64_t m_levels) {
        const double rho = db_to_linear(rho_db);
        const double value = los_deterministic_sum_bound(
            spec.B, spec.U, spec.I, rho, n0, m_levels, spec.sinr_variant, spec.f_variant);
        t.add_row({rho_db, policy, double(m_levels), value});
    };

    for (int m : spec.bits_list) {
        const std::string label = "m=" + std::to_string(m);
        for (double rho_db : grid) emit(label, rho_db, std::int64_t(1) << m);
    }
    for (double rho_db : grid) {
        const double rho = db_to_linear(rho_db);
        const auto m04 = std::int64_t(std::max(2.0, std::ceil(std::pow(rho, 0.4))));
        emit("ceil(rho^0.4)", rho_db, m04);
    }
    for (double rho_db : grid) {
        const double rho = db_to_linear(rho_db);
        const auto m05 = std::int64_t(std::max(2.0, std::ceil(std::pow(rho, 0.5))));
        emit("ceil(rho^0.5)", rho_db, m05);
    }
    return t;
}

}  // namespace jambound
