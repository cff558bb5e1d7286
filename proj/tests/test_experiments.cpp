// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include <jambound/csv.hpp>
#include <jambound/experiments.hpp>
#include <jambound/svg.hpp>

using namespace jambound;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("jambound_test_" + name);
}

const std::vector<double>& column_of(const Table& t, std::size_t idx,
                                     std::vector<double>& out) {
    out.clear();
    for (const auto& row : t.rows) out.push_back(std::get<double>(row[idx]));
    return out;
}

}  // namespace

TEST_CASE("config parsing accepts a fully specified file", "[experiments]") {
    const std::string text = R"({
        "kind": "cdf",
        "system": {"B": 8, "U": 1, "I": 1, "rho_db": 70.0, "n0_db": -20.0},
        "model": "los_ula",
        "bits_list": [1, 2],
        "trials": 500,
        "seed": 9,
        "grid": {"start": 10.0, "stop": 20.0, "step": 5.0},
        "sinr_variant": "gaussian_input",
        "f_variant": "simplified"
    })";
    const ExperimentSpec spec = parse_config(text);
    CHECK(spec.kind == ExperimentKind::cdf);
    CHECK(spec.B == 8);
    CHECK(spec.U == 1);
    CHECK(spec.I == 1);
    CHECK(spec.rho_db == 70.0);
    CHECK(spec.n0_db == -20.0);
    CHECK(spec.model.tag == ChannelModel::Tag::los_ula);
    CHECK(spec.bits_list == std::vector<int>{1, 2});
    CHECK(spec.trials == 500);
    CHECK(spec.seed == 9);
    CHECK(spec.grid.start == 10.0);
    CHECK(spec.grid.stop == 20.0);
    CHECK(spec.grid.step == 5.0);
    CHECK(spec.sinr_variant == SinrVariant::gaussian_input);
    CHECK(spec.f_variant == FVariant::simplified);
}

TEST_CASE("config parsing fills kind-dependent defaults", "[experiments]") {
    const ExperimentSpec cdf = parse_config(R"({"kind": "cdf"})");
    CHECK(cdf.B == 16);
    CHECK(cdf.U == 2);
    CHECK(cdf.I == 1);
    CHECK(cdf.rho_db == 60.0);
    CHECK(cdf.n0_db == -30.0);
    CHECK(cdf.model.tag == ChannelModel::Tag::rayleigh);
    CHECK(cdf.bits_list == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(cdf.trials == 10000);
    CHECK(cdf.seed == 1);
    CHECK(cdf.sinr_variant == SinrVariant::general);
    CHECK(cdf.f_variant == FVariant::exact);
    CHECK(cdf.grid.start == 0.0);
    CHECK(cdf.grid.stop == 120.0);
    CHECK(cdf.grid.step == 0.2);

    const ExperimentSpec sweep = parse_config(R"({"kind": "iota_sweep"})");
    CHECK(sweep.bits_list == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});

    const ExperimentSpec asym = parse_config(R"({"kind": "asymptotics"})");
    CHECK(asym.bits_list == std::vector<int>{1});
    CHECK(asym.grid.start == 60.0);
    CHECK(asym.grid.stop == 200.0);
    CHECK(asym.grid.step == 10.0);

    // an explicit grid wins over the per-kind default
    const ExperimentSpec asym2 =
        parse_config(R"({"kind": "asymptotics", "grid": {"start": 100.0, "stop": 200.0, "step": 100.0}})");
    CHECK(asym2.grid.start == 100.0);
    CHECK(asym2.grid.step == 100.0);
}

TEST_CASE("config parsing rejects malformed input loudly", "[experiments]") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({})"), ConfigError);  // kind required
    CHECK_THROWS_AS(parse_config(R"({"kind": "nope"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "typo": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "system": {"antennas": 4}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "grid": {"from": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "bits_list": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "bits_list": [0]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "bits_list": [41]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "bits_list": []})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "trials": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "trials": "lots"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "model": "awgn"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "sinr_variant": "x"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kind": "cdf", "f_variant": "x"})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"kind": "cdf", "grid": {"start": 5.0, "stop": 1.0}})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"kind": "cdf", "grid": {"step": 0.0}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"kind": "unquantized_cdf", "system": {"B": 1, "I": 1}})"),
        ConfigError);
}

TEST_CASE("grid points", "[experiments]") {
    const auto g1 = grid_points(GridSpec{0.0, 1.0, 0.25});
    REQUIRE(g1.size() == 5);
    CHECK(g1.front() == 0.0);
    CHECK(g1.back() == Catch::Approx(1.0).margin(1e-12));
    CHECK(grid_points(GridSpec{60.0, 200.0, 10.0}).size() == 15);
    const auto tiny = grid_points(GridSpec{0.0, 1.0, 5.0});
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0] == 0.0);
}

TEST_CASE("sweep table hits the frozen reference markers", "[experiments]") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::iota_sweep;
    spec.bits_list = {9, 10};
    const Table t = run_iota_sweep(spec);
    REQUIRE(t.columns == std::vector<std::string>{"inv_sinr_db", "bits", "iota_exact",
                                                  "iota_simplified"});
    REQUIRE(t.rows.size() == 2 * 601);

    bool seen74 = false, seen808 = false;
    for (const auto& row : t.rows) {
        const double x = std::get<double>(row[0]);
        const double bits = std::get<double>(row[1]);
        const double exact = std::get<double>(row[2]);
        const double simpl = std::get<double>(row[3]);
        CHECK(exact <= simpl + 1e-12);
        CHECK(exact >= 0.0);
        CHECK(exact <= bits + 1e-12);
        if (bits == 9.0 && std::fabs(x - 74.0) < 1e-9) {
            seen74 = true;
            CHECK(exact == Catch::Approx(1.9891361623452932875).margin(1e-9));
        }
        if (bits == 10.0 && std::fabs(x - 80.8) < 1e-9) {
            seen808 = true;
            CHECK(exact == Catch::Approx(1.9890175343677627063).margin(1e-9));
        }
    }
    CHECK(seen74);
    CHECK(seen808);
    // at 0 dB inverse SINR the 9-bit curve is pinned at its resolution
    CHECK(std::get<double>(t.rows.front()[2]) == 9.0);
}

TEST_CASE("cdf runs are worker-count independent", "[experiments]") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::cdf;
    spec.bits_list = {1, 2};
    spec.trials = 200;
    spec.seed = 5;
    const auto s1 = run_cdf_samples(spec, 1);
    const auto s3 = run_cdf_samples(spec, 3);
    REQUIRE(s1.size() == s3.size());
    for (std::size_t mi = 0; mi < s1.size(); ++mi) {
        REQUIRE(s1[mi].size() == 200);
        for (std::size_t t = 0; t < s1[mi].size(); ++t) {
            CHECK(s1[mi][t].value == s3[mi][t].value);
            CHECK(s1[mi][t].sum_term == s3[mi][t].sum_term);
            CHECK(s1[mi][t].capacity_term == s3[mi][t].capacity_term);
        }
    }

    const auto r1 = make_cdf_results(spec, s1);
    const auto r3 = make_cdf_results(spec, s3);
    const auto p1 = temp_file("det1.csv");
    const auto p3 = temp_file("det3.csv");
    render_csv(r1[0], p1.string());
    render_csv(r3[0], p3.string());
    CHECK(slurp(p1) == slurp(p3));
    std::filesystem::remove(p1);
    std::filesystem::remove(p3);

    REQUIRE(r1.size() == 2);
    CHECK(r1[0].label == "bits=1");
    CHECK(r1[1].label == "bits=2");
    CHECK(std::is_sorted(r1[0].sorted_values.begin(), r1[0].sorted_values.end()));
    CHECK(r1[0].sorted_values.front() >= 0.0);

    ExperimentSpec other = spec;
    other.seed = 6;
    const auto rs = run_cdf_experiment(other, 2);
    CHECK(rs[0].sorted_values != r1[0].sorted_values);
}

TEST_CASE("unquantized cdf keeps the lower bound under the capacity", "[experiments]") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::unquantized_cdf;
    spec.B = 4;
    spec.U = 2;
    spec.I = 1;
    spec.n0_db = -20.0;
    spec.trials = 300;
    spec.seed = 2;
    const auto curves = run_unquantized_cdf(spec, 2);
    REQUIRE(curves.size() == 3);
    CHECK(curves[0].label == "lower_bound");
    CHECK(curves[1].label == "jammer_free");
    CHECK(curves[2].label == "jammer_free_reduced");
    for (std::size_t k = 0; k < 300; ++k) {
        CHECK(curves[0].sorted_values[k] <= curves[1].sorted_values[k] + 1e-9);
    }

    ExperimentSpec los = spec;
    los.model.tag = ChannelModel::Tag::los_ula;
    const auto lcurves = run_unquantized_cdf(los, 1);
    REQUIRE(lcurves.size() == 2);
    for (std::size_t k = 0; k < 300; ++k) {
        CHECK(lcurves[0].sorted_values[k] <= lcurves[1].sorted_values[k] + 1e-9);
    }
}

TEST_CASE("asymptotic study matches frozen references", "[experiments]") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::asymptotics;
    spec.bits_list = {1};
    spec.grid = GridSpec{60.0, 150.0, 30.0};
    const Table t = run_asymptotics(spec);
    REQUIRE(t.columns == std::vector<std::string>{"rho_db", "policy", "M", "I_bar"});
    REQUIRE(t.rows.size() == 12);  // 4 grid points x 3 policies

    const auto value_at = [&](const std::string& policy, double rho_db) {
        for (const auto& row : t.rows) {
            if (std::get<std::string>(row[1]) == policy &&
                std::get<double>(row[0]) == rho_db) {
                return std::get<double>(row[3]);
            }
        }
        FAIL("row not found");
        return 0.0;
    };
    CHECK(value_at("m=1", 60.0) == Catch::Approx(0.99285343617671735145).epsilon(1e-9));
    CHECK(value_at("m=1", 90.0) == Catch::Approx(0.047528616728261369338).epsilon(1e-9));
    CHECK(value_at("m=1", 120.0) == Catch::Approx(0.0020119443288162149011).epsilon(1e-9));
    CHECK(value_at("m=1", 150.0) == Catch::Approx(7.971614061000334114e-5).epsilon(1e-9));

    const auto m_at = [&](const std::string& policy, double rho_db) {
        for (const auto& row : t.rows) {
            if (std::get<std::string>(row[1]) == policy &&
                std::get<double>(row[0]) == rho_db) {
                return std::get<double>(row[2]);
            }
        }
        FAIL("row not found");
        return 0.0;
    };
    CHECK(m_at("m=1", 60.0) == 2.0);
    CHECK(m_at("ceil(rho^0.4)", 60.0) == 252.0);
    CHECK(m_at("ceil(rho^0.5)", 60.0) == 1000.0);

    // the square-root policy holds its value under growing jammer power
    ExperimentSpec ratio = spec;
    ratio.grid = GridSpec{100.0, 200.0, 100.0};
    const Table rt = run_asymptotics(ratio);
    double v100 = 0.0, v200 = 0.0;
    for (const auto& row : rt.rows) {
        if (std::get<std::string>(row[1]) == "ceil(rho^0.5)") {
            if (std::get<double>(row[0]) == 100.0) v100 = std::get<double>(row[3]);
            if (std::get<double>(row[0]) == 200.0) v200 = std::get<double>(row[3]);
        }
    }
    CHECK(v100 == Catch::Approx(531.508495182).epsilon(1e-6));
    CHECK(v200 == Catch::Approx(1063.01699036).epsilon(1e-6));
    CHECK(v200 / v100 == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("csv rendering format", "[experiments]") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.0 / 3.0, std::string("x")});
    t.add_row({2.0, std::string("y")});
    const auto p = temp_file("fmt.csv");
    render_csv(t, p.string());
    CHECK(slurp(p) == "a,b\n0.333333333333,x\n2,y\n");
    std::filesystem::remove(p);

    CdfResult c;
    c.label = "demo";
    c.sorted_values = {0.5, 1.5};
    c.trials = 2;
    c.seed = 3;
    const auto pc = temp_file("fmt_cdf.csv");
    render_csv(c, pc.string());
    CHECK(slurp(pc) == "# seed=3\nvalue,cdf\n0.5,0.5\n1.5,1\n");
    std::filesystem::remove(pc);

    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(render_csv(t, "/nonexistent_dir_zzz/out.csv"), std::runtime_error);
}

TEST_CASE("svg rendering produces a plausible document", "[experiments]") {
    std::vector<Curve> curves;
    curves.push_back(Curve{"one", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}});
    curves.push_back(Curve{"two", {{0.0, 1.0}, {2.0, 2.0}}});
    AxesSpec axes;
    axes.x_label = "input";
    axes.y_label = "output";
    const auto p = temp_file("plot.svg");
    render_svg(curves, p.string(), axes);
    const std::string text = slurp(p);
    std::filesystem::remove(p);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);
    CHECK(text.find("polyline") != std::string::npos);
    CHECK(text.find("input") != std::string::npos);
    CHECK(text.find("output") != std::string::npos);
    CHECK(text.find("one") != std::string::npos);

    CHECK_THROWS_AS(render_svg({}, p.string(), axes), std::invalid_argument);
    std::vector<Curve> short_curve{Curve{"p", {{0.0, 0.0}}}};
    CHECK_THROWS_AS(render_svg(short_curve, p.string(), axes), std::invalid_argument);
}

TEST_CASE("deterministic los sum bound is wired to the per-ADC bound", "[experiments]") {
    // one antenna pair, no jammer: reduces to 2 iota(M, 2U/n0)
    const double direct = los_deterministic_sum_bound(1, 1, 0, 0.0, 1e-2, 4);
    CHECK(direct == Catch::Approx(2.0 * iota_bar(4, 200.0)).margin(1e-12));
    // gaussian-input variant halves the SINR argument
    const double gi = los_deterministic_sum_bound(1, 1, 0, 0.0, 1e-2,
                                                  4, SinrVariant::gaussian_input);
    CHECK(gi == Catch::Approx(2.0 * iota_bar(4, 100.0)).margin(1e-12));
}
