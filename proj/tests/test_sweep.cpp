#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "ris_secrecy/errors.hpp"
#include "ris_secrecy/sweep.hpp"

using namespace ris;
using namespace ris::sweep;

namespace {

const char* kMinimal = R"(
name: small
axis: snr_d_db
values: [0, 10]
base: {n_elements: 5, kappa2: 0.01, snr_e_db: -10, c_th: 1}
outputs: [sop, asc]
numerics: {quad_order: 256}
)";

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ris_secrecy_test_" + name);
}

config_error config_failure(const std::string& text) {
    try {
        parse_config(text);
    } catch (const config_error& e) {
        return e;
    }
    ADD_FAILURE() << "expected config_error";
    return config_error("none");
}

}  // namespace

TEST(Config, ParsesMinimalSweep) {
    const SweepSpec s = parse_config(kMinimal);
    EXPECT_EQ(s.name, "small");
    EXPECT_EQ(s.axis, Axis::snr_d_db);
    EXPECT_EQ(s.values, (std::vector<double>{0.0, 10.0}));
    EXPECT_EQ(s.base.n_elements, 5);
    EXPECT_DOUBLE_EQ(s.base.kappa2_d(), 0.02);
    EXPECT_DOUBLE_EQ(s.base.kappa2_e(), 0.02);
    EXPECT_EQ(s.outputs, (std::vector<Metric>{Metric::sop, Metric::asc}));
    EXPECT_EQ(s.numerics.quad_order, 256);
}

TEST(Config, RangeValues) {
    const SweepSpec s = parse_config(R"(
axis: snr_d_db
values: {start: -10, stop: 30, step: 2}
base: {n_elements: 5}
outputs: [sop]
)");
    ASSERT_EQ(s.values.size(), 21u);
    EXPECT_EQ(s.values.front(), -10.0);
    EXPECT_EQ(s.values.back(), 30.0);
}

TEST(Config, ZeroElementsNamesTheField) {
    const auto e = config_failure(R"(
axis: snr_d_db
values: [0]
base: {n_elements: 0}
outputs: [sop]
)");
    EXPECT_EQ(e.field(), "base.n_elements");
    EXPECT_EQ(e.line(), 4);
}

TEST(Config, EmptyOutputsRejectedBeforeComputation) {
    const auto e = config_failure(R"(
axis: snr_d_db
values: [0]
base: {n_elements: 5}
outputs: []
)");
    EXPECT_EQ(e.field(), "outputs");
}

TEST(Config, DiagnosticsCarryLineAndField) {
    auto e = config_failure("axis: snr_d_db\nvalues: [0]\nbase: {n_elements: 5, bogus: 1}\noutputs: [sop]\n");
    EXPECT_EQ(e.field(), "base.bogus");
    EXPECT_EQ(e.line(), 3);

    e = config_failure("axis: snr_d_db\nvalues: [0]\nbase: {n_elements: five}\noutputs: [sop]\n");
    EXPECT_EQ(e.field(), "base.n_elements");

    e = config_failure("axis: sideways\nvalues: [0]\nbase: {}\noutputs: [sop]\n");
    EXPECT_EQ(e.field(), "axis");

    e = config_failure("axis: snr_d_db\nvalues: [0, 0]\nbase: {}\noutputs: [sop]\n");
    EXPECT_EQ(e.field(), "values");

    e = config_failure("axis: snr_d_db\nvalues: [0]\nbase: {}\noutputs: [mc_sop]\nmc: {trials: 10}\n");
    EXPECT_EQ(e.field(), "mc.trials");
    EXPECT_EQ(e.line(), 5);
}

TEST(Config, BadYamlReportsLine) {
    const auto e = config_failure("axis: snr_d_db\nvalues: [0\nbase: {}\n");
    EXPECT_GT(e.line(), 0);
}

TEST(Config, DumpRoundTrip) {
    SweepSpec s = parse_config(kMinimal);
    s.curves = {{"a", 5, std::nullopt, std::nullopt, std::nullopt, std::nullopt},
                {"b", 10, 0.1, 3.25, -7.5, 0.5}};
    s.values = {0.1, 0.2, 1.0 / 3.0};
    s.mc.trials = 12345;
    s.mc.seed = 0xFFFFFFFFFFFFull;
    s.numerics.eavesdropper_rate = secrecy::EavesdropperRateForm::printed;
    s.kappa_reading = KappaReading::amplitude;
    const std::string text = dump_config(s);
    const SweepSpec back = parse_config(text);
    EXPECT_EQ(dump_config(back), text);
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.mc.seed, s.mc.seed);
    ASSERT_EQ(back.curves.size(), 2u);
    EXPECT_EQ(back.curves[1].snr_d_db, 3.25);
    EXPECT_EQ(back.kappa_reading, KappaReading::amplitude);
}

TEST(Table, CsvRoundTrip) {
    Table t(3);
    t[0] = {"snr_d_db", -10.0, "sop", 0.123456789012345, std::nullopt, std::nullopt, std::nullopt, ""};
    t[1] = {"snr_d_db", 0.5, "mc_sop[N=5]", 1.0 / 3.0, 1e-3, 100000u, 42u, ""};
    t[2] = {"snr_d_db", 2.0, "asc", std::nan(""), std::nullopt, std::nullopt, std::nullopt, "boom"};
    const std::string csv = format_table(t, Format::csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "axis,axis_value,metric,value,std_error,trials,seed");
    const Table back = parse_table(csv, Format::csv);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[0].value, t[0].value);
    EXPECT_EQ(back[1].value, t[1].value);
    EXPECT_EQ(back[1].std_error, 1e-3);
    EXPECT_EQ(back[1].trials, 100000u);
    EXPECT_EQ(back[1].metric, "mc_sop[N=5]");
    EXPECT_TRUE(std::isnan(back[2].value));
}

TEST(Table, JsonRoundTripThroughFile) {
    Table t(1);
    t[0] = {"c_th", 1.5, "sop", 0.25, 0.01, 1000u, 7u, "note"};
    const auto path = temp_file("table.json");
    emit(t, Format::json, path);
    std::ifstream in(path);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    const Table back = parse_table(text, Format::json);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].value, 0.25);
    EXPECT_EQ(back[0].seed, 7u);
    EXPECT_EQ(back[0].error, "note");
    std::filesystem::remove(path);
}

TEST(Io, Errors) {
    EXPECT_THROW(load_config("/nonexistent/dir/config.yaml"), io_error);
    EXPECT_THROW(emit({}, Format::csv, "/nonexistent/dir/out.csv"), io_error);
}

TEST(RunSweep, RowsOrderedAndAnalyticRowsHaveNoError) {
    const Table t = run_sweep(parse_config(kMinimal));
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].metric, "sop");
    EXPECT_EQ(t[1].metric, "asc");
    EXPECT_EQ(t[0].axis_value, 0.0);
    EXPECT_EQ(t[2].axis_value, 10.0);
    for (const Row& r : t) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_FALSE(r.std_error.has_value());
    }
    EXPECT_LT(t[2].value, t[0].value);
}

TEST(RunSweep, PerPointFailureDoesNotAbort) {
    SweepSpec s = parse_config(kMinimal);
    s.outputs = {Metric::sop, Metric::sop_asymptotic};
    s.axis = Axis::kappa2;
    s.values = {0.0, 0.01};
    const Table t = run_sweep(s);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_TRUE(t[0].error.empty());
    EXPECT_FALSE(t[1].error.empty());  // theta4 = 0 at ideal hardware
    EXPECT_TRUE(std::isnan(t[1].value));
    EXPECT_TRUE(t[3].error.empty());
}

TEST(RunSweep, AxisOverridesBaseAndKappaReading) {
    SweepSpec s = parse_config(kMinimal);
    s.axis = Axis::n_elements;
    s.values = {3, 7};
    EXPECT_EQ(point_params(s, nullptr, 7).n_elements, 7);
    s.kappa_reading = KappaReading::amplitude;
    EXPECT_NEAR(point_params(s, nullptr, 7).kappa2_d_t, 1e-4, 1e-18);
    s.values = {3.5};
    EXPECT_THROW(s.validate(), invalid_parameter);
}

TEST(RunSweep, MonteCarloRowsAreReproducible) {
    SweepSpec s = parse_config(kMinimal);
    s.outputs = {Metric::mc_sop};
    s.mc.trials = 20'000;
    s.mc.seed = 3;
    s.threads = 2;
    const auto a = format_table(run_sweep(s), Format::csv);
    s.threads = 1;
    EXPECT_EQ(format_table(run_sweep(s), Format::csv), a);
}

TEST(Presets, LoadAndDeclareDefaults) {
    for (const char* name : {"fig2", "fig3", "fig4", "fig5", "fig6"}) {
        const SweepSpec s = load_config(std::filesystem::path(RIS_PRESET_DIR) / (std::string(name) + ".yaml"));
        EXPECT_EQ(s.name, name);
        EXPECT_EQ(s.axis, Axis::snr_d_db);
        EXPECT_EQ(s.values.front(), -10.0);
        EXPECT_EQ(s.values.back(), 30.0);
        EXPECT_EQ(s.values.size(), 21u);
        EXPECT_EQ(s.base.c_th, 1.0);
        EXPECT_EQ(s.base.kappa2_d_t, 0.01);
        EXPECT_EQ(s.base.kappa2_e_r, 0.01);
        EXPECT_EQ(s.mc.trials, 100'000u);
        EXPECT_GE(s.curves.size(), 2u);
    }
}

TEST(RunSweep, McCheckAddsMonteCarloTwins) {
    SweepSpec s = parse_config(kMinimal);
    s.numerics.mc_check = true;
    s.mc.trials = 10'000;
    s.values = {10.0};
    const Table t = run_sweep(s);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].metric, "sop");
    EXPECT_EQ(t[1].metric, "asc");
    EXPECT_EQ(t[2].metric, "mc_sop");
    EXPECT_EQ(t[3].metric, "mc_asc");
    EXPECT_EQ(t[2].trials, 10'000u);
}
