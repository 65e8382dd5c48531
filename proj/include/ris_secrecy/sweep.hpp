#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ris_secrecy/channel_model.hpp"
#include "ris_secrecy/monte_carlo.hpp"
#include "ris_secrecy/secrecy_analysis.hpp"

// Parameter sweeps over one scenario axis, producing figure-ready tables.
namespace ris::sweep {

using channel::SystemParams;

enum class Axis { snr_d_db, n_elements, kappa2, snr_e_db, c_th };

// Declaration order is the row order within one grid point.
enum class Metric { sop, sop_asymptotic, asc, mc_sop, mc_asc };

// How configured impairment numbers are read: as kappa^2 directly, or as
// kappa (squared before use).
enum class KappaReading { squared, amplitude };

// One curve of a figure: a label plus overrides of the base scenario.
struct Curve {
    std::string label;
    std::optional<int> n_elements;
    std::optional<double> kappa2;  // sets all four impairment levels
    std::optional<double> snr_d_db;
    std::optional<double> snr_e_db;
    std::optional<double> c_th;
};

struct SweepSpec {
    std::string name;
    Axis axis = Axis::snr_d_db;
    std::vector<double> values;
    SystemParams base;
    std::vector<Curve> curves;    // empty: the base scenario alone
    std::vector<Metric> outputs;  // kept sorted and unique
    secrecy::NumericsConfig numerics;
    mc::McConfig mc;
    KappaReading kappa_reading = KappaReading::squared;
    unsigned threads = 0;  // grid-point workers; 0 = hardware concurrency

    // Throws invalid_parameter naming the offending field.
    void validate() const;
};

struct Row {
    std::string axis;
    double axis_value = 0.0;
    std::string metric;  // "sop", or "sop[label]" for multi-curve sweeps
    double value = 0.0;  // NaN when the point failed
    std::optional<double> std_error;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::string error;   // empty on success
};

using Table = std::vector<Row>;

// The scenario evaluated at one grid point of one curve.
SystemParams point_params(const SweepSpec& spec, const Curve* curve, double axis_value);

// Evaluates every (curve, axis value, metric). Rows are ordered by curve,
// then axis value in the given order, then metric. Per-point failures are
// recorded in Row::error and never abort the sweep.
Table run_sweep(const SweepSpec& spec);

enum class Format { csv, json };

// Parse failure with the position and field that caused it.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& what, int line = 0, std::string field = {})
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line),
          field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::filesystem::path& path);
// Config echo; parse_config(dump_config(s)) reproduces s.
std::string dump_config(const SweepSpec& spec);

std::string format_table(const Table& table, Format format);
Table parse_table(const std::string& text, Format format);
void emit(const Table& table, Format format, const std::filesystem::path& path);

std::string to_string(Axis axis);
std::string to_string(Metric metric);
Axis parse_axis(const std::string& name);
Metric parse_metric(const std::string& name);

}  // namespace ris::sweep
