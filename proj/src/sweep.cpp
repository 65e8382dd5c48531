#include "ris_secrecy/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ris_secrecy/detail/parallel.hpp"
#include "ris_secrecy/errors.hpp"

namespace ris::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Requested metrics plus, under numerics.mc_check, the Monte Carlo twin of
// every analytic sop / asc output.
std::vector<Metric> effective_outputs(const std::vector<Metric>& outputs, bool mc_check) {
    std::vector<Metric> out = outputs;
    if (mc_check) {
        for (Metric m : outputs) {
            if (m == Metric::sop) out.push_back(Metric::mc_sop);
            if (m == Metric::asc) out.push_back(Metric::mc_asc);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_number(const std::string& s) {
    if (s == "nan") return kNaN;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw config_error("not a number: '" + s + "'");
    }
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

constexpr const char* kCsvHeader = "axis,axis_value,metric,value,std_error,trials,seed";

struct PointResult {
    std::vector<Row> rows;
};

Row make_row(const SweepSpec& spec, double axis_value, const std::string& metric) {
    Row r;
    r.axis = to_string(spec.axis);
    r.axis_value = axis_value;
    r.metric = metric;
    r.value = kNaN;
    return r;
}

void evaluate_metric(Metric metric, const SystemParams& params, const SweepSpec& spec,
                     const mc::McConfig& mc, Row& row) {
    const channel::ChannelStats stats = channel::derive_stats(params);
    switch (metric) {
        case Metric::sop:
            row.value = secrecy::sop(params, stats, spec.numerics).value;
            break;
        case Metric::sop_asymptotic:
            row.value = secrecy::sop_asymptotic(params, stats, spec.numerics);
            break;
        case Metric::asc:
            row.value = secrecy::avg_secrecy_capacity(params, stats, spec.numerics).value;
            break;
        case Metric::mc_sop:
        case Metric::mc_asc: {
            const mc::EstimateWithCI e = metric == Metric::mc_sop
                                             ? mc::estimate_sop(params, mc)
                                             : mc::estimate_asc(params, mc);
            row.value = e.value;
            row.std_error = e.std_error;
            row.trials = e.trials;
            row.seed = e.seed;
            break;
        }
    }
}

double square_if_amplitude(double v, KappaReading reading) {
    return reading == KappaReading::amplitude ? v * v : v;
}

}  // namespace

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::snr_d_db: return "snr_d_db";
        case Axis::n_elements: return "n_elements";
        case Axis::kappa2: return "kappa2";
        case Axis::snr_e_db: return "snr_e_db";
        case Axis::c_th: return "c_th";
    }
    return {};
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::sop: return "sop";
        case Metric::sop_asymptotic: return "sop_asymptotic";
        case Metric::asc: return "asc";
        case Metric::mc_sop: return "mc_sop";
        case Metric::mc_asc: return "mc_asc";
    }
    return {};
}

Axis parse_axis(const std::string& name) {
    for (Axis a : {Axis::snr_d_db, Axis::n_elements, Axis::kappa2, Axis::snr_e_db, Axis::c_th}) {
        if (to_string(a) == name) return a;
    }
    throw invalid_parameter("axis", "unknown axis '" + name + "'");
}

Metric parse_metric(const std::string& name) {
    for (Metric m : {Metric::sop, Metric::sop_asymptotic, Metric::asc, Metric::mc_sop,
                     Metric::mc_asc}) {
        if (to_string(m) == name) return m;
    }
    throw invalid_parameter("outputs", "unknown metric '" + name + "'");
}

void SweepSpec::validate() const {
    if (values.empty()) throw invalid_parameter("values", "must not be empty");
    if (values.size() > 1) {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
                throw invalid_parameter("values", "must be strictly monotone");
            }
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw invalid_parameter("values", "must be finite");
        if (axis == Axis::n_elements && (v < 1.0 || v != std::floor(v))) {
            throw invalid_parameter("values", "n_elements values must be integers >= 1");
        }
    }
    if (outputs.empty()) throw invalid_parameter("outputs", "must name at least one metric");
    if (curves.size() > 1) {
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (curves[i].label.empty()) throw invalid_parameter("curves.label", "must not be empty");
            for (std::size_t j = 0; j < i; ++j) {
                if (curves[i].label == curves[j].label) {
                    throw invalid_parameter("curves.label", "duplicate label '" + curves[i].label + "'");
                }
            }
        }
    }
    numerics.validate();
    const auto metrics = effective_outputs(outputs, numerics.mc_check);
    const bool wants_mc = std::any_of(metrics.begin(), metrics.end(), [](Metric m) {
        return m == Metric::mc_sop || m == Metric::mc_asc;
    });
    if (wants_mc) mc.validate();

    // Every grid point must be a valid scenario.
    const auto check_points = [&](const Curve* c) {
        for (double v : values) point_params(*this, c, v).validate();
    };
    if (curves.empty()) {
        check_points(nullptr);
    } else {
        for (const Curve& c : curves) check_points(&c);
    }
}

SystemParams point_params(const SweepSpec& spec, const Curve* curve, double axis_value) {
    SystemParams p = spec.base;
    p.kappa2_d_t = square_if_amplitude(p.kappa2_d_t, spec.kappa_reading);
    p.kappa2_d_r = square_if_amplitude(p.kappa2_d_r, spec.kappa_reading);
    p.kappa2_e_t = square_if_amplitude(p.kappa2_e_t, spec.kappa_reading);
    p.kappa2_e_r = square_if_amplitude(p.kappa2_e_r, spec.kappa_reading);

    const auto set_kappa = [&](double raw) {
        const double k2 = square_if_amplitude(raw, spec.kappa_reading);
        p.kappa2_d_t = p.kappa2_d_r = p.kappa2_e_t = p.kappa2_e_r = k2;
    };
    // An explicit SNR replaces the one implied by the geometry.
    const auto set_snr = [&](double& field, double db) {
        field = db;
        p.geometry.reset();
    };

    if (curve) {
        if (curve->n_elements) p.n_elements = *curve->n_elements;
        if (curve->kappa2) set_kappa(*curve->kappa2);
        if (curve->snr_d_db) set_snr(p.snr_d_db, *curve->snr_d_db);
        if (curve->snr_e_db) set_snr(p.snr_e_db, *curve->snr_e_db);
        if (curve->c_th) p.c_th = *curve->c_th;
    }
    switch (spec.axis) {
        case Axis::snr_d_db: set_snr(p.snr_d_db, axis_value); break;
        case Axis::n_elements: p.n_elements = static_cast<int>(axis_value); break;
        case Axis::kappa2: set_kappa(axis_value); break;
        case Axis::snr_e_db: set_snr(p.snr_e_db, axis_value); break;
        case Axis::c_th: p.c_th = axis_value; break;
    }
    return p;
}

Table run_sweep(const SweepSpec& spec) {
    spec.validate();

    std::vector<const Curve*> curves;
    if (spec.curves.empty()) {
        curves.push_back(nullptr);
    } else {
        for (const Curve& c : spec.curves) curves.push_back(&c);
    }
    const bool label_metrics = spec.curves.size() > 1;
    const auto outputs = effective_outputs(spec.outputs, spec.numerics.mc_check);

    const std::size_t points = curves.size() * spec.values.size();
    std::vector<PointResult> results(points);

    unsigned threads = spec.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    // Grid points already saturate the workers; keep each MC run on its own thread.
    mc::McConfig mc = spec.mc;
    if (threads > 1 && points > 1) mc.threads = 1;

    detail::parallel_for(points, threads, [&](std::size_t i) {
        const Curve* curve = curves[i / spec.values.size()];
        const double axis_value = spec.values[i % spec.values.size()];
        PointResult& out = results[i];
        for (Metric m : outputs) {
            std::string name = to_string(m);
            if (label_metrics) name += "[" + curve->label + "]";
            Row row = make_row(spec, axis_value, name);
            try {
                evaluate_metric(m, point_params(spec, curve, axis_value), spec, mc, row);
            } catch (const std::exception& e) {
                row.value = kNaN;
                row.std_error.reset();
                row.trials.reset();
                row.seed.reset();
                row.error = e.what();
            }
            out.rows.push_back(std::move(row));
        }
    });

    Table table;
    table.reserve(points * outputs.size());
    for (auto& r : results) {
        for (auto& row : r.rows) table.push_back(std::move(row));
    }
    return table;
}

std::string format_table(const Table& table, Format format) {
    if (format == Format::csv) {
        std::string out = std::string(kCsvHeader) + "\n";
        for (const Row& r : table) {
            out += csv_field(r.axis) + ',' + number(r.axis_value) + ',' + csv_field(r.metric) + ',' +
                   number(r.value) + ',' + (r.std_error ? number(*r.std_error) : "") + ',' +
                   (r.trials ? std::to_string(*r.trials) : "") + ',' +
                   (r.seed ? std::to_string(*r.seed) : "") + '\n';
        }
        return out;
    }

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Row& r : table) {
        nlohmann::ordered_json j;
        j["axis"] = r.axis;
        j["axis_value"] = r.axis_value;
        j["metric"] = r.metric;
        j["value"] = std::isnan(r.value) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.value);
        j["std_error"] = r.std_error ? nlohmann::ordered_json(*r.std_error) : nlohmann::ordered_json(nullptr);
        j["trials"] = r.trials ? nlohmann::ordered_json(*r.trials) : nlohmann::ordered_json(nullptr);
        j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

Table parse_table(const std::string& text, Format format) {
    Table table;
    if (format == Format::csv) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != kCsvHeader) {
            throw config_error("CSV header must be '" + std::string(kCsvHeader) + "'", 1);
        }
        int line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() != 7) throw config_error("expected 7 CSV fields", line_no);
            Row r;
            try {
                r.axis = f[0];
                r.axis_value = parse_number(f[1]);
                r.metric = f[2];
                r.value = parse_number(f[3]);
                if (!f[4].empty()) r.std_error = parse_number(f[4]);
                if (!f[5].empty()) r.trials = std::stoull(f[5]);
                if (!f[6].empty()) r.seed = std::stoull(f[6]);
            } catch (const std::exception& e) {
                throw config_error(e.what(), line_no);
            }
            table.push_back(std::move(r));
        }
        return table;
    }

    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("rows")) {
        Row r;
        r.axis = j.at("axis").get<std::string>();
        r.axis_value = j.at("axis_value").get<double>();
        r.metric = j.at("metric").get<std::string>();
        r.value = j.at("value").is_null() ? kNaN : j.at("value").get<double>();
        if (!j.at("std_error").is_null()) r.std_error = j.at("std_error").get<double>();
        if (!j.at("trials").is_null()) r.trials = j.at("trials").get<std::uint64_t>();
        if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("error")) r.error = j.at("error").get<std::string>();
        table.push_back(std::move(r));
    }
    return table;
}

void emit(const Table& table, Format format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    out << format_table(table, format);
    if (!out) throw io_error("write to '" + path.string() + "' failed");
}

}  // namespace ris::sweep
