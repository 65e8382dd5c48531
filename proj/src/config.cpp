// YAML dialect for sweep configs.
//
//   name: fig2
//   axis: snr_d_db
//   values: {start: -10, stop: 30, step: 2}   # or an explicit list
//   base: {n_elements: 5, kappa2: 0.01, snr_d_db: 0, snr_e_db: -10, c_th: 1}
//   curves: [{label: N=5, n_elements: 5}, {label: N=10, n_elements: 10}]
//   outputs: [sop, mc_sop]
//   numerics: {quad_order: 4096}
//   mc: {trials: 100000, seed: 7}

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ris_secrecy/errors.hpp"
#include "ris_secrecy/sweep.hpp"

namespace ris::sweep {

namespace {

// Remembers where each field was read so validation errors can point at it.
struct Parser {
    std::map<std::string, int> lines;

    static int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

    void check_keys(const YAML::Node& map, const std::string& where,
                    const std::set<std::string>& allowed) {
        if (!map.IsMap()) throw config_error("expected a mapping", line_of(map), where);
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key)) {
                const std::string field = where.empty() ? key : where + "." + key;
                throw config_error("unknown field '" + field + "'", line_of(kv.first), field);
            }
        }
    }

    template <class T>
    T get(const YAML::Node& node, const std::string& field) {
        lines[field] = line_of(node);
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            throw config_error("field '" + field + "' has the wrong type", line_of(node), field);
        }
    }

    template <class T>
    void read(const YAML::Node& map, const char* key, const std::string& prefix, T& out) {
        if (const YAML::Node n = map[key]) out = get<T>(n, prefix + key);
    }

    template <class T>
    void read(const YAML::Node& map, const char* key, const std::string& prefix,
              std::optional<T>& out) {
        if (const YAML::Node n = map[key]) out = get<T>(n, prefix + key);
    }
};

channel::SystemParams parse_params(Parser& p, const YAML::Node& node) {
    p.check_keys(node, "base",
                 {"n_elements", "kappa2", "kappa2_d_t", "kappa2_d_r", "kappa2_e_t", "kappa2_e_r",
                  "snr_d_db", "snr_e_db", "c_th", "geometry"});
    channel::SystemParams s;
    if (const YAML::Node k = node["kappa2"]) {
        const double v = p.get<double>(k, "base.kappa2");
        s.kappa2_d_t = s.kappa2_d_r = s.kappa2_e_t = s.kappa2_e_r = v;
    }
    p.read(node, "n_elements", "base.", s.n_elements);
    p.read(node, "kappa2_d_t", "base.", s.kappa2_d_t);
    p.read(node, "kappa2_d_r", "base.", s.kappa2_d_r);
    p.read(node, "kappa2_e_t", "base.", s.kappa2_e_t);
    p.read(node, "kappa2_e_r", "base.", s.kappa2_e_r);
    p.read(node, "c_th", "base.", s.c_th);

    if (const YAML::Node g = node["geometry"]) {
        p.check_keys(g, "base.geometry", {"p_s", "n0", "d_sr", "d_rd", "d_re", "chi"});
        channel::Geometry geo;
        p.read(g, "p_s", "base.geometry.", geo.p_s);
        p.read(g, "n0", "base.geometry.", geo.n0);
        p.read(g, "d_sr", "base.geometry.", geo.d_sr);
        p.read(g, "d_rd", "base.geometry.", geo.d_rd);
        p.read(g, "d_re", "base.geometry.", geo.d_re);
        p.read(g, "chi", "base.geometry.", geo.chi);
        s.geometry = geo;
        s.snr_d_db = geo.snr_d_db();
        s.snr_e_db = geo.snr_e_db();
    }
    p.read(node, "snr_d_db", "base.", s.snr_d_db);
    p.read(node, "snr_e_db", "base.", s.snr_e_db);
    return s;
}

std::vector<double> parse_values(Parser& p, const YAML::Node& node) {
    p.lines["values"] = Parser::line_of(node);
    if (node.IsSequence()) return p.get<std::vector<double>>(node, "values");
    p.check_keys(node, "values", {"start", "stop", "step"});
    if (!node["start"] || !node["stop"] || !node["step"]) {
        throw config_error("values range needs start, stop and step", Parser::line_of(node), "values");
    }
    const double start = p.get<double>(node["start"], "values.start");
    const double stop = p.get<double>(node["stop"], "values.stop");
    const double step = p.get<double>(node["step"], "values.step");
    if (!(step != 0.0) || (stop - start) / step < 0.0) {
        throw config_error("values step must move from start towards stop", Parser::line_of(node),
                           "values.step");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    if (s == "inf") return ".inf";
    if (s == "-inf") return "-.inf";
    return s;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw config_error(e.msg, e.mark.line + 1);
    }
    if (!root || !root.IsMap()) throw config_error("config must be a YAML mapping", 1);

    Parser p;
    p.check_keys(root, "", {"name", "axis", "values", "base", "curves", "outputs", "numerics", "mc",
                            "kappa_reading", "threads"});

    SweepSpec spec;
    p.read(root, "name", "", spec.name);
    for (const char* required : {"axis", "values", "base", "outputs"}) {
        if (!root[required]) {
            throw config_error(std::string("missing field '") + required + "'", 1, required);
        }
    }

    try {
        spec.axis = parse_axis(p.get<std::string>(root["axis"], "axis"));
    } catch (const invalid_parameter& e) {
        throw config_error(e.what(), p.lines["axis"], "axis");
    }
    spec.values = parse_values(p, root["values"]);
    spec.base = parse_params(p, root["base"]);

    if (const YAML::Node r = root["kappa_reading"]) {
        const auto v = p.get<std::string>(r, "kappa_reading");
        if (v == "squared") spec.kappa_reading = KappaReading::squared;
        else if (v == "amplitude") spec.kappa_reading = KappaReading::amplitude;
        else throw config_error("kappa_reading must be squared or amplitude", Parser::line_of(r), "kappa_reading");
    }

    if (const YAML::Node curves = root["curves"]) {
        if (!curves.IsSequence()) throw config_error("curves must be a list", Parser::line_of(curves), "curves");
        for (const auto& c : curves) {
            p.check_keys(c, "curves", {"label", "n_elements", "kappa2", "snr_d_db", "snr_e_db", "c_th"});
            Curve curve;
            p.read(c, "label", "curves.", curve.label);
            p.read(c, "n_elements", "curves.", curve.n_elements);
            p.read(c, "kappa2", "curves.", curve.kappa2);
            p.read(c, "snr_d_db", "curves.", curve.snr_d_db);
            p.read(c, "snr_e_db", "curves.", curve.snr_e_db);
            p.read(c, "c_th", "curves.", curve.c_th);
            spec.curves.push_back(std::move(curve));
        }
    }

    const YAML::Node outputs = root["outputs"];
    if (!outputs.IsSequence()) throw config_error("outputs must be a list", Parser::line_of(outputs), "outputs");
    for (const auto& o : outputs) {
        try {
            spec.outputs.push_back(parse_metric(p.get<std::string>(o, "outputs")));
        } catch (const invalid_parameter& e) {
            throw config_error(e.what(), Parser::line_of(o), "outputs");
        }
    }
    std::sort(spec.outputs.begin(), spec.outputs.end());
    spec.outputs.erase(std::unique(spec.outputs.begin(), spec.outputs.end()), spec.outputs.end());
    p.lines["outputs"] = Parser::line_of(outputs);

    if (const YAML::Node n = root["numerics"]) {
        p.check_keys(n, "numerics", {"quad_order", "max_terms", "rel_tol", "tail_eps",
                                     "ideal_hardware_fallback", "eavesdropper_rate", "mc_check"});
        p.read(n, "quad_order", "numerics.", spec.numerics.quad_order);
        p.read(n, "max_terms", "numerics.", spec.numerics.series.max_terms);
        p.read(n, "rel_tol", "numerics.", spec.numerics.series.rel_tol);
        p.read(n, "tail_eps", "numerics.", spec.numerics.tail_eps);
        p.read(n, "ideal_hardware_fallback", "numerics.", spec.numerics.ideal_hardware_fallback);
        p.read(n, "mc_check", "numerics.", spec.numerics.mc_check);
        if (const YAML::Node f = n["eavesdropper_rate"]) {
            const auto v = p.get<std::string>(f, "numerics.eavesdropper_rate");
            if (v == "saturated") spec.numerics.eavesdropper_rate = secrecy::EavesdropperRateForm::saturated;
            else if (v == "printed") spec.numerics.eavesdropper_rate = secrecy::EavesdropperRateForm::printed;
            else throw config_error("eavesdropper_rate must be saturated or printed", Parser::line_of(f),
                                    "numerics.eavesdropper_rate");
        }
    }

    if (const YAML::Node m = root["mc"]) {
        p.check_keys(m, "mc", {"trials", "seed", "stream_count", "law", "threads"});
        p.read(m, "trials", "mc.", spec.mc.trials);
        p.read(m, "seed", "mc.", spec.mc.seed);
        p.read(m, "stream_count", "mc.", spec.mc.stream_count);
        p.read(m, "threads", "mc.", spec.mc.threads);
        if (const YAML::Node l = m["law"]) {
            const auto v = p.get<std::string>(l, "mc.law");
            if (v == "physical") spec.mc.law = mc::ChannelLaw::physical;
            else if (v == "approximated") spec.mc.law = mc::ChannelLaw::approximated;
            else throw config_error("mc.law must be physical or approximated", Parser::line_of(l), "mc.law");
        }
    }
    p.read(root, "threads", "", spec.threads);

    try {
        spec.validate();
    } catch (const invalid_parameter& e) {
        // Scenario fields are reported under base.* when that is where they came from.
        int line = 0;
        std::string field = e.field();
        for (const std::string& key : {e.field(), "base." + e.field(), "numerics." + e.field(),
                                       "mc." + e.field(), "curves." + e.field()}) {
            if (auto it = p.lines.find(key); it != p.lines.end()) {
                line = it->second;
                field = key;
                break;
            }
        }
        throw config_error(std::string("invalid value: ") + e.what(), line, field);
    }
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const SweepSpec& spec) {
    std::ostringstream out;
    if (!spec.name.empty()) out << "name: " << quoted(spec.name) << "\n";
    out << "axis: " << to_string(spec.axis) << "\n";
    out << "values: [";
    for (std::size_t i = 0; i < spec.values.size(); ++i) out << (i ? ", " : "") << num(spec.values[i]);
    out << "]\n";

    const auto& b = spec.base;
    out << "base:\n"
        << "  n_elements: " << b.n_elements << "\n"
        << "  kappa2_d_t: " << num(b.kappa2_d_t) << "\n"
        << "  kappa2_d_r: " << num(b.kappa2_d_r) << "\n"
        << "  kappa2_e_t: " << num(b.kappa2_e_t) << "\n"
        << "  kappa2_e_r: " << num(b.kappa2_e_r) << "\n";
    if (b.geometry) {
        const auto& g = *b.geometry;
        out << "  geometry: {p_s: " << num(g.p_s) << ", n0: " << num(g.n0) << ", d_sr: " << num(g.d_sr)
            << ", d_rd: " << num(g.d_rd) << ", d_re: " << num(g.d_re) << ", chi: " << num(g.chi) << "}\n";
    }
    out << "  snr_d_db: " << num(b.snr_d_db) << "\n"
        << "  snr_e_db: " << num(b.snr_e_db) << "\n"
        << "  c_th: " << num(b.c_th) << "\n";
    out << "kappa_reading: " << (spec.kappa_reading == KappaReading::squared ? "squared" : "amplitude")
        << "\n";

    if (!spec.curves.empty()) {
        out << "curves:\n";
        for (const Curve& c : spec.curves) {
            out << "  - label: " << quoted(c.label) << "\n";
            if (c.n_elements) out << "    n_elements: " << *c.n_elements << "\n";
            if (c.kappa2) out << "    kappa2: " << num(*c.kappa2) << "\n";
            if (c.snr_d_db) out << "    snr_d_db: " << num(*c.snr_d_db) << "\n";
            if (c.snr_e_db) out << "    snr_e_db: " << num(*c.snr_e_db) << "\n";
            if (c.c_th) out << "    c_th: " << num(*c.c_th) << "\n";
        }
    }

    out << "outputs: [";
    for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
        out << (i ? ", " : "") << to_string(spec.outputs[i]);
    }
    out << "]\n";

    const auto& n = spec.numerics;
    out << "numerics:\n"
        << "  quad_order: " << n.quad_order << "\n"
        << "  max_terms: " << n.series.max_terms << "\n"
        << "  rel_tol: " << num(n.series.rel_tol) << "\n"
        << "  tail_eps: " << num(n.tail_eps) << "\n"
        << "  ideal_hardware_fallback: " << (n.ideal_hardware_fallback ? "true" : "false") << "\n"
        << "  eavesdropper_rate: "
        << (n.eavesdropper_rate == secrecy::EavesdropperRateForm::saturated ? "saturated" : "printed")
        << "\n"
        << "  mc_check: " << (n.mc_check ? "true" : "false") << "\n";
    out << "mc:\n"
        << "  trials: " << spec.mc.trials << "\n"
        << "  seed: " << spec.mc.seed << "\n"
        << "  stream_count: " << spec.mc.stream_count << "\n"
        << "  law: " << (spec.mc.law == mc::ChannelLaw::physical ? "physical" : "approximated") << "\n"
        << "  threads: " << spec.mc.threads << "\n";
    out << "threads: " << spec.threads << "\n";
    return out.str();
}

}  // namespace ris::sweep
