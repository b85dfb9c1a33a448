#include "dispest/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dispest {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (trim(s.substr(pos)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError("invalid number for '" + key + "': " + s);
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    const std::string t = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError("invalid integer for '" + key + "': " + s);
    return v;
}

// key = value lines, '#' comments
std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }
    return kv;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_settings(SimulationSettings& s, std::map<std::string, std::string>& kv) {
    auto take = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (auto v = take("v")) s.v = parse_double(*v, "v");
    if (auto v = take("r")) s.r = parse_double(*v, "r");
    if (auto v = take("probe")) s.probe = mixture_from_string(*v);
    if (auto v = take("ancilla")) s.ancilla = mixture_from_string(*v);
    if (auto v = take("probe_loss")) s.probe_loss = parse_double(*v, "probe_loss");
    if (auto v = take("ancilla_loss")) s.ancilla_loss = parse_double(*v, "ancilla_loss");
    if (auto v = take("n_events")) s.n_events = parse_u64(*v, "n_events");
    if (auto v = take("seed")) s.seed = parse_u64(*v, "seed");
    if (auto v = take("profile_bins")) s.profile_bins = static_cast<int>(parse_u64(*v, "profile_bins"));
    if (auto v = take("profile_rmax")) s.profile_rmax = parse_double(*v, "profile_rmax");
}

void reject_unknown(const std::map<std::string, std::string>& kv) {
    if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");
}

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

PhotonMixture SimulationSettings::effective_probe() const {
    return probe_loss > 0.0 ? apply_loss(probe, probe_loss) : probe;
}

PhotonMixture SimulationSettings::effective_ancilla() const {
    return ancilla_loss > 0.0 ? apply_loss(ancilla, ancilla_loss) : ancilla;
}

RunConfig SimulationSettings::run_config() const {
    RunConfig cfg;
    cfg.v = v;
    cfg.r = r;
    cfg.probe = effective_probe();
    cfg.ancilla = effective_ancilla();
    cfg.n_events = n_events;
    cfg.seed = seed;
    return cfg;
}

PhotonMixture mixture_from_string(const std::string& text) {
    std::vector<std::pair<int, double>> weights;
    for (const std::string& part : split(text, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw ConfigError("mixture entry '" + part + "' is not n:weight");
        const auto n = parse_u64(trim(part.substr(0, colon)), "mixture photon number");
        const double w = parse_double(trim(part.substr(colon + 1)), "mixture weight");
        weights.emplace_back(static_cast<int>(n), w);
    }
    try {
        return PhotonMixture(std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid mixture: ") + e.what());
    }
}

std::string mixture_to_string(const PhotonMixture& mix) {
    std::string out;
    for (const auto& [n, w] : mix.weights()) {
        if (!out.empty()) out += ',';
        out += std::to_string(n) + ':' + fmt17(w);
    }
    return out;
}

SimulationSettings parse_config_text(const std::string& text) {
    auto kv = parse_kv(text);
    SimulationSettings s;
    apply_settings(s, kv);
    reject_unknown(kv);
    return s;
}

SimulationSettings load_config(const std::filesystem::path& path) {
    return parse_config_text(read_file(path));
}

SweepSpec parse_sweep_text(const std::string& text) {
    auto kv = parse_kv(text);
    SweepSpec spec;

    const auto axis_it = kv.find("axis");
    if (axis_it == kv.end()) throw ConfigError("sweep spec needs 'axis'");
    const std::string axis = trim(axis_it->second);
    kv.erase(axis_it);
    if (axis == "prior_variance")
        spec.axis = SweepAxis::prior_variance;
    else if (axis == "selection_radius")
        spec.axis = SweepAxis::selection_radius;
    else if (axis == "loss")
        spec.axis = SweepAxis::loss;
    else
        throw ConfigError("unknown axis '" + axis + "'");

    const auto values_it = kv.find("values");
    if (values_it == kv.end()) throw ConfigError("sweep spec needs 'values'");
    for (const std::string& part : split(values_it->second, ','))
        spec.values.push_back(parse_double(trim(part), "values"));
    kv.erase("values");
    if (spec.values.empty()) throw ConfigError("sweep spec has no values");

    apply_settings(spec.base, kv);
    reject_unknown(kv);

    for (double x : spec.values) {
        switch (spec.axis) {
            case SweepAxis::prior_variance:
                if (!(x > 0.0)) throw ConfigError("prior_variance values must be > 0");
                break;
            case SweepAxis::selection_radius:
                if (!(x > 0.0)) throw ConfigError("selection_radius values must be > 0");
                break;
            case SweepAxis::loss:
                if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("loss values must be in [0, 1]");
                break;
        }
    }
    return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
    return parse_sweep_text(read_file(path));
}

void write_events_csv(const std::filesystem::path& path, std::span<const EventRecord> events) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << "xi,eta,y_x,y_p,selected,est_xi,est_eta,sq_err\n";
    char buf[256];
    for (const EventRecord& e : events) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n", e.xi,
                      e.eta, e.y_x, e.y_p, e.selected ? 1 : 0, e.est_xi, e.est_eta, e.sq_err);
        out << buf;
    }
}

std::vector<EventRecord> read_events_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty event file " + path.string());
    if (trim(line) != "xi,eta,y_x,y_p,selected,est_xi,est_eta,sq_err")
        throw ConfigError("unexpected event file header: " + line);

    std::vector<EventRecord> events;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 8)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 8 fields");
        EventRecord e;
        e.xi = parse_double(fields[0], "xi");
        e.eta = parse_double(fields[1], "eta");
        e.y_x = parse_double(fields[2], "y_x");
        e.y_p = parse_double(fields[3], "y_p");
        const std::string sel = trim(fields[4]);
        if (sel != "0" && sel != "1")
            throw ConfigError("line " + std::to_string(lineno) + ": selected must be 0 or 1");
        e.selected = sel == "1";
        auto opt_double = [&](const std::string& s, const char* key) {
            const std::string t = trim(s);
            if (t == "nan" || t == "-nan") return std::numeric_limits<double>::quiet_NaN();
            return parse_double(t, key);
        };
        e.est_xi = opt_double(fields[5], "est_xi");
        e.est_eta = opt_double(fields[6], "est_eta");
        e.sq_err = opt_double(fields[7], "sq_err");
        events.push_back(e);
    }
    return events;
}

std::string report_to_json(const EstimationReport& report) {
    nlohmann::json j;
    j["config"] = {{"v", report.v},         {"r", report.r},
                   {"probe", report.probe}, {"ancilla", report.ancilla},
                   {"n_events", report.n_events}, {"seed", report.seed}};
    j["method"] = report.method;
    j["v_prime"] = report.v_prime;
    j["v_prime_stderr"] = report.v_prime_stderr;
    j["v_prime_c"] = report.v_prime_c;
    j["ratio"] = report.ratio;
    j["ratio_stderr"] = report.ratio_stderr;
    j["select_prob"] = report.select_prob;
    j["n_selected"] = report.n_selected;
    if (report.quad) {
        j["quadrature"] = {{"v_prime", report.quad->v_prime},
                           {"select_prob", report.quad->select_prob},
                           {"ratio", report.quad->v_prime / report.v_prime_c}};
    }
    return j.dump(2);
}

void write_report_json(const std::filesystem::path& path, const EstimationReport& report) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << report_to_json(report) << '\n';
}

std::string report_csv_header() {
    return "v,r,probe,ancilla,n_events,seed,method,v_prime,v_prime_stderr,v_prime_c,"
           "ratio,ratio_stderr,select_prob,n_selected,v_prime_quad,select_prob_quad,ratio_quad";
}

std::string report_csv_row(const EstimationReport& r) {
    std::ostringstream out;
    out << fmt17(r.v) << ',' << fmt17(r.r) << ",\"" << r.probe << "\",\"" << r.ancilla << "\","
        << r.n_events << ',' << r.seed << ',' << r.method << ',' << fmt17(r.v_prime) << ','
        << fmt17(r.v_prime_stderr) << ',' << fmt17(r.v_prime_c) << ',' << fmt17(r.ratio) << ','
        << fmt17(r.ratio_stderr) << ',' << fmt17(r.select_prob) << ',' << r.n_selected;
    if (r.quad)
        out << ',' << fmt17(r.quad->v_prime) << ',' << fmt17(r.quad->select_prob) << ','
            << fmt17(r.quad->v_prime / r.v_prime_c);
    else
        out << ",,,";
    return out.str();
}

void write_report_csv(const std::filesystem::path& path,
                      std::span<const EstimationReport> rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << report_csv_header() << '\n';
    for (const EstimationReport& r : rows) out << report_csv_row(r) << '\n';
}

}  // namespace dispest
