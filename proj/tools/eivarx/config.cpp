#include "eivarx/config.hpp"

#include <eivarx/errors.hpp>
#include <eivarx/noise_model.hpp>

#include <json.hpp>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eivarx::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string join(const Vector& v) {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v(i));
    return out;
}

double to_double(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(where + ": invalid number '" + t + "'");
    return v;
}

long long to_int(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(where + ": invalid integer '" + t + "'");
    return v;
}

std::uint64_t to_u64(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(where + ": invalid unsigned integer '" + t + "'");
    return v;
}

Vector to_vector(const std::string& text, const std::string& where) {
    try {
        const auto xs = parse_number_list(text);
        return Eigen::Map<const Vector>(xs.data(), static_cast<Index>(xs.size()));
    } catch (const InvalidArgument& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

void apply(RunConfig& c, const std::string& key, const std::string& value, const std::string& where) {
    const std::string w = where + ": " + key;
    auto positive = [&](double v) {
        if (!(v > 0.0)) throw ConfigError(w + " must be positive");
        return v;
    };
    auto non_negative = [&](double v) {
        if (v < 0.0) throw ConfigError(w + " must be non-negative");
        return v;
    };
    auto int_at_least = [&](long long v, long long lo) {
        if (v < lo) throw ConfigError(w + " must be at least " + std::to_string(lo));
        return static_cast<int>(v);
    };

    if (key == "scenario.name") c.scenario.name = trim(value);
    else if (key == "model.a") c.scenario.model.a = to_vector(value, w);
    else if (key == "model.b") {
        c.scenario.model.b = to_vector(value, w);
        if (c.scenario.model.b.size() == 0) throw ConfigError(w + " needs at least one coefficient");
    } else if (key == "model.delay") c.scenario.model.delay = int_at_least(to_int(value, w), 0);
    else if (key == "noise.sigma2_ey") c.scenario.noise.sigma2_ey = non_negative(to_double(value, w));
    else if (key == "noise.sigma2_eu") c.scenario.noise.sigma2_eu = non_negative(to_double(value, w));
    else if (key == "noise.snr_y") c.snr_y = positive(to_double(value, w));
    else if (key == "noise.snr_u") c.snr_u = positive(to_double(value, w));
    else if (key == "sim.n") c.scenario.n = static_cast<std::size_t>(int_at_least(to_int(value, w), 1));
    else if (key == "sim.prbs_bits") {
        const int m = int_at_least(to_int(value, w), 0);
        if (m != 0 && (m < 2 || m > 31)) throw ConfigError(w + " must be 0 or in [2, 31]");
        c.scenario.prbs_bits = m;
    } else if (key == "sim.prbs_seed") c.scenario.prbs_seed = to_u64(value, w);
    else if (key == "pipeline.lag") c.pipeline.lag = int_at_least(to_int(value, w), 2);
    else if (key == "pipeline.alpha") {
        const double a = to_double(value, w);
        if (!(a > 0.0 && a < 1.0)) throw ConfigError(w + " must lie in (0, 1)");
        c.pipeline.alpha = a;
    } else if (key == "pipeline.max_outer_iter") c.pipeline.max_outer_iter = int_at_least(to_int(value, w), 1);
    else if (key == "pipeline.tol_theta") c.pipeline.tol_theta = positive(to_double(value, w));
    else if (key == "pipeline.tol_var") c.pipeline.tol_var = positive(to_double(value, w));
    else if (key == "pipeline.zero_threshold") c.pipeline.zero_threshold = positive(to_double(value, w));
    else if (key == "pipeline.jackknife_segments") c.pipeline.jackknife_segments = int_at_least(to_int(value, w), 2);
    else if (key == "mc.replications") c.replications = int_at_least(to_int(value, w), 1);
    else if (key == "mc.base_seed") c.base_seed = to_u64(value, w);
    else if (key == "mc.threads") c.threads = static_cast<unsigned>(int_at_least(to_int(value, w), 0));
    else if (key == "mc.methods") {
        std::vector<Method> methods;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                methods.push_back(parse_method(item));
            } catch (const InvalidArgument& e) {
                throw ConfigError(w + ": " + e.what());
            }
        }
        if (methods.empty()) throw ConfigError(w + " lists no methods");
        c.methods = methods;
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
    c.sources[key] = where;
}

std::string located(const RunConfig& c, const std::string& key) {
    const auto it = c.sources.find(key);
    return it == c.sources.end() ? key : it->second + ": " + key;
}

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    std::string v;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            v += (i ? "," : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    } else if (j.is_string()) {
        v = j.get<std::string>();
    } else if (!j.is_null()) {
        v = j.dump();
    }
    out.emplace_back(prefix, v);
}

RunConfig example1() {
    RunConfig c;
    c.scenario.name = "example1";
    c.scenario.model = DifferenceEquation(Vector{{-1.5, 0.7}}, Vector{{1.0, 0.5}}, 1);
    c.scenario.noise = {0.2, 0.1};
    c.scenario.n = 1023;
    c.pipeline.lag = 5;
    return c;
}

RunConfig example2() {
    RunConfig c;
    c.scenario.name = "example2";
    c.scenario.model = DifferenceEquation(Vector{{-1.1, 0.7}}, Vector{{1.0, 0.5}}, 2);
    c.scenario.noise = {0.15, 0.1};
    c.scenario.n = 4095;
    c.pipeline.lag = 6;
    return c;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string s = trim(item);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size())
            throw InvalidArgument("invalid number '" + s + "' in list '" + t + "'");
        out.push_back(v);
    }
    if (t.back() == ',') throw InvalidArgument("trailing comma in list '" + t + "'");
    return out;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "scenario.name",      "model.a",           "model.b",
        "model.delay",        "noise.sigma2_ey",   "noise.sigma2_eu",
        "noise.snr_y",        "noise.snr_u",       "sim.n",
        "sim.prbs_bits",      "sim.prbs_seed",     "pipeline.lag",
        "pipeline.alpha",     "pipeline.max_outer_iter", "pipeline.tol_theta",
        "pipeline.tol_var",   "pipeline.zero_threshold", "pipeline.jackknife_segments",
        "mc.replications",    "mc.base_seed",      "mc.methods",
        "mc.threads"};
    return keys;
}

std::vector<std::string> preset_names() {
    return {"example1", "example2", "table1", "table7", "table8", "table9"};
}

RunConfig preset(const std::string& name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "table1") {
        RunConfig c = example1();
        c.scenario.name = "table1";
        c.scenario.n = 4095;
        c.methods = {Method::Dpca, Method::DipcaDiag};
        return c;
    }
    if (name == "table7") {
        RunConfig c = example1();
        c.scenario.name = "table7";
        c.scenario.n = 4095;
        return c;
    }
    if (name == "table8") {
        RunConfig c = example2();
        c.scenario.name = "table8";
        c.methods = {Method::OlsArx, Method::Proposed};
        return c;
    }
    if (name == "table9") {
        RunConfig c = example2();
        c.scenario.name = "table9";
        c.scenario.noise.sigma2_eu = 0.01;
        c.methods = {Method::OlsArx, Method::Proposed};
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

RunConfig parse_config(const std::string& text, const std::string& origin, RunConfig base) {
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(origin + ": invalid JSON: " + e.what());
        }
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(j, "", kv);
        for (const auto& [k, v] : kv) apply(base, k, v, origin);
        return base;
    }

    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        apply(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path, std::move(base));
}

std::map<std::string, std::string> describe(const RunConfig& c) {
    std::map<std::string, std::string> m;
    m["scenario.name"] = c.scenario.name;
    m["model.a"] = join(c.scenario.model.a);
    m["model.b"] = join(c.scenario.model.b);
    m["model.delay"] = std::to_string(c.scenario.model.delay);
    m["noise.sigma2_ey"] = fmt(c.scenario.noise.sigma2_ey);
    m["noise.sigma2_eu"] = fmt(c.scenario.noise.sigma2_eu);
    if (c.snr_y) m["noise.snr_y"] = fmt(*c.snr_y);
    if (c.snr_u) m["noise.snr_u"] = fmt(*c.snr_u);
    m["sim.n"] = std::to_string(c.scenario.n);
    m["sim.prbs_bits"] = std::to_string(c.scenario.register_length());
    m["sim.prbs_seed"] = std::to_string(c.scenario.prbs_seed);
    m["pipeline.lag"] = std::to_string(c.pipeline.lag);
    m["pipeline.alpha"] = fmt(c.pipeline.alpha);
    m["pipeline.max_outer_iter"] = std::to_string(c.pipeline.max_outer_iter);
    m["pipeline.tol_theta"] = fmt(c.pipeline.tol_theta);
    m["pipeline.tol_var"] = fmt(c.pipeline.tol_var);
    m["pipeline.zero_threshold"] = fmt(c.pipeline.zero_threshold);
    m["pipeline.jackknife_segments"] = std::to_string(c.pipeline.jackknife_segments);
    m["mc.replications"] = std::to_string(c.replications);
    if (c.base_seed) m["mc.base_seed"] = std::to_string(*c.base_seed);
    std::string methods;
    for (std::size_t i = 0; i < c.methods.size(); ++i)
        methods += (i ? "," : "") + method_name(c.methods[i]);
    m["mc.methods"] = methods;
    m["mc.threads"] = std::to_string(c.threads);
    return m;
}

void validate(const RunConfig& c) {
    try {
        c.scenario.model.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(located(c, "model.b") + ": " + e.what());
    }
    if (!is_stable(c.scenario.model.a))
        throw ConfigError(located(c, "model.a") +
                          ": AR polynomial is not stable (roots on or outside the unit circle)");
    const std::size_t min_n = 4 * static_cast<std::size_t>(c.pipeline.lag + 1) + 1;
    if (c.scenario.n < min_n)
        throw ConfigError(located(c, "sim.n") + " must exceed 4 (pipeline.lag + 1), at least " +
                          std::to_string(min_n));
    try {
        c.pipeline.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(located(c, "pipeline.lag") + ": " + e.what());
    }
}

}  // namespace eivarx::cli
