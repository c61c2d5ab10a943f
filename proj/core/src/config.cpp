#include "qlimit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qlimit/errors.hpp"
#include "qlimit/figures.hpp"

namespace qlimit {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"q", "kappa", "mu", "beta", "omega",
                                            "t_end", "dt", "method", "snapshots"};
    return keys;
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

double number(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing required key");
    if (!it->is_number()) fail(key, "expected a number");
    return it->get<double>();
}

} // namespace

SimulationConfig parse_config_json(std::string_view text) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& item : obj.items()) {
        if (!known_keys().contains(item.key())) fail(item.key(), "unknown key");
    }

    SimulationConfig c;
    const auto q = obj.find("q");
    if (q == obj.end()) fail("q", "missing required key");
    if (!q->is_number_integer()) fail("q", "expected an integer");
    const auto qv = q->get<long long>();
    if (qv < 1 || qv > 100000) fail("q", "must be an integer >= 1");
    c.q = static_cast<int>(qv);

    c.kappa = number(obj, "kappa");
    c.mu = number(obj, "mu");
    c.beta = number(obj, "beta");
    c.omega = number(obj, "omega");
    c.t_end = number(obj, "t_end");
    c.dt = obj.contains("dt") ? number(obj, "dt") : 1.0;

    if (const auto m = obj.find("method"); m != obj.end()) {
        if (!m->is_string()) fail("method", "expected a string");
        try {
            c.method = method_from_string(m->get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail("method", e.what());
        }
    }

    if (const auto s = obj.find("snapshots"); s != obj.end()) {
        if (!s->is_array()) fail("snapshots", "expected an array of times");
        c.snapshots.clear();
        for (const auto& v : *s) {
            if (!v.is_number()) fail("snapshots", "expected an array of times");
            c.snapshots.push_back(v.get<double>());
        }
    } else {
        c.snapshots = {0.0};
        if (c.t_end > 0.0) c.snapshots.push_back(c.t_end);
    }

    // Range checks (and their key-naming messages) live in one place.
    SimulationConfig probe = c;
    validate_config(probe);
    return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string emit_config_json(const SimulationConfig& c) {
    json obj;
    obj["q"] = c.q;
    obj["kappa"] = c.kappa;
    obj["mu"] = c.mu;
    obj["beta"] = c.beta;
    obj["omega"] = c.omega;
    obj["t_end"] = c.t_end;
    obj["dt"] = c.dt;
    obj["method"] = std::string(to_string(c.method));
    obj["snapshots"] = c.snapshots;
    return obj.dump(2);
}

SimulationConfig preset_config(std::string_view name) {
    if (name == "fig2") return figures::fig2_config();
    throw ConfigError("unknown preset '" + std::string(name) + "' (evolve presets: fig2)");
}

} // namespace qlimit
