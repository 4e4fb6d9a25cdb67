// SPDX-License-Identifier: Apache-2.0
#include "lamperti/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace lamperti {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw ConfigError(join(path, it.key()), "unknown field");
    }
}

const json& object_at(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "(root)" : path, "expected an object");
    return j;
}

double get_number(const json& j, const std::string& key, const std::string& path, std::optional<double> fallback) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(join(path, key), "required field missing");
    }
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
    return v.get<double>();
}

std::int64_t get_int(const json& j, const std::string& key, const std::string& path, std::int64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<std::int64_t>(v.get<double>())))
        return static_cast<std::int64_t>(v.get<double>());
    throw ConfigError(join(path, key), "expected an integer");
}

SimFields sim_from_json(const json& j, const std::string& path) {
    object_at(j, path);
    reject_unknown(j, path, {"a", "start", "horizon", "n_traj", "escape_level"});
    SimFields s;
    s.a = get_number(j, "a", path, s.a);
    if (j.contains("start")) {
        const json& st = j.at("start");
        if (st.is_number()) {
            s.start = st.get<double>();
        } else if (st.is_array() && st.size() == 2 && st[0].is_number() && st[1].is_number()) {
            s.start = st[0].get<double>();
            s.start_y = st[1].get<double>();
        } else {
            throw ConfigError(join(path, "start"), "expected a number or a [x, y] pair");
        }
    }
    s.horizon = get_int(j, "horizon", path, s.horizon);
    s.n_traj = get_int(j, "n_traj", path, s.n_traj);
    s.escape_level = get_number(j, "escape_level", path, s.escape_level);
    if (s.horizon < 0) throw ConfigError(join(path, "horizon"), "must be non-negative");
    if (s.n_traj < 0) throw ConfigError(join(path, "n_traj"), "must be non-negative");
    return s;
}

DriftRequest drift_from_json(const json& j, const std::string& path) {
    object_at(j, path);
    reject_unknown(j, path, {"i", "nu", "x_grid"});
    DriftRequest d;
    d.i = static_cast<int>(get_int(j, "i", path, d.i));
    d.nu = get_number(j, "nu", path, d.nu);
    if (j.contains("x_grid")) {
        const json& g = j.at("x_grid");
        if (!g.is_array() || g.empty()) throw ConfigError(join(path, "x_grid"), "expected a non-empty array");
        d.x_grid.clear();
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!g[k].is_number()) throw ConfigError(join(path, "x_grid") + "[" + std::to_string(k) + "]", "expected a number");
            d.x_grid.push_back(g[k].get<double>());
        }
    }
    return d;
}

SweepAxis sweep_from_json(const json& j, const std::string& path) {
    object_at(j, path);
    reject_unknown(j, path, {"param", "min", "max", "steps"});
    SweepAxis ax;
    if (!j.contains("param") || !j.at("param").is_string()) throw ConfigError(join(path, "param"), "expected a string");
    ax.param = j.at("param").get<std::string>();
    if (!is_sweepable(ax.param)) throw ConfigError(join(path, "param"), "not a sweepable parameter: " + ax.param);
    ax.min = get_number(j, "min", path, std::nullopt);
    ax.max = get_number(j, "max", path, std::nullopt);
    ax.steps = static_cast<int>(get_int(j, "steps", path, 2));
    if (ax.steps < 2) throw ConfigError(join(path, "steps"), "must be at least 2");
    return ax;
}

}  // namespace

double SweepAxis::value(int k) const { return min + (max - min) * static_cast<double>(k) / (steps - 1); }

ChainSpec spec_from_json(const json& j, const std::string& path) {
    object_at(j, path);
    ChainSpec s;
    if (!j.contains("regime") || !j.at("regime").is_string())
        throw ConfigError(join(path, "regime"), "expected one of half_line, line_out, line_in, line_balanced, plane");
    const auto r = regime_from_string(j.at("regime").get<std::string>());
    if (!r) throw ConfigError(join(path, "regime"), "unknown regime '" + j.at("regime").get<std::string>() + "'");
    s.regime = *r;

    // The exponent that does not describe the heavy side only has to exceed
    // it; 3 keeps the default clear of every range check.
    if (s.regime == Regime::LineIn) {
        s.tail.beta = get_number(j, "beta", path, std::nullopt);
        s.tail.alpha = get_number(j, "alpha", path, 3.0);
    } else {
        s.tail.alpha = get_number(j, "alpha", path, std::nullopt);
        s.tail.beta = get_number(j, "beta", path, 3.0);
    }
    s.tail.c = get_number(j, "c", path, 1.0);
    s.tail.x0 = get_number(j, "x0", path, 1.0);
    s.drift.gamma = get_number(j, "gamma", path, 0.0);
    s.drift.b = get_number(j, "b", path, 0.0);
    s.p_heavy = get_number(j, "p_heavy", path, 0.25);
    if (j.contains("plane")) {
        const std::string pp = join(path, "plane");
        const json& pj = object_at(j.at("plane"), pp);
        reject_unknown(pj, pp, {"p_radial", "c_radial", "c_transverse", "beta_light"});
        PlaneParams pl;
        pl.p_radial = get_number(pj, "p_radial", pp, std::nullopt);
        pl.c_radial = get_number(pj, "c_radial", pp, 1.0);
        pl.c_transverse = get_number(pj, "c_transverse", pp, 1.0);
        pl.beta_light = get_number(pj, "beta_light", pp, 2.0);
        s.plane = pl;
    }
    return s;
}

json spec_to_json(const ChainSpec& s) {
    json j;
    j["regime"] = std::string(to_string(s.regime));
    j["alpha"] = s.tail.alpha;
    j["beta"] = s.tail.beta;
    j["c"] = s.tail.c;
    j["x0"] = s.tail.x0;
    j["gamma"] = s.drift.gamma;
    j["b"] = s.drift.b;
    j["p_heavy"] = s.p_heavy;
    if (s.plane) {
        j["plane"] = {{"p_radial", s.plane->p_radial},
                      {"c_radial", s.plane->c_radial},
                      {"c_transverse", s.plane->c_transverse},
                      {"beta_light", s.plane->beta_light}};
    }
    return j;
}

json config_to_json(const RunConfig& cfg) {
    json j = spec_to_json(cfg.spec);
    if (cfg.sim) {
        const SimFields& s = *cfg.sim;
        j["sim"] = {{"a", s.a}, {"horizon", s.horizon}, {"n_traj", s.n_traj}, {"escape_level", s.escape_level}};
        j["sim"]["start"] = cfg.spec.regime == Regime::Plane ? json::array({s.start, s.start_y}) : json(s.start);
    }
    if (cfg.drift) j["drift"] = {{"i", cfg.drift->i}, {"nu", cfg.drift->nu}, {"x_grid", cfg.drift->x_grid}};
    if (!cfg.sweep.empty()) {
        j["sweep"] = json::array();
        for (const auto& ax : cfg.sweep)
            j["sweep"].push_back({{"param", ax.param}, {"min", ax.min}, {"max", ax.max}, {"steps", ax.steps}});
    }
    if (cfg.seed) j["seed"] = *cfg.seed;
    if (cfg.workers) j["workers"] = *cfg.workers;
    if (cfg.out) j["out"] = *cfg.out;
    return j;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        const auto last_nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
        const std::size_t col = last_nl == std::string::npos || upto == 0 ? upto + 1 : upto - last_nl;
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
    }
    object_at(j, "");
    reject_unknown(j, "", {"regime", "alpha", "beta", "c", "gamma", "b", "p_heavy", "x0", "plane", "sim", "drift",
                           "sweep", "seed", "workers", "out"});
    RunConfig cfg;
    cfg.spec = spec_from_json(j);
    if (j.contains("sim")) cfg.sim = sim_from_json(j.at("sim"), "sim");
    if (j.contains("drift")) cfg.drift = drift_from_json(j.at("drift"), "drift");
    if (j.contains("sweep")) {
        const json& sw = j.at("sweep");
        if (!sw.is_array()) throw ConfigError("sweep", "expected an array");
        for (std::size_t k = 0; k < sw.size(); ++k)
            cfg.sweep.push_back(sweep_from_json(sw[k], "sweep[" + std::to_string(k) + "]"));
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("workers")) {
        const auto w = get_int(j, "workers", "", 1);
        if (w < 1) throw ConfigError("workers", "must be at least 1");
        cfg.workers = static_cast<int>(w);
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw ConfigError("out", "expected a string");
        cfg.out = j.at("out").get<std::string>();
    }
    try {
        validate(cfg.spec);
    } catch (const InfeasibleDrift& e) {
        throw ConfigError("b", std::string(e.what()) + " (at x = " + std::to_string(e.state()) + ")");
    } catch (const InfeasibleWeight& e) {
        throw ConfigError("p_heavy", e.what());
    } catch (const DomainError& e) {
        throw ConfigError("(spec)", e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

bool is_sweepable(const std::string& p) {
    static const std::set<std::string> names = {"alpha", "beta", "c", "gamma", "b", "p_heavy", "x0",
                                                "plane.p_radial", "plane.c_radial", "plane.c_transverse"};
    return names.count(p) > 0;
}

void set_param(ChainSpec& s, const std::string& p, double v) {
    if (p == "alpha") s.tail.alpha = v;
    else if (p == "beta") s.tail.beta = v;
    else if (p == "c") s.tail.c = v;
    else if (p == "gamma") s.drift.gamma = v;
    else if (p == "b") s.drift.b = v;
    else if (p == "p_heavy") s.p_heavy = v;
    else if (p == "x0") s.tail.x0 = v;
    else if (p.rfind("plane.", 0) == 0) {
        if (!s.plane) s.plane = PlaneParams{};
        if (p == "plane.p_radial") s.plane->p_radial = v;
        else if (p == "plane.c_radial") s.plane->c_radial = v;
        else if (p == "plane.c_transverse") s.plane->c_transverse = v;
        else throw ConfigError(p, "not a sweepable parameter");
    } else {
        throw ConfigError(p, "not a sweepable parameter");
    }
}

SimConfig make_sim_config(const RunConfig& cfg) {
    SimConfig s;
    s.spec = cfg.spec;
    const SimFields f = cfg.sim.value_or(SimFields{});
    s.a = f.a;
    s.start = f.start;
    s.start_y = f.start_y;
    s.horizon = f.horizon;
    s.n_traj = f.n_traj;
    s.escape_level = f.escape_level;
    s.master_seed = cfg.seed.value_or(1);
    s.workers = cfg.workers.value_or(1);
    return s;
}

}  // namespace lamperti
