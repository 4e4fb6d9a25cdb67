// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "lamperti/config.hpp"

using namespace lamperti;
using nlohmann::json;

namespace {

std::string where(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.where();
    }
    return "(no error)";
}

}  // namespace

TEST(Config, ParsesAFullConfig) {
    const RunConfig c = parse_config(R"({
        "regime": "line_in", "beta": 1.8, "gamma": 1, "b": 0, "p_heavy": 0.3, "c": 1.2,
        "sim": {"a": 12, "start": 60, "horizon": 5000, "n_traj": 200},
        "drift": {"i": 2, "nu": 0.4, "x_grid": [10, 100]},
        "sweep": [{"param": "b", "min": -1, "max": 1, "steps": 5}],
        "seed": 99, "workers": 4, "out": "dir"
    })");
    EXPECT_EQ(c.spec.regime, Regime::LineIn);
    EXPECT_EQ(c.spec.tail.beta, 1.8);
    EXPECT_EQ(c.spec.tail.alpha, 3.0);
    EXPECT_EQ(c.spec.p_heavy, 0.3);
    EXPECT_EQ(c.sim->a, 12.0);
    EXPECT_EQ(c.sim->horizon, 5000);
    EXPECT_EQ(c.drift->x_grid.size(), 2u);
    ASSERT_EQ(c.sweep.size(), 1u);
    EXPECT_DOUBLE_EQ(c.sweep[0].value(2), 0.0);
    EXPECT_EQ(*c.seed, 99u);
    EXPECT_EQ(*c.workers, 4);
    const SimConfig s = make_sim_config(c);
    EXPECT_EQ(s.master_seed, 99u);
    EXPECT_EQ(s.n_traj, 200);
    EXPECT_EQ(s.start, 60.0);
}

TEST(Config, PlaneStartPair) {
    const RunConfig c = parse_config(R"({"regime": "plane", "alpha": 1.5, "plane": {"p_radial": 0.9},
                                         "sim": {"start": [30, 40]}})");
    EXPECT_EQ(c.sim->start, 30.0);
    EXPECT_EQ(c.sim->start_y, 40.0);
    EXPECT_EQ(c.spec.plane->c_transverse, 1.0);
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "colour": 1})"), "colour");
    EXPECT_EQ(where(R"({"regime": "half_line"})"), "alpha");
    EXPECT_EQ(where(R"({"regime": "torus", "alpha": 1.5})"), "regime");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": "x"})"), "alpha");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "sim": {"n_traj": 1.5}})"), "sim.n_traj");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "sweep": [{"param": "zeta", "min": 0, "max": 1}]})"),
              "sweep[0].param");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "sweep": [{"param": "b", "min": 0, "max": 1, "steps": 1}]})"),
              "sweep[0].steps");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "workers": 0})"), "workers");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "seed": -3})"), "seed");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 2.5})"), "(spec)");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "p_heavy": 1.5})"), "p_heavy");
    EXPECT_EQ(where(R"({"regime": "half_line", "alpha": 1.5, "b": 40})"), "b");
    EXPECT_EQ(where(R"({"regime": "plane", "alpha": 1.5, "plane": {"p_radial": 0.5, "extra": 1}})"), "plane.extra");
    EXPECT_EQ(where("[1, 2]"), "(root)");
}

TEST(Config, SyntaxErrorsGiveLineAndColumn) {
    EXPECT_EQ(where("{\n  \"regime\": \"half_line\",\n  \"alpha\": 1.5,,\n}"), "line 3, column 16");
    EXPECT_EQ(where("{"), "line 1, column 2");
}

TEST(Config, RoundTripIsStable) {
    const std::string text = R"({"regime": "line_balanced", "alpha": 1.4, "gamma": 0.4, "b": -0.5, "p_heavy": 0.2,
        "sim": {"a": 10, "start": 50, "horizon": 1000, "n_traj": 10},
        "sweep": [{"param": "b", "min": -1, "max": 1, "steps": 3}], "seed": 5})";
    const json once = config_to_json(parse_config(text));
    const json twice = config_to_json(parse_config(once.dump()));
    EXPECT_EQ(once.dump(), twice.dump());
    EXPECT_EQ(spec_to_json(spec_from_json(once)).dump(), spec_to_json(parse_config(text).spec).dump());
}

TEST(Config, SetParam) {
    ChainSpec s;
    set_param(s, "alpha", 1.7);
    set_param(s, "plane.p_radial", 0.2);
    EXPECT_EQ(s.tail.alpha, 1.7);
    EXPECT_EQ(s.plane->p_radial, 0.2);
    EXPECT_THROW(set_param(s, "regime", 1.0), ConfigError);
    EXPECT_TRUE(is_sweepable("gamma"));
    EXPECT_FALSE(is_sweepable("seed"));
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError); }
