#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "zk/config.hpp"
#include "zk/error.hpp"
#include "zk/report_io.hpp"

using namespace zk;
using nlohmann::json;

TEST_CASE("config defaults") {
    const ExperimentConfig c = parse_config("{}");
    CHECK(c.Nx == 1024);
    CHECK(c.Ny == 32);
    CHECK(c.k == 0.2);
    CHECK(c.stride == 10);
    CHECK(c.nonlinear);
    CHECK_FALSE(c.L.has_value());
    CHECK_FALSE(c.dt.has_value());
    CHECK_FALSE(c.T.has_value());
    CHECK(c.data.family == "gauss_mode");
}

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config(R"({"B": 2, "L": 15, "Nx": 100, "Ny": 8, "dt": 0.01, "T": 3,
        "initial_data": {"family": "gauss_bump", "l2_norm": 0.05, "center": 4, "width": 0.5, "y_center": 0.3, "y_width": 0.2},
        "k": 0.1, "stride": 2, "nonlinear": false, "Cs2": 0.001, "cs_window": 2, "threads": 1, "modes": [4, 8]})");
    CHECK(c.B == 2.0);
    CHECK(*c.L == 15.0);
    CHECK(c.Nx == 100);
    CHECK(*c.dt == 0.01);
    CHECK(c.data.family == "gauss_bump");
    CHECK(*c.data.l2_norm == 0.05);
    CHECK(c.data.y_center == 0.3);
    CHECK_FALSE(c.nonlinear);
    CHECK(*c.Cs2 == 0.001);
    CHECK(c.modes == std::vector<int>{4, 8});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("{\"B\": 3.14"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"dt": -1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"T": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"Nx": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"Nx": 1.5})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"L": -1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"stride": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"unknown": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"initial_data": {"family": "square"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"initial_data": {"colour": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"Ny": 4, "initial_data": {"mode": 5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"k": "big"})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config echo round-trips exactly") {
    ExperimentConfig c = parse_config(R"({"Nx": 77, "initial_data": {"l2_norm": 0.0123}, "T": 1.5})");
    c = resolve(c);
    const ExperimentConfig back = parse_config(config_to_json(c).dump());
    CHECK(back.B == c.B);
    CHECK(*back.L == *c.L);
    CHECK(*back.dt == *c.dt);
    CHECK(*back.T == *c.T);
    CHECK(*back.data.l2_norm == *c.data.l2_norm);
    CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("energy CSV") {
    EnergyReport r;
    r.t = 0.1;
    r.l2 = 1.0 / 3.0;
    r.tail = 2.5e-300;
    std::ostringstream s;
    write_energy_csv(s, std::vector<EnergyReport>{r, r});
    std::istringstream in(s.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,l2,h1,h2,w1,w2,expk,flux,sup2,sup2_bound,tail");
    std::getline(in, line);
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
    CHECK(std::stod(line.substr(line.find(',') + 1)) == r.l2);  // 17 significant digits round-trip
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) == r.tail);
}

TEST_CASE("JSON serialisation") {
    ConditionReport c;
    c.u0_l2 = 0.1;
    c.gates.push_back({"g", 1.0, std::numeric_limits<double>::infinity(), true});
    c.pass = true;
    const json j = to_json(c);
    CHECK(j["gates"][0]["threshold"] == "inf");
    CHECK(j["u0_l2"] == 0.1);
    CHECK(j["pass"] == true);

    DecayFit f;
    f.series = {{0, 1}, {1, 0.5}};
    f.fitted_rate = std::nan("");
    CHECK(to_json(f)["fitted_rate"] == "nan");
    CHECK_FALSE(to_json(f).contains("series"));
    CHECK(to_json(f, true)["series"].size() == 2u);
}

TEST_CASE("atomic write replaces the target") {
    const auto dir = std::filesystem::temp_directory_path() / "zk_io_test";
    std::filesystem::create_directories(dir);
    const auto p = dir / "a.txt";
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    std::ifstream in(p);
    std::string s;
    in >> s;
    CHECK(s == "two");
    CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
    std::filesystem::remove_all(dir);
}
