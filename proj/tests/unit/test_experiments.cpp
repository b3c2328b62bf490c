#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"

using namespace zetalab;

namespace {

RunRecord sample_record() {
    RunRecord r;
    r.command = "demo";
    r.config = {{"T", "1000"}, {"label", "a,b"}};
    r.columns = {"x", "ok", "name"};
    r.rows = {{0.1, true, std::string("one")}, {std::nan(""), false, std::string("t\"wo")}};
    r.summary = {{"count", 2LL}};
    r.deterministic = true;
    r.wall_seconds = 1.25;
    return r;
}

}  // namespace

TEST_CASE("Y rules") {
    CHECK(apply_y_rule("sqrt(T)", 1e4) == 100.0);
    CHECK(apply_y_rule("T", 50.0) == 50.0);
    CHECK(apply_y_rule("T^0.25", 1e4) == doctest::Approx(10.0));
    CHECK(apply_y_rule("0.5*T", 100.0) == 50.0);
    CHECK(apply_y_rule("3*sqrt(T)", 100.0) == 30.0);
    CHECK(apply_y_rule("log(T)", std::exp(3.0)) == doctest::Approx(3.0));
    CHECK(apply_y_rule("1", 1e4) == 1.0);
    CHECK_THROWS_AS(apply_y_rule("T**2", 10.0), ParameterError);
}

TEST_CASE("numbers round-trip") {
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300}) CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("csv layout") {
    const std::string csv = render(sample_record(), Format::csv);
    CHECK(csv.find("# config.T=1000\n") != std::string::npos);
    CHECK(csv.find("# deterministic=true\n") != std::string::npos);
    CHECK(csv.find("wall_time") == std::string::npos);
    CHECK(csv.find("\nx,ok,name\n0.10000000000000001,true,one\n") != std::string::npos);
    CHECK(csv.find("nan,false,\"t\"\"wo\"") != std::string::npos);
    CHECK(csv == render(sample_record(), Format::csv));

    RunRecord timed = sample_record();
    timed.deterministic = false;
    CHECK(render(timed, Format::csv).find("# wall_time_s=1.25\n") != std::string::npos);
}

TEST_CASE("json layout") {
    const auto j = nlohmann::json::parse(render(sample_record(), Format::json));
    CHECK(j["command"] == "demo");
    CHECK(j["config"]["label"] == "a,b");
    CHECK(j["results"].size() == 2);
    CHECK(j["results"][0]["ok"] == true);
    CHECK(j["results"][1]["x"].is_null());
    CHECK(j["summary"]["count"] == 2);
    CHECK(j["metadata"]["version"] == kVersion);
    CHECK(j["metadata"]["precision"] == "double");
    CHECK_FALSE(j["metadata"].contains("wall_time_s"));
    CHECK(j["failure"].is_null());
}

TEST_CASE("emit errors and parsing") {
    CHECK_THROWS_AS(emit(sample_record(), Format::csv, "/nonexistent-dir/out.csv"), IoError);
    CHECK(parse_format("json") == Format::json);
    CHECK_THROWS_AS(parse_format("xml"), ParameterError);
    CHECK(parse_precision("extended") == Precision::extended);
    CHECK_THROWS_AS(parse_precision("quad"), ParameterError);
}

TEST_CASE("scaling with a unit-length sum") {
    ScalingOptions o;
    o.m = 2.5;
    o.T_list = {1000.0, 2000.0, 4000.0};
    o.Y_rule = "1";
    const RunRecord r = run_scaling(o);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.columns == std::vector<std::string>{"T", "Y", "m", "S_m", "S_m_err", "rhs", "ratio", "dt"});
    for (const auto& row : r.rows) {
        const double T = std::get<double>(row[0]);
        const double ratio = std::get<double>(row[6]);
        CHECK(ratio == doctest::Approx(1.0 / std::pow(std::log(T), 2.25)).epsilon(1e-10));
    }
    CHECK_FALSE(r.failure.has_value());
}

TEST_CASE("scaling preconditions") {
    ScalingOptions o;
    CHECK_THROWS_AS(run_scaling(o), ParameterError);
    o.T_list = {1000.0};
    o.Y_rule = "T";
    CHECK_THROWS_AS(run_scaling(o), ParameterError);
}

TEST_CASE("verify suite") {
    VerifyOptions o;
    const RunRecord ok = run_verify(o);
    CHECK_FALSE(ok.failure.has_value());
    o.envelope = g_func_reversed;
    const RunRecord bad = run_verify(o);
    REQUIRE(bad.failure.has_value());
    CHECK(*bad.failure == "g_func.continuity");
    CHECK_THROWS_AS(run_verify({"medium", 0, {}}), ParameterError);
}
