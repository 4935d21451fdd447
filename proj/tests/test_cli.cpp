#include <catch2/catch_amalgamated.hpp>

#include "knot/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

using knot::cli::execute;
using nlohmann::json;

namespace {

json run_json(const std::vector<std::string>& args) {
    const auto o = execute(args);
    INFO(o.error);
    REQUIRE(o.exit_code == 0);
    return json::parse(o.output);
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("knot_cli_" + name);
}

}  // namespace

TEST_CASE("table", "[cli]") {
    const json doc = run_json({"table", "--N", "1", "--m-max", "5"});
    CHECK(doc["command"] == "table");
    REQUIRE(doc["results"].size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(doc["results"][i]["M"] == 2 * i + 1);
        CHECK(doc["results"][i]["ell"].get<double>() == i);
    }

    const json gamma = run_json({"table", "--N", "1", "--m-max", "5", "--dim", "3", "--partial", "0"});
    const std::array<double, 3> want{0.0, 2.0, 6.0};
    for (int i = 0; i < 3; ++i) CHECK(gamma["results"][i]["gamma"].get<double>() == want[i]);

    const json two = run_json({"table", "--N", "2", "--m-max", "4"});
    for (const auto& row : two["results"]) CHECK(row["M"] != 4);
    CHECK(two["diagnostics"]["forbidden_M"] == json::array({4}));

    CHECK(execute({"table", "--N", "1", "--m-max", "5", "--dim", "3"}).exit_code == 2);
}

TEST_CASE("document layout", "[cli]") {
    const auto o = execute({"shoot", "--N", "1", "--nu", "0.3"});
    REQUIRE(o.exit_code == 0);
    const json doc = json::parse(o.output);
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    // nlohmann::json sorts keys; check presence and the raw order separately
    CHECK(keys.size() == 4);
    CHECK(o.output.find("\"command\"") < o.output.find("\"params\""));
    CHECK(o.output.find("\"params\"") < o.output.find("\"results\""));
    CHECK(o.output.find("\"results\"") < o.output.find("\"diagnostics\""));
    CHECK(doc["results"][0]["c1"].contains("re"));
    CHECK(doc["results"][0]["c1"].contains("im"));
    CHECK(doc["params"]["rmax"].get<double>() == 30.0);
}

TEST_CASE("shoot", "[cli]") {
    const json half = run_json({"shoot", "--N", "1", "--nu", "0.5", "--energy", "1"});
    CHECK(half["results"][0]["residual"].get<double>() <= 1e-6);
    CHECK(half["results"][0]["agreement"] == true);
    CHECK(half["diagnostics"]["bound_state"] == true);

    const json generic = run_json({"shoot", "--N", "1", "--nu", "0.3", "--energy", "1"});
    const auto& r = generic["results"][0];
    CHECK(std::abs(r["residual"].get<double>() - r["predicted_residual"].get<double>()) <= 1e-6);
    CHECK(r["agreement"] == true);

    const json flat = run_json({"shoot", "--N", "0", "--nu", "0.8", "--energy", "2"});
    CHECK(flat["results"][0]["residual"].get<double>() <= 1e-6);

    const json channel = run_json({"shoot", "--N", "1", "--dim", "3", "--partial", "0", "--gamma", "0"});
    CHECK(channel["params"]["nu"].get<double>() == 0.5);
    CHECK(channel["results"][0]["residual"].get<double>() <= 1e-6);
}

TEST_CASE("scan", "[cli]") {
    const json doc = run_json({"scan", "--N", "1", "--energy", "1", "--nu", "0.05:1.95:400"});
    REQUIRE(doc["results"].size() == 2);
    CHECK(std::abs(doc["results"][0]["nu"].get<double>() - 0.5) < 1e-6);
    CHECK(std::abs(doc["results"][1]["nu"].get<double>() - 1.5) < 1e-6);

    const auto csv = execute({"scan", "--N", "2", "--nu", "0.05:0.95:40", "--format", "csv"});
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.starts_with("nu,residual\n"));
    CHECK(std::count(csv.output.begin(), csv.output.end(), '\n') == 4);

    CHECK(execute({"scan", "--N", "1", "--nu", "0.1:1.9"}).exit_code == 2);
    CHECK(execute({"scan", "--N", "1", "--nu", "a:b:c"}).exit_code == 2);
    CHECK(execute({"scan", "--N", "1", "--nu", "1.5:0.5:10"}).exit_code == 2);
}

TEST_CASE("monodromy", "[cli]") {
    const json doc = run_json({"monodromy", "--nu", "1", "--m", "2"});
    const auto& r = doc["results"][0];
    CHECK(r["a"]["re"].get<double>() == Catch::Approx(3.0).margin(1e-14));
    CHECK(r["b"]["re"].get<double>() == Catch::Approx(2.0).margin(1e-14));
    CHECK(r["oracle_agree"] == true);
}

TEST_CASE("contour and unroll", "[cli]") {
    const auto csv = execute({"contour", "--N", "1", "--samples", "50"});
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.starts_with("t,rho,theta,re,im,sector,segment\n"));

    const json doc = run_json({"contour", "--N", "2", "--format", "json"});
    CHECK(doc["diagnostics"]["winding_number"] == 2);
    CHECK(doc["results"].back()["sector"] == 4);

    const json strip = run_json({"unroll", "--N", "1", "--nu", "0.7"});
    CHECK(strip["diagnostics"]["max_residual"].get<double>() <= 1e-8);
    const auto strip_csv = execute({"unroll", "--N", "1", "--nu", "0.7", "--format", "csv"});
    REQUIRE(strip_csv.exit_code == 0);
    CHECK(strip_csv.output.starts_with("t,segment,u,v,phi_re,phi_im,dphi_re,dphi_im,residual\n"));
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(execute({}).exit_code == 2);
    CHECK(execute({"bogus"}).exit_code == 2);
    CHECK(execute({"table", "--N", "1"}).exit_code == 2);
    CHECK(execute({"table", "--N", "1", "--m-max", "3", "--format", "csv"}).exit_code == 2);
    CHECK(execute({"shoot", "--N", "1", "--nu", "0.5", "--dim", "3"}).exit_code == 2);
    CHECK(execute({"shoot", "--N", "1", "--nu", "0.5", "--energy", "-1"}).exit_code == 2);
    CHECK(execute({"shoot", "--N", "1", "--nu", "-0.5"}).exit_code == 2);
    CHECK(execute({"shoot", "--N", "1", "--dim", "3", "--partial", "0", "--gamma", "-5"}).exit_code == 2);
    CHECK(execute({"shoot", "--N", "1", "--nu", "0.5", "--eps", "2"}).exit_code == 2);

    const auto help = execute({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("shoot") != std::string::npos);

    const auto failure = execute({"shoot", "--N", "1", "--nu", "0.3", "--max-steps", "5"});
    CHECK(failure.exit_code == 3);
    CHECK(failure.error.find("t = ") != std::string::npos);
}

TEST_CASE("output file and config", "[cli]") {
    const auto out = scratch("table.json");
    std::filesystem::remove(out);
    const auto o = execute({"table", "--N", "1", "--m-max", "3", "--out", out.string()});
    REQUIRE(o.exit_code == 0);
    CHECK(o.output.empty());
    std::ifstream in(out);
    const json doc = json::parse(in);
    CHECK(doc["results"].size() == 2);

    const auto cfg = scratch("shoot.ini");
    {
        std::ofstream f(cfg);
        f << "[shoot]\nN=1\nnu=0.3\nenergy=2\n";
    }
    const json from_file = run_json({"--config", cfg.string(), "shoot"});
    CHECK(from_file["params"]["nu"].get<double>() == 0.3);
    CHECK(from_file["params"]["energy"].get<double>() == 2.0);
    const json overridden = run_json({"--config", cfg.string(), "shoot", "--nu", "0.5"});
    CHECK(overridden["params"]["nu"].get<double>() == 0.5);
    CHECK(overridden["params"]["energy"].get<double>() == 2.0);
}

TEST_CASE("identical invocations give identical bytes", "[cli]") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"table", "--N", "3", "--m-max", "12"},
          std::vector<std::string>{"shoot", "--N", "2", "--nu", "0.75"},
          std::vector<std::string>{"scan", "--N", "1", "--nu", "0.05:1.95:30"}}) {
        CHECK(execute(args).output == execute(args).output);
    }
}
