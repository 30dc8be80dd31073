#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "acflux/errors.hpp"
#include "acflux/scenario.hpp"

using namespace acflux;

namespace {

ScenarioConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::vector<std::vector<double>> csv_rows(const std::string& csv, std::string* header = nullptr) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

ScenarioConfig moderate(RunKind run) {
    ScenarioConfig c;
    c.model.v_ac = 1.0;
    c.model.omega = 0.5;
    c.n_times = 16;
    c.run = run;
    return c;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("defaults reproduce the Fig. 2 scenario") {
    const ScenarioConfig c = parse("# empty file\n\n");
    CHECK(c.run == RunKind::fig2);
    CHECK(c.model.epsilon0 == -1.2);
    CHECK(c.model.v_ac == 10.0);
    CHECK(c.model.omega == 1e-3);
    CHECK(c.model.gamma == 1.0);
    CHECK(c.model.mu == 0.0);
    CHECK(c.model.temperature == 0.0);
    CHECK(c.fig2_amplitudes == std::vector<double>{10.0, 12.0});
    CHECK(c.n_times == 256);
    CHECK(c.format == OutputFormat::csv);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("every key is accepted") {
    const ScenarioConfig c = parse(R"(
model.epsilon0 = 0.5
model.v_ac = 2      # inline comment
model.omega = 0.25
model.gamma = 1
model.mu = 0.1
model.temperature = 0.05
model.band_cutoff = 400
run = audit
n_times = 32
quadrature.abs_tol = 1e-12
quadrature.rel_tol = 1e-10
quadrature.cutoff = 300
quadrature.max_intervals = 5000
quadrature.resonance_width = 8
truncation.tol = 1e-11
truncation.n_max = 40
engine.tolerance = 1e-7
engine.threads = 2
output.dir = out/run1
output.format = json
fig2.amplitudes = 10, 11.5 ,12
adiabatic.exact = false
)");
    CHECK(c.model.epsilon0 == 0.5);
    CHECK(c.model.v_ac == 2.0);
    CHECK(c.model.omega == 0.25);
    CHECK(c.model.mu == 0.1);
    CHECK(c.model.temperature == 0.05);
    CHECK(c.model.band_cutoff == 400.0);
    CHECK(c.run == RunKind::audit);
    CHECK(c.n_times == 32);
    CHECK(c.engine.quadrature.abs_tol == 1e-12);
    CHECK(c.engine.quadrature.rel_tol == 1e-10);
    CHECK(c.engine.quadrature.cutoff == 300.0);
    CHECK(c.engine.quadrature.max_intervals == 5000);
    CHECK(c.engine.quadrature.resonance_width == 8.0);
    CHECK(c.engine.truncation.tol == 1e-11);
    CHECK(c.engine.truncation.n_max_override == 40);
    CHECK(c.engine.tolerance == 1e-7);
    CHECK(c.engine.threads == 2);
    CHECK(c.output_dir == "out/run1");
    CHECK(c.format == OutputFormat::json);
    CHECK(c.fig2_amplitudes == std::vector<double>{10.0, 11.5, 12.0});
    CHECK_FALSE(c.adiabatic_exact);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("malformed configurations name the line") {
    CHECK(parse_error("model.v_ac = 1\nbogus = 2\n").find("line 2") != std::string::npos);
    CHECK(parse_error("model.v_ac = 1\nbogus = 2\n").find("unknown key 'bogus'") != std::string::npos);
    CHECK(parse_error("n_times = 32\nn_times = 64\n").find("duplicate") != std::string::npos);
    CHECK(parse_error("model.omega = fast\n").find("line 1") != std::string::npos);
    CHECK(parse_error("model.omega = 1e-3x\n") != "");
    CHECK(parse_error("model.omega = nan\n") != "");
    CHECK(parse_error("n_times = 12.5\n") != "");
    CHECK(parse_error("model.omega\n").find("key = value") != std::string::npos);
    CHECK(parse_error("model.omega =\n").find("empty value") != std::string::npos);
    CHECK(parse_error("run = plot\n").find("trace|adiabatic|audit|fig2") != std::string::npos);
    CHECK(parse_error("output.format = xml\n") != "");
    CHECK(parse_error("adiabatic.exact = maybe\n") != "");
    CHECK(parse_error("fig2.amplitudes = 10,,12\n") != "");
    CHECK_THROWS_AS(load_config("/nonexistent/acflux.cfg"), ConfigError);
}

TEST_CASE("validation happens before any computation") {
    CHECK_THROWS_AS(parse("n_times = 8\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("model.gamma = 0\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("model.band_cutoff = 50\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("fig2.amplitudes = 10, -1\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("engine.threads = 0\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("truncation.tol = 0\n").validate(), ConfigError);
    CHECK_THROWS_AS(run_scenario(parse("model.omega = -1\n")), ConfigError);
}

TEST_CASE("number format carries 17 significant digits") {
    for (double x : {0.1, -2.0 / 3.0, 1e-300, 6.02214076e23, 3.141592653589793}) {
        CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
    }
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("undriven trace has zero flux columns") {
    ScenarioConfig c = moderate(RunKind::trace);
    c.model.v_ac = 0.0;
    const RunOutput out = run_scenario(c);
    CHECK(out.exit_code == kExitOk);
    REQUIRE(out.files.count("trace.csv") == 1);
    REQUIRE(out.files.count("summary.json") == 1);
    std::string header;
    const auto rows = csv_rows(out.files.at("trace.csv"), &header);
    CHECK(header == "t_over_period,i_c,w_c,w_t,w_d,w_e,power,q_dot,q_tilde_dot,n_d,res_conservation,res_reactance");
    REQUIRE(rows.size() == 16);
    for (const auto& r : rows) {
        REQUIRE(r.size() == 12);
        for (int j = 1; j <= 8; ++j) CHECK(r[static_cast<std::size_t>(j)] == 0.0);
        CHECK(r[10] == 0.0);
        CHECK(r[11] == 0.0);
    }
    const auto s = nlohmann::json::parse(out.files.at("summary.json"));
    CHECK(s.contains("averages"));
    CHECK(s.contains("max_residuals"));
    CHECK(s.contains("tail_estimate"));
}

TEST_CASE("moderate trace in both formats") {
    ScenarioConfig c = moderate(RunKind::trace);
    const RunOutput csv = run_scenario(c);
    c.format = OutputFormat::json;
    const RunOutput js = run_scenario(c);
    const auto rows = csv_rows(csv.files.at("trace.csv"));
    const auto j = nlohmann::json::parse(js.files.at("trace.json"));
    REQUIRE(j["i_c"].size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) CHECK(j["i_c"][k].get<double>() == rows[k][1]);
    const auto s = nlohmann::json::parse(csv.files.at("summary.json"));
    CHECK(s["w_e_source"] == "scattering");
    CHECK(s["relative_checks"]["conservation"].get<double>() <= 1e-8);
}

TEST_CASE("audit of the moderate drive passes") {
    const RunOutput out = run_scenario(moderate(RunKind::audit));
    CHECK(out.exit_code == kExitOk);
    const auto j = nlohmann::json::parse(out.files.at("audit.json"));
    CHECK(j["all_pass"] == true);
    std::vector<std::string> names;
    for (const auto& a : j["audits"]) names.push_back(a["name"]);
    for (const char* n : {"conservation", "reactance_identity", "mean_w_t", "mean_q_equals_mean_p",
                          "mean_q_equals_mean_q_tilde", "unitarity_defect", "dual_path_i_c", "dual_path_w_c"}) {
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    }
}

TEST_CASE("audit of the undriven level has zero residuals") {
    ScenarioConfig c = moderate(RunKind::audit);
    c.model.v_ac = 0.0;
    const RunOutput out = run_scenario(c);
    CHECK(out.exit_code == kExitOk);
    const auto j = nlohmann::json::parse(out.files.at("audit.json"));
    for (const auto& a : j["audits"]) {
        INFO(a["name"].get<std::string>());
        CHECK(a["pass"] == true);
        CHECK(a["residual"].get<double>() <= 1e-12);
    }
}

TEST_CASE("a tiny truncation fails the unitarity audit") {
    ScenarioConfig c = moderate(RunKind::audit);
    c.engine.truncation.n_max_override = 2;
    const RunOutput out = run_scenario(c);
    CHECK(out.exit_code == kExitNumerical);
    const auto j = nlohmann::json::parse(out.files.at("audit.json"));
    CHECK(j["all_pass"] == false);
    bool seen = false;
    for (const auto& a : j["audits"]) {
        if (a["name"] == "unitarity_defect") {
            seen = true;
            CHECK(a["pass"] == false);
            CHECK(a["message"].get<std::string>().find("not unitary") != std::string::npos);
            CHECK(a["message"].get<std::string>().find("n_max=2") != std::string::npos);
        }
    }
    CHECK(seen);
}

TEST_CASE("fig2 run with a single amplitude") {
    ScenarioConfig c;
    c.model.omega = 0.02;
    c.fig2_amplitudes = {1.0};
    c.n_times = 32;
    const RunOutput out = run_scenario(c);
    CHECK(out.exit_code == kExitOk);
    std::string header;
    const auto rows = csv_rows(out.files.at("fig2_scatter.csv"), &header);
    CHECK(header == "i_c_squared,q_dot,q_tilde_dot,v_ac");
    CHECK(rows.size() == 32);
    for (const auto& r : rows) CHECK(r[3] == 1.0);
    std::string inset;
    CHECK(csv_rows(out.files.at("fig2_inset.csv"), &inset).size() == 32);
    CHECK(inset == "t_over_period,v_ac,i_c,q_dot,q_tilde_dot");
    const auto fit = nlohmann::json::parse(out.files.at("fit.json"));
    REQUIRE(fit["branches"].size() == 1);
    CHECK(fit["branches"][0]["slope"].get<double>() == doctest::Approx(kPi).epsilon(0.05));
    CHECK(fit["r_q"].get<double>() == kPi);
    CHECK(fit["branches"][0].contains("relative_deviation"));
}

TEST_CASE("adiabatic run masks the resistance at the extrema") {
    ScenarioConfig c;
    c.run = RunKind::adiabatic;
    c.model.v_ac = 1.0;
    c.model.omega = 0.02;
    c.n_times = 32;
    const RunOutput out = run_scenario(c);
    const std::string& csv = out.files.at("adiabatic.csv");
    std::istringstream in(csv);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "t_over_period,ic1,ic2,q1,q2,wt1,wt2,we1,we2,p_lowfreq,r_tilde,r_tilde_valid");
    CHECK(first.find(",,0") != std::string::npos);
    const auto s = nlohmann::json::parse(out.files.at("adiabatic_summary.json"));
    CHECK(s["fit_source"] == "exact");
}

TEST_CASE("identical configs give identical bytes") {
    ScenarioConfig c = moderate(RunKind::trace);
    const RunOutput a = run_scenario(c);
    c.engine.threads = 3;
    const RunOutput b = run_scenario(c);
    CHECK(a.files == b.files);
}

}
