#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "jsonutil.hpp"

using namespace seelab;
using doctest::Approx;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Fresh scratch directory under the build tree.
std::string scratch(const std::string& tag) {
    const fs::path dir = fs::path("cmd_scratch") / tag;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

RunConfig load_text(const std::string& text, Command cmd) {
    return load_run_config(ConfigFile::parse_text(text, "test.ini"), cmd);
}

const char* kCertifiedRd = R"(seed = 7

[model]
kind = laplacian
reaction = tanh

[grid]
nodes = 15

[constants]
gamma1 = 1
gamma2 = 1
gamma3 = 3
gamma4 = 2
gamma6 = 1
epsilon = 0.09
gap_mode = drift_strict

[forcing]
g_form = constant
g_value = 1.0
g_shape = first_mode

[noise]
kind = scalar
sigma_base = 0.5

[experiment]
tau = 0
t_values = 0.25, 0.5
paths = 8
dt = 0.015625
scheme = semi_implicit
trials = 400
)";

} // namespace

TEST_CASE("threshold command reports both accountings") {
    const auto rc = load_text(kCertifiedRd, Command::Threshold);
    const auto res = run_command(Command::Threshold, rc, scratch("threshold"), 1);
    CHECK(res.exit_code == 0);
    CHECK(res.summary.find("0.182574") != std::string::npos); // sqrt(1/30)
    CHECK(res.report["threshold"].get<double>() ==
          Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-11));
    CHECK(res.report["gap_mode"] == "drift_strict");
    // the abstract accounting fails on these constants and is reported as such
    CHECK(res.report["thresholds"]["abstract"].is_null());
    CHECK(res.report["thresholds"]["drift_strict"].get<double>() ==
          Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-11));
}

TEST_CASE("check command certifies the small reaction-diffusion setup") {
    const auto rc = load_text(kCertifiedRd, Command::Check);
    const auto res = run_command(Command::Check, rc, scratch("check"), 1);
    CHECK(res.exit_code == 0);
    CHECK(res.summary.find("all hypothesis checks passed") != std::string::npos);
    CHECK(res.report["gap"]["value"].get<double>() > 0.0);
    REQUIRE(res.report["checks"].size() == 5); // H0 H2 H3 H4 h5
    for (const auto& c : res.report["checks"]) {
        CHECK(c["violations"].get<long long>() == 0);
        CHECK(c["pass"].get<bool>());
    }
}

TEST_CASE("check command reports a closed gap") {
    auto rc = load_text(kCertifiedRd, Command::Check);
    rc.consts.gamma2 = 4.0 / 3.0; // lambda gamma5 = 4/3 exactly cancels
    const auto res = run_command(Command::Check, rc, scratch("check_gap"), 1);
    CHECK(res.exit_code == 1);
    CHECK(res.summary.find("(H5)") != std::string::npos);
}

TEST_CASE("radius command freezes the derived scale") {
    const auto rc = load_text(kCertifiedRd, Command::Radius);
    const auto res = run_command(Command::Radius, rc, scratch("radius"), 1);
    CHECK(res.exit_code == 0);
    CHECK(res.report["gronwall"]["L"].get<double>() == Approx(8.5).epsilon(1e-12));
    CHECK(res.report["radius"].get<double>() == Approx(14.875).epsilon(1e-12));
    CHECK(res.summary.find("8.5") != std::string::npos);
}

TEST_CASE("simulate writes a trajectory consistent with its report") {
    const auto rc = load_text(kCertifiedRd, Command::Simulate);
    const std::string dir = scratch("simulate");
    const auto res = run_command(Command::Simulate, rc, dir, 1);
    CHECK(res.exit_code == 0);
    const std::string csv = slurp(dir + "/trajectory.csv");
    CHECK(csv.rfind("t,h_norm_sq", 0) == 0);
    const auto rep = json::parse(slurp(dir + "/simulate.json"));
    CHECK(rep["window"]["end"].get<double>() == rc.tau);
    CHECK(rep["records"].get<long long>() >= 2);
    // the last CSV row carries the reported terminal norm
    const auto last_comma = csv.find_last_of(',');
    const double tail = std::stod(csv.substr(last_comma + 1));
    CHECK(tail == Approx(rep["final_norm_sq"].get<double>()).epsilon(1e-10));
    // every report embeds its own exit code and summary
    CHECK(rep["exit_code"].get<int>() == 0);
    CHECK(rep.contains("summary"));
}

TEST_CASE("absorb reports entry into the absorbing ball") {
    const auto rc = load_text(kCertifiedRd, Command::Absorb);
    const std::string dir = scratch("absorb");
    const auto res = run_command(Command::Absorb, rc, dir, 1);
    CHECK(res.exit_code == 0);
    CHECK(res.report["absorbed"].get<bool>());
    CHECK(res.report["entry_time"].get<double>() == 0.25);
    CHECK(res.report["radius"].get<double>() > 0.0);
    const std::string csv = slurp(dir + "/entries.csv");
    CHECK(csv.rfind("t,mean_sq,std_err,absorbed", 0) == 0);
}

TEST_CASE("absorb output bytes do not depend on the worker count") {
    const auto rc = load_text(kCertifiedRd, Command::Absorb);
    const std::string one = scratch("absorb_one");
    const std::string three = scratch("absorb_three");
    run_command(Command::Absorb, rc, one, 1);
    run_command(Command::Absorb, rc, three, 3);
    CHECK(slurp(one + "/absorb.json") == slurp(three + "/absorb.json"));
    CHECK(slurp(one + "/entries.csv") == slurp(three + "/entries.csv"));
}

TEST_CASE("decay verdict depends on the fitted window") {
    auto rc = load_text(kCertifiedRd, Command::Decay);
    rc.horizon = 2.0;
    // fit inside the transient: the certified rate is beaten by the full
    // semigroup, so the verdict is a pass
    rc.fit_lo = -2.0;
    rc.fit_hi = -1.75;
    const std::string dir = scratch("decay");
    const auto res = run_command(Command::Decay, rc, dir, 1);
    CHECK(res.exit_code == 0);
    CHECK(res.report["pass"].get<bool>());
    CHECK(res.report["fit"]["rate"].get<double>() <
          0.95 * res.report["decay_rate_target"].get<double>() + 1e-9);
    CHECK(res.report["residual"]["violations"].get<long long>() == 0);
    const std::string csv = slurp(dir + "/series.csv");
    CHECK(csv.rfind("t,mean_sq,std_err", 0) == 0);
}

TEST_CASE("reports land in the requested directory with the command name") {
    const auto rc = load_text(kCertifiedRd, Command::Threshold);
    const std::string dir = scratch("files");
    const auto res = run_command(Command::Threshold, rc, dir, 1);
    REQUIRE_FALSE(res.files.empty());
    CHECK(res.files.front() == dir + "/threshold.json");
    CHECK(fs::exists(res.files.front()));
}
