// End-to-end checks of the installed command-line surface. The binary path
// comes from the BURNSTAB_CLI environment variable (set by CTest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* env = std::getenv("BURNSTAB_CLI");
  REQUIRE(env != nullptr);
  return env;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  const int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "burnstab_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kBenchFlags =
    "--alpha 1 --beta 1 --gamma 1 --zeta 2.5 --eta 1 --f0 1";

}  // namespace

TEST_CASE("equilibrium subcommand emits the expected JSON") {
  const RunResult r = run("equilibrium " + kBenchFlags + " --theta -0.1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["a_star"].get<double>() == doctest::Approx(0.4));
  CHECK(j["f_star"].get<double>() == doctest::Approx(1.0));
  CHECK(j["b_star"].get<double>() == doctest::Approx(0.2));
  CHECK(j["feasibility"]["all"] == true);
}

TEST_CASE("missing parameter flags exit with the usage code") {
  CHECK(run("equilibrium --alpha 1").exit_code == 2);
  CHECK(run("equilibrium").exit_code == 2);
  CHECK(run("classify " + kBenchFlags).exit_code == 2);  // theta missing
  CHECK(run("classify " + kBenchFlags + " --theta 0").exit_code == 2);
}

TEST_CASE("params file and flags are equivalent and exclusive") {
  const fs::path dir = temp_dir("params");
  const fs::path file = dir / "p.json";
  std::ofstream(file) << R"({"alpha":1,"beta":1,"gamma":1,"zeta":2.5,)"
                      << R"("eta":1,"theta":-0.1,"f0":1})";
  const RunResult from_file = run("equilibrium --params " + file.string());
  const RunResult from_flags =
      run("equilibrium " + kBenchFlags + " --theta -0.1");
  REQUIRE(from_file.exit_code == 0);
  CHECK(from_file.out == from_flags.out);

  CHECK(run("equilibrium --params " + file.string() + " --alpha 1").exit_code ==
        2);
}

TEST_CASE("classify reports the regimes of the published example sets") {
  const json stable =
      json::parse(run("classify " + kBenchFlags + " --vartheta 0.1").out);
  CHECK(stable["regime"] == "ProactiveStable_ComplexPair");
  const json unstable =
      json::parse(run("classify " + kBenchFlags + " --vartheta 20").out);
  CHECK(unstable["regime"] == "ProactiveUnstable_Focus");
  const json reactive =
      json::parse(run("classify " + kBenchFlags + " --theta 1").out);
  const std::string regime = reactive["regime"].get<std::string>();
  CHECK(regime.rfind("ReactiveUnstable", 0) == 0);
  CHECK(stable["critical_vartheta"].get<double>() == doctest::Approx(9.0));
}

TEST_CASE("vartheta and theta flags are mutually exclusive") {
  CHECK(run("classify " + kBenchFlags + " --theta 1 --vartheta 1").exit_code ==
        2);
}

TEST_CASE("simulate writes a CSV and honors --svg without changing it") {
  const fs::path dir1 = temp_dir("sim1");
  const fs::path dir2 = temp_dir("sim2");
  const std::string base = "simulate " + kBenchFlags +
                           " --vartheta 0.1 --t-end 5 "
                           "--init 0.41 1.02 0.19 --out ";
  const RunResult r1 = run(base + dir1.string());
  REQUIRE(r1.exit_code == 0);
  const RunResult r2 = run(base + dir2.string() + " --svg");
  REQUIRE(r2.exit_code == 0);

  std::ifstream f1(dir1 / "trajectory.csv"), f2(dir2 / "trajectory.csv");
  const std::string c1((std::istreambuf_iterator<char>(f1)), {});
  const std::string c2((std::istreambuf_iterator<char>(f2)), {});
  REQUIRE(!c1.empty());
  CHECK(c1 == c2);  // SVG emission never alters numerical outputs
  CHECK(fs::exists(dir2 / "trajectory_phase_af.svg"));
  CHECK(fs::exists(dir2 / "trajectory_series_b.svg"));
  CHECK(!fs::exists(dir1 / "trajectory_phase_af.svg"));
}

TEST_CASE("crossing experiment leaves an event line in the CSV") {
  const fs::path dir = temp_dir("crossing");
  const RunResult r = run("simulate " + kBenchFlags +
                          " --theta 1 --crossing-experiment --a0b0 0.5 "
                          "--t-end 2 --out " +
                          dir.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(dir / "trajectory.csv");
  const std::string csv((std::istreambuf_iterator<char>(in)), {});
  CHECK(csv.find("# event,BCrossesA,") != std::string::npos);
  const json j = json::parse(r.out);
  CHECK(j["events"].size() >= 1);
}

TEST_CASE("ensemble summary shows contraction and is seed-reproducible") {
  const fs::path dir1 = temp_dir("ens1");
  const fs::path dir2 = temp_dir("ens2");
  const std::string base = "ensemble " + kBenchFlags +
                           " --vartheta 0.1 --n 8 --amplitude 1e-4 --seed 5 "
                           "--t-end 20 --out ";
  const RunResult r1 = run(base + dir1.string());
  const RunResult r2 = run(base + dir2.string());
  REQUIRE(r1.exit_code == 0);
  const json j = json::parse(r1.out);
  CHECK(j["contracted"] == true);
  CHECK(j["trajectories"].size() == 8);

  // Bit-for-bit reproducibility of every member file.
  for (int i = 0; i < 8; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "traj_%03d.csv", i);
    std::ifstream f1(dir1 / name), f2(dir2 / name);
    const std::string c1((std::istreambuf_iterator<char>(f1)), {});
    const std::string c2((std::istreambuf_iterator<char>(f2)), {});
    REQUIRE(!c1.empty());
    CHECK(c1 == c2);
  }
  CHECK(fs::exists(dir1 / "summary.json"));
}

TEST_CASE("sweep subcommand writes the grid") {
  const fs::path dir = temp_dir("sweep");
  const RunResult r =
      run("sweep " + kBenchFlags +
          " --theta -1 --vary vartheta=0.1:20:10 --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["rows"] == 10);
  std::ifstream in(dir / "sweep.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("alpha,beta,gamma,zeta,eta,theta,f0,", 0) == 0);
}

TEST_CASE("feedback-design emits gains and stable closed-loop eigenvalues") {
  const RunResult r = run("feedback-design " + kBenchFlags + " --theta 1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lambda1"].get<double>() == doctest::Approx(0.259921049894873164));
  CHECK(j["closed_loop_eigenvalues"].size() == 4);
  for (const auto& eig : j["closed_loop_eigenvalues"])
    CHECK(eig[0].get<double>() < 0.0);

  // Proactive parameters are a usage error for this subcommand.
  CHECK(run("feedback-design " + kBenchFlags + " --theta -1").exit_code == 2);
}

TEST_CASE("feedback-design --simulate writes the closed-loop trajectory") {
  const fs::path dir = temp_dir("fbsim");
  const RunResult r = run("feedback-design " + kBenchFlags +
                          " --theta 1 --simulate --amplitude 1e-3 --seed 2 "
                          "--t-end 50 --out " +
                          dir.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["closed_loop_status"] == "Completed");
  std::ifstream in(dir / "closed_loop.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x1,re_x2,im_x2,re_x3,im_x3,omega");
}

TEST_CASE("hopf-boundary subcommand") {
  const RunResult r = run("hopf-boundary " + kBenchFlags +
                          " --theta -1 --free vartheta --lo 0.1 --hi 100");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["value"].get<double>() == doctest::Approx(9.0));

  const RunResult none = run("hopf-boundary " + kBenchFlags +
                             " --theta -0.5 --free gamma --lo 0.1 --hi 50");
  REQUIRE(none.exit_code == 0);
  CHECK(json::parse(none.out)["found"] == false);
}

TEST_CASE("witness subcommand reports the discriminant sign") {
  const json pos = json::parse(run("witness --branch large-alpha-pos").out);
  CHECK(pos["sign"] == "positive");
  const json neg = json::parse(run("witness --branch small-alpha-neg").out);
  CHECK(neg["sign"] == "negative");
  CHECK(neg["params"]["alpha"].get<double>() == doctest::Approx(1e-3));

  // Emitted params JSON feeds straight back into other subcommands.
  const fs::path dir = temp_dir("witness_roundtrip");
  const fs::path file = dir / "w.json";
  std::ofstream(file) << pos["params"].dump();
  const RunResult eq = run("equilibrium --params " + file.string());
  REQUIRE(eq.exit_code == 0);
  const json j = json::parse(eq.out);
  // The construction sits on the lower viability boundary (zero margin up to
  // rounding); the other two inequalities hold with slack.
  CHECK(std::abs(j["feasibility"]["margins"][1].get<double>()) < 1e-9);
  CHECK(j["feasibility"]["area_bounded"] == true);
  CHECK(j["feasibility"]["burn_within_land"] == true);
}

TEST_CASE("streamlines subcommand writes CSV and SVG") {
  const fs::path dir = temp_dir("stream");
  const RunResult r = run("streamlines " + kBenchFlags +
                          " --vartheta 0.1 --plane af --fixed 0.2 "
                          "--u 0:1:5 --v 0:2:5 --svg --out " +
                          dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "streamlines_af.csv"));
  CHECK(fs::exists(dir / "streamlines_af.svg"));
  std::ifstream in(dir / "streamlines_af.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "a,f,b,va,vf,vb");
}

TEST_CASE("integration failure exits 3 and keeps the partial CSV") {
  const fs::path dir = temp_dir("fail3");
  const RunResult r =
      run("simulate " + kBenchFlags +
          " --theta 1 --init 1e300 1e300 1e300 --t-end 10 --out " +
          dir.string());
  CHECK(r.exit_code == 3);
  std::ifstream in(dir / "trajectory.csv");
  const std::string csv((std::istreambuf_iterator<char>(in)), {});
  CHECK(csv.rfind("t,a,f,b\n", 0) == 0);  // partial output retained
  CHECK(csv.find("# status,") != std::string::npos);
}

TEST_CASE("BURNSTAB_OUT provides the default output directory") {
  const fs::path dir = temp_dir("envout");
  const std::string cmd = "BURNSTAB_OUT=" + dir.string() + " " + cli_path() +
                          " simulate " + kBenchFlags +
                          " --vartheta 0.1 --t-end 1 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::fread(buf.data(), 1, buf.size(), pipe) > 0) {
  }
  REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(fs::exists(dir / "trajectory.csv"));
}
