#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

#ifndef SQC_CLI_PATH
#error "SQC_CLI_PATH must point at the sqc binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(SQC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_timestamp(const std::string& doc) {
  std::istringstream in(doc);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("exit-code contract") {
  CHECK(run("check --catalog sq_norm --gamma 2 --conditions definition,no_integral,dini,gradient")
            .exit_code == 0);
  CHECK(run("check --catalog example1_g --gamma 0.1").exit_code == 1);
  CHECK(run("check --expr x1^2 --dim 1 --box -1 1 --gamma 2").exit_code == 0);
  CHECK(run("counterexample").exit_code == 0);
  CHECK(run("counterexample --v-grid 11").exit_code == 0);
  CHECK(run("minimize --catalog example1_g --x 0 --y 4 --validate").exit_code == 1);
  CHECK(run("minimize --catalog sq_norm --x -1 --y 2 --target-width 1e-6").exit_code == 0);
  CHECK(run("construction --catalog sq_norm --x 0 --y 1 --t 0.5 --gamma 2 --n-list 1,4").exit_code ==
        0);
  CHECK(run("catalog").exit_code == 0);

  // usage / evaluation errors
  CHECK(run("check --catalog no_such_entry --gamma 1").exit_code == 2);
  CHECK(run("check --expr 'x1 + * 2' --dim 1 --box 0 1 --gamma 1").exit_code == 2);
  CHECK(run("construction --catalog sq_norm --x 0 --y 1 --t 1.5 --gamma 2").exit_code == 2);
  CHECK(run("check --catalog sq_norm --gamma -3").exit_code == 2);
}

TEST_CASE("falsification prints the worst witness") {
  auto r = run("check --catalog example1_g --gamma 0.1");
  CHECK(r.output.find("FALSIFIED") != std::string::npos);
}

TEST_CASE("json reports are deterministic modulo the timestamp") {
  auto a = run("check --catalog sq_norm --gamma 2 --seed 42 --format json");
  auto b = run("check --catalog sq_norm --gamma 2 --seed 42 --format json");
  REQUIRE(a.exit_code == 0);
  CHECK(strip_timestamp(a.output) == strip_timestamp(b.output));

  auto c = run("check --catalog sq_norm --gamma 2 --seed 7 --format json");
  CHECK(strip_timestamp(a.output) != strip_timestamp(c.output));
}

TEST_CASE("reports validate against the schema shape") {
  auto r = run("counterexample --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["schema"] == "sqc-report/1");
  CHECK(doc.contains("version"));
  CHECK(doc.contains("timestamp"));
  CHECK(doc["config"]["command"] == "counterexample");
  CHECK(doc["counterexample"]["reproduced"] == true);
  CHECK(doc["counterexample"]["violation_known"]["violation"] == 1.0);

  auto e = run("estimate --catalog example1_g --format json");
  json est = json::parse(e.output);
  bool found_flag = false;
  for (const auto& item : est["estimate"])
    if (item["condition"] == "definition") found_flag = item["not_quasiconvex"];
  CHECK(found_flag);
}

TEST_CASE("gamma may be estimated in place") {
  CHECK(run("check --catalog sq_norm --gamma estimate --conditions definition").exit_code == 0);
}

TEST_CASE("SQC_SEED environment variable applies only when --seed is absent") {
  auto env7 = run("check --catalog sq_norm --gamma 2 --format json", "SQC_SEED=7");
  auto flag7 = run("check --catalog sq_norm --gamma 2 --seed 7 --format json");
  CHECK(strip_timestamp(env7.output) == strip_timestamp(flag7.output));

  auto flag42 = run("check --catalog sq_norm --gamma 2 --seed 42 --format json", "SQC_SEED=7");
  auto plain42 = run("check --catalog sq_norm --gamma 2 --seed 42 --format json");
  CHECK(strip_timestamp(flag42.output) == strip_timestamp(plain42.output));
}

TEST_CASE("config file values are read and overridden by flags") {
  std::string path = "/tmp/sqc_test_config.ini";
  {
    std::ofstream f(path);
    f << "catalog=example1_g\n";
    f << "gamma=0.1\n";
  }
  CHECK(run("check --config " + path).exit_code == 1);       // example1_g falsified
  CHECK(run("check --config " + path + " --catalog sq_norm --gamma 2").exit_code == 0);

  std::string epath = "/tmp/sqc_test_config_expr.ini";
  {
    std::ofstream f(epath);
    f << "expr=x1^2 + 0*x1\n";  // values may contain spaces
    f << "dim=1\n";
    f << "box=-1 1\n";          // multi-valued keys split on whitespace
    f << "gamma=2\n";
  }
  CHECK(run("check --config " + epath).exit_code == 0);
}

TEST_CASE("construction emits the trace table and exact error-law column") {
  auto r = run("construction --catalog sq_norm --x 0 --y 1 --t 0.5 --gamma 2 "
               "--n-list 1,4,16,64 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  for (const auto& trace : doc["construction"]) {
    double n = trace["n"];
    double diff = static_cast<double>(trace["limit"]) - static_cast<double>(trace["partial_sum"]);
    CHECK(diff == doctest::Approx(0.125 / n).epsilon(1e-12));
    CHECK(trace["identities_ok"] == true);
  }

  auto csv = run("construction --catalog sq_norm --x 0 --y 1 --t 0.5 --gamma 2 --n-list 4 "
                 "--format csv");
  CHECK(csv.output.find("i,w1,h_w,b") != std::string::npos);
}

TEST_CASE("--out writes the JSON document regardless of stdout format") {
  std::string path = "/tmp/sqc_test_out.json";
  std::remove(path.c_str());
  auto r = run("check --catalog sq_norm --gamma 2 --out " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  json doc = json::parse(in);
  CHECK(doc["schema"] == "sqc-report/1");
  std::remove(path.c_str());
}

TEST_CASE("minimize reports the candidate and growth consistency") {
  auto r = run("minimize --catalog sq_norm --x -1 --y 2 --target-width 1e-6 --gamma 2 "
               "--format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(static_cast<double>(doc["minimize"]["candidate"]) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(doc["minimize"]["growth_all_consistent"] == true);
}
