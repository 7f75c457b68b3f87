#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string err;
};

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("memsfem_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

CliResult run_cli(const std::string& args, const fs::path& work) {
  const fs::path err_file = work / "stderr.txt";
  const std::string cmd = std::string("\"") + MEMS2D_PATH + "\" " + args +
                          " 2> \"" + err_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.err = slurp(err_file);
  return r;
}

nlohmann::json load_json(const fs::path& path) {
  return nlohmann::json::parse(slurp(path));
}

const char* kLayeredConfig =
    "[physical]\n"
    "boundary = oneD\n"
    "[mesh]\n"
    "nx = 32\n"
    "nz1 = 16\n"
    "nz2 = 16\n";

}  // namespace

TEST_CASE("solve writes its artifacts and matches the layered oracle") {
  const fs::path dir = fresh_dir("solve");
  spit(dir / "run.ini", kLayeredConfig);
  const fs::path out = dir / "out";

  const CliResult r = run_cli(
      "solve --config \"" + (dir / "run.ini").string() + "\" --out \"" +
          out.string() + "\"",
      dir);
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "potential.grid"));
  CHECK(fs::exists(out / "traces.csv"));

  const nlohmann::json j = load_json(out / "energy.json");
  CHECK(j.at("command") == "solve");
  CHECK(j.at("e_elec").get<double>() ==
        doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
  CHECK(j.at("e_mech").get<double>() == 0.0);
  CHECK(j.at("config_hash").get<std::string>().size() == 16);
  fs::remove_all(dir);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  const fs::path dir = fresh_dir("repro");
  spit(dir / "run.ini", kLayeredConfig);
  const std::string base =
      "solve --config \"" + (dir / "run.ini").string() + "\" --out \"";

  CHECK(run_cli(base + (dir / "a").string() + "\"", dir).code == 0);
  CHECK(run_cli(base + (dir / "b").string() + "\"", dir).code == 0);
  for (const char* name : {"potential.grid", "traces.csv", "energy.json"}) {
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  fs::remove_all(dir);
}

TEST_CASE("config mistakes exit with code 2 and a pointed message") {
  const fs::path dir = fresh_dir("badcfg");
  spit(dir / "run.ini", "[mesh]\nnzx = 4\n");

  const CliResult bad_key = run_cli(
      "solve --config \"" + (dir / "run.ini").string() + "\" --out \"" +
          (dir / "out").string() + "\"",
      dir);
  CHECK(bad_key.code == 2);
  CHECK(bad_key.err.find("config error") != std::string::npos);
  CHECK(bad_key.err.find("nzx") != std::string::npos);

  const CliResult missing = run_cli(
      "solve --config \"" + (dir / "absent.ini").string() + "\"", dir);
  CHECK(missing.code == 2);
  fs::remove_all(dir);
}

TEST_CASE("zero voltage runs are exact no-ops") {
  const fs::path dir = fresh_dir("zerov");
  spit(dir / "run.ini",
       "[physical]\nV = 0\n[mesh]\nnx = 32\nnz1 = 16\nnz2 = 16\n");
  const std::string tail =
      " --config \"" + (dir / "run.ini").string() + "\" --out \"" +
      (dir / "out").string() + "\"";

  CHECK(run_cli("force" + tail, dir).code == 0);
  const nlohmann::json f = load_json(dir / "out" / "force.json");
  CHECK(f.at("min_g").get<double>() == 0.0);
  CHECK(f.at("max_g").get<double>() == 0.0);
  CHECK(fs::exists(dir / "out" / "force.csv"));

  CHECK(run_cli("minimize" + tail, dir).code == 0);
  const nlohmann::json m = load_json(dir / "out" / "minimize.json");
  CHECK(m.at("converged") == true);
  CHECK(m.at("iterations") == 0);
  CHECK(m.at("e_total").get<double>() == 0.0);
  CHECK(fs::exists(dir / "out" / "final_state.dat"));
  CHECK(fs::exists(dir / "out" / "iterates.csv"));
  fs::remove_all(dir);
}

TEST_CASE("an empty probe list verifies trivially") {
  const fs::path dir = fresh_dir("noprobes");
  spit(dir / "run.ini", "[verify]\nprobes =\n");

  const CliResult r = run_cli(
      "verify --config \"" + (dir / "run.ini").string() + "\" --out \"" +
          (dir / "out").string() + "\"",
      dir);
  CHECK(r.code == 0);
  const nlohmann::json j = load_json(dir / "out" / "verify.json");
  CHECK(j.at("pass") == true);
  CHECK(j.at("probes").empty());
  fs::remove_all(dir);
}
