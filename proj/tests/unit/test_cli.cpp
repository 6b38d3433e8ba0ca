#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(MGRAPH_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mgraph_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("transform subcommand") {
  auto r = run("transform rho-to-p 0");
  CHECK(r.code == 0);
  CHECK(r.out == "0.5\n");
  r = run("transform p-to-rho 0.5");
  CHECK(r.out == "0\n");
  r = run("transform rho-to-p 0.9");
  CHECK(r.out == "0.8564337068712937\n");
  r = run("transform critical-value 2 0.5 0.3");
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  r = run("transform normal-quantile 0.975");
  CHECK(r.out == "1.9599639845400536\n");
  r = run("transform rho-to-p 2");
  CHECK(r.code == 2);
  CHECK(r.out.rfind("error: ", 0) == 0);
}

TEST_CASE("validate-sigma subcommand") {
  const auto dir = scratch("validate");
  {
    std::ofstream(dir / "good.csv") << "1,0.5\n0.5,1\n";
    std::ofstream(dir / "bad.csv") << "1,0.9,0.9\n0.9,1,-0.9\n0.9,-0.9,1\n";
  }
  CHECK(run("validate-sigma " + (dir / "good.csv").string()).code == 0);
  const auto bad = run("validate-sigma " + (dir / "bad.csv").string());
  CHECK(bad.code == 3);
  CHECK(bad.out.find("indefinite") != std::string::npos);
  CHECK(run("validate-sigma " + (dir / "missing.csv").string()).code == 3);
}

TEST_CASE("simulate then identify") {
  const auto dir = scratch("identify");
  const auto returns = (dir / "returns.csv").string();
  CHECK(run("simulate --sigma equicorrelated:0.9 --N 30 --n 400 --seed 5 --output " + returns).code == 0);
  const auto r = run("identify --input " + returns + " --method sign --p0 0.7 --alpha 0.1 --out-dir " +
                     (dir / "out").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("edges=435") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "adjacency.csv"));
  CHECK(fs::exists(dir / "out" / "edges.txt"));

  std::ofstream(dir / "broken.csv") << "A,B\n1,2\n3,oops\n";
  const auto broken = run("identify --input " + (dir / "broken.csv").string() + " --p0 0.6");
  CHECK(broken.code == 3);
  CHECK(broken.out.find("line 3, column 2") != std::string::npos);
  CHECK(run("identify --input " + returns + " --p0 0.6 --rho0 0.2").code == 2);
  CHECK(run("identify --input " + returns + " --p0 0.6 --alpha 1.5").code == 2);
}

TEST_CASE("risk smoke run") {
  const auto dir = scratch("risk");
  const auto r = run("risk --set N=4 --set n=30 --set sigma=identity --set family=gaussian -R 1 --threads 1 "
                     "--set p0_start=0.3 --set p0_stop=0.7 --set p0_step=0.2 --svg --out-dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "metadata.txt"));
  CHECK(fs::exists(dir / "risk_identity_gaussian_alpha0.5.csv"));
  CHECK(fs::exists(dir / "risk_identity_gaussian_alpha0.1.svg"));
  CHECK(run("risk --set N=1").code == 2);
  CHECK(run("risk --preset nope").code == 2);
  CHECK(run("risk --config /nonexistent/config.txt").code == 2);
}
