#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardy/cli.hpp"
#include <json.hpp>

using namespace hardy;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hardy_cli_test_" + name);
}

}  // namespace

TEST_CASE("bounds") {
  const Run a = run({"bounds", "--uniform", "40", "--case", "nd", "--p", "2"});
  REQUIRE(a.code == 0);
  const json j = json::parse(a.out);
  CHECK(j["sigma_p"].get<double>() == doctest::Approx(441));
  CHECK(j["argmax_n"] == 20);

  const Run z = run({"bounds", "--uniform", "0", "--case", "nd", "--p", "2"});
  REQUIRE(z.code == 0);
  const json jz = json::parse(z.out);
  CHECK(jz["lower"].get<double>() == doctest::Approx(0.25));
  CHECK(jz["upper"].get<double>() == doctest::Approx(1.0));

  const Run g = run({"bounds", "--geometric", "1", "20", "80", "--case", "nd", "--p", "2"});
  REQUIRE(g.code == 0);
  const double r = 20, ps = 2;
  const double closed = (std::pow(r, ps) - 1) / (std::pow(std::pow(r, ps - 1) - 1, 2) * (r - 1));
  CHECK(json::parse(g.out)["improved"]["delta_bar1"].get<double>() == doctest::Approx(closed).epsilon(1e-10));

  const Run it = run({"bounds", "--uniform", "10", "--case", "dn", "--p", "3", "--iters", "3"});
  REQUIRE(it.code == 0);
  const json ji = json::parse(it.out);
  CHECK(ji["delta"].size() == 3);
  CHECK(ji["delta_prime"].size() == 3);
  CHECK(ji["delta_bar"].size() == 3);
  CHECK(ji["certificates"]["delta_prime"].size() == 3);
}

TEST_CASE("solve") {
  const Run d = run({"solve", "--uniform", "1", "--case", "dn", "--p", "2"});
  REQUIRE(d.code == 0);
  CHECK(json::parse(d.out)["lambda"].get<double>() == doctest::Approx(1.0));

  const auto path = temp_path("chain.json");
  {
    std::ofstream f(path);
    f << R"({"case":"nd","mu":[1.5,0.2,3,0.7,2.2],"nu":[0.4,1.1,2.5,0.9,1.7]})";
  }
  const Run s = run({"solve", "--file", path.string(), "--p", "3.5"});
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["residual"].get<double>() <= 1e-9);
  CHECK(j["checks"]["residual"]["pass"] == true);
  std::filesystem::remove(path);
}

TEST_CASE("sweep") {
  const Run one = run({"sweep", "--uniform", "40", "--case", "nd", "--p-grid", "2", "2", "1", "--transform", "raw"});
  REQUIRE(one.code == 0);
  const auto ls = lines(one.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "p,k_sigma,delta1,delta_bar1,delta1_prime,sigma,lambda_exact");
  std::vector<double> cols;
  std::istringstream row(ls[1]);
  for (std::string cell; std::getline(row, cell, ',');) cols.push_back(std::stod(cell));
  REQUIRE(cols.size() == 7);
  CHECK(cols[3] == doctest::Approx(cols[4]).epsilon(1e-10));
  CHECK(one.out.find('\r') == std::string::npos);

  const std::vector<std::string> args{"sweep", "--geometric", "1", "20", "80", "--case", "nd", "--p-grid", "1.001",
                                      "30.001", "12"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 13);

  const auto path = temp_path("sweep.csv");
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--out", path.string()});
  REQUIRE(run(to_file).code == 0);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == a.out);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".partial"));
  std::filesystem::remove(path);

  CHECK(lines(run({"sweep", "--uniform", "5", "--case", "nd", "--p-grid", "1.5", "3"}).out).size() == 201);
}

TEST_CASE("verify") {
  CHECK(run({"verify", "--uniform", "40", "--case", "nd", "--p", "2", "--trials", "100"}).code == 0);
  CHECK(run({"verify", "--geometric", "1", "20", "80", "--case", "nd", "--p", "7"}).code == 0);
  const Run z = run({"verify", "--uniform", "0", "--case", "nd", "--p", "2"});
  CHECK(z.code == 0);
  CHECK(z.out.find("certificate_soundness") != std::string::npos);
  CHECK(z.out.find("FAIL") == std::string::npos);
}

TEST_CASE("duality") {
  const Run u = run({"duality", "--uniform", "10", "--case", "dn", "--p", "2"});
  REQUIRE(u.code == 0);
  CHECK(json::parse(u.out)["gap"].get<double>() <= 1e-10);
  CHECK(run({"duality", "--uniform", "10", "--case", "nd", "--p", "2"}).code == 2);
}

TEST_CASE("usage errors and exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bounds", "--uniform", "4", "--p", "2"}).code == 2);
  CHECK(run({"bounds", "--uniform", "4", "--case", "nd"}).code == 2);
  CHECK(run({"bounds", "--uniform", "4", "--case", "nd", "--p", "1"}).code == 2);
  CHECK(run({"bounds", "--uniform", "4", "--case", "xx", "--p", "2"}).code == 2);
  CHECK(run({"bounds", "--geometric", "1", "0.5", "4", "--case", "nd", "--p", "2"}).code == 2);
  CHECK(run({"bounds", "--geometric", "1", "20", "4.5", "--case", "nd", "--p", "2"}).code == 2);
  CHECK(run({"solve", "--file", "/nonexistent/chain.json", "--p", "2"}).code == 2);
  CHECK(run({"sweep", "--uniform", "4", "--case", "nd", "--p-grid", "3", "2", "5"}).code == 2);
  CHECK(run({"sweep", "--uniform", "4", "--case", "nd", "--p", "2", "--transform", "log"}).code == 2);
  const Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("sweep") != std::string::npos);
}

TEST_CASE("gnuplot script") {
  const Run g = run({"gnuplot", "--csv", "fig2.csv"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("'fig2.csv'") != std::string::npos);
  CHECK(g.out.find("set datafile separator ','") != std::string::npos);
}
