#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "numrad/cli.hpp"

using namespace numrad;
using numrad::cli::Flags;
using numrad::cli::InputError;
using numrad::cli::run_command;

namespace {

int run_main(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "numrad");
  std::vector<char*> argv;
  for (auto& a : args) {
    argv.push_back(a.data());
  }
  std::ostringstream o, e;
  const int code = numrad::cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

std::string input_error(const std::string& command, const std::string& doc) {
  try {
    run_command(command, doc, Flags{});
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const char* kShift = R"({"space": {"dim": 3, "p": 2}, "operator": [[0,1,0],[0,0,1],[0,0,0]]})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("FNV-1a digests") {
    CHECK(cli::fnv1a_hex("") == "cbf29ce484222325");
    CHECK(cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("radius report") {
    const auto r = run_command("radius", std::string(kShift), Flags{});
    const auto& res = r.payload["results"];
    CHECK(res["numerical_radius"]["value"].get<double>() == doctest::Approx(std::cos(3.14159265358979 / 4)));
    CHECK(res["operator_norm"]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(r.payload["input_digest"] == cli::fnv1a_hex(kShift));
    CHECK(r.payload["converged"] == true);
    CHECK(r.exit_code == 0);
  }

  TEST_CASE("payload is deterministic") {
    Flags f;
    f.method = Method::sample;
    f.seed = 9;
    const auto a = run_command("radius", std::string(kShift), f);
    const auto b = run_command("radius", std::string(kShift), f);
    CHECK(a.payload.dump() == b.payload.dump());
  }

  TEST_CASE("schema errors name the field") {
    CHECK(input_error("radius", "{\"space\": {\"dim\": 3, \"p\": 2}}").find("'operator'") != std::string::npos);
    CHECK(input_error("radius", "{\"space\": {\"dim\": 3}}").find("'space.p'") != std::string::npos);
    CHECK(input_error("radius", "{\"space\": {\"dim\": 3, \"p\": 0.5}, \"operator\": []}").find("'space.p'") !=
          std::string::npos);
    CHECK(input_error("radius", "{\"space\": {\"dim\": 2, \"p\": 2}, \"operator\": [[1,2],[3]]}")
              .find("'operator[1]'") != std::string::npos);
    CHECK(input_error("radius", "{\"space\": {\"dim\": 2, \"p\": 2}, \"oprator\": [[1,0],[0,1]]}")
              .find("'oprator'") != std::string::npos);
    CHECK(input_error("radius", "[1, 2]").find("'<root>'") != std::string::npos);
    CHECK(input_error("radius", "{").find("input") != std::string::npos);
    CHECK(input_error("minproj", "{\"space\": {\"dim\": 3, \"p\": 2}, \"v_basis\": [[1,2,3],[2,4,6]]}") != "");
  }

  TEST_CASE("exit codes") {
    std::string out, err;
    CHECK(run_main({"fourier", "--n", "0"}, out, err) == 0);
    CHECK(out.find("\"payload\"") != std::string::npos);
    CHECK(out.find("\"wall_time_s\"") != std::string::npos);
    CHECK(run_main({"fourier", "--n", "2", "--N", "9"}, out, err) == 2);
    CHECK(err.find("'--N'") != std::string::npos);
    CHECK(run_main({"radius", "/nonexistent/problem.json"}, out, err) == 2);
    CHECK(run_main({"radius"}, out, err) == 2);
    CHECK(run_main({"minproj", "--instance", "bogus"}, out, err) == 2);
    CHECK(err.find("'--instance'") != std::string::npos);
    CHECK(run_main({"radius", "--kind", "sideways"}, out, err) == 2);
    CHECK(run_main({"unknowncommand"}, out, err) == 2);
  }

  TEST_CASE("fourier degree zero") {
    Flags f;
    f.n = 0;
    const auto r = run_command("fourier", std::nullopt, f);
    const auto& res = r.payload["results"];
    CHECK(res["N"] == 4);
    CHECK(res["lebesgue_constant"]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(res["rank"] == 1);
    CHECK(res["marcinkiewicz_difference"].get<double>() < 1e-12);
  }

  TEST_CASE("fourier CSV sweep") {
    const std::string path = "numrad_test_sweep.csv";
    Flags f;
    f.n = 3;
    f.N = 64;
    f.csv = path;
    run_command("fourier", std::nullopt, f);
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "n,N,lebesgue");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
    }
    CHECK(rows == 4);
    std::remove(path.c_str());
  }

  TEST_CASE("minproj on a norm-one instance") {
    Flags f;
    f.instance = "normone";
    f.kind = NormKind::operator_norm;
    const auto r = run_command("minproj", std::nullopt, f);
    const auto& res = r.payload["results"];
    CHECK(res["minimum"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res["certificate"]["feasible"] == true);
  }

  TEST_CASE("average reports the commutant") {
    const std::string doc =
        R"({"space": {"dim": 3, "p": "4/3"}, "v_basis": [[1,1,1]], "group": "cyclic",
            "projection": [[1,0,0],[1,0,0],[1,0,0]]})";
    const auto r = run_command("average", doc, Flags{});
    const auto& res = r.payload["results"];
    CHECK(res["unique_commuting_projection"] == true);
    CHECK(res["radius_after"]["value"].get<double>() <= res["radius_before"]["value"].get<double>() + 1e-9);
    CHECK(res["average"][0][0].get<double>() == doctest::Approx(1.0 / 3.0));
  }
}
