// Copyright 2026 The nsbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nsbox::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nsbox_cli_" + name))
      .string();
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"spa", "--map", "transpose", "--bogus"}).code == 2);
  CHECK(run({"spa", "--map", "nope"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spa") {
  const Result r = run({"spa", "--map", "transpose", "--d", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["p_max"].get<double>() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(j["mixture_min_eigenvalue_above"].get<double>() < 0.0);
  CHECK(run({"spa", "--map", "pauli_xi", "--d", "3"}).code == 1);
}

TEST_CASE("check, reduce and semilocalize on exported channels") {
  const std::string cnot = temp_path("cnot.json");
  REQUIRE(run({"export", "--name", "cnot", "--out", cnot}).code == 0);
  const Result c = run({"check", "--channel", cnot});
  REQUIRE(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["causal"] == false);
  CHECK(j.contains("witness"));
  CHECK(run({"reduce", "--channel", cnot, "--side", "B"}).code == 1);
  CHECK(run({"semilocalize", "--channel", cnot}).code == 1);

  const std::string nlp = temp_path("nlp.json");
  REQUIRE(run({"export", "--name", "lambda_nl_prime", "--out", nlp}).code == 0);
  const Result s = run({"semilocalize", "--channel", nlp});
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["reconstruction_error"].get<double>() <
        1e-8);
  const Result red = run({"reduce", "--channel", nlp, "--side", "A"});
  REQUIRE(red.code == 0);
  CHECK(nlohmann::json::parse(red.out)["d_in"] == 2);

  const std::string junk = temp_path("junk.json");
  std::ofstream(junk) << "{ not json";
  CHECK(run({"check", "--channel", junk}).code == 1);
  CHECK(run({"check", "--channel", temp_path("missing.json")}).code == 1);
  std::remove(cnot.c_str());
  std::remove(nlp.c_str());
  std::remove(junk.c_str());
}

TEST_CASE("box") {
  const Result r = run({"box", "--k", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,y,a,b,p\n", 0) == 0);
  const Result m = run({"box", "--k", "2", "--measure"});
  REQUIRE(m.code == 0);
  const std::string exact = run({"box", "--k", "2"}).out;
  std::istringstream ms(m.out), es(exact);
  std::string ml, el;
  std::size_t rows = 0;
  while (std::getline(ms, ml) && std::getline(es, el)) {
    if (rows++ == 0) continue;
    const auto mc = ml.rfind(','), ec = el.rfind(',');
    CHECK(ml.substr(0, mc) == el.substr(0, ec));
    CHECK(std::stod(ml.substr(mc + 1)) ==
          doctest::Approx(std::stod(el.substr(ec + 1))).epsilon(1e-12));
  }
  CHECK(rows == 17);
}

TEST_CASE("sweeps") {
  const Result ep = run({"entpower-sweep", "--steps", "3", "--nodes", "16"});
  REQUIRE(ep.code == 0);
  CHECK(ep.out.rfind("alpha,e_pow,err_estimate\n", 0) == 0);
  const std::string path = temp_path("tradeoff.csv");
  REQUIRE(run({"tradeoff", "--steps", "3", "--out", path}).code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "alpha,i_m,e_pow,err_estimate");
  std::remove(path.c_str());
  const Result ch = run({"chsh-sweep", "--steps", "2"});
  REQUIRE(ch.code == 0);
  CHECK(ch.out.rfind("alpha,I_coherent_analytic,I_coherent_numeric,"
                     "I_incoherent_analytic,I_incoherent_numeric\n",
                     0) == 0);
  CHECK(run({"chsh-sweep", "--steps", "1"}).code == 2);
}

TEST_CASE("vandam") {
  const Result r =
      run({"vandam", "--fn", "ip", "--n", "4", "--trials", "100"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["errors"] == 0);
  CHECK(j["bits_sent"] == 1);
  CHECK(j["boxes_used"] == 4);
  CHECK(j["seed"] == 1);
  const Result a = run({"vandam", "--fn", "random", "--n", "3", "--seed", "9"});
  const Result b = run({"vandam", "--fn", "random", "--n", "3", "--seed", "9"});
  CHECK(a.out == b.out);
  CHECK(run({"vandam", "--fn", "nope"}).code == 2);
}
