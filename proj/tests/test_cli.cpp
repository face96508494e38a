#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const char* bin = std::getenv("SEGREHOM_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

json parse(const RunResult& r) {
  json j = json::parse(r.out, nullptr, false);
  REQUIRE(!j.is_discarded());
  return j;
}

}  // namespace

TEST_CASE("homology command emits a full envelope") {
  auto r = run("homology N 0 0 0 --e 2 --g 2");
  CHECK(r.status == 0);
  json j = parse(r);
  CHECK(j["command"] == "homology");
  CHECK(j["e"] == 2);
  CHECK(j["g"] == 2);
  CHECK(j["ring"] == "Z");
  CHECK(j["version"] == "1.0.0");
  CHECK(j["params"]["side"] == "N");
  CHECK(j["result"]["free_rank"] == 1);
  CHECK(j["result"]["torsion"].empty());
  CHECK(j["result"]["pretty"] == "Z");

  auto rq = run("homology M 1 2 0 --e 2 --g 2 --ring q");
  CHECK(rq.status == 0);
  CHECK(parse(rq)["ring"] == "Q");
}

TEST_CASE("invalid arguments exit with code two") {
  CHECK(run("homology X 0 0 0").status == 2);
  CHECK(run("homology N 0 0 0 --ring gf6").status == 2);
  CHECK(run("homology N 0 0 0 --bogus").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("verify split --e 2 --g 2").status == 2);
  CHECK(run("betti --ell 0 --e 2 --g 2 --field z").status == 2);
  CHECK(run("homology N 0 0 0 --route sideways").status == 2);
  auto help = run("--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("homology") != std::string::npos);
}

TEST_CASE("verify complex reports failures through the exit code") {
  auto bad = run("verify complex --r 2 --s 1 --negate-M --e 2 --g 2");
  CHECK(bad.status == 1);
  json jb = parse(bad);
  CHECK(jb["result"]["ok"] == false);
  CHECK(!jb["result"]["failures"].empty());

  auto good = run("verify complex --r 1 --s 1 --e 2 --g 2");
  CHECK(good.status == 0);
  CHECK(parse(good)["result"]["ok"] == true);
}

TEST_CASE("verify subcommands cover the statement checks") {
  auto zeta = run("verify zeta --e 2 --g 2");
  CHECK(zeta.status == 0);
  json jz = parse(zeta);
  CHECK(jz["result"]["terms"] == 2);
  std::string top = jz["result"]["top_image"];
  CHECK((top == "1" || top == "-1"));

  auto psi = run("verify psi --r 1 --s 1 --e 2 --g 2");
  CHECK(psi.status == 0);
  json jp = parse(psi);
  int sign = jp["result"]["resolved_sign"];
  CHECK((sign == 1 || sign == -1));

  CHECK(run("verify duality --m 1 --n 1 --p 1 --e 2 --g 2").status == 0);
  CHECK(run("verify thm61 --m 1 --n 1 --p 1 --e 2 --g 2").status == 0);
  CHECK(run("verify split --r 1 --s 1 --e 2 --g 2").status == 0);
  CHECK(run("verify cauchy --e 2 --g 3").status == 0);
  CHECK(run("verify oracle --ell 0 --qmax 3 --e 2 --g 2").status == 0);
  CHECK(run("verify cor62 --P 2 --Q 2 --e 3 --g 3").status == 0);
  CHECK(run("verify cor63 --ell 0 --q 2 --e 3 --g 3").status == 0);
  CHECK(run("verify bridge --rowcap 1,1 --colcap 1,1 --ell 0 --p 1").status == 0);
}

TEST_CASE("betti tables in both output formats") {
  auto csv = run("betti --ell 0 --e 2 --g 2 --format csv");
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("p,q,beta\n", 0) == 0);
  CHECK(csv.out.find("0,0,1\n") != std::string::npos);
  CHECK(csv.out.find("1,2,1\n") != std::string::npos);

  auto jr = run("betti --ell 2 --e 3 --g 3 --field q --qmax 4");
  CHECK(jr.status == 0);
  json j = parse(jr);
  CHECK(j["command"] == "betti");
  CHECK(j["ring"] == "Q");
  std::map<std::pair<int, int>, long> entries;
  for (const auto& item : j["result"]["entries"])
    entries[{item["p"], item["q"]}] = item["beta"];
  std::map<std::pair<int, int>, long> expected{
      {{0, 0}, 6}, {{1, 1}, 24}, {{2, 2}, 36}, {{3, 3}, 24}, {{4, 4}, 6}};
  CHECK(entries == expected);
}

TEST_CASE("chessboard command lists face counts and homology") {
  auto r = run("chessboard 1,1 1,1");
  CHECK(r.status == 0);
  json j = parse(r);
  CHECK(j["result"]["f_vector"] == json::array({1, 4, 2}));
  CHECK(j["result"]["homology"]["0"]["free_rank"] == 1);
  CHECK(j["result"]["homology"]["-1"]["free_rank"] == 0);
  CHECK(j["result"]["homology"]["1"]["free_rank"] == 0);

  auto single = run("chessboard 1,1,1,1,1 1,1,1,1,1 --dim 2");
  CHECK(single.status == 0);
  json js = parse(single);
  auto torsion = js["result"]["homology"]["2"]["torsion"];
  REQUIRE(torsion.size() == 1);
  CHECK(torsion[0] == "3");
}

TEST_CASE("output is deterministic") {
  std::string cmd = "homology N 1 1 1 --e 2 --g 2 --ring gf2";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}
