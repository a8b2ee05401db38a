#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(KMEASURE_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json record(const Run& r) {
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "knotmeasure.record/1");
  return j["result"];
}

struct Files {
  Files() {
    REQUIRE(run("generate --kind trefoil --output cli_trefoil.json").code == 0);
    REQUIRE(run("generate --kind four-edge --seed 4 --output cli_four.json").code == 0);
    REQUIRE(run("generate --kind near-closed-trefoil --gap 0.2 --output cli_open.csv").code == 0);
    std::ofstream("cli_hopf_a.json") << R"({"closed": true, "vertices": [[1,1,0],[-1,1,0],[-1,-1,0],[1,-1,0]]})";
    std::ofstream("cli_hopf_b.json") << R"({"closed": true, "vertices": [[2,0,1],[0,0,1],[0,0,-1],[2,0,-1]]})";
    std::ofstream("cli_far.json") << R"({"closed": true, "vertices": [[102,0,1],[100,0,1],[100,0,-1],[102,0,-1]]})";
    std::ofstream("cli_vertical.json") << R"({"closed": false, "vertices": [[0,0,0],[0,0,1],[1,0,1],[1,1,0]]})";
    std::ofstream("cli_bad.json") << R"({"closed": true, "vertices": [[0,0,0]]})";
  }
  ~Files() {
    for (const char* f : {"cli_trefoil.json", "cli_four.json", "cli_open.csv", "cli_hopf_a.json", "cli_hopf_b.json",
                          "cli_far.json", "cli_bad.json", "cli_vertical.json"}) {
      std::remove(f);
    }
  }
};

}  // namespace

TEST_CASE_FIXTURE(Files, "lk") {
  const auto r = record(run("lk --input cli_hopf_a.json --input cli_hopf_b.json --format records"));
  CHECK(std::abs(std::abs(r["linking"].get<double>()) - 1.0) < 1e-6);
  const auto far = record(run("lk --input cli_hopf_a.json --input cli_far.json --format records"));
  CHECK(std::abs(far["linking"].get<double>()) < 1e-3);
  CHECK(run("lk --input cli_hopf_a.json --input cli_hopf_a.json").code == 3);
}

TEST_CASE_FIXTURE(Files, "v2 cross-check") {
  const auto r = record(run("v2 --input cli_trefoil.json --dir 0.1,0.2,1 --format records"));
  CHECK(r["v2_state_sum"] == "-23/4");
  CHECK(r["v2_combinatorial"] == "-23/4");
  const auto unknot = record(run("v2 --gauss \"c:\" --format records"));
  CHECK(unknot["v2_state_sum"] == "1/4");
  const Run bad = run("v2 --input cli_vertical.json --dir 0,0,1", true);
  CHECK(bad.code == 3);
  CHECK(bad.out.find("edge-parallel-to-direction") != std::string::npos);
  const auto sampled = record(run("v2 --input cli_trefoil.json --samples 20 --format records"));
  CHECK(sampled["all_agree"].get<bool>());
}

TEST_CASE_FIXTURE(Files, "Monte Carlo output is byte-identical across thread counts") {
  for (const std::string cmd : {"wk --k 2 --input cli_open.csv", "sll --input cli_open.csv",
                                "spectrum --input cli_open.csv", "v2 --input cli_open.csv",
                                "scan --gaps 0.5 --gaps 0.1 --input cli_trefoil.json"}) {
    const std::string base = cmd + " --samples 200 --seed 5 --format records";
    const Run one = run(base + " --threads 1");
    const Run many = run(base + " --threads 6");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
    CHECK(one.out == run(base + " --threads 1").out);
  }
}

TEST_CASE_FIXTURE(Files, "sll reports the implied v2") {
  const auto r = record(run("sll --input cli_trefoil.json --samples 50 --format records"));
  CHECK(r["seed"] == 20240601);
  CHECK(r["samples_used"] == 50);
  CHECK(r["implied_v2"].get<double>() == doctest::Approx(0.25 + 6 * r["mean"].get<double>()));
  const Run human = run("sll --input cli_trefoil.json --samples 50");
  CHECK(human.out.find("seed 20240601") != std::string::npos);
}

TEST_CASE_FIXTURE(Files, "spectrum of a four-edge curve") {
  const auto r = record(run("spectrum --input cli_four.json --samples 4000 --format records"));
  double total = 0.0;
  for (const auto& c : r["classes"]) total += c["probability"].get<double>();
  CHECK(r["classes"].size() == 2);
  CHECK(total == doctest::Approx(1.0));
  const auto e = record(run("sll-exact4 --input cli_four.json --format records"));
  CHECK(e["sll"].get<double>() == doctest::Approx(0.0335129715).epsilon(1e-6));
}

TEST_CASE_FIXTURE(Files, "verify-skein") {
  const auto r = record(run("verify-skein --gauss \"c: O0+ U1+ O2+ U0+ O1+ U2+\" --format records"));
  CHECK(r["pass"].get<bool>());
  CHECK(r["reports"].size() == 3);
  const Run k21 = run("verify-skein --gauss \"o: O0+ U1+ U0+ O1+\" --crossing 0 --format records");
  CHECK(record(k21)["reports"][0]["kind"] == "knotoid");
}

TEST_CASE_FIXTURE(Files, "jones and Gauss dump") {
  const Run r = run("jones --gauss \"o: O0+ U1+ U0+ O1+\" --dump-gauss");
  CHECK(r.code == 0);
  CHECK(r.out.find("q - q^2 + q^3 + q^6") != std::string::npos);
  CHECK(r.out.find("0 0 O +1 ") != std::string::npos);
  const auto rec = record(run("jones --input cli_trefoil.json --dir 0.1,0.2,1 --dump-gauss --format records"));
  CHECK(rec["v2"] == "-23/4");
  CHECK(rec.contains("gauss_dump"));
}

TEST_CASE_FIXTURE(Files, "generate") {
  const Run r = run("generate --kind four-edge --seed 9");
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["vertices"].size() == 5);
  CHECK_FALSE(j["closed"].get<bool>());
  // Re-reading a generated file gives back the same curve.
  const Run again = run("generate --kind trefoil --output cli_trefoil.json");
  CHECK(again.code == 0);
  CHECK(record(run("v2 --input cli_trefoil.json --dir 0.1,0.2,1 --format records"))["v2_state_sum"] == "-23/4");
}

TEST_CASE_FIXTURE(Files, "exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("wk --input missing.json").code == 2);
  CHECK(run("wk --input cli_bad.json").code == 2);
  CHECK(run("wk --input cli_trefoil.json --samples 1").code == 2);
  CHECK(run("v2 --input cli_vertical.json --dir 0,0,1").code == 3);
  CHECK(run("scan --input cli_open.csv --samples 10").code == 5);
  CHECK(run("wk --input cli_trefoil.json --samples 10 --max-crossings 1").code == 4);
  CHECK(run("sll-exact4 --input cli_trefoil.json").code == 5);
  CHECK(run("--help").code == 0);
}
