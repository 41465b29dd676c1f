#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sigverify/cli.hpp"
#include "temp_dir.hpp"

using namespace sigverify;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
  std::ifstream in(p);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("full workflow") {
    testing::TempDir dir("cli");
    const std::string corpus = (dir / "corpus").string();
    Run r = run({"synth", "--writers", "3", "--out", corpus, "--seed", "5", "--genuine", "12", "--forgery", "6"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "corpus" / "w002" / "forgery" / "f005.pgm"));

    r = run({"ingest", corpus, "--manifest-out", (dir / "m.json").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("writers=3") != std::string::npos);

    std::ofstream(dir / "cfg.json") << R"({"ocsvm": {"dwt_sigma": 0.05}, "protocol": {"n_genuine_train": 6, "repeats": 2}})";
    r = run({"enroll", (dir / "m.json").string(), "--out", (dir / "p.json").string()});
    REQUIRE(r.code == 0);

    SUBCASE("verify an enrollment image with the default config") {
      r = run({"verify", (dir / "p.json").string(), (dir / "corpus/w001/genuine/g000.pgm").string(), "--writer", "w001"});
      CHECK(r.code == 0);
      CHECK(r.out.find("decision=genuine") != std::string::npos);
      CHECK(r.out.find("fused=") != std::string::npos);
    }

    SUBCASE("calibrate emits a monotone curve") {
      r = run({"enroll", corpus, "--config", (dir / "cfg.json").string(), "--out", (dir / "p2.json").string()});
      REQUIRE(r.code == 0);
      r = run({"calibrate", corpus, "--profiles", (dir / "p2.json").string(), "--k-min", "-4", "--k-max", "4",
               "--steps", "161", "--curve-out", (dir / "curve.csv").string(), "--profiles-out",
               (dir / "p3.json").string()});
      REQUIRE(r.code == 0);
      CHECK(r.out.find("k=") == 0);
      std::string header;
      const auto rows = read_csv(dir / "curve.csv", header);
      CHECK(header == "k,far,frr");
      REQUIRE(rows.size() == 161);
      for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][0] > rows[i - 1][0]);
        CHECK(rows[i][1] <= rows[i - 1][1]);
        CHECK(rows[i][2] >= rows[i - 1][2]);
      }
      CHECK(slurp(dir / "p3.json").find("\"format_version\": 1") != std::string::npos);
      // A forgery against the calibrated profiles gives exit code 1.
      r = run({"verify", (dir / "p3.json").string(), (dir / "corpus/w000/forgery/f000.pgm").string(), "--writer",
               "w000"});
      CHECK(r.code == 1);
      CHECK(r.out.find("decision=forgery") != std::string::npos);
    }

    SUBCASE("evaluate is byte identical across runs") {
      const std::string cfg = (dir / "cfg.json").string();
      r = run({"evaluate", corpus, "--config", cfg, "--mode", "fused", "--report-out", (dir / "a.csv").string()});
      REQUIRE(r.code == 0);
      r = run({"evaluate", corpus, "--config", cfg, "--mode", "fused", "--report-out", (dir / "b.csv").string()});
      REQUIRE(r.code == 0);
      CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
      CHECK(slurp(dir / "a_repeats.csv") == slurp(dir / "b_repeats.csv"));
      CHECK(slurp(dir / "a_writers.csv") == slurp(dir / "b_writers.csv"));
      CHECK(slurp(dir / "a.csv").rfind("mode,k,far,frr,aer,eer", 0) == 0);

      r = run({"evaluate", corpus, "--config", cfg, "--mode", "lpq", "--seed", "9", "--k", "calibrate",
               "--report-out", (dir / "c.csv").string()});
      REQUIRE(r.code == 0);
      CHECK(r.out.find("eer=") != std::string::npos);
      CHECK(slurp(dir / "c.csv").find(",9\n") != std::string::npos);
    }

    SUBCASE("error paths") {
      r = run({"verify", (dir / "p.json").string(), (dir / "none.png").string(), "--writer", "w001"});
      CHECK(r.code == 2);
      CHECK(r.err.rfind("error: io: ", 0) == 0);
      CHECK(r.err.find('\n') == r.err.size() - 1);

      r = run({"verify", (dir / "p.json").string(), (dir / "corpus/w001/genuine/g000.pgm").string(), "--writer",
               "w999"});
      CHECK(r.code == 2);
      CHECK(r.err.rfind("error: invalid_argument: ", 0) == 0);

      r = run({"evaluate", corpus, "--report-out", (dir / "x.csv").string(), "--mode", "sum"});
      CHECK(r.code == 2);

      r = run({"enroll", corpus, "--out", (dir / "q.json").string(), "--bogus"});
      CHECK(r.code == 2);
      CHECK(r.err.find("Usage") != std::string::npos);
      CHECK(r.err.find("error: usage: ") != std::string::npos);
    }
  }

  TEST_CASE("no subcommand and help") {
    Run r = run({});
    CHECK(r.code == 2);
    r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("evaluate") != std::string::npos);
  }
}
