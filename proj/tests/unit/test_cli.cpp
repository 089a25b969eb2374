#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using hhbound::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const char* name) {
  const fs::path p = fs::temp_directory_path() / "hhbound_cli_test" / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(call({}).code == 1);
  CHECK(call({"nosuch"}).code == 1);
  CHECK(call({"verify", "--f", "monomial:2"}).code == 1);
  CHECK(call({"constants"}).code == 1);
  CHECK(call({"constants", "--alpha", "1.5"}).code == 1);
  const Outcome bad = call({"verify", "--f", "nosuch", "--g", "const:1", "--a", "0", "--b",
                            "1", "--x", "0.5", "--q", "1", "--alpha", "1", "--m", "1",
                            "--theorem", "T21", "--out", scratch("bad").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error") != std::string::npos);
  CHECK(call({"verify", "--config", "/nonexistent/config.json"}).code == 1);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("inline verify") {
  const fs::path dir = scratch("inline");
  const Outcome r = call({"verify", "--f", "monomial:2", "--g", "const:1", "--a", "0",
                          "--b", "1", "--x", "0.5", "--q", "1", "--alpha", "1", "--m",
                          "1", "--theorem", "T21", "--out", dir.string(), "--name", "one"});
  CHECK(r.code == 0);
  CHECK(r.out.find("T21 x=0.5") != std::string::npos);
  CHECK(r.out.find("rhs=0.25") != std::string::npos);
  CHECK(r.out.find("holds=true") != std::string::npos);
  CHECK(r.out.find("violations=0") != std::string::npos);
  CHECK(fs::exists(dir / "one.csv"));
  CHECK(fs::exists(dir / "one.json"));
}

TEST_CASE("inline verify reports a hypothesis rejection") {
  const Outcome r = call({"verify", "--f", "monomial:1.5", "--g", "const:1", "--a", "0",
                          "--b", "1", "--x", "0.5", "--q", "1", "--alpha", "1", "--m",
                          "1", "--theorem", "T22", "--bstar", "1", "--out",
                          scratch("reject").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("hypothesis rejected") != std::string::npos);
  CHECK(r.out.find("hypothesis_rejections=1") != std::string::npos);
}

TEST_CASE("classify writes a csv") {
  const fs::path out = scratch("classify") / "c.csv";
  const Outcome r = call({"classify", "--f", "negmonomial:2", "--bstar", "1", "--alpha",
                          "1", "--m", "1", "--out", out.string()});
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "alpha,m,holds,witness_x,witness_y,witness_t,gap");
  CHECK(row.rfind("1,1,false,", 0) == 0);
}

TEST_CASE("constants") {
  const Outcome r = call({"constants", "--alpha", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("M=0.125") != std::string::npos);
  CHECK(r.out.find("A=0.125") != std::string::npos);
}

TEST_CASE("identities") {
  const Outcome ok = call({"identities", "--f", "exp", "--g", "sin", "--a", "0", "--b",
                           "1", "--x", "0.3", "--bstar", "2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("identities hold") != std::string::npos);
  CHECK(call({"identities", "--f", "exp"}).code == 1);
}

TEST_CASE("config verify honours the seed override") {
  const fs::path dir = scratch("config");
  const fs::path cfg = dir / "cfg.json";
  fs::create_directories(dir);
  std::ofstream(cfg) << R"({"name": "small", "grid": {"nx": 11, "ny": 11, "nt": 11},
    "cases": [{"f": "exp", "g": "const:1", "a": 0, "b": 1, "b_star": 2,
               "x_points": 3, "x_random": 2, "q": [1], "alpha": [1], "m": [1]}]})";
  const Outcome r = call({"verify", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("seed=20240521") != std::string::npos);
  setenv("HHBOUND_SEED", "7", 1);
  const Outcome s = call({"verify", "--config", cfg.string(), "--out", dir.string()});
  unsetenv("HHBOUND_SEED");
  CHECK(s.code == 0);
  CHECK(s.out.find("seed=7") != std::string::npos);
}
