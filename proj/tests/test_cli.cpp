#include <doctest.h>

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmsi/cli.hpp"
#include "dmsi/plan.hpp"

namespace fs = std::filesystem;
namespace cli = dmsi::cli;

namespace {

const fs::path kData = DMSI_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dmsi_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Options, typename Command>
Run run(Command command, const Options& options) {
  std::ostringstream out, err;
  const int code = command(options, out, err);
  return {code, out.str(), err.str()};
}

fs::path make_plan(const TempDir& dir, const std::string& name = "plan.json") {
  cli::PlanOptions p;
  p.instance = kData / "worked_instance.json";
  p.output = dir / name;
  REQUIRE(run(cli::cmd_plan, p).code == cli::kSuccess);
  return *p.output;
}

}  // namespace

TEST_CASE("plan prints the delay table and writes a deterministic file") {
  TempDir dir;
  cli::PlanOptions p;
  p.instance = kData / "worked_instance.json";
  p.seed = 17;
  p.output = dir / "a.json";
  const auto first = run(cli::cmd_plan, p);
  CHECK(first.code == cli::kSuccess);
  CHECK(first.out.find("p2      1         1    1    8") != std::string::npos);
  CHECK(first.out.find("Total                       20") != std::string::npos);

  p.output = dir / "b.json";
  CHECK(run(cli::cmd_plan, p).code == cli::kSuccess);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  const auto doc = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK(doc["total_delay"] == "20");
  CHECK(doc["closed_form_delay"] == "20");
  CHECK(doc["per_packet_delay"] == nlohmann::json::array({"8", "8", "2", "1", "1"}));
  CHECK(doc["ranking"] == nlohmann::json::array({1, 2, 3, 4}));
  CHECK(doc["code"]["field_degree"] == 2);
  CHECK(doc["decodable"] == nlohmann::json::array({true, true, true, true}));
}

TEST_CASE("plan for an empty instance") {
  TempDir dir;
  write(dir / "empty.json", R"({"n": 0, "clients": []})");
  cli::PlanOptions p;
  p.instance = dir / "empty.json";
  p.output = dir / "plan.json";
  CHECK(run(cli::cmd_plan, p).code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(slurp(dir / "plan.json"));
  CHECK(doc["total_delay"] == "0");
  CHECK(doc["assignment"].empty());
}

TEST_CASE("plan errors map to exit codes") {
  TempDir dir;
  write(dir / "bad.json", R"({"n": 2, "clients": [{"has": [3], "delay": 1}]})");
  cli::PlanOptions p;
  p.instance = dir / "bad.json";
  const auto bad = run(cli::cmd_plan, p);
  CHECK(bad.code == cli::kValidationFailure);
  CHECK(bad.err.find("out of range") != std::string::npos);

  p.instance = dir / "missing.json";
  CHECK(run(cli::cmd_plan, p).code == cli::kValidationFailure);

  // 4 clients over GF(2): the default would be GF(4); forcing q = 2 may fail
  p.instance = kData / "worked_instance.json";
  p.field_degree = 1;
  const auto forced = run(cli::cmd_plan, p);
  CHECK((forced.code == cli::kSuccess || forced.code == cli::kConstructionFailure));
  if (forced.code == cli::kSuccess) {
    CHECK(forced.err.find("warning") != std::string::npos);
  }
}

TEST_CASE("verify passes on a fresh plan") {
  TempDir dir;
  cli::VerifyOptions v{kData / "worked_instance.json", make_plan(dir)};
  const auto r = run(cli::cmd_verify, v);
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("min-cut solvability:       pass") != std::string::npos);
  CHECK(r.out.find("holds") != std::string::npos);
}

TEST_CASE("verify flags a deleted row") {
  TempDir dir;
  const auto plan_path = make_plan(dir);
  auto doc = nlohmann::json::parse(slurp(plan_path));
  doc["assignment"].erase(3);
  doc["code"]["rows"].erase(3);
  doc.erase("per_packet_delay");
  doc.erase("total_delay");
  write(dir / "cut.json", doc.dump());

  const auto r = run(cli::cmd_verify, cli::VerifyOptions{kData / "worked_instance.json", dir / "cut.json"});
  CHECK(r.code == cli::kDisagreement);
  CHECK(r.out.find("column-weight feasibility: FAIL") != std::string::npos);
  CHECK(r.out.find("min-cut solvability:       FAIL") != std::string::npos);
  CHECK(r.out.find("C4: column weight 4, wants 5, max-flow 5") != std::string::npos);
  CHECK(r.out.find("holds") != std::string::npos);
}

TEST_CASE("verify flags a corrupted coding row") {
  TempDir dir;
  const auto plan_path = make_plan(dir);
  auto doc = nlohmann::json::parse(slurp(plan_path));
  doc["code"]["rows"][0] = nlohmann::json::array({0, 0, 0, 0, 0, 0});
  write(dir / "corrupt.json", doc.dump());

  const auto r = run(cli::cmd_verify, cli::VerifyOptions{kData / "worked_instance.json", dir / "corrupt.json"});
  CHECK(r.code == cli::kDisagreement);
  CHECK(r.out.find("column-weight feasibility: pass") != std::string::npos);
  CHECK(r.out.find("rank decodability:         FAIL") != std::string::npos);
  // p1 is the only packet client 2 receives
  CHECK(r.out.find("C2: cannot recover") != std::string::npos);
}

TEST_CASE("verify rejects mismatched files") {
  TempDir dir;
  const auto plan_path = make_plan(dir);
  auto doc = nlohmann::json::parse(slurp(plan_path));
  doc["assignment"].erase(0);  // code still has 5 rows
  write(dir / "skew.json", doc.dump());
  CHECK(run(cli::cmd_verify, cli::VerifyOptions{kData / "worked_instance.json", dir / "skew.json"}).code ==
        cli::kValidationFailure);
}

TEST_CASE("oracle command") {
  TempDir dir;
  cli::OracleOptions o;
  o.instance = kData / "worked_instance.json";
  o.output = dir / "oracle.json";
  const auto r = run(cli::cmd_oracle, o);
  CHECK(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(slurp(dir / "oracle.json"));
  CHECK(doc["best_total"] == "20");
  CHECK(doc["agrees"] == true);

  o.budget = 5;
  CHECK(run(cli::cmd_oracle, o).code == cli::kValidationFailure);
}

TEST_CASE("simulate the worked plan") {
  TempDir dir;
  cli::SimulateOptions s;
  s.instance = kData / "worked_instance.json";
  s.plan = make_plan(dir);
  s.payload_seed = 5;
  const auto r = run(cli::cmd_simulate, s);
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("C2 done at 8") != std::string::npos);
  CHECK(r.out.find("final clock 20") != std::string::npos);
  CHECK(r.out.find("MISMATCH") == std::string::npos);

  write(dir / "zeros.json", "[0, 0, 0, 0, 0, 0]");
  s.payload = dir / "zeros.json";
  const auto z = run(cli::cmd_simulate, s);
  CHECK(z.code == cli::kSuccess);
  CHECK(z.out.find("C4 done at 20, recovered x1=0 x2=0 x3=0 x5=0 x6=0  ok") != std::string::npos);

  write(dir / "short.json", "[0, 0]");
  s.payload = dir / "short.json";
  CHECK(run(cli::cmd_simulate, s).code == cli::kValidationFailure);
}

TEST_CASE("simulate a single-client plan") {
  TempDir dir;
  write(dir / "one.json", R"({"n": 3, "clients": [{"has": [2], "delay": "3/2"}]})");
  cli::PlanOptions p;
  p.instance = dir / "one.json";
  p.output = dir / "plan.json";
  REQUIRE(run(cli::cmd_plan, p).code == cli::kSuccess);
  cli::SimulateOptions s;
  s.instance = dir / "one.json";
  s.plan = dir / "plan.json";
  const auto r = run(cli::cmd_simulate, s);
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("C1 done at 3, ") != std::string::npos);
}

TEST_CASE("transform command") {
  cli::TransformOptions t;
  t.instance = kData / "worked_instance.json";
  t.matrix = kData / "worked_assignment.json";
  const auto r = run(cli::cmd_transform, t);
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("initial: total 24") != std::string::npos);
  CHECK(r.out.find("step 1: total 24") != std::string::npos);
  CHECK(r.out.find("step 2: total 21") != std::string::npos);
  CHECK(r.out.find("step 3: total 20") != std::string::npos);
  CHECK(r.out.find("step 5: total 20") != std::string::npos);
  CHECK(r.out.find("monotone: yes, final matrix is optimal: yes") != std::string::npos);

  TempDir dir;
  write(dir / "over.json", "[[1,1,1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1]]");
  t.matrix = dir / "over.json";
  CHECK(run(cli::cmd_transform, t).code == cli::kValidationFailure);
  t.auto_reduce = true;
  CHECK(run(cli::cmd_transform, t).code == cli::kSuccess);
}
