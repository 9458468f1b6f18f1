#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "weilstar/cli.hpp"
#include "weilstar/config.hpp"

using namespace weilstar;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify-relations succeeds with a JSON report") {
  const auto r = run({"group", "verify-relations", "--p", "3", "--m", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["status"] == "pass");
  CHECK(j["command"] == "group verify-relations");
  CHECK(j["checks"].size() >= 7);
}

TEST_CASE("lagrangians enumerate lists four at m = 1") {
  const auto r = run({"lagrangians", "enumerate", "--p", "3", "--m", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 4);
  CHECK(j["lagrangians"].size() == 4);
}

TEST_CASE("group enumerate and normal form") {
  const auto e = run({"group", "enumerate", "--p", "5", "--m", "1", "--limit", "1000"});
  CHECK(e.code == 0);
  CHECK(nlohmann::json::parse(e.out)["order"] == 120);
  const auto n = run({"group", "normal-form", "1", "0", "1", "1", "--p", "3", "--m", "1"});
  CHECK(n.code == 0);
  CHECK(nlohmann::json::parse(n.out)["cell"] == "BwB");
  const auto bad = run({"group", "normal-form", "1", "1", "0", "2", "--p", "3", "--m", "1"});
  CHECK(bad.code == 2);
}

TEST_CASE("invalid configurations exit with 2") {
  CHECK(run({"weil", "compare", "--p", "3", "--m", "2"}).code == 2);
  CHECK(run({"ring", "info", "--p", "4"}).code == 2);
  CHECK(run({"ring", "info", "--p", "3", "--tolerance", "-1"}).code == 2);
  CHECK(run({"ring", "info", "--p", "3", "--output", "xml"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  const auto r = run({"weil", "compare", "--p", "3", "--m", "2"});
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("verification failure exits with 1 and a witness list") {
  const auto r = run({"weil", "compare", "--p", "3", "--m", "3", "--samples", "20"});
  CHECK(r.code == 1);
  const auto witnesses = nlohmann::json::parse(r.err);
  CHECK(witnesses.is_object());
  CHECK(witnesses.contains("failures"));
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args{"weil", "compare", "--p", "3", "--m", "1", "--samples", "50", "--seed", "3"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  const auto dir = std::filesystem::temp_directory_path() / "weilstar_cli_test";
  std::filesystem::create_directories(dir);
  auto with_report = args;
  with_report.insert(with_report.end(), {"--report", (dir / "r.json").string()});
  CHECK(run(with_report).code == a.code);
  std::ifstream in(dir / "r.json");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == a.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("other subcommands") {
  CHECK(run({"ring", "info", "--p", "3", "--m", "3"}).code == 0);
  CHECK(run({"connection", "verify", "--p", "3", "--m", "1", "--mode", "exhaustive"}).code == 0);
  CHECK(run({"weil", "build", "--p", "3", "--m", "1", "--method", "bruhat", "--element", "0", "1", "2", "0"}).code == 0);
  CHECK(run({"weil", "build", "--p", "3", "--m", "1", "--method", "geometric"}).code == 0);
  CHECK(run({"cocycle", "table", "--p", "3", "--m", "1", "--samples", "10", "--output", "csv"}).code == 0);
  CHECK(run({"character", "table", "--p", "3", "--m", "1", "--involution", "identity"}).code == 0);
  CHECK(run({"group", "verify-relations", "--ring", "matrix", "--n", "2", "--p", "3"}).code == 0);
}

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.ring = TruncatedPolySpec{FieldSpec{3, 2, {1, 0, 1}}, 3, Involution::NegateX};
  c.seed = 17;
  c.samples = 33;
  c.tolerance = 1e-7;
  c.output = OutputFormat::Csv;
  c.cache_dir = "/tmp/x";
  const auto back = config_from_json(config_to_json(c));
  CHECK(back.ring == c.ring);
  CHECK(back.seed == 17);
  CHECK(back.samples == 33);
  CHECK(back.tolerance == 1e-7);
  CHECK(back.output == OutputFormat::Csv);
  CHECK(back.cache_dir == c.cache_dir);
  for (RingSpec spec : {RingSpec{MatrixRingSpec{FieldSpec{5, 1, {}}, 2}}, RingSpec{DoublingSpec{FieldSpec{3, 1, {}}, 1}}})
    CHECK(ring_spec_from_json(ring_spec_to_json(spec)) == spec);
  RunConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("element literals") {
  auto r = make_ring(TruncatedPolySpec{FieldSpec{3, 1, {}}, 3, Involution::NegateX});
  const auto e = parse_element(*r, "1,0,2");
  CHECK(e == r->add(r->one(), r->mul(r->from_int(2), r->mul(r->x(), r->x()))));
  CHECK_THROWS_AS(parse_element(*r, "1,0"), ConfigError);
  CHECK_THROWS_AS(parse_element(*r, "1,a,0"), ConfigError);
  // Prime-field entries reduce modulo p.
  CHECK(parse_element(*r, "4,3,-1") == e);
}
