#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "asl/cli.hpp"
#include "asl/error.hpp"

using namespace asl;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

std::string without_wall(std::vector<json> recs) {
  std::string s;
  for (auto& r : recs) {
    r.erase("wall_seconds");
    s += r.dump() + "\n";
  }
  return s;
}

}  // namespace

TEST_CASE("integer lists") {
  CHECK(parse_int_list("1,-2,3") == std::vector<int>{1, -2, 3});
  CHECK(parse_int_list("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_int_list(""), PreconditionError);
  CHECK_THROWS_AS(parse_int_list("1,,2"), PreconditionError);
  CHECK_THROWS_AS(parse_int_list("1,x"), PreconditionError);
  CHECK_THROWS_AS(parse_int_list("1.5"), PreconditionError);
}

TEST_CASE("ltable") {
  const auto r = run({"ltable", "--p", "7", "--d", "2", "--all"});
  REQUIRE(r.code == kExitOk);
  const auto recs = records(r.out);
  CHECK(recs.size() == 42);
  for (const auto& rec : recs) {
    CHECK(rec["tool"] == "asl");
    CHECK(rec["command"] == "ltable");
    CHECK(rec["angles"].size() == 1);
    CHECK(rec["power_sums"].size() == 2);
    CHECK(rec["rh_residual"].get<double>() < 1e-9);
    CHECK(rec.contains("wall_seconds"));
  }
  CHECK(recs[0]["f"] == "0,0,1");

  const auto s1 = run({"ltable", "--p", "11", "--d", "4", "--sample", "5", "--seed", "3"});
  const auto s2 = run({"ltable", "--p", "11", "--d", "4", "--sample", "5", "--seed", "3", "--threads", "2"});
  REQUIRE(s1.code == kExitOk);
  CHECK(records(s1.out).size() == 5);
  CHECK(without_wall(records(s1.out)) == without_wall(records(s2.out)));

  CHECK(run({"ltable", "--p", "7", "--d", "2"}).code == kExitPrecondition);
  CHECK(run({"ltable", "--p", "5", "--d", "2", "--all"}).code == kExitPrecondition);
  CHECK(run({"ltable", "--p", "7", "--d", "7", "--all"}).code == kExitPrecondition);
}

TEST_CASE("csv output") {
  const auto r = run({"ltable", "--p", "7", "--d", "2", "--all", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("config.p") != std::string::npos);
  CHECK(header.find("rh_residual") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 42);
  CHECK(run({"ltable", "--p", "7", "--d", "2", "--all", "--format", "xml"}).code == kExitPrecondition);
}

TEST_CASE("family-avg") {
  const auto r = run({"family-avg", "--p", "7", "--d", "4", "--r", "1,2", "--t", "1,2"});
  REQUIRE(r.code == kExitOk);
  const auto rec = records(r.out).at(0);
  CHECK(rec["predicted"] == 2.0);
  CHECK(rec["family_size"] == 2058);
  CHECK(rec["within_tolerance"] == true);
  const auto refused = run({"family-avg", "--p", "7", "--d", "4", "--r", "3", "--t", "2"});
  CHECK(refused.code == kExitPrecondition);
  CHECK(refused.out.empty());
  CHECK_FALSE(refused.err.empty());
}

TEST_CASE("rmt-moment") {
  const auto r = run({"rmt-moment", "--N", "6", "--r", "1,-1", "--samples", "3000", "--seed", "4"});
  REQUIRE(r.code == kExitOk);
  const auto rec = records(r.out).at(0);
  CHECK(rec["exact"] == 1.0);
  CHECK(rec["within_4se"] == true);
  CHECK(rec["seed"] == 4);
  const auto again = run({"rmt-moment", "--N", "6", "--r", "1,-1", "--samples", "3000", "--seed", "4"});
  CHECK(without_wall(records(r.out)) == without_wall(records(again.out)));
  // Past the closed form's range the record still carries the estimate.
  const auto past = run({"rmt-moment", "--N", "2", "--r", "3,-3", "--samples", "200"});
  REQUIRE(past.code == kExitOk);
  CHECK(records(past.out).at(0)["exact"].is_null());
}

TEST_CASE("ncorr") {
  const auto r = run({"ncorr", "--n", "2", "--N", "8,16", "--testfn", "triangle:a=0.8"});
  REQUIRE(r.code == kExitOk);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1]["difference"].get<double>() < recs[0]["difference"].get<double>());
  CHECK(recs[0]["limit"].get<double>() == doctest::Approx(1.0 + 0.64 / 6.0));
  const auto mc = run({"ncorr", "--n", "2", "--N", "8", "--testfn", "triangle:a=0.8", "--mode", "mc",
                       "--samples", "500", "--seed", "1"});
  REQUIRE(mc.code == kExitOk);
  CHECK(records(mc.out).at(0).contains("mc_mean"));
  CHECK(run({"ncorr", "--n", "3", "--N", "8", "--testfn", "triangle:a=0.8"}).code == kExitPrecondition);
  CHECK(run({"ncorr", "--n", "2", "--N", "16,8"}).code == kExitPrecondition);
}

TEST_CASE("orthogonality") {
  const auto r = run({"orthogonality", "--p", "7", "--d", "4", "--u", "3,0,0,0,0,1", "--u", "2,0,0,0,5", "--u", "1,1"});
  REQUIRE(r.code == kExitOk);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0]["case"] == "scalar");
  CHECK(recs[1]["case"] == "top-twist");
  CHECK(recs[2]["case"] == "other");
  for (const auto& rec : recs) CHECK(rec["error"].get<double>() < 1e-10);
  CHECK(run({"orthogonality", "--p", "7", "--d", "4", "--u", "0,1"}).code == kExitPrecondition);
}

TEST_CASE("bad invocations") {
  CHECK(run({}).code == kExitPrecondition);
  CHECK(run({"frobnicate"}).code == kExitPrecondition);
  CHECK(run({"ltable", "--p", "seven", "--d", "2", "--all"}).code == kExitPrecondition);
  CHECK(run({"--version"}).code == kExitOk);
}
