#include "doctest.h"
#include "thetareg/report.hpp"

using namespace thetareg;

TEST_CASE("csv report round trip") {
  RunManifest m;
  m.command = "scan";
  m.config = "field=qsqrt6 eta=1,1 pmax=100000 theta=nontrivial";
  m.config_hash = fnv1a_hex(m.config);
  m.seed = 0;
  m.version = version_string();
  m.workers = 4;
  m.outputs = {"hits.csv"};

  CsvReport rep(m, {"p", "theta", "np", "f", "delta"});
  rep.add_row({"11", "chi1", "2", "1", "1"});
  rep.add_row({"37", "chi1", "1", "1", "1"});
  auto text = rep.serialize();

  auto parsed = parse_csv_report(text);
  CHECK(parsed.manifest.command == "scan");
  CHECK(parsed.manifest.config_hash == m.config_hash);
  CHECK(parsed.manifest.version == m.version);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0].at("p") == "11");
  CHECK(parsed.rows[1].at("theta") == "chi1");
}

TEST_CASE("jsonl report round trip") {
  RunManifest m;
  m.command = "density";
  m.config = "p=13 kind=joint n=1000 seed=1";
  m.config_hash = fnv1a_hex(m.config);
  m.seed = 1;
  m.version = version_string();

  JsonlReport rep(m);
  rep.add(R"({"name":"chi0","count":77,"freq":0.077})");
  rep.add(R"({"name":"chi1","count":80,"freq":0.08})");
  auto parsed = parse_jsonl_report(rep.serialize());
  CHECK(parsed.manifest.seed == 1);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0].at("name") == "chi0");
  CHECK(parsed.rows[1].at("count") == "80");
}

TEST_CASE("hash is stable") {
  CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}
