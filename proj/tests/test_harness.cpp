/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include "cosetbound/harness.hpp"

using namespace cosetbound;

TEST_CASE("single-instance count records", "[harness]") {
    RunConfig cfg;
    cfg.p = 7;
    cfg.t = 3;
    cfg.poly = "x - y + 1";
    cfg.g1 = cfg.g2 = 1;
    cfg.timing = false;
    auto records = run_count(cfg);
    REQUIRE(records.size() == 1);
    const auto& r = records[0];
    CHECK(r[ExperimentRecord::kCount] == "1");
    CHECK(r[ExperimentRecord::kPoly] == "x + 6*y + 1");
    CHECK(r[ExperimentRecord::kMethod] == "rootfind");
    CHECK(r[ExperimentRecord::kBoundHk] != "");
    CHECK(r[ExperimentRecord::kPassed] == "true");
    CHECK(r[ExperimentRecord::kWallMs] == "");
    CHECK_FALSE(any_violation(records));
}

TEST_CASE("t-all sweeps every divisor", "[harness]") {
    RunConfig cfg;
    cfg.p = 31;
    cfg.t_all = true;
    cfg.poly = "x - y + 1";
    cfg.timing = false;
    auto records = run_count(cfg);
    CHECK(records.size() == 8);  // divisors of 30
    for (const auto& r : records) CHECK(r[ExperimentRecord::kP] == "31");
}

TEST_CASE("method both emits a record per method and checks agreement", "[harness]") {
    RunConfig cfg;
    cfg.p = 103;
    cfg.t = 17;
    cfg.poly = "x*y + 5";
    cfg.method = "both";
    cfg.timing = false;
    auto records = run_count(cfg);
    REQUIRE(records.size() == 2);
    CHECK(records[0][ExperimentRecord::kMethod] == "naive");
    CHECK(records[1][ExperimentRecord::kMethod] == "rootfind");
    CHECK(records[0][ExperimentRecord::kCount] == records[1][ExperimentRecord::kCount]);
    CHECK_FALSE(any_violation(records));
}

TEST_CASE("energy records include the worked example", "[harness]") {
    RunConfig cfg;
    cfg.p = 7;
    cfg.t = 3;
    cfg.poly = "x + y";
    cfg.qs = {1, 2};
    cfg.timing = false;
    auto records = run_energy(cfg);
    REQUIRE(records.size() == 2);
    CHECK(records[0][ExperimentRecord::kCount] == "9");   // q = 1 is t^2
    CHECK(records[0][ExperimentRecord::kBoundEnergy] == "");
    CHECK(records[1][ExperimentRecord::kCount] == "15");
    CHECK(records[1][ExperimentRecord::kBoundEnergy] != "");
}

TEST_CASE("composed-energy record carries the corollary bound", "[harness]") {
    RunConfig cfg;
    cfg.p = 13;
    cfg.t = 4;
    cfg.fpoly = "x^2";
    cfg.gpoly = "x^3";
    cfg.timing = false;
    auto records = run_energy(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0][ExperimentRecord::kBoundEnergy] != "");
    CHECK(records[0][ExperimentRecord::kApplicable] == "false");  // t = 4 is far below 100(mn)^(3/2)
}

TEST_CASE("family run is total-preserving and order-invariant", "[harness]") {
    RunConfig cfg;
    cfg.p = 31;
    cfg.t = 5;
    cfg.poly = "x^2 + 3*x*y + y^2";
    cfg.gamma = 3;
    cfg.ls = {3 * 4 % 31, 3 * 9 % 31};  // gamma * squares
    cfg.timing = false;
    auto a = run_family(cfg);
    std::swap(cfg.ls[0], cfg.ls[1]);
    auto b = run_family(cfg);
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(a[0][ExperimentRecord::kCount] == b[0][ExperimentRecord::kCount]);
    CHECK(a[0][ExperimentRecord::kH] == "2");
}

TEST_CASE("certify run embeds a sound certificate bound", "[harness]") {
    RunConfig cfg;
    cfg.p = 251;
    cfg.t = 125;
    cfg.poly = "x - y + 3";
    cfg.timing = false;
    auto records = run_certify(cfg);
    REQUIRE(records.size() == 1);
    const auto& r = records[0];
    REQUIRE(r[ExperimentRecord::kCertBound].rfind("error", 0) == std::string::npos);
    long long cert = std::stoll(r[ExperimentRecord::kCertBound]);
    long long count = std::stoll(r[ExperimentRecord::kCount]);
    CHECK(cert >= count);
    CHECK_FALSE(any_violation(records));
}

TEST_CASE("infeasible certify instances become failure rows", "[harness]") {
    RunConfig cfg;
    cfg.p = 31;
    cfg.t = 5;  // D = 0 territory
    cfg.poly = "x - y + 1";
    cfg.timing = false;
    auto records = run_certify(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0][ExperimentRecord::kCertBound].rfind("error:", 0) == 0);
    CHECK_FALSE(any_violation(records));  // infeasible is not a bound violation
}

TEST_CASE("CSV and JSON emitters round-trip the same records", "[harness]") {
    RunConfig cfg;
    cfg.mode = "oracle";
    cfg.instances = 4;
    cfg.seed = 11;
    cfg.p_max = 2000;
    cfg.t_max = 24;
    cfg.deg_max = 2;
    cfg.timing = false;
    auto records = run_sweep(cfg);
    REQUIRE(records.size() == 8);  // both methods per instance

    std::string csv = records_to_csv(records);
    auto csv_back = records_from_csv(csv);
    REQUIRE(csv_back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(csv_back[i] == records[i]);

    std::string json = records_to_json(records);
    auto json_back = records_from_json(json);
    REQUIRE(json_back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(json_back[i] == records[i]);
}

TEST_CASE("CSV quoting survives awkward fields", "[harness]") {
    ExperimentRecord r;
    r[ExperimentRecord::kPoly] = "has,comma and \"quote\"";
    r[ExperimentRecord::kCount] = "42";
    auto back = records_from_csv(records_to_csv({r}));
    REQUIRE(back.size() == 1);
    CHECK(back[0] == r);
}

TEST_CASE("sweeps are deterministic and worker-count independent", "[harness]") {
    RunConfig cfg;
    cfg.mode = "oracle";
    cfg.instances = 6;
    cfg.seed = 99;
    cfg.p_max = 3000;
    cfg.t_max = 30;
    cfg.deg_max = 2;
    cfg.timing = false;
    auto once = run_sweep(cfg);
    auto twice = run_sweep(cfg);
    CHECK(records_to_csv(once) == records_to_csv(twice));
    cfg.workers = 3;
    auto parallel = run_sweep(cfg);
    CHECK(records_to_csv(once) == records_to_csv(parallel));
}

TEST_CASE("tripwire fires on violated applicable bounds", "[harness]") {
    ExperimentRecord bad;
    bad[ExperimentRecord::kApplicable] = "true";
    bad[ExperimentRecord::kPassed] = "false";
    ExperimentRecord good;
    good[ExperimentRecord::kPassed] = "true";
    CHECK(any_violation({bad}));
    CHECK_FALSE(any_violation({good}));
    CHECK(any_violation({good, bad}));
}

TEST_CASE("config errors carry the offending key", "[harness]") {
    RunConfig cfg;
    CHECK_THROWS_AS(run_count(cfg), ConfigError);
    cfg.p = 31;
    cfg.poly = "x - y";
    CHECK_THROWS_AS(run_count(cfg), ConfigError);  // missing t
    cfg.t = 5;
    cfg.method = "telepathy";
    CHECK_THROWS_AS(run_count(cfg), ConfigError);
}
