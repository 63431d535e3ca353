#include "tits/campaign.hpp"
#include "tits/errors.hpp"

#include <doctest.h>

#include <fstream>

using namespace tits;
using nlohmann::json;

namespace {

std::string key_of_error(const json& j) {
    try {
        parse_config(j);
    } catch (const config_error& e) {
        return e.key;
    }
    return "";
}

}  // namespace

TEST_CASE("golden configs parse") {
    auto sl = load_config(std::string(TITS_CONFIG_DIR) + "/sl3_tits_axioms.json");
    REQUIRE(sl.group);
    CHECK(sl.group->family == Family::SL);
    CHECK(sl.checks.size() == 1);
    CHECK(sl.checks[0].params["L"] == 6);
    CHECK(sl.seed == kDefaultSeed);
    CHECK_THROWS_AS(load_config(std::string(TITS_CONFIG_DIR) + "/g2_matrix_rejected.json"), config_error);
}

TEST_CASE("schema errors name the offending key") {
    json base = {{"group", {{"family", "SL"}, {"n", 3}}}, {"checks", {"squares"}}};
    CHECK(key_of_error(base).empty());

    json j = base;
    j["colour"] = 1;
    CHECK(key_of_error(j) == "colour");
    j = base;
    j["group"]["q"] = 9;
    CHECK(key_of_error(j) == "group.q");
    j = base;
    j["group"]["family"] = "G2-matrix";
    CHECK(key_of_error(j) == "group.family");
    j = base;
    j["checks"] = json::array({{{"check", "tits-axioms"}, {"depth", 3}}});
    CHECK(key_of_error(j) == "checks[0].depth");
    j = base;
    j["checks"] = json::array({"hecke-algebra"});
    CHECK(key_of_error(j) == "checks[0]");
    j = base;
    j["group"]["n"] = "three";
    CHECK(key_of_error(j) == "group.n");
    j = base;
    j.erase("group");
    CHECK(key_of_error(j) == "group");
    j = {{"group", {{"family", "U"}, {"n", 6}, {"p", 3}, {"extension", {{"ramification", "wild"}}}}},
         {"checks", {"squares"}}};
    CHECK(key_of_error(j) == "group.extension.ramification");
}

TEST_CASE("campaign exit codes and summaries") {
    json ok = {{"group", {{"family", "SL"}, {"n", 3}}}, {"checks", json::array({{{"check", "tits-axioms"}, {"L", 4}}})}};
    auto rep = run_campaign(parse_config(ok));
    CHECK(rep.exit_code == 0);
    CHECK(rep.json["summary"]["holds"] == 1);
    CHECK(rep.json["records"][0]["status"] == "holds");

    json bad = {{"group", {{"family", "U"}, {"n", 3}, {"p", 2}}}, {"checks", {"squares"}}};
    auto rep2 = run_campaign(parse_config(bad));
    CHECK(rep2.exit_code == 1);
    CHECK(rep2.json["summary"]["fails"] == 1);

    json absent = {{"group", {{"family", "U"}, {"n", 6}, {"p", 2}}}, {"checks", {"even-unitary-obstruction"}}};
    auto rep3 = run_campaign(parse_config(absent));
    CHECK(rep3.exit_code == 0);
    CHECK(rep3.json["records"][0]["status"] == "expected-absence-confirmed");
}

TEST_CASE("reports are byte-identical across runs") {
    json cfg = {{"group", {{"family", "U"}, {"n", 3}, {"p", 3}}},
                {"checks", {"inspect", "braids", "squares", "tits-axioms"}},
                {"seed", 99}};
    auto a = serialize(run_campaign(parse_config(cfg)).json);
    auto b = serialize(run_campaign(parse_config(cfg)).json);
    CHECK(a == b);
    CHECK(json::parse(a)["seed"] == 99);
}

TEST_CASE("circular-order record for B_n at rank 3") {
    auto r = circular_order_record("Bn", 3);
    CHECK(r.status == Status::holds);
    bool failure_row = false;
    for (const auto& row : r.details["rows"])
        if (row["order"] == "cannot be put in circular order") failure_row = true;
    CHECK(failure_row);
    CHECK_THROWS_AS(circular_order_record("Bn", 5), config_error);
}

TEST_CASE("inspect on ramified U6") {
    GroupSpec s;
    s.family = Family::U;
    s.n = 6;
    s.p = 3;
    s.ext.kind = ExtKind::ramified;
    GroupModel g(s);
    auto j = inspect_json(g);
    CHECK(j["simple_affine_roots"][0]["affine_root"] == g.datum().simple_affine[0].to_string());
    CHECK(j["coxeter_matrix"].size() == 4);
}
