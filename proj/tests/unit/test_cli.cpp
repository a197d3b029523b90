#include <doctest.h>

#include "tongues/cli.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tongues");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = tongues::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pinch report for the exact forcing") {
    const auto r = run({"pinch", "--forcing", "pl:w=-1,4/3;l=4/7,3/7", "--qmax", "3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    int exact_three = 0;
    for (const auto& e : j)
        if (e["q"] == 3 && e["b"]["exact"] == "3/4" && e["certificate"] == "exact") ++exact_three;
    CHECK(exact_three == 2);
    CHECK(run({"pinch", "--forcing", "pl:w=-1,4/3;l=4/7,3/7", "--qmax", "3"}).out == r.out);
}

TEST_CASE("verify and conjugacy") {
    const auto v = run({"verify", "--forcing", "pl:w=-1,4/3;l=4/7,3/7", "--pq", "1/3", "--b", "3/4", "--omega", "4/7"});
    REQUIRE(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["certificate"] == "exact");

    const auto bad = run({"verify", "--forcing", "triangle:1/2", "--pq", "1/3", "--b", "1/2", "--omega", "1/3"});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.err)["error"] == "NotPinch");

    const auto c = run({"conjugacy", "--forcing", "pl:w=-1,4/3;l=4/7,3/7", "--pq", "1/3", "--b", "3/4", "--omega", "4/7"});
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["density"]["integral"] == "1/1");
    CHECK(j["configuration"]["m"] == 1);
}

TEST_CASE("scan output") {
    const auto s = run({"scan", "--forcing", "triangle:1/2", "--qmax", "2", "--b-steps", "4", "--tol", "1/1024"});
    REQUIRE(s.code == 0);
    CHECK(s.out.rfind("p,q,b,", 0) == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 1 + 2 * 4);
}

TEST_CASE("perturb demo is deterministic") {
    const std::vector<std::string> args{"perturb-demo", "--forcing", "pl:w=-1,8,8/7;l=2/3,1/24,7/24", "--qmax", "4",
                                        "--n", "2", "--epsilon", "1/1000", "--seed", "3"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == run(args).out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["before"]["separated"] == false);
    CHECK(j["after"]["separated"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run({"scan", "--forcing", "cosine"}).code == 2);
    CHECK(run({"scan", "--forcing", "sine", "--tol", "x"}).code == 2);
    CHECK(run({"verify", "--forcing", "triangle:1/2", "--pq", "2/4", "--b", "1/2", "--omega", "0"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto e = run({"scan"});
    CHECK(e.code == 2);
    CHECK(nlohmann::json::parse(e.err)["error"] == "ParseError");
    const auto budget = run({"perturb-demo", "--forcing", "pl:w=-1,8,8/7;l=2/3,1/24,7/24", "--qmax", "4", "--n", "2",
                             "--max-attempts", "0"});
    CHECK(budget.code == 3);
    CHECK(nlohmann::json::parse(budget.err)["error"] == "BudgetExhausted");
    CHECK(run({"verify", "--forcing", "pl:w=-1,2;l=1/2,1/2", "--pq", "1/3", "--b", "1/2", "--omega", "0"}).code == 2);
}
