#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "oracles.hpp"

using nlohmann::json;
using oracles::data_file;
using oracles::run_cli;

TEST_CASE("info summarizes a bundled complex")
{
    auto res = run_cli("info " + data_file("rp2_6.json"));
    REQUIRE(res.exit_code == 0);
    auto doc = json::parse(res.output);
    CHECK(doc["schema"] == "coindex/1");
    CHECK(doc["type"] == "complex_info");
    CHECK(doc["name"] == "RP^2_6");
    CHECK(doc["n"] == 6);
    CHECK(doc["dimension"] == 2);
    CHECK(doc["pure"] == true);
    CHECK(doc["num_facets"] == 10);
    CHECK(doc["f_vector"] == json::parse("[6,15,10]"));
    CHECK(doc["euler_characteristic"] == 1);
    CHECK(doc["embed_dim"] == 4);
    CHECK(doc["minimal_nonfaces"] == 10);
    CHECK(doc["bipartition_property"] == true);
    CHECK(doc["closed_surface"] == true);
    CHECK(doc["closed_pseudomanifold"] == true);
}

TEST_CASE("chi reports the chromatic certificate")
{
    auto res = run_cli("chi " + data_file("cp2_9.json") + " --decompose");
    REQUIRE(res.exit_code == 0);
    auto doc = json::parse(res.output);
    CHECK(doc["type"] == "chromatic_certificate");
    CHECK(doc["status"] == "exact");
    CHECK(doc["chromatic_number"] == 1);
    CHECK(doc["edges"] == 0);
    CHECK(doc["coloring"].size() == doc["vertices"].get<std::size_t>());
    CHECK(doc["minimal_nonfaces"].size() == doc["vertices"].get<std::size_t>());
    REQUIRE(doc.contains("decomposition"));
    CHECK(doc["decomposition"]["colors"] == 1);
    CHECK(doc["decomposition"]["verified"] == true);
    CHECK(doc["decomposition"]["subcomplexes"].size() == 1);
}

TEST_CASE("bound emits a verified certificate")
{
    auto res = run_cli("bound " + data_file("rp2_6.json") + " --d 4 --ell 4 --check");
    REQUIRE(res.exit_code == 0);
    auto doc = json::parse(res.output);
    CHECK(doc["type"] == "bound_certificate");
    CHECK(doc["lower"] == 3);
    CHECK(doc["upper"] == 3);
    CHECK(doc["exact"] == true);
    CHECK(doc["replay"]["verified"] == true);
    CHECK(doc["query"]["d"] == 4);
    CHECK(doc["query"]["complex"]["n"] == 6);

    // chirality regime
    auto chir = run_cli("bound " + data_file("cp2_9.json") + " --d 7 --ell 1 --check");
    REQUIRE(chir.exit_code == 0);
    auto cdoc = json::parse(chir.output);
    CHECK(cdoc["upper"] == 0);
    CHECK(cdoc["lower"] == 0);
    CHECK(cdoc["replay"]["verified"] == true);
}

TEST_CASE("bound option overrides change the derivation")
{
    auto res = run_cli("bound " + data_file("rp2_6.json") +
                       " --d 4 --ell 4 --c 1 --embed-dim 4 --check");
    REQUIRE(res.exit_code == 0);
    auto doc = json::parse(res.output);
    CHECK(doc["query"]["c_override"] == 1);
    bool found = false;
    for (const auto& st : doc["derivation"])
        if (st["rule"] == "THM-1.6") {
            CHECK(st["params"]["c_source"] == "override");
            found = true;
        }
    CHECK(found);

    // horizon too small to reach a qualifying dimension: no upper bound
    auto low = run_cli("bound " + data_file("rp2_6.json") +
                       " --d 5 --ell 5 --horizon 5");
    REQUIRE(low.exit_code == 0);
    auto ldoc = json::parse(low.output);
    CHECK(ldoc["upper"].is_null());
    CHECK(ldoc["exact"] == false);
}

TEST_CASE("radon-table formats")
{
    auto ascii = run_cli("radon-table --pmax 2 --dmax 5");
    REQUIRE(ascii.exit_code == 0);
    CHECK(ascii.output.find("p\\d |") == 0);
    CHECK(ascii.output.find("0*") != std::string::npos);

    auto csv = run_cli("radon-table --pmax 2 --dmax 5 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.find("p\\d,1,2,3,4,5\n") == 0);
    CHECK(csv.output.find("\n1,,1,1*,3,3*\n") != std::string::npos);

    auto js = run_cli("radon-table --pmax 2 --dmax 5 --format json --certificates --check");
    REQUIRE(js.exit_code == 0);
    auto doc = json::parse(js.output);
    CHECK(doc["type"] == "radon_table");
    CHECK(doc["cells"].size() == 10);
    CHECK(doc["cells"][0]["state"] == "empty");
    CHECK(doc["cells"][2]["certificate"]["type"] == "bound_certificate");
}

TEST_CASE("rho prints the decomposition")
{
    auto res = run_cli("rho 48");
    REQUIRE(res.exit_code == 0);
    auto doc = json::parse(res.output);
    CHECK(doc["n"] == 48);
    CHECK(doc["odd_part"] == 3);
    CHECK(doc["b"] == 0);
    CHECK(doc["c"] == 1);
    CHECK(doc["rho"] == 9);
}

TEST_CASE("bilinear subcommands")
{
    auto list = run_cli("bilinear list --max-dim 8");
    REQUIRE(list.exit_code == 0);
    auto ldoc = json::parse(list.output);
    CHECK(ldoc["type"] == "construction_catalog");
    bool saw_oct = false;
    for (const auto& c : ldoc["constructions"])
        if (c["name"] == "octonion_block(1)") {
            CHECK(c["a"] == 8);
            CHECK(c["b"] == 8);
            CHECK(c["d"] == 8);
            saw_oct = true;
        }
    CHECK(saw_oct);

    auto show = run_cli("bilinear show 'complex_block(1)'");
    REQUIRE(show.exit_code == 0);
    auto sdoc = json::parse(show.output);
    CHECK(sdoc["type"] == "bilinear_tensor");
    CHECK(sdoc["a"] == 2);
    CHECK(sdoc["entries"].size() == 4);

    auto verify = run_cli("bilinear verify hr16 --trials 50");
    REQUIRE(verify.exit_code == 0);
    auto vdoc = json::parse(verify.output);
    CHECK(vdoc["nonsingular"] == true);

    auto hr = run_cli("bilinear verify-hr --pairs 10");
    REQUIRE(hr.exit_code == 0);
    auto hdoc = json::parse(hr.output);
    CHECK(hdoc["all_ok"] == true);
    CHECK(hdoc["families"].size() == 5);

    auto apply = run_cli("bilinear apply 'quaternion_block(1)' 0,1,0,0 0,0,1,0");
    REQUIRE(apply.exit_code == 0);
    auto adoc = json::parse(apply.output);
    CHECK(adoc["result"] == json::parse("[\"0\",\"0\",\"0\",\"1\"]"));

    auto frac = run_cli("bilinear apply 'scalar(2)' 1/2 4,-2/3");
    REQUIRE(frac.exit_code == 0);
    auto fdoc = json::parse(frac.output);
    CHECK(fdoc["result"] == json::parse("[\"2\",\"-1/3\"]"));
}

TEST_CASE("exit codes separate usage errors from bad inputs")
{
    // missing subcommand / missing required flags: usage error 1
    CHECK(run_cli("", true).exit_code == 1);
    CHECK(run_cli("frobnicate", true).exit_code == 1);
    CHECK(run_cli("bound " + data_file("rp2_6.json") + " --d 4", true).exit_code == 1);

    // malformed or missing inputs: 1
    CHECK(run_cli("info /nonexistent.json", true).exit_code == 1);
    CHECK(run_cli("bilinear show 'warp(3)'", true).exit_code == 1);
    CHECK(run_cli("bilinear apply 'scalar(2)' 1 1", true).exit_code == 1);
    CHECK(run_cli("rho 0", true).exit_code == 1);

    // a starved budget on a graph that needs no search still succeeds
    auto easy = run_cli("chi " + data_file("rp2_6.json") + " --budget 1");
    CHECK(easy.exit_code == 0);
}

TEST_CASE("the node budget limits the search and the env variable is honored")
{
    // seven discrete points: the Kneser graph K(7,2) needs branch and bound
    std::string file = data_file("tmp_points7.json");
    {
        std::ofstream out(file);
        out << "{\"n\": 7, \"facets\": [[0],[1],[2],[3],[4],[5],[6]]}";
    }
    auto starved = oracles::run_command("COINDEX_NODE_BUDGET=1 " +
                                        std::string(COINDEX_CLI_PATH) + " chi " + file);
    CHECK(starved.exit_code == 2);
    auto sdoc = json::parse(starved.output);
    CHECK(sdoc["status"] == "budget-exceeded");
    CHECK(sdoc["chromatic_number"].is_null());
    CHECK(sdoc["lower"].get<int>() <= sdoc["upper"].get<int>());
    CHECK(sdoc["lower"].get<int>() <= 5);
    CHECK(sdoc["upper"].get<int>() >= 5);

    auto fine = run_cli("chi " + file);
    CHECK(fine.exit_code == 0);
    auto fdoc = json::parse(fine.output);
    CHECK(fdoc["status"] == "exact");
    CHECK(fdoc["chromatic_number"] == 5);  // Kneser graph K(7,2)

    // explicit flag overrides the environment
    auto flag = oracles::run_command("COINDEX_NODE_BUDGET=1 " +
                                     std::string(COINDEX_CLI_PATH) + " chi " + file +
                                     " --budget 100000000");
    CHECK(flag.exit_code == 0);

    std::remove(file.c_str());
}

TEST_CASE("identical invocations produce byte-identical output")
{
    for (const std::string& cmd :
         {std::string("bound ") + data_file("cp2_9.json") + " --d 9 --ell 9",
          std::string("radon-table --pmax 3 --dmax 8 --format json --certificates"),
          std::string("bilinear verify 'octonion_block(2)' --trials 100"),
          std::string("chi ") + data_file("rp2_6.json")}) {
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
        CHECK(!a.output.empty());
    }
}
