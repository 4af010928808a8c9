#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hyperquot/errors.hpp"
#include "hyperquot/json_io.hpp"

using namespace hyperquot;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& body)
        : path("/tmp/hyperquot_test_" + name) {
        std::ofstream out(path);
        out << body;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("spaces round-trip through json") {
    const Json j = Json::parse(R"({"labels":["a","b"],"opens":[[],[0],[0,1]]})");
    const FiniteSpace s = space_from_json(j);
    CHECK(s.size() == 2);
    CHECK(s.labels == std::vector<std::string>{"a", "b"});
    CHECK(s.topology == Topology(2, {bit(0), full_mask(2)}));
    const FiniteSpace back = space_from_json(space_to_json(s));
    CHECK(back.topology == s.topology);
    CHECK(back.labels == s.labels);
}

TEST_CASE("space parsing rejects malformed input") {
    CHECK_THROWS_AS(space_from_json(Json::parse("[1,2]")), InvalidInput);
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"labels":["a"]})")), InvalidInput);
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"labels":[],"opens":[[]]})")),
                    InvalidInput);
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"opens":[[],[2],[0,1]]})")),
        InvalidInput);
    // Opens not closed under intersection.
    CHECK_THROWS_AS(
        space_from_json(Json::parse(
            R"({"labels":["a","b","c"],"opens":[[],[0,1],[1,2],[0,1,2]]})")),
        InvalidInput);
    CHECK_THROWS_AS(
        space_from_json(Json::parse(R"({"labels":["a","b"],"opens":[[],[0,1],["x"]]})")),
        InvalidInput);
}

TEST_CASE("topologies round-trip and carry opens when enumerable") {
    const Topology t(3, {bit(0), bit(0) | bit(1), full_mask(3)});
    const Json j = topology_to_json(t);
    REQUIRE(j.contains("min_nbhd"));
    CHECK(j.at("min_nbhd") == Json::parse("[[0],[0,1],[0,1,2]]"));
    REQUIRE(j.contains("opens"));
    CHECK(j.at("opens").size() == t.opens().size());
    CHECK(topology_from_json(j) == t);
    // The neighborhoods alone are enough to rebuild.
    CHECK(topology_from_json(Json::parse(R"({"min_nbhd":[[0],[0,1]]})")) ==
          Topology(2, {bit(0), full_mask(2)}));
    CHECK_THROWS_AS(topology_from_json(Json::parse(R"({"opens":[[0]]})")), InvalidInput);
    CHECK_THROWS_AS(topology_from_json(Json::parse(R"({"min_nbhd":[]})")), InvalidInput);
    CHECK_THROWS_AS(topology_from_json(Json::parse(R"({"min_nbhd":[[1]]})")),
                    InvalidInput);
}

TEST_CASE("families round-trip, with the all flag as a shorthand") {
    const Json space = Json::parse(R"({"labels":["a","b"],"opens":[[],[0],[0,1]]})");
    Json j;
    j["space"] = space;
    j["y_size"] = 2;
    j["all"] = true;
    const FunctionFamily fam = family_from_json(j);
    CHECK(fam.all_of_xy);
    CHECK(fam.size() == 4);
    const FunctionFamily back = family_from_json(family_to_json(fam));
    CHECK(back.tuples == fam.tuples);
    CHECK(back.y_size == fam.y_size);
    CHECK(back.all_of_xy == fam.all_of_xy);

    Json partial;
    partial["space"] = space;
    partial["y_size"] = 2;
    partial["tuples"] = Json::parse("[[1,0],[0,0]]");
    const FunctionFamily p = family_from_json(partial);
    CHECK(p.size() == 2);
    CHECK(p.tuples == std::vector<std::vector<int>>{{0, 0}, {1, 0}});
    CHECK_FALSE(p.all_of_xy);

    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"y_size":1})")), InvalidInput);
    Json bad = partial;
    bad.erase("tuples");
    CHECK_THROWS_AS(family_from_json(bad), InvalidInput);
    bad["tuples"] = Json::parse("[[0,5]]");
    CHECK_THROWS_AS(family_from_json(bad), InvalidInput);
}

TEST_CASE("metrics parse from either a matrix or coordinates") {
    const FiniteMetricSpace m = metric_from_json(
        Json::parse(R"({"labels":["a","b"],"dist":[[0,2],[2,0]]})"));
    CHECK(m.size() == 2);
    CHECK(m.d(0, 1) == 2.0);
    const FiniteMetricSpace e = metric_from_json(
        Json::parse(R"({"coords":[[0,0],[3,4]],"metric":"euclidean"})"));
    CHECK(e.d(0, 1) == doctest::Approx(5.0));
    CHECK(e.labels()[0] == "p0");
    CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"dist":[[0,1],[1,0]]})")),
                    InvalidInput);  // dist form needs labels
    CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"labels":["a"],"dist":[[0,1]]})")),
                    InvalidInput);  // not square
    CHECK_THROWS_AS(
        metric_from_json(Json::parse(R"({"coords":[[0]],"metric":"manhattan"})")),
        InvalidInput);
    CHECK_THROWS_AS(metric_from_json(Json::parse(R"({"labels":["a"]})")), InvalidInput);
}

TEST_CASE("sequences and point sets parse with range checks") {
    const SubsetSequence seq =
        sequence_from_json(Json::parse(R"({"prefix":[[0]],"cycle":[[1],[0,1]]})"), 2);
    CHECK(seq.prefix == std::vector<Mask>{bit(0)});
    CHECK(seq.cycle == std::vector<Mask>{bit(1), bit(0) | bit(1)});
    CHECK(sequence_from_json(Json::parse(R"({"cycle":[[0]]})"), 1).prefix.empty());
    CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"prefix":[[0]]})"), 2),
                    InvalidInput);
    CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"cycle":[[3]]})"), 2),
                    InvalidInput);
    CHECK(point_set_from_json(Json::parse("[2,0]"), 3) == (bit(0) | bit(2)));
    CHECK_THROWS_AS(point_set_from_json(Json::parse("[4]"), 3), InvalidInput);
    CHECK_THROWS_AS(point_set_from_json(Json::parse(R"("x")"), 3), InvalidInput);
    CHECK(mask_to_json(bit(0) | bit(2)) == Json::parse("[0,2]"));
    CHECK(mask_to_json(0) == Json::parse("[]"));
}

TEST_CASE("file loading maps io and parse failures to invalid input") {
    const TempFile good("good.json", R"({"k": 1})");
    CHECK(load_json_file(good.path).at("k") == 1);
    const TempFile bad("bad.json", "{not json");
    CHECK_THROWS_AS(load_json_file(bad.path), InvalidInput);
    CHECK_THROWS_AS(load_json_file("/tmp/hyperquot_test_definitely_missing.json"),
                    InvalidInput);
}

}  // TEST_SUITE
