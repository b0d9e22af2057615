// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fdmimo/emit.hpp"
#include "fdmimo/format.hpp"

using namespace fdmimo;

namespace {

ExperimentResult sample() {
    ExperimentResult r;
    r.experiment = "sample";
    r.config_digest = "0123456789abcdef";
    r.seed = 18446744073709551615ull;
    r.columns = {"m", "gain", "label"};
    r.add_row({std::int64_t{20}, 1.25, std::string("ul")});
    r.add_row({std::int64_t{-1}, 0.1 + 0.2, std::string("a,b")});
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("empty result is header only") {
    ExperimentResult r;
    r.experiment = "x";
    r.columns = {"a", "b"};
    CHECK(render(r, Format::csv) == "experiment,config_digest,seed,a,b\n");
}

TEST_CASE("CSV rows carry the provenance prefix") {
    const std::string csv = render(sample(), Format::csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "experiment,config_digest,seed,m,gain,label");
    std::getline(in, line);
    CHECK(line == "sample,0123456789abcdef,18446744073709551615,20,1.25,ul");
    std::getline(in, line);
    CHECK(line == "sample,0123456789abcdef,18446744073709551615,-1,0.30000000000000004,\"a,b\"");
}

TEST_CASE("numbers print in shortest round-trip form") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("re-emission is byte-identical") {
    const ExperimentResult r = sample();
    CHECK(render(r, Format::csv) == render(r, Format::csv));
    CHECK(render(r, Format::json) == render(r, Format::json));
    const std::string path = "emit_test_output.csv";
    emit(r, Format::csv, path);
    const std::string first = slurp(path);
    emit(r, Format::csv, path);
    CHECK(slurp(path) == first);
    CHECK(first == render(r, Format::csv));
    std::remove(path.c_str());
}

TEST_CASE("JSON round trip") {
    const ExperimentResult r = sample();
    const ExperimentResult back = result_from_json(nlohmann::json::parse(render(r, Format::json)));
    CHECK(back.experiment == r.experiment);
    CHECK(back.config_digest == r.config_digest);
    CHECK(back.seed == r.seed);
    CHECK(back.columns == r.columns);
    CHECK(back.rows == r.rows);
    CHECK(render(back, Format::json) == render(r, Format::json));
}

TEST_CASE("accessors and errors") {
    ExperimentResult r = sample();
    CHECK(r.number(0, "gain") == 1.25);
    CHECK(r.number(0, "m") == 20.0);
    CHECK(r.text(1, "label") == "a,b");
    CHECK_THROWS_AS(r.column("missing"), std::out_of_range);
    CHECK_THROWS_AS(r.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(emit(r, Format::csv, "/nonexistent-dir/out.csv"), std::runtime_error);
    CHECK_THROWS_AS(format_from_string("xml"), std::invalid_argument);
}

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
