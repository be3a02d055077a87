#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "primeperiod/csv.hpp"
#include "primeperiod/error.hpp"
#include "primeperiod/pipeline.hpp"

using namespace primeperiod;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("primeperiod_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("parse_interval") {
    CHECK(parse_interval("9e4:1e5") == Interval{90000, 100000});
    CHECK(parse_interval("1000:20000") == Interval{1000, 20000});
    CHECK_THROWS_AS(parse_interval("1000"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_interval("a:b"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_interval("1.5:10"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_interval("10:11"), InvalidArgumentError);
    CHECK(to_string(Interval{6000, 6600}) == "6000:6600");
}

TEST_CASE("csv format") {
    const std::vector<CsvColumn> cols{{"tau", {0, 1, 2}, true}, {"c", {1.0, 0.5}}};
    CHECK(format_csv("abc", cols) == "# config-hash: abc\ntau,c\n0,1\n1,0.5\n2,\n");
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("config hash tracks every setting") {
    ExperimentConfig a, b;
    CHECK(a.hash() == b.hash());
    b.seed = 43;
    CHECK(a.hash() != b.hash());
    b = a;
    b.output_dir = "elsewhere";
    CHECK(a.hash() == b.hash());
    b.model.persistence_q = 0.3;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.max_lag = 10000;
    CHECK_THROWS_AS(c.validate(), InvalidArgumentError);
    c = {};
    c.flip_probability = 1.5;
    CHECK_THROWS_AS(c.validate(), InvalidArgumentError);
}

TEST_CASE("build_ln_signal reports the prime count it needs") {
    try {
        build_ln_signal(1000, 10.0, 100000);
        FAIL("expected InsufficientPrimesError");
    } catch (const InsufficientPrimesError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("need at least") != std::string::npos);
        CHECK(e.name() == "insufficient-primes");
    }
    ExperimentConfig c;
    c.prime_count = 500;
    CHECK_THROWS_AS(run_fig1_fig2(c), InsufficientPrimesError);
}

TEST_CASE("run_fig3") {
    ExperimentConfig c;
    c.realizations = 2000;
    const auto r = run_fig3(c);
    CHECK(r.q == 0.25);
    CHECK(r.flip_probability == 0.75);
    CHECK(r.analytic[0] == 1.0);
    CHECK(r.analytic[10] == -0.5);
    CHECK(r.max_z <= 3.0);
}

TEST_CASE("run_fig567 flip counts equal K2 primes inside each interval") {
    ExperimentConfig c;
    const auto r = run_fig567(c, c.k2_intervals);
    REQUIRE(r.intervals.size() == 3);
    CHECK(r.primes_used == 2262);
    CHECK_FALSE(r.notes.empty());
    for (const auto& k : r.intervals) {
        CHECK(k.flip_count == k.k2_primes_inside);
        CHECK(k.flip_count > 0);
        CHECK(k.analysis.first_minimum.has_value());
        CHECK(k.decay_endpoint.has_value());
    }
}

TEST_CASE("reruns produce byte-identical datasets") {
    ExperimentConfig c;
    c.realizations = 500;
    c.output_dir = scratch("a");
    const auto pa = write_fig3(run_fig3(c), c);
    const auto ka = write_k2_dataset(run_fig567(c, c.k2_intervals).intervals[0], c, "fig5.csv");
    c.output_dir = scratch("b");
    const auto pb = write_fig3(run_fig3(c), c);
    const auto kb = write_k2_dataset(run_fig567(c, c.k2_intervals).intervals[0], c, "fig5.csv");
    CHECK(slurp(pa) == slurp(pb));
    CHECK(slurp(ka) == slurp(kb));
    CHECK(slurp(pa).rfind("# config-hash: " + c.hash() + "\ntau,c_model,c_mc,se\n", 0) == 0);
    fs::remove_all(pa.parent_path());
    fs::remove_all(pb.parent_path());
}

TEST_CASE("run_fig1_fig2 end to end") {
    ExperimentConfig c;
    const auto r = run_fig1_fig2(c);
    CHECK(r.ln_sequence_length == 9998);
    REQUIRE(r.fig1.first_minimum);
    REQUIRE(r.fig2.first_minimum);
    REQUIRE(r.overlay1);
    REQUIRE(r.overlay1->aligned_minimum);
    CHECK(std::abs(*r.overlay1->aligned_minimum - r.fig1.first_minimum->half_period) <= 1.0);
    CHECK(r.overlay1->rescaled.values.size() == r.fig1.acf.values.size());

    c.output_dir = scratch("fig12");
    const auto files = write_fig1_fig2(r, c);
    REQUIRE(files.size() == 2);
    const auto text = slurp(files[0]);
    CHECK(text.find("tau,c,c_rossler\n") != std::string::npos);
    fs::remove_all(c.output_dir);
}
