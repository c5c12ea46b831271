#include "cmgaps/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("cmgaps_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const fs::path& out_dir) {
    args.insert(args.begin(), "cmgaps");
    args.push_back("--out");
    args.push_back(out_dir.string());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cmgaps::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t file_count(const fs::path& dir) {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

}  // namespace

TEST_CASE("coeffs writes the hand series as CSV and binary") {
    TempDir dir;
    const auto r = run({"coeffs", "--m", "1", "--limit", "10"}, dir.path);
    REQUIRE(r.code == 0);
    CHECK(slurp(dir.path / "coeffs_m1_X10.csv") == "n,a_n\n1,1\n5,-2\n9,-3\n");
    CHECK(slurp(dir.path / "coeffs_m1_X10.bin").size() == 20 + 80);
    CHECK(fs::exists(dir.path / "coeffs_m1_X10.bin.meta.json"));
    const auto summary = nlohmann::json::parse(r.out);
    CHECK(summary["nonzero_count"] == 3);
}

TEST_CASE("coeffs validates before writing anything") {
    TempDir dir;
    const auto r = run({"coeffs", "--m", "2", "--limit", "100"}, dir.path);
    CHECK(r.code == 2);
    CHECK(r.err.find("m must be odd") != std::string::npos);
    CHECK(file_count(dir.path) == 0);

    CHECK(run({"coeffs", "--m", "1", "--limit", "200000000"}, dir.path).code == 2);
    CHECK(run({"coeffs", "--m", "3", "--limit", "20000000"}, dir.path).code == 2);
    CHECK(run({"coeffs", "--m", "21", "--limit", "10"}, dir.path).code == 2);
    CHECK(run({"coeffs", "--limit", "10", "--strategy", "fast"}, dir.path).code == 2);
    CHECK(file_count(dir.path) == 0);
}

TEST_CASE("coeffs overflow maps to the budget exit code") {
    TempDir dir;
    const auto r = run({"coeffs", "--m", "19", "--limit", "1000"}, dir.path);
    CHECK(r.code == 2);
    CHECK(file_count(dir.path) == 0);
}

TEST_CASE("coeffs --strategy both succeeds when the strategies agree") {
    TempDir dir;
    const auto r = run({"coeffs", "--m", "3", "--limit", "100000", "--strategy", "both", "--no-csv"}, dir.path);
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["strategies_agree"] == true);
    CHECK_FALSE(fs::exists(dir.path / "coeffs_m3_X100000.csv"));
}

TEST_CASE("verify") {
    TempDir dir;
    const auto r5 = run({"verify", "--pmax", "5"}, dir.path);
    REQUIRE(r5.code == 0);
    const auto j = nlohmann::json::parse(r5.out);
    CHECK(j["deuring"]["split_checked"] == 1);
    CHECK(j["deuring"]["inert_checked"] == 0);
    CHECK(j["ok"] == true);

    const auto r = run({"verify", "--m", "5", "--pmax", "2000", "--limit", "100000"}, dir.path);
    CHECK(r.code == 0);
    CHECK(fs::exists(dir.path / "verify_m5_p2000.json"));
    CHECK(run({"verify", "--pmax", "2000000"}, dir.path).code == 2);
}

TEST_CASE("gaps on tiny series") {
    TempDir dir;
    const auto r = run({"gaps", "--m", "1", "--limit", "10", "--n0", "1"}, dir.path);
    REQUIRE(r.code == 0);
    CHECK(slurp(dir.path / "gaps_m1_X10.csv") ==
          "start,length,ratio\n2,2,1.6817928305074292\n6,2,1.2778862084925449\n");
    const auto j = nlohmann::json::parse(slurp(dir.path / "gaps_m1_X10.json"));
    CHECK(j["truncated_tail"]["start"] == 10);
    CHECK(j["max_length"] == 2);
}

TEST_CASE("gaps bound checks and exit codes") {
    TempDir dir;
    const auto ok = run({"gaps", "--limit", "1000000", "--calibrate-prefix", "100000"}, dir.path);
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["calibrated_C"].get<double>() == doctest::Approx(3.7889870166722224).epsilon(1e-14));
    CHECK(j["validation_max_ratio"].get<double>() == doctest::Approx(2.494645976312302).epsilon(1e-14));
    CHECK(j["bound_check"]["violations"].empty());

    const auto bad = run({"gaps", "--limit", "100000", "--C", "1.0"}, dir.path);
    CHECK(bad.code == 1);
    CHECK(run({"gaps", "--limit", "1000", "--C", "1", "--calibrate-prefix", "10"}, dir.path).code == 2);
}

TEST_CASE("gaps reads a series file written by coeffs") {
    TempDir dir;
    REQUIRE(run({"coeffs", "--m", "3", "--limit", "5000", "--no-csv"}, dir.path).code == 0);
    const auto r = run({"gaps", "--m", "3", "--series", (dir.path / "coeffs_m3_X5000.bin").string(), "--n0", "1"},
                       dir.path);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["limit"] == 5000);
    CHECK(j["conclusions_restricted_to_odd_n"] == true);
    CHECK(run({"gaps", "--m", "1", "--series", (dir.path / "coeffs_m3_X5000.bin").string()}, dir.path).code == 2);
}

TEST_CASE("intervals") {
    TempDir dir;
    const auto empty = run({"intervals", "--xlo", "5", "--xhi", "5"}, dir.path);
    REQUIRE(empty.code == 0);
    CHECK(nlohmann::json::parse(empty.out)["c_emp"] == 0.0);

    const auto small = run({"intervals", "--N", "1", "--xlo", "1", "--xhi", "100", "--top", "3"}, dir.path);
    REQUIRE(small.code == 0);
    const auto j = nlohmann::json::parse(small.out);
    CHECK(j["argmax_X"] == 20);
    CHECK(j["N"] == 1);
    const auto csv = slurp(dir.path / "intervals_N1_1_100_s1.csv");
    CHECK(csv.rfind("X,m,gap,ratio\n20,25,5,2.3643540225079396\n", 0) == 0);

    const auto mid = run({"intervals", "--N", "192", "--xlo", "1000", "--xhi", "1000000"}, dir.path);
    REQUIRE(mid.code == 0);
    CHECK(nlohmann::json::parse(mid.out)["argmax_X"] == 3929);

    CHECK(run({"intervals", "--xlo", "1", "--xhi", "2000000000"}, dir.path).code == 2);
}

TEST_CASE("csv summary format") {
    TempDir dir;
    const auto r = run({"intervals", "--N", "1", "--xlo", "1", "--xhi", "100", "--format", "csv"}, dir.path);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("key,value\n", 0) == 0);
    CHECK(r.out.find("argmax_X,20\n") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical data files") {
    TempDir a, b;
    for (const auto* d : {&a, &b}) {
        REQUIRE(run({"coeffs", "--m", "1", "--limit", "50000", "--strategy", "both"}, d->path).code == 0);
        REQUIRE(run({"gaps", "--m", "1", "--limit", "50000", "--C", "10"}, d->path).code == 0);
        REQUIRE(run({"intervals", "--xlo", "1000", "--xhi", "60000"}, d->path).code == 0);
        REQUIRE(run({"verify", "--pmax", "300", "--limit", "50000"}, d->path).code == 0);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
        const auto name = entry.path().filename().string();
        if (name.ends_with(".meta.json")) continue;
        CHECK_MESSAGE(slurp(entry.path()) == slurp(b.path / name), name);
        ++compared;
    }
    CHECK(compared == 8);
}

TEST_CASE("the installed binary runs end to end") {
    TempDir dir;
    const std::string cmd = std::string(CMGAPS_BINARY) + " coeffs --m 1 --limit 10 --out " + dir.path.string() +
                            " > " + (dir.path / "stdout.txt").string();
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(dir.path / "coeffs_m1_X10.csv") == "n,a_n\n1,1\n5,-2\n9,-3\n");
    const std::string bad = std::string(CMGAPS_BINARY) + " coeffs --m 2 --limit 10 --out " + dir.path.string() +
                            " 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
