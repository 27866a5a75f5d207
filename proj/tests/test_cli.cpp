// test_cli.cpp - end-to-end behavior of the cfis binary: exit codes,
// byte-stable outputs, help/doc sync
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cfis/profile_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() /
                     ("cfis_cli_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter_++))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }
    fs::path operator/(const std::string& name) const { return dir_ / name; }
    const fs::path& dir() const { return dir_; }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

RunResult run(const std::string& args) {
    static int serial = 0;
    const fs::path out = fs::temp_directory_path() /
                         ("cfis_out_" + std::to_string(::getpid()) + "_" +
                          std::to_string(serial));
    const fs::path err = fs::temp_directory_path() /
                         ("cfis_err_" + std::to_string(::getpid()) + "_" +
                          std::to_string(serial));
    ++serial;
    const std::string command = std::string(CFIS_CLI_PATH) + " " + args + " > " +
                                out.string() + " 2> " + err.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return result;
}

const std::string kDataDir = CFIS_DATA_DIR;

}  // namespace

TEST_CASE("init writes built-in profiles") {
    Scratch scratch;
    SUBCASE("--all emits six files that parse back to the built-ins") {
        const auto result = run("init --all --out " + scratch.dir().string());
        CHECK(result.code == 0);
        int count = 0;
        for (auto kind : cfis::all_test_kinds()) {
            const auto path =
                scratch / (std::string(cfis::to_string(kind)) + ".profile.json");
            REQUIRE(fs::exists(path));
            ++count;
            CHECK(cfis::parse_profile(slurp(path)) == cfis::build_profile(kind));
        }
        CHECK(count == 6);
    }
    SUBCASE("single kind to an explicit file") {
        const auto path = scratch / "ta.profile.json";
        const auto result = run("init through_apertures --out " + path.string());
        CHECK(result.code == 0);
        CHECK(cfis::parse_profile(slurp(path)) ==
              cfis::build_profile(cfis::TestKind::ThroughApertures));
    }
    SUBCASE("unknown kind exits 2 with a message") {
        const auto result = run("init bogus --out " + scratch.dir().string());
        CHECK(result.code == 2);
        CHECK(result.err.find("unknown test kind") != std::string::npos);
    }
    SUBCASE("no kind and no --all exits 2") {
        CHECK(run("init --out " + scratch.dir().string()).code == 2);
    }
}

TEST_CASE("validate reports cleanly and flags findings") {
    Scratch scratch;
    const auto good = scratch / "good.profile.json";
    spit(good, cfis::serialize_profile(cfis::build_profile(cfis::TestKind::Takeoff)));

    SUBCASE("clean profile exits 0 and mentions the assumed Speed note") {
        const auto result = run("validate " + good.string());
        CHECK(result.code == 0);
        CHECK(result.out.find("profile is valid") != std::string::npos);

        const auto endurance = scratch / "re.profile.json";
        spit(endurance, cfis::serialize_profile(
                            cfis::build_profile(cfis::TestKind::RuntimeEndurance)));
        const auto result2 = run("validate " + endurance.string());
        CHECK(result2.code == 0);
        CHECK(result2.out.find("assumed MF parameters") != std::string::npos);
        CHECK(result2.out.find("Speed") != std::string::npos);
    }
    SUBCASE("coverage hole exits 1") {
        auto doc = cfis::profile_to_json(cfis::build_profile(cfis::TestKind::ThroughApertures));
        doc["variables"]["Area"]["mfs"]["low"] = {0, 0, 1};
        doc["variables"]["Area"]["mfs"]["medium"] = {4, 4.5, 5};
        doc["variables"]["Area"]["mfs"]["high"] = {5, 6, 6};
        const auto holed = scratch / "holed.profile.json";
        spit(holed, doc.dump(2));
        const auto result = run("validate " + holed.string());
        CHECK(result.code == 1);
        CHECK(result.out.find("no MF covers") != std::string::npos);
    }
    SUBCASE("missing file exits 2") {
        CHECK(run("validate " + (scratch / "nope.json").string()).code == 2);
    }
}

TEST_CASE("evaluate scores record files deterministically") {
    Scratch scratch;
    const auto profile_path = scratch / "ta.profile.json";
    spit(profile_path, cfis::serialize_profile(
                           cfis::build_profile(cfis::TestKind::ThroughApertures)));
    const std::string records = kDataDir + "/apertures_trials.csv";
    const std::string profile_bytes_before = slurp(profile_path);
    const std::string records_bytes_before = slurp(records);

    SUBCASE("happy path: reports land, finals within [0,1]") {
        const auto out = scratch / "report";
        const auto result = run("evaluate --profile " + profile_path.string() +
                                " --records " + records + " --out " + out.string());
        CHECK(result.code == 0);
        const std::string csv = slurp(scratch / "report.records.csv");
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "platform,test,ec,mc,hi,final");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            const auto last_comma = line.rfind(',');
            const double value = std::stod(line.substr(last_comma + 1));
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
        }
        CHECK(rows == 14);
        CHECK(fs::exists(scratch / "report.summary.csv"));
        CHECK(fs::exists(scratch / "report.json"));
    }
    SUBCASE("byte-identical across repeat runs and worker counts") {
        const auto out1 = scratch / "r1";
        const auto out2 = scratch / "r2";
        const auto out3 = scratch / "r3";
        CHECK(run("evaluate --profile " + profile_path.string() + " --records " +
                  records + " --out " + out1.string()).code == 0);
        CHECK(run("evaluate --profile " + profile_path.string() + " --records " +
                  records + " --out " + out2.string()).code == 0);
        CHECK(run("evaluate --profile " + profile_path.string() + " --records " +
                  records + " --out " + out3.string() + " --workers 4").code == 0);
        for (const char* suffix : {".records.csv", ".summary.csv", ".json"}) {
            CHECK(slurp(scratch / ("r1" + std::string(suffix))) ==
                  slurp(scratch / ("r2" + std::string(suffix))));
            CHECK(slurp(scratch / ("r1" + std::string(suffix))) ==
                  slurp(scratch / ("r3" + std::string(suffix))));
        }
    }
    SUBCASE("strict mode exits 1 on a bad row with a row-numbered diagnostic") {
        const auto bad = scratch / "bad.csv";
        spit(bad,
             "platform,test,Area,Light,Crash,Comp.%\n"
             "G,through_apertures,2.1,300,1,0.83\n"
             "H,through_apertures,oops,300,1,0.83\n");
        const auto result = run("evaluate --profile " + profile_path.string() +
                                " --records " + bad.string() + " --out " +
                                (scratch / "x").string());
        CHECK(result.code == 1);
        CHECK(result.err.find("row 3") != std::string::npos);

        const auto lenient = run("evaluate --profile " + profile_path.string() +
                                 " --records " + bad.string() + " --out " +
                                 (scratch / "y").string() + " --lenient");
        CHECK(lenient.code == 0);
        CHECK(lenient.err.find("row 3") != std::string::npos);
    }
    SUBCASE("missing input file exits 2") {
        CHECK(run("evaluate --profile " + profile_path.string() +
                  " --records /nonexistent.csv --out " + (scratch / "x").string())
                  .code == 2);
    }
    SUBCASE("a profile with findings exits 1") {
        auto doc = cfis::profile_to_json(
            cfis::build_profile(cfis::TestKind::ThroughApertures));
        doc["variables"]["Area"]["mfs"]["low"] = {0, 0, 1};
        doc["variables"]["Area"]["mfs"]["medium"] = {4, 4.5, 5};
        doc["variables"]["Area"]["mfs"]["high"] = {5, 6, 6};
        const auto holed = scratch / "holed.profile.json";
        spit(holed, doc.dump(2));
        CHECK(run("evaluate --profile " + holed.string() + " --records " + records +
                  " --out " + (scratch / "x").string()).code == 1);
    }
    SUBCASE("inputs are never mutated") {
        CHECK(slurp(profile_path) == profile_bytes_before);
        CHECK(slurp(records) == records_bytes_before);
    }
}

TEST_CASE("aggregate ranks the shipped score matrix") {
    Scratch scratch;
    const std::string matrix = kDataDir + "/uas_test_scores.csv";

    SUBCASE("overall column lands within half a rounding step of the table") {
        const auto out = scratch / "agg";
        const auto result = run("aggregate --matrix " + matrix + " --out " + out.string());
        CHECK(result.code == 0);
        const std::string csv = slurp(scratch / "agg.ranking.csv");
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "rank,platform,overall,tests_present");
        const std::vector<std::pair<std::string, double>> expected = {
            {"F", 0.95}, {"C", 0.92}, {"E", 0.87}, {"A", 0.85},
            {"B", 0.82}, {"G", 0.80}, {"D", 0.77}};
        size_t row = 0;
        while (std::getline(in, line)) {
            REQUIRE(row < expected.size());
            std::istringstream cells(line);
            std::string rank, platform, overall;
            std::getline(cells, rank, ',');
            std::getline(cells, platform, ',');
            std::getline(cells, overall, ',');
            CHECK(platform == expected[row].first);
            CHECK(std::abs(std::stod(overall) - expected[row].second) < 0.005);
            ++row;
        }
        CHECK(row == 7);
    }
    SUBCASE("non-equal weights are accepted and renormalized") {
        const auto result = run("aggregate --matrix " + matrix + " --weights " +
                                kDataDir + "/example_weights.csv --out " +
                                (scratch / "w").string());
        CHECK(result.code == 0);
        CHECK(fs::exists(scratch / "w.ranking.csv"));
    }
    SUBCASE("zero scores need --allow-zero") {
        const auto zeros = scratch / "zeros.csv";
        spit(zeros, "platform,t1,t2\nA,0.0,0.9\n");
        CHECK(run("aggregate --matrix " + zeros.string() + " --out " +
                  (scratch / "z").string()).code == 1);
        const auto allowed = run("aggregate --matrix " + zeros.string() + " --out " +
                                 (scratch / "z2").string() + " --allow-zero");
        CHECK(allowed.code == 0);
        CHECK(slurp(scratch / "z2.ranking.csv").find("0.000000") != std::string::npos);
    }
    SUBCASE("an all-missing platform exits 1") {
        const auto ghost = scratch / "ghost.csv";
        spit(ghost, "platform,t1\nA,0.5\nB,NA\n");
        CHECK(run("aggregate --matrix " + ghost.string() + " --out " +
                  (scratch / "g").string()).code == 1);
    }
    SUBCASE("missing matrix file exits 2") {
        CHECK(run("aggregate --matrix /nonexistent.csv --out " +
                  (scratch / "x").string()).code == 2);
    }
}

TEST_CASE("surface exports response grids") {
    Scratch scratch;
    const auto profile_path = scratch / "ta.profile.json";
    spit(profile_path, cfis::serialize_profile(
                           cfis::build_profile(cfis::TestKind::ThroughApertures)));

    SUBCASE("combiner EC x MC at resolution 101") {
        const auto out = scratch / "surface.csv";
        const auto result = run("surface --profile " + profile_path.string() +
                                " --fis combiner --x EC --y MC --fix HI=0 "
                                "--resolution 101 --out " + out.string());
        CHECK(result.code == 0);
        const std::string csv = slurp(out);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "x,y,score");
        std::vector<std::string> rows;
        while (std::getline(in, line)) rows.push_back(line);
        REQUIRE(rows.size() == 10201);
        CHECK(rows.front() == "0.000000,0.000000,0.000000");
        CHECK(rows.back() == "1.000000,1.000000,1.000000");
    }
    SUBCASE("a corrupt profile exits 1") {
        const auto broken = scratch / "broken.profile.json";
        spit(broken, "{ not json");
        CHECK(run("surface --profile " + broken.string() +
                  " --fis combiner --x EC --y MC --fix HI=0 --out " +
                  (scratch / "s.csv").string())
                  .code == 1);
    }
    SUBCASE("unknown FIS or variable exits 2") {
        CHECK(run("surface --profile " + profile_path.string() +
                  " --fis nope --x EC --y MC --out " + (scratch / "s.csv").string())
                  .code == 2);
        CHECK(run("surface --profile " + profile_path.string() +
                  " --fis combiner --x EC --y Bogus --fix HI=0 --out " +
                  (scratch / "s.csv").string())
                  .code == 2);
        CHECK(run("surface --profile " + profile_path.string() +
                  " --fis combiner --x EC --y MC --fix HI=zero --out " +
                  (scratch / "s.csv").string())
                  .code == 2);
    }
}

TEST_CASE("help output stays in sync with the documented flags") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
        {"", {"init", "validate", "evaluate", "aggregate", "surface"}},
        {"init", {"--all", "--out"}},
        {"validate", {"--grid"}},
        {"evaluate", {"--profile", "--records", "--out", "--lenient", "--workers"}},
        {"aggregate", {"--matrix", "--weights", "--out", "--allow-zero", "--strict-missing"}},
        {"surface", {"--profile", "--fis", "--x", "--y", "--fix", "--resolution", "--out"}},
    };
    for (const auto& [subcommand, flags] : expected) {
        const auto result =
            run(subcommand.empty() ? "--help" : subcommand + " --help");
        CHECK(result.code == 0);
        for (const auto& flag : flags) {
            INFO("subcommand '" << subcommand << "' flag " << flag);
            CHECK(result.out.find(flag) != std::string::npos);
        }
    }
}

TEST_CASE("bare invocation without a subcommand exits 2") {
    CHECK(run("").code == 2);
}
