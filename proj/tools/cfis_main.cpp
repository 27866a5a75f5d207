// cfis_main.cpp - operator CLI: init, validate, evaluate, aggregate, surface
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cfis/aggregate.hpp"
#include "cfis/cascade.hpp"
#include "cfis/profile_io.hpp"
#include "cfis/records_io.hpp"
#include "cfis/report_io.hpp"

#include "CLI11.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kDataFailure = 1;   // bad content, validation findings
constexpr int kUsageFailure = 2;  // bad invocation, IO trouble

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cfis::IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cfis::IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw cfis::IoError("failed writing '" + path + "'");
}

struct InitOptions {
    std::string kind;
    bool all = false;
    std::string out = ".";
};

int cmd_init(const InitOptions& opt) {
    std::vector<cfis::TestKind> kinds;
    if (opt.all) {
        for (auto kind : cfis::all_test_kinds()) kinds.push_back(kind);
    } else {
        const auto kind = cfis::test_kind_from_string(opt.kind);
        if (!kind) {
            std::cerr << "error: unknown test kind '" << opt.kind << "'\n";
            return kUsageFailure;
        }
        kinds.push_back(*kind);
    }

    for (auto kind : kinds) {
        const auto profile = cfis::build_profile(kind);
        std::string path = opt.out;
        const bool out_is_file =
            !opt.all && (path.ends_with(".json") || (fs::exists(path) && !fs::is_directory(path)));
        if (!out_is_file) {
            fs::create_directories(path);
            path = (fs::path(path) /
                    (std::string(cfis::to_string(kind)) + ".profile.json")).string();
        }
        write_file(path, cfis::serialize_profile(profile));
        std::cout << "wrote " << path << "\n";
    }
    return kOk;
}

struct ValidateOptions {
    std::string profile_path;
    int grid = 1000;
};

int cmd_validate(const ValidateOptions& opt) {
    const std::string text = read_file(opt.profile_path);
    // parse leniently so validate can report findings instead of aborting
    std::vector<std::string> warnings;
    const auto profile = cfis::parse_profile(text, cfis::ParseMode::Lenient, &warnings);
    bool clean = true;
    for (const auto& warning : warnings) {
        std::cout << "warning: " << warning << "\n";
        clean = false;
    }
    for (const auto& node : profile.graph.nodes()) {
        if (!node.fis) continue;
        const auto report = node.fis->validate(opt.grid);
        std::cout << "fis " << node.fis->name() << ": " << report.to_string() << "\n";
        if (!report.valid()) clean = false;
    }
    std::cout << (clean ? "profile is valid\n" : "profile has findings\n");
    return clean ? kOk : kDataFailure;
}

struct EvaluateOptions {
    std::string profile_path;
    std::string records_path;
    std::string out;
    bool lenient = false;
    int workers = 1;
};

int cmd_evaluate(const EvaluateOptions& opt) {
    const auto profile = cfis::parse_profile(read_file(opt.profile_path));
    const auto loaded = cfis::load_records(
        read_file(opt.records_path), profile,
        opt.lenient ? cfis::ParseMode::Lenient : cfis::ParseMode::Strict);
    for (const auto& issue : loaded.issues)
        std::cerr << "warning: row " << issue.row << ": " << issue.message << "\n";

    std::vector<std::map<std::string, double>> inputs;
    inputs.reserve(loaded.records.size());
    for (const auto& record : loaded.records) inputs.push_back(record.values);
    const auto scores = cfis::evaluate_batch(profile, inputs, opt.workers);

    std::vector<cfis::ScoredRecord> scored;
    scored.reserve(scores.size());
    for (size_t i = 0; i < scores.size(); ++i)
        scored.push_back({loaded.records[i], scores[i]});
    const auto summary = cfis::summarize(scored);

    write_file(opt.out + ".records.csv", cfis::records_csv(scored));
    write_file(opt.out + ".summary.csv", cfis::summary_csv(summary));
    write_file(opt.out + ".json", cfis::report_json(scored, summary).dump(2) + "\n");
    std::cout << "wrote " << opt.out << ".records.csv\n";
    std::cout << "wrote " << opt.out << ".summary.csv\n";
    std::cout << "wrote " << opt.out << ".json\n";
    return kOk;
}

struct AggregateOptions {
    std::string matrix_path;
    std::string weights_path;
    std::string out;
    bool allow_zero = false;
    bool strict_missing = false;
};

int cmd_aggregate(const AggregateOptions& opt) {
    const auto matrix = cfis::load_score_matrix(read_file(opt.matrix_path));
    std::map<std::string, double> weights;
    if (!opt.weights_path.empty()) weights = cfis::load_weights(read_file(opt.weights_path));
    cfis::AggregateOptions options;
    options.allow_zero = opt.allow_zero;
    options.strict_missing = opt.strict_missing;
    const auto report = cfis::rank(matrix, weights, options);

    write_file(opt.out + ".ranking.csv", cfis::ranking_csv(report));
    write_file(opt.out + ".per_test.csv", cfis::per_test_csv(report));
    write_file(opt.out + ".json", cfis::ranking_json(report).dump(2) + "\n");
    std::cout << "wrote " << opt.out << ".ranking.csv\n";
    std::cout << "wrote " << opt.out << ".per_test.csv\n";
    std::cout << "wrote " << opt.out << ".json\n";
    return kOk;
}

struct SurfaceOptions {
    std::string profile_path;
    std::string fis_name;
    std::string var_x, var_y;
    std::vector<std::string> fixed;
    int resolution = 101;
    std::string out;
};

int cmd_surface(const SurfaceOptions& opt) {
    const auto profile = cfis::parse_profile(read_file(opt.profile_path));
    const auto* fis = profile.find_fis(opt.fis_name);
    if (!fis) {
        std::cerr << "error: profile has no FIS named '" << opt.fis_name << "'\n";
        return kUsageFailure;
    }
    std::map<std::string, double> fixed;
    for (const auto& assignment : opt.fixed) {
        const auto eq = assignment.find('=');
        bool ok = eq != std::string::npos && eq > 0;
        double value = 0.0;
        if (ok) {
            try {
                size_t used = 0;
                value = std::stod(assignment.substr(eq + 1), &used);
                ok = used == assignment.size() - eq - 1;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) {
            std::cerr << "error: --fix expects VAR=VALUE, got '" << assignment << "'\n";
            return kUsageFailure;
        }
        fixed[assignment.substr(0, eq)] = value;
    }
    try {
        const auto grid =
            cfis::surface_grid(*fis, opt.var_x, opt.var_y, fixed, opt.resolution);
        write_file(opt.out, cfis::surface_csv(grid));
    } catch (const cfis::InputShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageFailure;
    } catch (const cfis::BuildError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageFailure;
    }
    std::cout << "wrote " << opt.out << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cascaded fuzzy-inference scoring for contextual autonomy tests"};
    app.require_subcommand(1);

    InitOptions init_opt;
    auto* init = app.add_subcommand("init", "Write built-in test profiles as JSON");
    init->add_option("kind", init_opt.kind,
                     "Test kind (runtime_endurance, through_apertures, through_corridors, "
                     "takeoff, land_perch, room_clearing)");
    init->add_flag("--all", init_opt.all, "Write every built-in profile");
    init->add_option("--out", init_opt.out, "Output file or directory (default: .)");

    ValidateOptions validate_opt;
    auto* validate = app.add_subcommand("validate", "Check a profile and print findings");
    validate->add_option("profile", validate_opt.profile_path, "Profile JSON path")->required();
    validate->add_option("--grid", validate_opt.grid, "Sweep resolution per variable (default 1000)");

    EvaluateOptions evaluate_opt;
    auto* evaluate = app.add_subcommand("evaluate", "Score trial records against a profile");
    evaluate->add_option("--profile", evaluate_opt.profile_path, "Profile JSON path")->required();
    evaluate->add_option("--records", evaluate_opt.records_path, "Trial records CSV path")->required();
    evaluate->add_option("--out", evaluate_opt.out, "Output base path")->required();
    evaluate->add_flag("--lenient", evaluate_opt.lenient,
                       "Keep valid rows when some rows fail to parse");
    evaluate->add_option("--workers", evaluate_opt.workers,
                         "Worker threads for record evaluation (default 1)");

    AggregateOptions aggregate_opt;
    auto* aggregate = app.add_subcommand("aggregate",
                                         "Weighted-product overall scores and ranking");
    aggregate->add_option("--matrix", aggregate_opt.matrix_path,
                          "Score matrix CSV (NA marks a missing test)")->required();
    aggregate->add_option("--weights", aggregate_opt.weights_path, "Optional weights CSV");
    aggregate->add_option("--out", aggregate_opt.out, "Output base path")->required();
    aggregate->add_flag("--allow-zero", aggregate_opt.allow_zero,
                        "Accept 0 scores (the product collapses to 0)");
    aggregate->add_flag("--strict-missing", aggregate_opt.strict_missing,
                        "Error on missing entries instead of renormalizing");

    SurfaceOptions surface_opt;
    auto* surface = app.add_subcommand("surface", "Export a two-variable response grid");
    surface->add_option("--profile", surface_opt.profile_path, "Profile JSON path")->required();
    surface->add_option("--fis", surface_opt.fis_name, "FIS name inside the profile")->required();
    surface->add_option("--x", surface_opt.var_x, "Swept variable on x")->required();
    surface->add_option("--y", surface_opt.var_y, "Swept variable on y")->required();
    surface->add_option("--fix", surface_opt.fixed, "VAR=VALUE for each remaining variable");
    surface->add_option("--resolution", surface_opt.resolution, "Grid resolution (default 101)");
    surface->add_option("--out", surface_opt.out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageFailure;
    }

    try {
        if (init->parsed()) {
            if (!init_opt.all && init_opt.kind.empty()) {
                std::cerr << "error: give a test kind or --all\n";
                return kUsageFailure;
            }
            return cmd_init(init_opt);
        }
        if (validate->parsed()) return cmd_validate(validate_opt);
        if (evaluate->parsed()) return cmd_evaluate(evaluate_opt);
        if (aggregate->parsed()) return cmd_aggregate(aggregate_opt);
        if (surface->parsed()) return cmd_surface(surface_opt);
    } catch (const cfis::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageFailure;
    } catch (const cfis::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataFailure;
    }
    return kUsageFailure;
}
