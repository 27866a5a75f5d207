// acceptance_main.cpp - end-to-end acceptance gate. Runs every criterion at
// its pinned tolerance and prints one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfis/aggregate.hpp"
#include "cfis/cascade.hpp"
#include "cfis/profile_io.hpp"
#include "cfis/records_io.hpp"
#include "cfis/report_io.hpp"
#include "support/oracle.hpp"
#include "support/random_fis.hpp"

using namespace cfis;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, double> record_at(const TestProfile& profile,
                                        const std::function<double(const LinguisticVariable&)>& pick) {
    std::map<std::string, double> record;
    for (const auto& node : profile.graph.nodes()) {
        if (!node.fis) continue;
        for (size_t b = 0; b < node.bindings.size(); ++b)
            if (node.bindings[b].source == Binding::Source::Field)
                record[node.bindings[b].name] = pick(node.fis->inputs()[b]);
    }
    return record;
}

std::map<std::string, double> random_record(const TestProfile& profile, std::mt19937& rng) {
    return record_at(profile, [&](const LinguisticVariable& var) {
        std::uniform_real_distribution<double> dist(var.domain_min() - 0.5,
                                                    var.domain_max() + 0.5);
        return dist(rng);
    });
}

// ---------------------------------------------------------------------------

Check criterion1_weighted_product_reproduction() {
    Check check;
    const auto start = std::chrono::steady_clock::now();

    const auto matrix = load_score_matrix(read_file(std::string(CFIS_DATA_DIR) +
                                                    "/uas_test_scores.csv"));
    const auto report = rank(matrix);
    const std::map<std::string, double> published{{"A", 0.85}, {"B", 0.82}, {"C", 0.92},
                                                  {"D", 0.77}, {"E", 0.87}, {"F", 0.95},
                                                  {"G", 0.80}};
    check.require(report.overall.size() == 7, "expected 7 platforms");
    for (const auto& entry : report.overall) {
        const double want = published.at(entry.platform);
        check.require(std::abs(entry.overall - want) < 0.005,
                      "platform " + entry.platform + ": got " +
                          std::to_string(entry.overall) + ", published " +
                          std::to_string(want));
    }
    // the gapped rows must have renormalized, not zeroed
    check.require(report.overall[0].platform == "F" && report.overall[0].tests_present == 2,
                  "platform F (two tests) should rank first");

    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    check.require(elapsed < 1.0, "runtime exceeded 1 s");
    if (check.ok)
        check.detail = "7/7 platforms within 0.005, gaps renormalized, " +
                       std::to_string(elapsed) + " s";
    return check;
}

Check criterion2_combiner_table_reproduction() {
    Check check;
    auto signal = [](std::string name) {
        return LinguisticVariable(std::move(name), "score", 0, 1, Polarity::Benefit,
                                  TriangularMf(0, 0, 0.5), TriangularMf(0.25, 0.5, 0.75),
                                  TriangularMf(0.5, 1, 1));
    };
    const std::vector<LinguisticVariable> inputs{signal("EC"), signal("MC")};
    const auto rules = generate_default_rulebase(inputs, OutputLevels::standard());

    const char* expected[3][3] = {{"very_bad", "bad", "medium"},
                                  {"bad", "medium", "good"},
                                  {"medium", "good", "very_good"}};
    check.require(rules.size() == 9, "expected 9 rules");
    for (size_t r = 0; r < rules.size() && check.ok; ++r) {
        const auto& rule = rules[r];
        check.require(rule.antecedent.size() == 2, "rule must bind both inputs");
        check.require(rule.weight == 1.0, "rule weight must be 1");
        const int ec = *level_from_label(rule.antecedent[0].level);
        const int mc = *level_from_label(rule.antecedent[1].level);
        check.require(rule.antecedent[0].variable == "EC" &&
                          rule.antecedent[1].variable == "MC",
                      "clause order");
        check.require(rule.consequent == expected[ec][mc],
                      "cell (" + rule.antecedent[0].level + ", " +
                          rule.antecedent[1].level + "): got " + rule.consequent);
    }
    if (check.ok) check.detail = "9-rule grid matches the published table exactly";
    return check;
}

Check criterion3_defuzzification_oracle_equivalence() {
    Check check;
    std::mt19937 rng(20240801);
    double worst = 0.0;
    for (int f = 0; f < 1000 && check.ok; ++f) {
        const auto fis = testgen::random_fis(rng, "fis" + std::to_string(f));
        for (int probe = 0; probe < 100; ++probe) {
            const auto values = testgen::random_inputs(rng, fis);
            const double got = fis.evaluate(values);
            const double want = oracle::evaluate(fis, values);
            worst = std::max(worst, std::abs(got - want));
            check.require(std::abs(got - want) < 1e-12,
                          "FIS " + std::to_string(f) + ": |engine - oracle| = " +
                              std::to_string(std::abs(got - want)));
            if (!check.ok) break;
        }
    }
    if (check.ok) {
        std::ostringstream os;
        os << "100,000 evaluations, max |delta| = " << worst;
        check.detail = os.str();
    }
    return check;
}

Check criterion4_mf_coverage() {
    Check check;
    std::map<std::string, const LinguisticVariable*> seen;
    std::vector<TestProfile> profiles;
    for (auto kind : all_test_kinds()) profiles.push_back(build_profile(kind));
    for (const auto& profile : profiles)
        for (const auto& node : profile.graph.nodes()) {
            if (!node.fis) continue;
            for (const auto& var : node.fis->inputs()) seen.emplace(var.name(), &var);
        }
    check.require(!seen.empty(), "no variables found");

    const int points = 10000;
    for (const auto& [name, var] : seen) {
        for (int i = 0; i < points; ++i) {
            const double x = i == points - 1
                                 ? var->domain_max()
                                 : var->domain_min() +
                                       (var->domain_max() - var->domain_min()) * i /
                                           (points - 1);
            double best = 0.0;
            for (int level = 0; level < kLevelCount; ++level) {
                const double mu = var->mf(level).membership(x);
                check.require(mu >= 0.0 && mu <= 1.0,
                              name + ": membership outside [0,1] at x=" +
                                  std::to_string(x));
                best = std::max(best, mu);
            }
            check.require(best > 0.0,
                          name + ": coverage gap at x=" + std::to_string(x));
            if (!check.ok) return check;
        }
    }
    if (check.ok)
        check.detail = std::to_string(seen.size()) +
                       " variables swept at 10,000 points: covered, in range";
    return check;
}

Check criterion5_boundedness_and_determinism() {
    Check check;
    std::string first_pass_bytes;
    for (int repeat = 0; repeat < 2; ++repeat) {
        std::mt19937 rng(777);
        std::string bytes;
        for (auto kind : all_test_kinds()) {
            const auto profile = build_profile(kind);
            for (int trial = 0; trial < 10000; ++trial) {
                const auto record = random_record(profile, rng);
                const auto scores = evaluate_cascade(profile, record);
                for (double s : {scores.ec, scores.mc, scores.hi, scores.final_score})
                    check.require(s >= 0.0 && s <= 1.0,
                                  std::string(to_string(kind)) + ": score " +
                                      std::to_string(s) + " outside [0,1]");
                if (!check.ok) return check;
                if (trial % 997 == 0)
                    bytes += format_score(scores.final_score) + "\n";
            }
        }
        if (repeat == 0)
            first_pass_bytes = bytes;
        else
            check.require(bytes == first_pass_bytes, "repeat run produced different bytes");
    }
    if (check.ok)
        check.detail = "60,000 random records in [0,1], repeat run byte-identical";
    return check;
}

Check criterion6_monotonicity() {
    Check check;

    // combiner over the full 101x101 EC x MC grid
    const auto apertures = build_profile(TestKind::ThroughApertures);
    const auto grid =
        surface_grid(*apertures.find_fis("combiner"), "EC", "MC", {{"HI", 0.0}}, 101);
    for (size_t i = 0; i < 101 && check.ok; ++i)
        for (size_t j = 0; j + 1 < 101; ++j) {
            check.require(grid.at(i, j) <= grid.at(i, j + 1) + 1e-12,
                          "combiner not monotone along MC");
            check.require(grid.at(j, i) <= grid.at(j + 1, i) + 1e-12,
                          "combiner not monotone along EC");
            if (!check.ok) break;
        }

    // per-profile single-input improvement sweeps, others at domain midpoints
    int sweeps = 0;
    for (auto kind : all_test_kinds()) {
        const auto profile = build_profile(kind);
        const auto mid = record_at(profile, [](const LinguisticVariable& var) {
            return (var.domain_min() + var.domain_max()) / 2;
        });
        for (const auto& node : profile.graph.nodes()) {
            if (!node.fis) continue;
            for (size_t b = 0; b < node.bindings.size(); ++b) {
                if (node.bindings[b].source != Binding::Source::Field) continue;
                const auto& var = node.fis->inputs()[b];
                const std::string& field = node.bindings[b].name;
                double prev = -1.0;
                for (int step = 0; step < 50; ++step) {
                    auto record = mid;
                    const double t = step / 49.0;
                    record[field] = var.polarity() == Polarity::Benefit
                                        ? var.domain_min() +
                                              (var.domain_max() - var.domain_min()) * t
                                        : var.domain_max() -
                                              (var.domain_max() - var.domain_min()) * t;
                    const double s = evaluate_cascade(profile, record).final_score;
                    check.require(s >= prev - 1e-12,
                                  std::string(to_string(kind)) + "/" + field +
                                      ": improvement decreased the final score");
                    if (!check.ok) return check;
                    prev = s;
                }
                ++sweeps;
            }
        }
    }
    if (check.ok)
        check.detail = "combiner grid monotone; " + std::to_string(sweeps) +
                       " per-input improvement sweeps monotone";
    return check;
}

Check criterion7_extreme_anchors() {
    Check check;
    for (auto kind : all_test_kinds()) {
        const auto profile = build_profile(kind);
        const auto best = record_at(profile, [](const LinguisticVariable& var) {
            return var.polarity() == Polarity::Benefit ? var.mf(2).b() : var.mf(0).b();
        });
        const auto worst = record_at(profile, [](const LinguisticVariable& var) {
            return var.polarity() == Polarity::Benefit ? var.mf(0).b() : var.mf(2).b();
        });
        const double top = evaluate_cascade(profile, best).final_score;
        const double bottom = evaluate_cascade(profile, worst).final_score;
        check.require(top == 1.0, std::string(to_string(kind)) + ": all-best scored " +
                                      std::to_string(top) + " != 1.0");
        check.require(bottom == 0.0, std::string(to_string(kind)) +
                                         ": all-worst scored " + std::to_string(bottom) +
                                         " != 0.0");
    }
    if (check.ok) check.detail = "all six profiles pin 1.0 / 0.0 exactly";
    return check;
}

Check criterion8_desk_scale_statement() {
    Check check;
    // The per-test scores in the shipped matrix are golden inputs: the raw
    // trial records behind them were never published, so they cannot be
    // recomputed here. Surfaces are checked for qualitative trend only.
    const auto takeoff = build_profile(TestKind::Takeoff);
    const auto ec_grid = surface_grid(*takeoff.find_fis("ec"), "Pitch", "VR",
                                      {{"Yaw", 5.0}, {"LR", 2.4}}, 51);
    for (size_t i = 0; i + 1 < 51 && check.ok; ++i)
        for (size_t j = 0; j + 1 < 51; ++j) {
            check.require(ec_grid.at(i + 1, j) <= ec_grid.at(i, j) + 1e-12,
                          "takeoff EC should not improve with steeper pitch");
            check.require(ec_grid.at(i, j + 1) <= ec_grid.at(i, j) + 1e-12,
                          "takeoff EC should not improve with larger VR");
            if (!check.ok) break;
        }

    const auto corridors = build_profile(TestKind::ThroughCorridors);
    const auto mc_grid = surface_grid(*corridors.find_fis("mc"), "Coverage", "Crash",
                                      {{"Duration", 5.25}}, 51);
    for (size_t i = 0; i + 1 < 51 && check.ok; ++i)
        for (size_t j = 0; j + 1 < 51; ++j) {
            check.require(mc_grid.at(i + 1, j) >= mc_grid.at(i, j) - 1e-12,
                          "corridor MC should not degrade with more coverage");
            check.require(mc_grid.at(i, j + 1) <= mc_grid.at(i, j) + 1e-12,
                          "corridor MC should not improve with more crashes");
            if (!check.ok) break;
        }
    if (check.ok)
        check.detail = "per-test scores enter as golden inputs only (raw trials "
                       "unpublished); surface trends check out qualitatively";
    return check;
}

Check criterion9_round_trip_and_byte_stability() {
    Check check;
    for (auto kind : all_test_kinds()) {
        const auto profile = build_profile(kind);
        const std::string text = serialize_profile(profile);
        const auto reparsed = parse_profile(text);
        check.require(reparsed == profile,
                      std::string(to_string(kind)) + ": round-trip mismatch");
        check.require(serialize_profile(reparsed) == text,
                      std::string(to_string(kind)) + ": serialization not byte-stable");
    }

    // report emission across repeat runs and worker counts
    const auto profile = build_profile(TestKind::RoomClearing);
    std::mt19937 rng(31337);
    std::vector<TrialRecord> records;
    std::vector<std::map<std::string, double>> inputs;
    for (int i = 0; i < 500; ++i) {
        TrialRecord record;
        record.platform = std::string(1, static_cast<char>('A' + i % 7));
        record.test = std::string(to_string(profile.kind));
        record.trial_id = std::to_string(i);
        record.values = random_record(profile, rng);
        inputs.push_back(record.values);
        records.push_back(std::move(record));
    }
    std::string reference;
    for (int workers : {1, 4, 3}) {
        const auto scores = evaluate_batch(profile, inputs, workers);
        std::vector<ScoredRecord> scored;
        for (size_t i = 0; i < records.size(); ++i)
            scored.push_back({records[i], scores[i]});
        const auto summary = summarize(scored);
        const std::string bytes = records_csv(scored) + summary_csv(summary) +
                                  report_json(scored, summary).dump(2);
        if (reference.empty())
            reference = bytes;
        else
            check.require(bytes == reference,
                          "report bytes changed with workers=" + std::to_string(workers));
    }
    if (check.ok)
        check.detail = "6 profiles round-trip; reports byte-stable over reruns "
                       "and worker counts 1/3/4";
    return check;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        Check (*run)();
    };
    const Criterion criteria[] = {
        {"1 weighted-product reproduction of the published overall scores",
         criterion1_weighted_product_reproduction},
        {"2 default rule base reproduces the combiner table",
         criterion2_combiner_table_reproduction},
        {"3 engine vs brute-force oracle, 1000 FIS x 100 inputs, 1e-12",
         criterion3_defuzzification_oracle_equivalence},
        {"4 catalog MF coverage and range on 10,000-point sweeps",
         criterion4_mf_coverage},
        {"5 boundedness and determinism over 10,000 records per profile",
         criterion5_boundedness_and_determinism},
        {"6 monotonicity: combiner grid and per-input improvement sweeps",
         criterion6_monotonicity},
        {"7 extreme-case anchors score exactly 1.0 and 0.0",
         criterion7_extreme_anchors},
        {"8 desk-scale limits stated; surfaces checked qualitatively",
         criterion8_desk_scale_statement},
        {"9 profile round-trip and byte-stable reports",
         criterion9_round_trip_and_byte_stability},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        try {
            check = criterion.run();
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s  criterion %s -- %s\n", check.ok ? "PASS" : "FAIL",
                    criterion.label, check.detail.c_str());
        if (!check.ok) ++failures;
    }
    std::printf("%d/9 acceptance criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
