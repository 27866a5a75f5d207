// report_io.hpp - deterministic report emission (CSV + JSON mirrors)
#pragma once

#include <span>
#include <string>
#include <vector>

#include "cfis/aggregate.hpp"
#include "cfis/cascade.hpp"
#include "cfis/records_io.hpp"

#include "json.hpp"

namespace cfis {

struct ScoredRecord {
    TrialRecord record;
    AxisScores scores;
};

/// Per-platform per-test reduction: arithmetic mean of the axis and final
/// scores over that platform's trials.
struct SummaryRow {
    std::string platform;
    std::string test;
    int trials;
    AxisScores mean;
};

std::vector<SummaryRow> summarize(std::span<const ScoredRecord> scored);

// All emitters are pure and byte-stable: fixed column order, fixed 6-decimal
// formatting, deterministic row order (records in input order, summaries
// sorted by platform then test).
std::string records_csv(std::span<const ScoredRecord> scored);
std::string summary_csv(std::span<const SummaryRow> rows);
nlohmann::ordered_json report_json(std::span<const ScoredRecord> scored,
                                   std::span<const SummaryRow> rows);

std::string ranking_csv(const RankReport& report);
std::string per_test_csv(const RankReport& report);
nlohmann::ordered_json ranking_json(const RankReport& report);

/// Columns x, y, score in row-major order, 6-decimal cells.
std::string surface_csv(const SurfaceGrid& grid);

/// Shared fixed-point formatter: %.6f.
std::string format_score(double value);

}  // namespace cfis
