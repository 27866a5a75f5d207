// records_io.hpp - CSV ingestion: trial records, score matrices, weights
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfis/aggregate.hpp"
#include "cfis/cascade.hpp"
#include "cfis/profile_io.hpp"

namespace cfis {

/// One scored trial: which platform flew which test, plus one value per
/// profile schema field.
struct TrialRecord {
    std::string platform;
    std::string test;
    std::string trial_id;  // optional column
    std::string notes;     // optional column
    std::map<std::string, double> values;  // keyed by canonical schema field name
};

struct RecordIssue {
    int row;     // 1-based, header is row 1
    int column;  // 1-based, 0 when the whole row is at fault
    std::string message;
};

struct RecordsResult {
    std::vector<TrialRecord> records;
    std::vector<RecordIssue> issues;  // populated in lenient mode
};

/// Load comma-separated trial records against a profile's schema. Headers
/// are matched case-insensitively ignoring punctuation, so "Comp" binds the
/// "Comp.%" field. Required columns: platform, test and every schema field;
/// optional: trial, notes. Lenient mode keeps valid rows and reports bad
/// ones with coordinates; strict mode throws on the first bad row.
/// A header that cannot be matched to the schema throws in both modes.
RecordsResult load_records(const std::string& csv_text, const TestProfile& profile,
                           ParseMode mode = ParseMode::Strict);

/// Score-matrix CSV: header "platform,<test>,...", one row per platform,
/// cells numeric or the literal NA for a missing test.
ScoreMatrix load_score_matrix(const std::string& csv_text);

/// Weights CSV: header "test,weight".
std::map<std::string, double> load_weights(const std::string& csv_text);

}  // namespace cfis
