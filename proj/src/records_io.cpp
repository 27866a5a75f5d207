// records_io.cpp - CSV ingestion for trial records, score matrices and weights
#include "cfis/records_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace cfis {

namespace {

// Minimal CSV: comma-separated, optional double-quoted cells with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Canonical header form: lowercase alphanumerics only, so "Comp" and
// "comp.%" both address the "Comp.%" schema field.
std::string canonical(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (std::isalnum(static_cast<unsigned char>(ch)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::optional<double> parse_number(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

RecordsResult load_records(const std::string& csv_text, const TestProfile& profile,
                           ParseMode mode) {
    const auto lines = split_lines(csv_text);
    if (lines.empty() || trim(lines[0]).empty())
        throw ParseError("row 1", "missing header row");

    const auto header = split_csv_line(lines[0]);
    // column index per role: -1 unset
    int col_platform = -1, col_test = -1, col_trial = -1, col_notes = -1;
    std::vector<int> field_cols(profile.record_schema.size(), -1);
    for (size_t c = 0; c < header.size(); ++c) {
        const std::string name = canonical(header[c]);
        if (name == "platform") {
            col_platform = static_cast<int>(c);
            continue;
        }
        if (name == "test") {
            col_test = static_cast<int>(c);
            continue;
        }
        if (name == "trial") {
            col_trial = static_cast<int>(c);
            continue;
        }
        if (name == "notes") {
            col_notes = static_cast<int>(c);
            continue;
        }
        bool matched = false;
        for (size_t f = 0; f < profile.record_schema.size(); ++f) {
            if (canonical(profile.record_schema[f]) != name) continue;
            if (field_cols[f] != -1)
                throw ParseError("row 1, column " + std::to_string(c + 1),
                                 "duplicate column for field '" + profile.record_schema[f] + "'");
            field_cols[f] = static_cast<int>(c);
            matched = true;
            break;
        }
        if (!matched)
            throw ParseError("row 1, column " + std::to_string(c + 1),
                             "column '" + header[c] + "' matches no schema field");
    }
    if (col_platform < 0) throw ParseError("row 1", "missing 'platform' column");
    if (col_test < 0) throw ParseError("row 1", "missing 'test' column");
    for (size_t f = 0; f < field_cols.size(); ++f)
        if (field_cols[f] < 0)
            throw ParseError("row 1", "missing column for schema field '" +
                                          profile.record_schema[f] + "'");

    RecordsResult result;
    bool any_data = false;
    for (size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        any_data = true;
        const int row_number = static_cast<int>(row) + 1;
        const auto cells = split_csv_line(lines[row]);
        auto fail = [&](int column, const std::string& message) {
            const RecordIssue issue{row_number, column, message};
            if (mode == ParseMode::Strict)
                throw ParseError("row " + std::to_string(row_number) +
                                     (column ? ", column " + std::to_string(column) : ""),
                                 message);
            result.issues.push_back(issue);
        };
        if (cells.size() != header.size()) {
            fail(0, "expected " + std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
            continue;
        }

        TrialRecord record;
        record.platform = trim(cells[static_cast<size_t>(col_platform)]);
        record.test = trim(cells[static_cast<size_t>(col_test)]);
        if (col_trial >= 0) record.trial_id = trim(cells[static_cast<size_t>(col_trial)]);
        if (col_notes >= 0) record.notes = cells[static_cast<size_t>(col_notes)];
        bool row_ok = true;
        if (record.platform.empty()) {
            fail(col_platform + 1, "empty platform id");
            row_ok = false;
        }
        if (row_ok && record.test != std::string(to_string(profile.kind))) {
            fail(col_test + 1, "test '" + record.test + "' does not match profile kind '" +
                                   std::string(to_string(profile.kind)) + "'");
            row_ok = false;
        }
        for (size_t f = 0; row_ok && f < field_cols.size(); ++f) {
            const auto& cell = cells[static_cast<size_t>(field_cols[f])];
            const auto value = parse_number(cell);
            if (!value) {
                fail(field_cols[f] + 1,
                     "cell '" + cell + "' is not a number for field '" +
                         profile.record_schema[f] + "'");
                row_ok = false;
                break;
            }
            if (!std::isfinite(*value)) {
                fail(field_cols[f] + 1,
                     "non-finite value for field '" + profile.record_schema[f] + "'");
                row_ok = false;
                break;
            }
            record.values[profile.record_schema[f]] = *value;
        }
        if (row_ok) result.records.push_back(std::move(record));
    }
    if (!any_data)
        result.issues.push_back({0, 0, "no data rows"});
    return result;
}

ScoreMatrix load_score_matrix(const std::string& csv_text) {
    const auto lines = split_lines(csv_text);
    if (lines.empty() || trim(lines[0]).empty())
        throw ParseError("row 1", "missing header row");
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || canonical(header[0]) != "platform")
        throw ParseError("row 1", "expected header 'platform,<test>,...'");

    ScoreMatrix matrix;
    for (size_t c = 1; c < header.size(); ++c) {
        const std::string test = trim(header[c]);
        if (test.empty()) throw ParseError("row 1", "empty test column name");
        if (std::find(matrix.tests.begin(), matrix.tests.end(), test) != matrix.tests.end())
            throw ParseError("row 1", "duplicate test column '" + test + "'");
        matrix.tests.push_back(test);
    }
    for (size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const int row_number = static_cast<int>(row) + 1;
        const auto cells = split_csv_line(lines[row]);
        if (cells.size() != header.size())
            throw ParseError("row " + std::to_string(row_number),
                             "expected " + std::to_string(header.size()) + " cells, got " +
                                 std::to_string(cells.size()));
        const std::string platform = trim(cells[0]);
        if (platform.empty())
            throw ParseError("row " + std::to_string(row_number), "empty platform id");
        if (std::find(matrix.platforms.begin(), matrix.platforms.end(), platform) !=
            matrix.platforms.end())
            throw ParseError("row " + std::to_string(row_number),
                             "duplicate platform '" + platform + "'");
        std::vector<std::optional<double>> entries;
        for (size_t c = 1; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (cell == "NA" || cell == "-" || cell.empty()) {
                entries.push_back(std::nullopt);
                continue;
            }
            const auto value = parse_number(cell);
            if (!value)
                throw ParseError("row " + std::to_string(row_number) + ", column " +
                                     std::to_string(c + 1),
                                 "cell '" + cells[c] + "' is neither a number nor NA");
            entries.push_back(*value);
        }
        matrix.platforms.push_back(platform);
        matrix.entries.push_back(std::move(entries));
    }
    if (matrix.platforms.empty()) throw ParseError("<document>", "score matrix has no rows");
    return matrix;
}

std::map<std::string, double> load_weights(const std::string& csv_text) {
    const auto lines = split_lines(csv_text);
    if (lines.empty()) throw ParseError("row 1", "missing header row");
    const auto header = split_csv_line(lines[0]);
    if (header.size() != 2 || canonical(header[0]) != "test" ||
        canonical(header[1]) != "weight")
        throw ParseError("row 1", "expected header 'test,weight'");
    std::map<std::string, double> weights;
    for (size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const auto cells = split_csv_line(lines[row]);
        if (cells.size() != 2)
            throw ParseError("row " + std::to_string(row + 1), "expected 2 cells");
        const auto value = parse_number(cells[1]);
        if (!value || *value < 0.0)
            throw ParseError("row " + std::to_string(row + 1),
                             "weight must be a non-negative number");
        weights[trim(cells[0])] = *value;
    }
    return weights;
}

}  // namespace cfis
