// report_io.cpp - byte-stable CSV/JSON report emission
#include "cfis/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace cfis {

std::string format_score(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

std::vector<SummaryRow> summarize(std::span<const ScoredRecord> scored) {
    // keyed by (platform, test) -> sorted output for free
    std::map<std::pair<std::string, std::string>, std::pair<int, AxisScores>> groups;
    for (const auto& entry : scored) {
        auto& slot = groups[{entry.record.platform, entry.record.test}];
        slot.first += 1;
        slot.second.ec += entry.scores.ec;
        slot.second.mc += entry.scores.mc;
        slot.second.hi += entry.scores.hi;
        slot.second.final_score += entry.scores.final_score;
    }
    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, slot] : groups) {
        const double n = slot.first;
        rows.push_back({key.first, key.second, slot.first,
                        {slot.second.ec / n, slot.second.mc / n, slot.second.hi / n,
                         slot.second.final_score / n}});
    }
    return rows;
}

std::string records_csv(std::span<const ScoredRecord> scored) {
    std::string out = "platform,test,ec,mc,hi,final\n";
    for (const auto& entry : scored) {
        out += entry.record.platform;
        out += ',';
        out += entry.record.test;
        out += ',';
        out += format_score(entry.scores.ec);
        out += ',';
        out += format_score(entry.scores.mc);
        out += ',';
        out += format_score(entry.scores.hi);
        out += ',';
        out += format_score(entry.scores.final_score);
        out += '\n';
    }
    return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
    std::string out = "platform,test,trials,ec,mc,hi,final\n";
    for (const auto& row : rows) {
        out += row.platform;
        out += ',';
        out += row.test;
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += format_score(row.mean.ec);
        out += ',';
        out += format_score(row.mean.mc);
        out += ',';
        out += format_score(row.mean.hi);
        out += ',';
        out += format_score(row.mean.final_score);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json report_json(std::span<const ScoredRecord> scored,
                                   std::span<const SummaryRow> rows) {
    nlohmann::ordered_json doc;
    auto& records = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& entry : scored) {
        nlohmann::ordered_json rj;
        rj["platform"] = entry.record.platform;
        rj["test"] = entry.record.test;
        if (!entry.record.trial_id.empty()) rj["trial"] = entry.record.trial_id;
        rj["ec"] = entry.scores.ec;
        rj["mc"] = entry.scores.mc;
        rj["hi"] = entry.scores.hi;
        rj["final"] = entry.scores.final_score;
        records.push_back(std::move(rj));
    }
    auto& summary = doc["summary"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json rj;
        rj["platform"] = row.platform;
        rj["test"] = row.test;
        rj["trials"] = row.trials;
        rj["ec"] = row.mean.ec;
        rj["mc"] = row.mean.mc;
        rj["hi"] = row.mean.hi;
        rj["final"] = row.mean.final_score;
        summary.push_back(std::move(rj));
    }
    return doc;
}

std::string ranking_csv(const RankReport& report) {
    std::string out = "rank,platform,overall,tests_present\n";
    for (size_t i = 0; i < report.overall.size(); ++i) {
        const auto& entry = report.overall[i];
        out += std::to_string(i + 1);
        out += ',';
        out += entry.platform;
        out += ',';
        out += format_score(entry.overall);
        out += ',';
        out += std::to_string(entry.tests_present);
        out += '\n';
    }
    return out;
}

std::string per_test_csv(const RankReport& report) {
    std::string out = "test,rank,platform,score\n";
    for (const auto& [test, entries] : report.per_test) {
        for (size_t i = 0; i < entries.size(); ++i) {
            out += test;
            out += ',';
            out += std::to_string(i + 1);
            out += ',';
            out += entries[i].first;
            out += ',';
            out += format_score(entries[i].second);
            out += '\n';
        }
    }
    return out;
}

nlohmann::ordered_json ranking_json(const RankReport& report) {
    nlohmann::ordered_json doc;
    auto& overall = doc["overall"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < report.overall.size(); ++i) {
        const auto& entry = report.overall[i];
        overall.push_back({{"rank", i + 1},
                           {"platform", entry.platform},
                           {"overall", entry.overall},
                           {"tests_present", entry.tests_present}});
    }
    auto& per_test = doc["per_test"] = nlohmann::ordered_json();
    for (const auto& [test, entries] : report.per_test) {
        auto& list = per_test[test] = nlohmann::ordered_json::array();
        for (const auto& [platform, score] : entries)
            list.push_back({{"platform", platform}, {"score", score}});
    }
    return doc;
}

std::string surface_csv(const SurfaceGrid& grid) {
    std::string out = "x,y,score\n";
    for (size_t i = 0; i < grid.xs.size(); ++i)
        for (size_t j = 0; j < grid.ys.size(); ++j) {
            out += format_score(grid.xs[i]);
            out += ',';
            out += format_score(grid.ys[j]);
            out += ',';
            out += format_score(grid.at(i, j));
            out += '\n';
        }
    return out;
}

}  // namespace cfis
