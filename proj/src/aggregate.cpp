// aggregate.cpp - weighted-product overall scores and rankings
#include "cfis/aggregate.hpp"

#include <algorithm>
#include <cmath>

namespace cfis {

std::optional<double> ScoreMatrix::at(std::string_view platform,
                                      std::string_view test) const {
    for (size_t p = 0; p < platforms.size(); ++p) {
        if (platforms[p] != platform) continue;
        for (size_t t = 0; t < tests.size(); ++t)
            if (tests[t] == test) return entries[p][t];
    }
    return std::nullopt;
}

double weighted_product(std::span<const std::optional<double>> scores,
                        std::span<const double> weights,
                        const AggregateOptions& options) {
    if (scores.size() != weights.size())
        throw Error("weighted product: scores and weights must align");

    double weight_sum = 0.0;
    size_t present = 0;
    bool has_zero = false;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (weights[i] < 0.0) throw Error("weighted product: negative weight");
        if (!scores[i]) {
            if (options.strict_missing)
                throw Error("weighted product: missing test score in strict mode");
            continue;
        }
        if (*scores[i] < 0.0)
            throw Error("weighted product: negative test score");
        if (*scores[i] == 0.0) {
            if (!options.allow_zero)
                throw Error("weighted product: zero test score collapses the product "
                            "(pass allow_zero to accept)");
            has_zero = true;
        }
        ++present;
        weight_sum += weights[i];
    }
    if (present == 0) throw Error("weighted product: all test scores missing");
    if (weight_sum == 0.0)
        throw Error("weighted product: weights over present tests sum to zero");
    if (has_zero) return 0.0;

    double product = 1.0;
    for (size_t i = 0; i < scores.size(); ++i)
        if (scores[i])
            product *= std::pow(*scores[i], weights[i] / weight_sum);
    return product;
}

RankReport rank(const ScoreMatrix& matrix, const std::map<std::string, double>& weights,
                const AggregateOptions& options) {
    if (matrix.entries.size() != matrix.platforms.size())
        throw Error("score matrix: one entry row per platform required");
    for (const auto& row : matrix.entries)
        if (row.size() != matrix.tests.size())
            throw Error("score matrix: ragged entry row");

    std::vector<double> weight_row(matrix.tests.size(), 1.0);
    for (size_t t = 0; t < matrix.tests.size(); ++t) {
        auto it = weights.find(matrix.tests[t]);
        if (it != weights.end()) weight_row[t] = it->second;
    }

    RankReport report;
    for (size_t p = 0; p < matrix.platforms.size(); ++p) {
        int present = 0;
        for (const auto& cell : matrix.entries[p])
            if (cell) ++present;
        double overall;
        try {
            overall = weighted_product(matrix.entries[p], weight_row, options);
        } catch (const Error& e) {
            throw Error("platform '" + matrix.platforms[p] + "': " + e.what());
        }
        report.overall.push_back({matrix.platforms[p], overall, present});
    }
    std::sort(report.overall.begin(), report.overall.end(),
              [](const RankEntry& a, const RankEntry& b) {
                  if (a.overall != b.overall) return a.overall > b.overall;
                  return a.platform < b.platform;
              });

    for (size_t t = 0; t < matrix.tests.size(); ++t) {
        std::vector<std::pair<std::string, double>> entries;
        for (size_t p = 0; p < matrix.platforms.size(); ++p)
            if (matrix.entries[p][t]) entries.emplace_back(matrix.platforms[p],
                                                           *matrix.entries[p][t]);
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        report.per_test.emplace_back(matrix.tests[t], std::move(entries));
    }
    return report;
}

}  // namespace cfis
