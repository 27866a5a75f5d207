// aggregate.hpp - weighted-product aggregation of per-test scores and ranking
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfis/errors.hpp"

namespace cfis {

/// Platforms x tests score table. Missing entries are explicit; present
/// entries are expected in (0, 1] (a literal 0 zeroes the whole product).
struct ScoreMatrix {
    std::vector<std::string> platforms;
    std::vector<std::string> tests;
    std::vector<std::vector<std::optional<double>>> entries;  // [platform][test]

    std::optional<double> at(std::string_view platform, std::string_view test) const;
};

struct AggregateOptions {
    bool allow_zero = false;      // 0 entries collapse the product to 0 instead of erroring
    bool strict_missing = false;  // error on gaps instead of renormalizing over present tests
};

/// P = prod(phi_i ^ w'_i) over present tests, with w' the weights
/// renormalized to sum 1 over those tests. Equal weights make this the
/// geometric mean of the present scores.
double weighted_product(std::span<const std::optional<double>> scores,
                        std::span<const double> weights,
                        const AggregateOptions& options = {});

struct RankEntry {
    std::string platform;
    double overall;
    int tests_present;
};

struct RankReport {
    std::vector<RankEntry> overall;  // descending, ties broken by platform id
    // per test: platforms with a present score, descending
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> per_test;
};

/// Overall scores for every platform plus per-test orderings. `weights`
/// maps test name -> weight; tests absent from the map get weight 1, so an
/// empty map is the equal-weight case.
RankReport rank(const ScoreMatrix& matrix,
                const std::map<std::string, double>& weights = {},
                const AggregateOptions& options = {});

}  // namespace cfis
