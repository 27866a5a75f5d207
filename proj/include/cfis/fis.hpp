// fis.hpp - zero-order Sugeno fuzzy inference over triangular membership functions
#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfis/errors.hpp"

namespace cfis {

enum class TNorm { Product, Minimum };
enum class Polarity { Benefit, Cost };

std::string_view to_string(TNorm t);
std::string_view to_string(Polarity p);
std::optional<TNorm> tnorm_from_string(std::string_view s);
std::optional<Polarity> polarity_from_string(std::string_view s);

/// Triangular membership function with feet a, c and apex b (a <= b <= c).
/// Degenerate shoulders (a == b or b == c) evaluate to 1 at the apex-side
/// boundary, which the variable catalog relies on at domain edges.
class TriangularMf {
public:
    TriangularMf(double a, double b, double c);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }

    // Piecewise-linear hat: 0 outside [a,c], 1 at the apex, linear in between.
    double membership(double x) const noexcept;

private:
    double a_, b_, c_;
};

inline constexpr int kLevelCount = 3;
inline constexpr std::array<std::string_view, kLevelCount> kLevelLabels = {
    "low", "medium", "high"};

std::optional<int> level_from_label(std::string_view label);

/// Named scalar input with a bounded domain, a benefit/cost polarity and
/// exactly three labeled MFs (low/medium/high). Construction enforces the
/// ordering and domain-containment invariants; coverage of the domain is a
/// validator concern, not a construction one.
class LinguisticVariable {
public:
    LinguisticVariable(std::string name, std::string unit, double domain_min,
                       double domain_max, Polarity polarity, TriangularMf low,
                       TriangularMf medium, TriangularMf high,
                       bool assumed = false);

    const std::string& name() const noexcept { return name_; }
    const std::string& unit() const noexcept { return unit_; }
    double domain_min() const noexcept { return domain_min_; }
    double domain_max() const noexcept { return domain_max_; }
    Polarity polarity() const noexcept { return polarity_; }
    const std::array<TriangularMf, kLevelCount>& mfs() const noexcept { return mfs_; }
    const TriangularMf& mf(int level) const { return mfs_.at(static_cast<size_t>(level)); }

    /// True when the MF parameters are not backed by published data and were
    /// fixed by convention; surfaced as a note in validation reports.
    bool assumed() const noexcept { return assumed_; }

    double clamp(double x) const noexcept;

private:
    std::string name_;
    std::string unit_;
    double domain_min_, domain_max_;
    Polarity polarity_;
    std::array<TriangularMf, kLevelCount> mfs_;
    bool assumed_;
};

/// Ordered singleton output levels. Defaults to the five-level scale
/// very_bad..very_good on [0, 1].
struct OutputLevels {
    std::vector<std::string> labels;
    std::vector<double> values;

    static OutputLevels standard();

    int index_of(std::string_view label) const;
    size_t size() const noexcept { return values.size(); }

    bool operator==(const OutputLevels&) const = default;
};

struct RuleClause {
    std::string variable;
    std::string level;  // "low" | "medium" | "high"

    bool operator==(const RuleClause&) const = default;
};

/// Linguistic rule: conjunction of per-variable clauses (at most one per
/// variable, not necessarily all variables) implying one output level.
struct Rule {
    std::vector<RuleClause> antecedent;
    std::string consequent;
    double weight = 1.0;  // in (0, 1]

    bool operator==(const Rule&) const = default;
};

struct ValidationFinding {
    enum class Kind { CoverageGap, UnreachableRule, StrengthZero };
    Kind kind;
    std::string where;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    std::vector<std::string> assumed_variables;

    bool valid() const noexcept { return findings.empty(); }
    std::string to_string() const;
};

/// Per-variable membership degrees as produced by fuzzification.
using Degrees = std::vector<std::array<double, kLevelCount>>;

/// Immutable zero-order Sugeno FIS: crisp inputs -> fuzzify -> rule firing
/// via a t-norm -> weighted-average defuzzification over singleton levels.
/// Safe to evaluate concurrently from many threads.
class SugenoFis {
public:
    SugenoFis(std::string name, std::vector<LinguisticVariable> inputs,
              OutputLevels output, std::vector<Rule> rules,
              TNorm tnorm = TNorm::Product);

    const std::string& name() const noexcept { return name_; }
    std::span<const LinguisticVariable> inputs() const noexcept { return inputs_; }
    const OutputLevels& output() const noexcept { return output_; }
    std::span<const Rule> rules() const noexcept { return rules_; }
    TNorm tnorm() const noexcept { return tnorm_; }

    int variable_index(std::string_view name) const;  // -1 when absent

    /// Membership degrees per variable for an ordered value vector.
    /// Values are used as-is; clamping to the domain is the caller's policy.
    Degrees fuzzify(std::span<const double> values) const;

    /// Map-based variant; rejects missing or extraneous variable names.
    Degrees fuzzify(const std::map<std::string, double>& inputs) const;

    /// weight x t-norm over the antecedent clause degrees of one rule.
    double rule_strength(size_t rule_index, const Degrees& degrees) const;

    double evaluate(std::span<const double> values) const;
    double evaluate(const std::map<std::string, double>& inputs) const;

    /// Numeric health findings: domain-coverage gaps, unreachable rules and
    /// inputs with zero total firing strength, probed on per-variable grids
    /// of `grid_points` samples.
    ValidationReport validate(int grid_points = 1000) const;

private:
    struct CompiledClause {
        int variable;
        int level;
    };
    struct CompiledRule {
        std::vector<CompiledClause> clauses;
        int consequent;
        double weight;
    };

    std::vector<double> to_ordered_values(const std::map<std::string, double>& inputs) const;

    std::string name_;
    std::vector<LinguisticVariable> inputs_;
    OutputLevels output_;
    std::vector<Rule> rules_;
    TNorm tnorm_;
    std::vector<CompiledRule> compiled_;
};

/// Weighted-average collapse of per-rule strengths onto singleton outputs:
/// s = sum(w_i * z_i) / sum(w_i). Throws NoRuleFiredError when sum(w_i) == 0.
double defuzzify(std::span<const double> weights, std::span<const double> singletons);

/// T-norm fold over clause degrees (product multiplies, minimum takes min).
double tnorm_apply(TNorm t, std::span<const double> degrees);

}  // namespace cfis
