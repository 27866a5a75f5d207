// fis.cpp - Sugeno inference core: fuzzification, rule firing, defuzzification
#include "cfis/fis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cfis {

std::string_view to_string(TNorm t) {
    return t == TNorm::Product ? "product" : "minimum";
}

std::string_view to_string(Polarity p) {
    return p == Polarity::Benefit ? "benefit" : "cost";
}

std::optional<TNorm> tnorm_from_string(std::string_view s) {
    if (s == "product") return TNorm::Product;
    if (s == "minimum") return TNorm::Minimum;
    return std::nullopt;
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
    if (s == "benefit") return Polarity::Benefit;
    if (s == "cost") return Polarity::Cost;
    return std::nullopt;
}

std::optional<int> level_from_label(std::string_view label) {
    for (int i = 0; i < kLevelCount; ++i)
        if (kLevelLabels[static_cast<size_t>(i)] == label) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// TriangularMf

TriangularMf::TriangularMf(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
        throw BuildError("triangular MF parameters must be finite");
    if (a > b || b > c) {
        std::ostringstream os;
        os << "triangular MF parameters not ordered (a <= b <= c): [" << a << ", "
           << b << ", " << c << "]";
        throw BuildError(os.str());
    }
}

double TriangularMf::membership(double x) const noexcept {
    if (x < a_ || x > c_) return 0.0;
    if (x == b_) return 1.0;
    // x in [a,b) implies a < b, and x in (b,c] implies b < c; the degenerate
    // shoulders were already caught by the apex branch above.
    if (x < b_) return (x - a_) / (b_ - a_);
    return (c_ - x) / (c_ - b_);
}

// ---------------------------------------------------------------------------
// LinguisticVariable

LinguisticVariable::LinguisticVariable(std::string name, std::string unit,
                                       double domain_min, double domain_max,
                                       Polarity polarity, TriangularMf low,
                                       TriangularMf medium, TriangularMf high,
                                       bool assumed)
    : name_(std::move(name)),
      unit_(std::move(unit)),
      domain_min_(domain_min),
      domain_max_(domain_max),
      polarity_(polarity),
      mfs_{low, medium, high},
      assumed_(assumed) {
    if (name_.empty()) throw BuildError("variable name must not be empty");
    if (!(std::isfinite(domain_min) && std::isfinite(domain_max)))
        throw BuildError("variable '" + name_ + "': domain bounds must be finite");
    if (domain_min > domain_max)
        throw BuildError("variable '" + name_ + "': domain min exceeds max");
    for (int level = 0; level < kLevelCount; ++level) {
        const auto& mf = mfs_[static_cast<size_t>(level)];
        const std::string where =
            name_ + "." + std::string(kLevelLabels[static_cast<size_t>(level)]);
        if (mf.a() < domain_min_ || mf.c() > domain_max_)
            throw BuildError("variable '" + where + "': MF parameters outside domain");
        const bool point_mf = mf.a() == mf.b() && mf.b() == mf.c();
        const bool point_domain = domain_min_ == domain_max_;
        if (point_mf && !point_domain)
            throw BuildError("variable '" + where +
                             "': a == b == c is only allowed on a single-point domain");
    }
}

double LinguisticVariable::clamp(double x) const noexcept {
    return std::min(std::max(x, domain_min_), domain_max_);
}

// ---------------------------------------------------------------------------
// OutputLevels

OutputLevels OutputLevels::standard() {
    return OutputLevels{{"very_bad", "bad", "medium", "good", "very_good"},
                        {0.0, 0.25, 0.5, 0.75, 1.0}};
}

int OutputLevels::index_of(std::string_view label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

// ---------------------------------------------------------------------------
// Free inference pieces

double tnorm_apply(TNorm t, std::span<const double> degrees) {
    if (degrees.empty()) throw BuildError("t-norm over an empty degree list");
    double out = degrees[0];
    for (size_t i = 1; i < degrees.size(); ++i)
        out = t == TNorm::Product ? out * degrees[i] : std::min(out, degrees[i]);
    return out;
}

double defuzzify(std::span<const double> weights, std::span<const double> singletons) {
    if (weights.empty() || weights.size() != singletons.size())
        throw BuildError("defuzzify: weight and singleton lists must be equal length >= 1");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw BuildError("defuzzify: negative rule strength");
        num += weights[i] * singletons[i];
        den += weights[i];
    }
    if (den == 0.0) throw NoRuleFiredError("defuzzify: total firing strength is zero");
    return num / den;
}

// ---------------------------------------------------------------------------
// SugenoFis

SugenoFis::SugenoFis(std::string name, std::vector<LinguisticVariable> inputs,
                     OutputLevels output, std::vector<Rule> rules, TNorm tnorm)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      output_(std::move(output)),
      rules_(std::move(rules)),
      tnorm_(tnorm) {
    if (inputs_.empty()) throw BuildError("FIS '" + name_ + "': needs at least one input");
    for (size_t i = 0; i < inputs_.size(); ++i)
        for (size_t j = i + 1; j < inputs_.size(); ++j)
            if (inputs_[i].name() == inputs_[j].name())
                throw BuildError("FIS '" + name_ + "': duplicate variable '" +
                                 inputs_[i].name() + "'");

    if (output_.labels.size() != output_.values.size() || output_.values.empty())
        throw BuildError("FIS '" + name_ + "': output labels and values must align");
    for (size_t i = 0; i + 1 < output_.values.size(); ++i)
        if (!(output_.values[i] < output_.values[i + 1]))
            throw BuildError("FIS '" + name_ + "': output values must be strictly increasing");
    {
        std::set<std::string> seen;
        for (const auto& label : output_.labels)
            if (label.empty() || !seen.insert(label).second)
                throw BuildError("FIS '" + name_ + "': output labels must be unique and non-empty");
    }

    if (rules_.empty()) throw BuildError("FIS '" + name_ + "': empty rule base");
    compiled_.reserve(rules_.size());
    for (size_t r = 0; r < rules_.size(); ++r) {
        const Rule& rule = rules_[r];
        const std::string where = "FIS '" + name_ + "' rule " + std::to_string(r + 1);
        if (rule.antecedent.empty()) throw BuildError(where + ": empty antecedent");
        if (!(rule.weight > 0.0) || rule.weight > 1.0)
            throw BuildError(where + ": weight must lie in (0, 1]");
        CompiledRule compiled;
        compiled.weight = rule.weight;
        std::set<int> seen_vars;
        for (const auto& clause : rule.antecedent) {
            const int vi = variable_index(clause.variable);
            if (vi < 0)
                throw BuildError(where + ": unknown variable '" + clause.variable + "'");
            if (!seen_vars.insert(vi).second)
                throw BuildError(where + ": duplicate clause for variable '" +
                                 clause.variable + "'");
            const auto level = level_from_label(clause.level);
            if (!level)
                throw BuildError(where + ": unknown MF label '" + clause.level + "'");
            compiled.clauses.push_back({vi, *level});
        }
        compiled.consequent = output_.index_of(rule.consequent);
        if (compiled.consequent < 0)
            throw BuildError(where + ": unknown output level '" + rule.consequent + "'");
        compiled_.push_back(std::move(compiled));
    }
}

int SugenoFis::variable_index(std::string_view name) const {
    for (size_t i = 0; i < inputs_.size(); ++i)
        if (inputs_[i].name() == name) return static_cast<int>(i);
    return -1;
}

Degrees SugenoFis::fuzzify(std::span<const double> values) const {
    if (values.size() != inputs_.size())
        throw InputShapeError("FIS '" + name_ + "': expected " +
                              std::to_string(inputs_.size()) + " values, got " +
                              std::to_string(values.size()));
    Degrees degrees(inputs_.size());
    for (size_t v = 0; v < inputs_.size(); ++v)
        for (int level = 0; level < kLevelCount; ++level)
            degrees[v][static_cast<size_t>(level)] =
                inputs_[v].mf(level).membership(values[v]);
    return degrees;
}

std::vector<double> SugenoFis::to_ordered_values(
    const std::map<std::string, double>& inputs) const {
    for (const auto& [key, value] : inputs)
        if (variable_index(key) < 0)
            throw InputShapeError("FIS '" + name_ + "': extraneous input variable '" +
                                  key + "'");
    std::vector<double> values;
    values.reserve(inputs_.size());
    for (const auto& var : inputs_) {
        auto it = inputs.find(var.name());
        if (it == inputs.end())
            throw InputShapeError("FIS '" + name_ + "': missing input variable '" +
                                  var.name() + "'");
        values.push_back(it->second);
    }
    return values;
}

Degrees SugenoFis::fuzzify(const std::map<std::string, double>& inputs) const {
    return fuzzify(std::span<const double>(to_ordered_values(inputs)));
}

double SugenoFis::rule_strength(size_t rule_index, const Degrees& degrees) const {
    const CompiledRule& rule = compiled_.at(rule_index);
    double strength = degrees[static_cast<size_t>(rule.clauses[0].variable)]
                             [static_cast<size_t>(rule.clauses[0].level)];
    for (size_t c = 1; c < rule.clauses.size(); ++c) {
        const double d = degrees[static_cast<size_t>(rule.clauses[c].variable)]
                                [static_cast<size_t>(rule.clauses[c].level)];
        strength = tnorm_ == TNorm::Product ? strength * d : std::min(strength, d);
    }
    return rule.weight * strength;
}

double SugenoFis::evaluate(std::span<const double> values) const {
    const Degrees degrees = fuzzify(values);
    double num = 0.0, den = 0.0;
    for (size_t r = 0; r < compiled_.size(); ++r) {
        const double w = rule_strength(r, degrees);
        num += w * output_.values[static_cast<size_t>(compiled_[r].consequent)];
        den += w;
    }
    if (den == 0.0) {
        std::ostringstream os;
        os << "FIS '" << name_ << "': no rule fired for inputs (";
        for (size_t v = 0; v < inputs_.size(); ++v) {
            if (v) os << ", ";
            os << inputs_[v].name() << "=" << values[v];
        }
        os << ")";
        throw NoRuleFiredError(os.str());
    }
    return num / den;
}

double SugenoFis::evaluate(const std::map<std::string, double>& inputs) const {
    return evaluate(std::span<const double>(to_ordered_values(inputs)));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Uniform sweep with pinned endpoints: lo + span*i/(n-1) can land one ulp
// past the domain max, where shoulder MFs read 0.
double grid_point(double lo, double hi, int i, int n) {
    if (i == 0) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * i / (n - 1);
}

std::vector<double> domain_grid(const LinguisticVariable& var, int points) {
    if (var.domain_min() == var.domain_max()) return {var.domain_min()};
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.push_back(grid_point(var.domain_min(), var.domain_max(), i, points));
    return grid;
}

}  // namespace

ValidationReport SugenoFis::validate(int grid_points) const {
    if (grid_points < 2) grid_points = 2;
    ValidationReport report;

    // Per-variable sweeps. available_masks[v] collects the distinct sets of
    // positive-membership labels seen anywhere on v's grid; mask_witness
    // keeps one sample input realizing each set. Because variables vary
    // independently, every cross-product of those sets is realized by some
    // joint input, which makes the completeness check below equivalent to a
    // full joint-grid sweep without its exponential cost.
    std::vector<std::array<double, kLevelCount>> level_max(inputs_.size(),
                                                           {0.0, 0.0, 0.0});
    std::vector<std::vector<unsigned>> available_masks(inputs_.size());
    std::vector<std::map<unsigned, double>> mask_witness(inputs_.size());

    for (size_t v = 0; v < inputs_.size(); ++v) {
        const auto& var = inputs_[v];
        const auto grid = domain_grid(var, grid_points);
        bool in_gap = false;
        double gap_start = 0.0;
        for (double x : grid) {
            unsigned mask = 0;
            double best = 0.0;
            for (int level = 0; level < kLevelCount; ++level) {
                const double mu = var.mf(level).membership(x);
                level_max[v][static_cast<size_t>(level)] =
                    std::max(level_max[v][static_cast<size_t>(level)], mu);
                if (mu > 0.0) mask |= 1u << level;
                best = std::max(best, mu);
            }
            if (best == 0.0) {
                if (!in_gap) {
                    in_gap = true;
                    gap_start = x;
                }
            } else if (in_gap) {
                in_gap = false;
                std::ostringstream os;
                os << "no MF covers [" << gap_start << ", " << x << ")";
                report.findings.push_back({ValidationFinding::Kind::CoverageGap,
                                           name_ + "." + var.name(), os.str()});
            }
            if (mask != 0 && mask_witness[v].emplace(mask, x).second)
                available_masks[v].push_back(mask);
        }
        if (in_gap) {
            std::ostringstream os;
            os << "no MF covers [" << gap_start << ", " << var.domain_max() << "]";
            report.findings.push_back({ValidationFinding::Kind::CoverageGap,
                                       name_ + "." + var.name(), os.str()});
        }
        if (var.assumed()) report.assumed_variables.push_back(var.name());
    }

    // A rule is unreachable iff some clause's MF is zero on its whole grid:
    // both t-norms are monotone, so the max joint strength factors through
    // per-clause maxima.
    for (size_t r = 0; r < compiled_.size(); ++r) {
        for (const auto& clause : compiled_[r].clauses) {
            if (level_max[static_cast<size_t>(clause.variable)]
                         [static_cast<size_t>(clause.level)] == 0.0) {
                report.findings.push_back(
                    {ValidationFinding::Kind::UnreachableRule,
                     name_ + " rule " + std::to_string(r + 1),
                     "clause " + inputs_[static_cast<size_t>(clause.variable)].name() +
                         " is " + std::string(kLevelLabels[static_cast<size_t>(clause.level)]) +
                         " never holds"});
                break;
            }
        }
    }

    // Completeness: every combination of realizable per-variable label sets
    // must satisfy at least one rule. A fully uncovered variable has no
    // masks; its coverage finding already reports the problem, and the
    // cross-product check is meaningless without it.
    const size_t n = inputs_.size();
    bool enumerable = true;
    for (size_t v = 0; v < n; ++v)
        if (available_masks[v].empty()) enumerable = false;
    std::vector<size_t> pick(n, 0);
    bool done = !enumerable;
    size_t reported = 0;
    while (!done) {
        bool fired = false;
        for (const auto& rule : compiled_) {
            bool ok = true;
            for (const auto& clause : rule.clauses) {
                const unsigned mask =
                    available_masks[static_cast<size_t>(clause.variable)]
                                   [pick[static_cast<size_t>(clause.variable)]];
                if (!(mask & (1u << clause.level))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                fired = true;
                break;
            }
        }
        if (!fired && reported < 5) {  // cap repeated findings, one witness each
            ++reported;
            std::ostringstream os;
            os << "no rule fires near (";
            for (size_t v = 0; v < n; ++v) {
                if (v) os << ", ";
                os << inputs_[v].name() << "="
                   << mask_witness[v].at(available_masks[v][pick[v]]);
            }
            os << ")";
            report.findings.push_back(
                {ValidationFinding::Kind::StrengthZero, name_, os.str()});
        }
        done = true;
        for (size_t v = 0; v < n; ++v) {
            if (++pick[v] < available_masks[v].size()) {
                done = false;
                break;
            }
            pick[v] = 0;
        }
    }

    return report;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    if (findings.empty()) {
        os << "valid";
    } else {
        os << findings.size() << " finding(s)";
        for (const auto& f : findings) os << "\n  " << f.where << ": " << f.detail;
    }
    for (const auto& name : assumed_variables)
        os << "\n  note: variable '" << name << "' uses assumed MF parameters";
    return os.str();
}

}  // namespace cfis
