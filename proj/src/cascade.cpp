// cascade.cpp - DAG wiring, cascade evaluation, default rule bases, surfaces
#include "cfis/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace cfis {

std::string_view to_string(AxisTag a) {
    switch (a) {
        case AxisTag::EC: return "EC";
        case AxisTag::MC: return "MC";
        case AxisTag::HI: return "HI";
    }
    return "";
}

std::optional<AxisTag> axis_from_string(std::string_view s) {
    if (s == "EC") return AxisTag::EC;
    if (s == "MC") return AxisTag::MC;
    if (s == "HI") return AxisTag::HI;
    return std::nullopt;
}

namespace {
constexpr std::array<TestKind, 6> kAllKinds = {
    TestKind::RuntimeEndurance, TestKind::ThroughApertures,
    TestKind::ThroughCorridors, TestKind::Takeoff,
    TestKind::LandPerch,        TestKind::RoomClearing,
};
}

std::string_view to_string(TestKind k) {
    switch (k) {
        case TestKind::RuntimeEndurance: return "runtime_endurance";
        case TestKind::ThroughApertures: return "through_apertures";
        case TestKind::ThroughCorridors: return "through_corridors";
        case TestKind::Takeoff: return "takeoff";
        case TestKind::LandPerch: return "land_perch";
        case TestKind::RoomClearing: return "room_clearing";
    }
    return "";
}

std::optional<TestKind> test_kind_from_string(std::string_view s) {
    for (TestKind k : kAllKinds)
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::span<const TestKind> all_test_kinds() { return kAllKinds; }

// ---------------------------------------------------------------------------
// CascadeGraph

CascadeGraph::CascadeGraph(std::vector<CascadeNode> nodes, std::string terminal_id)
    : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw BuildError("cascade: no nodes");

    for (size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (node.id.empty()) throw BuildError("cascade: node with empty id");
        for (size_t j = i + 1; j < nodes_.size(); ++j)
            if (nodes_[j].id == node.id)
                throw BuildError("cascade: duplicate node id '" + node.id + "'");
        const bool is_fis = node.fis.has_value();
        const bool is_const = node.constant.has_value();
        if (is_fis == is_const)
            throw BuildError("cascade node '" + node.id +
                             "': exactly one of fis or constant required");
        if (is_const && !(*node.constant >= 0.0 && *node.constant <= 1.0))
            throw BuildError("cascade node '" + node.id + "': constant outside [0, 1]");
        if (is_const && !node.bindings.empty())
            throw BuildError("cascade node '" + node.id + "': constant nodes take no bindings");
        if (is_fis && node.bindings.size() != node.fis->inputs().size())
            throw BuildError("cascade node '" + node.id +
                             "': bindings must cover every FIS variable exactly once");
    }

    const int term = node_index(terminal_id);
    if (term < 0) throw BuildError("cascade: terminal node '" + terminal_id + "' not found");
    terminal_ = static_cast<size_t>(term);

    // Resolve node-output bindings, check [0,1] domains on node-fed variables.
    std::vector<std::vector<size_t>> upstream(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        for (size_t b = 0; b < node.bindings.size(); ++b) {
            const Binding& binding = node.bindings[b];
            if (binding.source != Binding::Source::Node) continue;
            const int src = node_index(binding.name);
            if (src < 0)
                throw BuildError("cascade node '" + node.id + "': binding references unknown node '" +
                                 binding.name + "'");
            const auto& var = node.fis->inputs()[b];
            if (var.domain_min() != 0.0 || var.domain_max() != 1.0)
                throw BuildError("cascade node '" + node.id + "': variable '" + var.name() +
                                 "' is fed by node '" + binding.name +
                                 "' and must have domain [0, 1]");
            upstream[i].push_back(static_cast<size_t>(src));
        }
    }

    // Kahn topological order; leftover nodes mean a cycle.
    std::vector<size_t> in_degree(nodes_.size(), 0);
    for (size_t i = 0; i < nodes_.size(); ++i) in_degree[i] = upstream[i].size();
    std::vector<std::vector<size_t>> consumers(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i)
        for (size_t u : upstream[i]) consumers[u].push_back(i);
    std::vector<size_t> ready;
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (in_degree[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        // smallest index first keeps the order deterministic
        std::sort(ready.begin(), ready.end(), std::greater<>());
        const size_t i = ready.back();
        ready.pop_back();
        topo_.push_back(i);
        for (size_t c : consumers[i])
            if (--in_degree[c] == 0) ready.push_back(c);
    }
    if (topo_.size() != nodes_.size()) throw BuildError("cascade: cycle detected");

    std::set<AxisTag> seen_axes;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (i == terminal_) {
            if (node.axis)
                throw BuildError("cascade: terminal node '" + node.id + "' must not carry an axis tag");
            if (!consumers[i].empty())
                throw BuildError("cascade: terminal node '" + node.id + "' must not feed another node");
            continue;
        }
        if (!node.axis)
            throw BuildError("cascade: non-terminal node '" + node.id + "' needs an axis tag");
        if (!seen_axes.insert(*node.axis).second)
            throw BuildError("cascade: axis " + std::string(to_string(*node.axis)) +
                             " tagged on more than one node");
        if (consumers[i].empty())
            throw BuildError("cascade: node '" + node.id + "' output feeds nothing");
    }
}

int CascadeGraph::node_index(std::string_view id) const {
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return static_cast<int>(i);
    return -1;
}

const CascadeNode* CascadeGraph::axis_node(AxisTag tag) const {
    for (const auto& node : nodes_)
        if (node.axis == tag) return &node;
    return nullptr;
}

std::vector<std::string> CascadeGraph::raw_fields() const {
    std::vector<std::string> fields;
    for (const auto& node : nodes_)
        for (const auto& binding : node.bindings)
            if (binding.source == Binding::Source::Field &&
                std::find(fields.begin(), fields.end(), binding.name) == fields.end())
                fields.push_back(binding.name);
    return fields;
}

// ---------------------------------------------------------------------------
// TestProfile

const SugenoFis* TestProfile::find_fis(std::string_view fis_name) const {
    for (const auto& node : graph.nodes())
        if (node.fis && node.fis->name() == fis_name) return &*node.fis;
    return nullptr;
}

std::vector<std::string> TestProfile::assumed_variables() const {
    std::vector<std::string> out;
    for (const auto& node : graph.nodes()) {
        if (!node.fis) continue;
        for (const auto& var : node.fis->inputs())
            if (var.assumed() &&
                std::find(out.begin(), out.end(), var.name()) == out.end())
                out.push_back(var.name());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Default rule base

std::vector<Rule> generate_default_rulebase(std::span<const LinguisticVariable> variables,
                                            const OutputLevels& levels) {
    if (variables.empty()) throw BuildError("default rule base: no variables");
    if (levels.size() < 2) throw BuildError("default rule base: needs >= 2 output levels");

    const size_t k = variables.size();
    const long n_levels = static_cast<long>(levels.size());
    std::vector<Rule> rules;
    std::vector<int> combo(k, 0);
    while (true) {
        Rule rule;
        long adjusted_sum = 0;
        for (size_t v = 0; v < k; ++v) {
            rule.antecedent.push_back(
                {variables[v].name(), std::string(kLevelLabels[static_cast<size_t>(combo[v])])});
            adjusted_sum += variables[v].polarity() == Polarity::Cost
                                ? (kLevelCount - 1) - combo[v]
                                : combo[v];
        }
        // consequent = round-half-up(mean(adjusted) * (n-1) / (kLevelCount-1)),
        // done in integers: floor((sum*(n-1) + k) / (2k)) for 3-level inputs.
        const long idx = (adjusted_sum * (n_levels - 1) + static_cast<long>(k)) /
                         (2 * static_cast<long>(k));
        rule.consequent = levels.labels[static_cast<size_t>(idx)];
        rule.weight = 1.0;
        rules.push_back(std::move(rule));

        // lexicographic advance, last variable fastest
        size_t v = k;
        while (v > 0) {
            --v;
            if (++combo[v] < kLevelCount) break;
            combo[v] = 0;
            if (v == 0) return rules;
        }
    }
}

// ---------------------------------------------------------------------------
// Cascade evaluation

AxisScores evaluate_cascade(const TestProfile& profile,
                            const std::map<std::string, double>& record) {
    for (const auto& field : profile.record_schema)
        if (!record.count(field))
            throw InputShapeError("record missing field '" + field + "'");
    for (const auto& [field, value] : record) {
        if (std::find(profile.record_schema.begin(), profile.record_schema.end(), field) ==
            profile.record_schema.end())
            throw InputShapeError("record has extraneous field '" + field + "'");
        if (!std::isfinite(value))
            throw InputShapeError("record field '" + field + "' is not finite");
    }

    const auto& graph = profile.graph;
    std::vector<double> outputs(graph.nodes().size(), 0.0);
    for (size_t i : graph.topological_order()) {
        const CascadeNode& node = graph.nodes()[i];
        if (node.constant) {
            outputs[i] = *node.constant;
            continue;
        }
        const auto vars = node.fis->inputs();
        std::vector<double> values(vars.size());
        for (size_t b = 0; b < node.bindings.size(); ++b) {
            const Binding& binding = node.bindings[b];
            const double raw = binding.source == Binding::Source::Field
                                   ? record.at(binding.name)
                                   : outputs[static_cast<size_t>(graph.node_index(binding.name))];
            values[b] = vars[b].clamp(raw);
        }
        outputs[i] = node.fis->evaluate(std::span<const double>(values));
    }

    // Profiles may omit an axis node (no HI node in a two-axis cascade);
    // the missing axis reports 0.
    auto axis_output = [&](AxisTag tag) {
        const CascadeNode* node = graph.axis_node(tag);
        return node ? outputs[static_cast<size_t>(graph.node_index(node->id))] : 0.0;
    };
    AxisScores scores;
    scores.ec = axis_output(AxisTag::EC);
    scores.mc = axis_output(AxisTag::MC);
    scores.hi = axis_output(AxisTag::HI);
    scores.final_score = outputs[static_cast<size_t>(graph.node_index(graph.terminal_id()))];
    return scores;
}

std::vector<AxisScores> evaluate_batch(const TestProfile& profile,
                                       std::span<const std::map<std::string, double>> records,
                                       int workers) {
    std::vector<AxisScores> results(records.size());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(records.size() ? records.size() : 1));
    if (workers == 1) {
        for (size_t i = 0; i < records.size(); ++i)
            results[i] = evaluate_cascade(profile, records[i]);
        return results;
    }

    // Results land by index, so worker count cannot affect output bytes.
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = static_cast<size_t>(w); i < records.size();
                     i += static_cast<size_t>(workers))
                    results[i] = evaluate_cascade(profile, records[i]);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return results;
}

// ---------------------------------------------------------------------------
// Surface grids

SurfaceGrid surface_grid(const SugenoFis& fis, std::string_view var_x,
                         std::string_view var_y,
                         const std::map<std::string, double>& fixed, int resolution) {
    if (resolution < 2) throw BuildError("surface grid: resolution must be >= 2");
    const int xi = fis.variable_index(var_x);
    const int yi = fis.variable_index(var_y);
    if (xi < 0) throw InputShapeError("surface grid: unknown variable '" + std::string(var_x) + "'");
    if (yi < 0) throw InputShapeError("surface grid: unknown variable '" + std::string(var_y) + "'");
    if (xi == yi) throw BuildError("surface grid: the two swept variables must differ");

    const auto vars = fis.inputs();
    std::vector<double> values(vars.size(), 0.0);
    for (const auto& [name, value] : fixed) {
        const int vi = fis.variable_index(name);
        if (vi < 0)
            throw InputShapeError("surface grid: unknown fixed variable '" + name + "'");
        if (vi == xi || vi == yi)
            throw InputShapeError("surface grid: variable '" + name + "' is being swept");
        values[static_cast<size_t>(vi)] = vars[static_cast<size_t>(vi)].clamp(value);
    }
    for (size_t v = 0; v < vars.size(); ++v)
        if (static_cast<int>(v) != xi && static_cast<int>(v) != yi &&
            !fixed.count(vars[v].name()))
            throw InputShapeError("surface grid: variable '" + vars[v].name() +
                                  "' needs a fixed value");

    SurfaceGrid grid;
    grid.var_x = std::string(var_x);
    grid.var_y = std::string(var_y);
    const auto& vx = vars[static_cast<size_t>(xi)];
    const auto& vy = vars[static_cast<size_t>(yi)];
    // endpoints pinned: the uniform formula can overshoot the domain max by
    // one ulp, which zeroes shoulder MFs at the edge
    for (int i = 0; i < resolution; ++i) {
        const bool edge = i == 0 || i == resolution - 1;
        grid.xs.push_back(edge ? (i ? vx.domain_max() : vx.domain_min())
                               : vx.domain_min() + (vx.domain_max() - vx.domain_min()) *
                                                       i / (resolution - 1));
        grid.ys.push_back(edge ? (i ? vy.domain_max() : vy.domain_min())
                               : vy.domain_min() + (vy.domain_max() - vy.domain_min()) *
                                                       i / (resolution - 1));
    }
    grid.scores.reserve(static_cast<size_t>(resolution) * static_cast<size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        values[static_cast<size_t>(xi)] = grid.xs[static_cast<size_t>(i)];
        for (int j = 0; j < resolution; ++j) {
            values[static_cast<size_t>(yi)] = grid.ys[static_cast<size_t>(j)];
            grid.scores.push_back(fis.evaluate(std::span<const double>(values)));
        }
    }
    return grid;
}

}  // namespace cfis
