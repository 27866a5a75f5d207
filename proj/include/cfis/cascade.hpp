// cascade.hpp - cascaded FIS graphs, built-in test profiles, default rule
// bases and response-surface grids
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfis/fis.hpp"

namespace cfis {

enum class AxisTag { EC, MC, HI };
enum class TestKind {
    RuntimeEndurance,
    ThroughApertures,
    ThroughCorridors,
    Takeoff,
    LandPerch,
    RoomClearing,
};

std::string_view to_string(AxisTag a);
std::string_view to_string(TestKind k);
std::optional<AxisTag> axis_from_string(std::string_view s);
std::optional<TestKind> test_kind_from_string(std::string_view s);
std::span<const TestKind> all_test_kinds();

/// One FIS variable's data source inside a cascade node.
struct Binding {
    enum class Source { Field, Node };
    Source source;
    std::string name;  // raw record field or upstream node id

    bool operator==(const Binding&) const = default;
};

/// Graph node: either an inference node (FIS plus one binding per input
/// variable, in input order) or a constant emitter (used for the HI axis
/// when every run is fully tele-operated).
struct CascadeNode {
    std::string id;
    std::optional<AxisTag> axis;          // tagged on non-terminal nodes
    std::optional<SugenoFis> fis;
    std::vector<Binding> bindings;        // parallel to fis->inputs()
    std::optional<double> constant;       // constant node, value in [0,1]
};

/// DAG of nodes feeding one terminal combiner. Construction checks the
/// wiring: unique ids, complete bindings, node-fed variables on [0,1],
/// acyclicity, at most one node per axis tag, and that every non-terminal
/// output is consumed.
class CascadeGraph {
public:
    CascadeGraph(std::vector<CascadeNode> nodes, std::string terminal_id);

    std::span<const CascadeNode> nodes() const noexcept { return nodes_; }
    const CascadeNode& terminal() const { return nodes_[terminal_]; }
    const std::string& terminal_id() const { return nodes_[terminal_].id; }
    std::span<const size_t> topological_order() const noexcept { return topo_; }

    int node_index(std::string_view id) const;  // -1 when absent
    const CascadeNode* axis_node(AxisTag tag) const;

    /// Raw record fields consumed by the graph, in node/binding order,
    /// deduplicated.
    std::vector<std::string> raw_fields() const;

private:
    std::vector<CascadeNode> nodes_;
    size_t terminal_ = 0;
    std::vector<size_t> topo_;
};

struct AxisScores {
    double ec = 0.0;
    double mc = 0.0;
    double hi = 0.0;
    double final_score = 0.0;
};

/// A complete scoring profile for one test: the cascade plus the ordered
/// raw-record schema it consumes. Immutable once built.
struct TestProfile {
    TestKind kind;
    std::string name;
    std::string description;
    int schema_version = 1;
    CascadeGraph graph;
    std::vector<std::string> record_schema;

    const SugenoFis* find_fis(std::string_view fis_name) const;

    /// Variables whose MF parameters are assumed rather than published.
    std::vector<std::string> assumed_variables() const;
};

bool operator==(const TestProfile& a, const TestProfile& b);

/// Built-in profile for one of the six scored tests. Variable MF parameters
/// come from the shipped catalog; axis rule bases are generated defaults and
/// the combiner carries the standard 3x3 EC/MC table.
TestProfile build_profile(TestKind kind);

/// Full-grid rule base over the given variables: one rule per level
/// combination. Cost-polarity variables have their level index reflected
/// (2 - i), and the consequent is the adjusted-index mean scaled onto the
/// output levels, rounded half-up. For two benefit inputs on five levels
/// this reproduces the standard combiner table.
std::vector<Rule> generate_default_rulebase(std::span<const LinguisticVariable> variables,
                                            const OutputLevels& levels);

/// Clamp raw values to their variables' domains, evaluate every node in
/// topological order and collect the per-axis and final scores.
/// The record must carry exactly the profile's schema fields, all finite.
AxisScores evaluate_cascade(const TestProfile& profile,
                            const std::map<std::string, double>& record);

/// Evaluate many records, optionally fanned out across worker threads.
/// Results are positionally stable: independent of worker count.
std::vector<AxisScores> evaluate_batch(const TestProfile& profile,
                                       std::span<const std::map<std::string, double>> records,
                                       int workers = 1);

struct SurfaceGrid {
    std::string var_x, var_y;
    std::vector<double> xs, ys;   // length = resolution each
    std::vector<double> scores;   // row-major: scores[i * ys.size() + j]

    double at(size_t i, size_t j) const { return scores[i * ys.size() + j]; }
};

/// Uniform resolution x resolution sweep of two variables with the rest
/// pinned (clamped to domain). Every cell is an exact evaluate() result.
SurfaceGrid surface_grid(const SugenoFis& fis, std::string_view var_x,
                         std::string_view var_y,
                         const std::map<std::string, double>& fixed,
                         int resolution);

}  // namespace cfis
