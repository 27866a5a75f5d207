// builtin_profiles.cpp - the shipped variable catalog and the six test profiles
#include "cfis/cascade.hpp"

namespace cfis {

namespace {

// Catalog of raw input variables. Domains span the MF feet; the MF triplets
// are the published parameters, except Speed, whose parameters are assumed
// (count-style triplets on an assumed 0-3 m/s range) and flagged as such.
LinguisticVariable catalog_variable(std::string_view name) {
    using LV = LinguisticVariable;
    using Mf = TriangularMf;
    const auto B = Polarity::Benefit;
    const auto C = Polarity::Cost;
    if (name == "Area")
        return LV("Area", "m^2", 0, 6, B, Mf(0, 0, 2.7), Mf(0.6, 3, 5.4), Mf(3.3, 6, 6));
    if (name == "Light")
        return LV("Light", "lux", 0, 750, B, Mf(0, 0, 337.5), Mf(75, 375, 675),
                  Mf(412.5, 750, 750));
    if (name == "Vert")
        return LV("Vert", "deg", 0, 90, C, Mf(0, 0, 37.5), Mf(7.5, 45, 82.5),
                  Mf(52.5, 90, 90));
    if (name == "Crash")
        return LV("Crash", "count", 0, 3, C, Mf(0, 0, 1.25), Mf(0.5, 1.5, 2.5),
                  Mf(1.75, 3, 3));
    if (name == "Rollovers")
        return LV("Rollovers", "count", 0, 3, C, Mf(0, 0, 1.25), Mf(0.5, 1.5, 2.5),
                  Mf(1.75, 3, 3));
    if (name == "Comp.%")
        return LV("Comp.%", "fraction", 0, 1, B, Mf(0, 0, 0.55), Mf(0.15, 0.6, 0.92),
                  Mf(0.7, 1, 1));
    if (name == "Pitch")
        return LV("Pitch", "deg", 0, 10, C, Mf(0, 0, 4.17), Mf(0.83, 5, 9.12),
                  Mf(5.83, 10, 10));
    if (name == "Yaw")
        return LV("Yaw", "deg", 0, 10, C, Mf(0, 0, 4.17), Mf(0.83, 5, 9.12),
                  Mf(5.83, 10, 10));
    if (name == "VR")
        return LV("VR", "m", 0.6, 1.8, C, Mf(0.6, 0.6, 1.1), Mf(0.7, 1.2, 1.7),
                  Mf(1.3, 1.8, 1.8));
    if (name == "LR")
        return LV("LR", "m", 1.2, 3.6, C, Mf(1.2, 1.2, 2.2), Mf(1.4, 2.4, 3.4),
                  Mf(2.6, 3.6, 3.6));
    if (name == "Coverage")
        return LV("Coverage", "fraction", 0, 1, B, Mf(0, 0, 0.55), Mf(0.15, 0.6, 0.92),
                  Mf(0.7, 1, 1));
    if (name == "Cs Detected")
        return LV("Cs Detected", "percent", 0, 100, B, Mf(0, 0, 50), Mf(10, 50, 90),
                  Mf(50, 100, 100));
    if (name == "Duration")
        return LV("Duration", "min", 2.5, 8, C, Mf(2.5, 2.5, 5.25), Mf(3.05, 5.25, 7.45),
                  Mf(5.25, 8, 8));
    if (name == "Obs.")
        return LV("Obs.", "count", 0, 6, C, Mf(0, 0, 2.5), Mf(1, 3, 5), Mf(3.5, 6, 6));
    if (name == "Speed")
        return LV("Speed", "m/s", 0, 3, B, Mf(0, 0, 1.25), Mf(0.5, 1.5, 2.5),
                  Mf(1.75, 3, 3), /*assumed=*/true);
    throw BuildError("unknown catalog variable '" + std::string(name) + "'");
}

// Intermediate axis-score signal fed into the combiner: symmetric MFs with
// full coverage on [0, 1].
LinguisticVariable axis_signal(std::string name) {
    return LinguisticVariable(std::move(name), "score", 0, 1, Polarity::Benefit,
                              TriangularMf(0, 0, 0.5), TriangularMf(0.25, 0.5, 0.75),
                              TriangularMf(0.5, 1, 1));
}

std::vector<LinguisticVariable> pick(std::initializer_list<std::string_view> names) {
    std::vector<LinguisticVariable> vars;
    vars.reserve(names.size());
    for (auto name : names) vars.push_back(catalog_variable(name));
    return vars;
}

SugenoFis axis_fis(std::string name, std::vector<LinguisticVariable> vars) {
    const auto levels = OutputLevels::standard();
    auto rules = generate_default_rulebase(vars, levels);
    return SugenoFis(std::move(name), std::move(vars), levels, std::move(rules));
}

// The combiner takes all three axis signals but its rules constrain only EC
// and MC, so with HI pinned at 0 the behavior is exactly the 3x3 table.
SugenoFis combiner_fis() {
    std::vector<LinguisticVariable> vars;
    vars.push_back(axis_signal("EC"));
    vars.push_back(axis_signal("MC"));
    const auto levels = OutputLevels::standard();
    auto rules = generate_default_rulebase(vars, levels);
    vars.push_back(axis_signal("HI"));
    return SugenoFis("combiner", std::move(vars), levels, std::move(rules));
}

CascadeNode fis_node(std::string id, AxisTag axis, SugenoFis fis) {
    CascadeNode node;
    node.id = std::move(id);
    node.axis = axis;
    std::vector<Binding> bindings;
    for (const auto& var : fis.inputs())
        bindings.push_back({Binding::Source::Field, var.name()});
    node.fis = std::move(fis);
    node.bindings = std::move(bindings);
    return node;
}

TestProfile make_profile(TestKind kind, std::string description,
                         std::vector<LinguisticVariable> ec_vars,
                         std::vector<LinguisticVariable> mc_vars) {
    std::vector<std::string> schema;
    for (const auto& var : ec_vars) schema.push_back(var.name());
    for (const auto& var : mc_vars) schema.push_back(var.name());

    std::vector<CascadeNode> nodes;
    nodes.push_back(fis_node("ec", AxisTag::EC, axis_fis("ec", std::move(ec_vars))));
    nodes.push_back(fis_node("mc", AxisTag::MC, axis_fis("mc", std::move(mc_vars))));

    // Fully tele-operated runs: the HI axis sits at its lowest level.
    CascadeNode hi;
    hi.id = "hi";
    hi.axis = AxisTag::HI;
    hi.constant = 0.0;
    nodes.push_back(std::move(hi));

    CascadeNode final_node;
    final_node.id = "final";
    final_node.fis = combiner_fis();
    final_node.bindings = {{Binding::Source::Node, "ec"},
                           {Binding::Source::Node, "mc"},
                           {Binding::Source::Node, "hi"}};
    nodes.push_back(std::move(final_node));

    TestProfile profile{kind,
                        std::string(to_string(kind)),
                        std::move(description),
                        1,
                        CascadeGraph(std::move(nodes), "final"),
                        std::move(schema)};
    return profile;
}

}  // namespace

TestProfile build_profile(TestKind kind) {
    switch (kind) {
        case TestKind::RuntimeEndurance:
            return make_profile(kind,
                                "Continuous figure-8 flight scored on endurance conditions",
                                pick({"Obs.", "Light"}), pick({"Crash", "Speed"}));
        case TestKind::ThroughApertures:
            return make_profile(kind,
                                "Transient traversal through door/window openings",
                                pick({"Area", "Light"}), pick({"Crash", "Comp.%"}));
        case TestKind::ThroughCorridors:
            return make_profile(kind,
                                "Traversal through continuously confined spaces",
                                pick({"Area", "Light", "Vert"}),
                                pick({"Coverage", "Crash", "Duration"}));
        case TestKind::Takeoff:
            return make_profile(kind,
                                "Takeoff under ground-plane angle and nearby obstructions",
                                pick({"Pitch", "Yaw", "VR", "LR"}),
                                pick({"Crash", "Comp.%", "Rollovers"}));
        case TestKind::LandPerch:
            return make_profile(kind,
                                "Land/perch under ground-plane angle and nearby obstructions",
                                pick({"Pitch", "Yaw", "VR", "LR"}),
                                pick({"Crash", "Comp.%", "Rollovers"}));
        case TestKind::RoomClearing:
            return make_profile(kind,
                                "Visual room inspection against acuity targets",
                                pick({"Light", "Obs."}),
                                pick({"Crash", "Duration", "Coverage", "Cs Detected"}));
    }
    throw BuildError("unknown test kind");
}

}  // namespace cfis
