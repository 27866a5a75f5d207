// profile_io.cpp - *.profile.json schema: parse, validate, serialize
#include "cfis/profile_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cfis {

using ordered_json = nlohmann::ordered_json;

namespace {

// Unknown keys are rejected in strict mode and reported in lenient mode.
void check_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                const std::string& path, ParseMode mode,
                std::vector<std::string>* warnings) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (allowed.count(key)) continue;
        const std::string message = path + ": unknown key '" + key + "'";
        if (mode == ParseMode::Strict) throw ParseError(path, "unknown key '" + key + "'");
        if (warnings) warnings->push_back(message);
    }
}

const ordered_json& require(const ordered_json& obj, const std::string& key,
                            const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path, "missing key '" + key + "'");
    return *it;
}

double as_number(const ordered_json& value, const std::string& path) {
    if (!value.is_number()) throw ParseError(path, "expected a number");
    return value.get<double>();
}

std::string as_string(const ordered_json& value, const std::string& path) {
    if (!value.is_string()) throw ParseError(path, "expected a string");
    return value.get<std::string>();
}

TriangularMf parse_mf(const ordered_json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 3)
        throw ParseError(path, "expected an [a, b, c] triplet");
    const double a = as_number(value[0], path);
    const double b = as_number(value[1], path);
    const double c = as_number(value[2], path);
    try {
        return TriangularMf(a, b, c);
    } catch (const BuildError& e) {
        throw ParseError(path, e.what());
    }
}

LinguisticVariable parse_variable(const std::string& name, const ordered_json& obj,
                                  ParseMode mode, std::vector<std::string>* warnings) {
    const std::string path = "variables/" + name;
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    check_keys(obj, {"unit", "domain", "polarity", "mfs", "assumed"}, path, mode, warnings);

    const auto& domain = require(obj, "domain", path);
    if (!domain.is_array() || domain.size() != 2)
        throw ParseError(path + "/domain", "expected [min, max]");
    const auto& mfs = require(obj, "mfs", path);
    if (!mfs.is_object()) throw ParseError(path + "/mfs", "expected an object");
    check_keys(mfs, {"low", "medium", "high"}, path + "/mfs", mode, warnings);

    const std::string polarity_text = as_string(require(obj, "polarity", path), path + "/polarity");
    const auto polarity = polarity_from_string(polarity_text);
    if (!polarity)
        throw ParseError(path + "/polarity", "expected 'benefit' or 'cost'");

    try {
        return LinguisticVariable(
            name, obj.contains("unit") ? as_string(obj["unit"], path + "/unit") : "",
            as_number(domain[0], path + "/domain"), as_number(domain[1], path + "/domain"),
            *polarity, parse_mf(require(mfs, "low", path + "/mfs"), path + "/mfs/low"),
            parse_mf(require(mfs, "medium", path + "/mfs"), path + "/mfs/medium"),
            parse_mf(require(mfs, "high", path + "/mfs"), path + "/mfs/high"),
            obj.contains("assumed") ? obj["assumed"].get<bool>() : false);
    } catch (const BuildError& e) {
        throw ParseError(path, e.what());
    }
}

OutputLevels parse_output(const ordered_json& obj, const std::string& path,
                          ParseMode mode, std::vector<std::string>* warnings) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    check_keys(obj, {"labels", "values"}, path, mode, warnings);
    const auto& labels = require(obj, "labels", path);
    const auto& values = require(obj, "values", path);
    if (!labels.is_array() || !values.is_array())
        throw ParseError(path, "labels and values must be arrays");
    OutputLevels out;
    for (const auto& label : labels) out.labels.push_back(as_string(label, path + "/labels"));
    for (const auto& value : values) out.values.push_back(as_number(value, path + "/values"));
    return out;
}

std::vector<Rule> parse_rules(const ordered_json& value, const std::string& path) {
    if (value.is_string()) {
        if (value.get<std::string>() == "generate_default") return {};  // resolved by caller
        throw ParseError(path, "expected a rule array or \"generate_default\"");
    }
    if (!value.is_array()) throw ParseError(path, "expected a rule array or \"generate_default\"");
    std::vector<Rule> rules;
    for (size_t r = 0; r < value.size(); ++r) {
        const std::string rule_path = path + "/" + std::to_string(r);
        const auto& obj = value[r];
        if (!obj.is_object()) throw ParseError(rule_path, "expected an object");
        Rule rule;
        const auto& antecedent = require(obj, "if", rule_path);
        if (!antecedent.is_object()) throw ParseError(rule_path + "/if", "expected an object");
        for (const auto& [var, level] : antecedent.items())
            rule.antecedent.push_back({var, as_string(level, rule_path + "/if/" + var)});
        rule.consequent = as_string(require(obj, "then", rule_path), rule_path + "/then");
        if (obj.contains("weight")) rule.weight = as_number(obj["weight"], rule_path + "/weight");
        rules.push_back(std::move(rule));
    }
    return rules;
}

Binding parse_binding(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    const bool has_field = obj.contains("field");
    const bool has_node = obj.contains("node");
    if (has_field == has_node)
        throw ParseError(path, "exactly one of 'field' or 'node' required");
    if (has_field)
        return {Binding::Source::Field, as_string(obj["field"], path + "/field")};
    return {Binding::Source::Node, as_string(obj["node"], path + "/node")};
}

}  // namespace

TestProfile parse_profile(const std::string& json_text, ParseMode mode,
                          std::vector<std::string>* warnings) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("<document>", e.what());
    }
    if (!doc.is_object()) throw ParseError("<document>", "profile must be a JSON object");
    check_keys(doc,
               {"schema_version", "kind", "name", "description", "variables", "fis",
                "cascade", "record_schema"},
               "<document>", mode, warnings);

    const auto& version = require(doc, "schema_version", "<document>");
    if (!version.is_number_integer() || version.get<int>() != 1)
        throw ParseError("schema_version", "unsupported schema version (expected 1)");

    const std::string kind_text = as_string(require(doc, "kind", "<document>"), "kind");
    const auto kind = test_kind_from_string(kind_text);
    if (!kind) throw ParseError("kind", "unknown test kind '" + kind_text + "'");

    std::map<std::string, LinguisticVariable> variables;
    const auto& vars_json = require(doc, "variables", "<document>");
    if (!vars_json.is_object()) throw ParseError("variables", "expected an object");
    for (const auto& [name, value] : vars_json.items())
        variables.emplace(name, parse_variable(name, value, mode, warnings));

    // FIS definitions pull copies of the shared variable entries.
    std::map<std::string, SugenoFis> fis_map;
    const auto& fis_json = require(doc, "fis", "<document>");
    if (!fis_json.is_object()) throw ParseError("fis", "expected an object");
    for (const auto& [fis_name, obj] : fis_json.items()) {
        const std::string path = "fis/" + fis_name;
        if (!obj.is_object()) throw ParseError(path, "expected an object");
        check_keys(obj, {"inputs", "tnorm", "output", "rules"}, path, mode, warnings);

        std::vector<LinguisticVariable> inputs;
        const auto& input_names = require(obj, "inputs", path);
        if (!input_names.is_array()) throw ParseError(path + "/inputs", "expected an array");
        for (const auto& entry : input_names) {
            const std::string var_name = as_string(entry, path + "/inputs");
            auto it = variables.find(var_name);
            if (it == variables.end())
                throw ParseError(path + "/inputs", "unknown variable '" + var_name + "'");
            inputs.push_back(it->second);
        }

        TNorm tnorm = TNorm::Product;
        if (obj.contains("tnorm")) {
            const auto parsed = tnorm_from_string(as_string(obj["tnorm"], path + "/tnorm"));
            if (!parsed) throw ParseError(path + "/tnorm", "expected 'product' or 'minimum'");
            tnorm = *parsed;
        }

        OutputLevels levels = obj.contains("output")
                                  ? parse_output(obj["output"], path + "/output", mode, warnings)
                                  : OutputLevels::standard();

        const auto& rules_json = require(obj, "rules", path);
        std::vector<Rule> rules = parse_rules(rules_json, path + "/rules");
        if (rules.empty() && rules_json.is_string()) {
            try {
                rules = generate_default_rulebase(inputs, levels);
            } catch (const BuildError& e) {
                throw ParseError(path + "/rules", e.what());
            }
        }

        try {
            fis_map.emplace(fis_name, SugenoFis(fis_name, std::move(inputs),
                                                std::move(levels), std::move(rules), tnorm));
        } catch (const BuildError& e) {
            throw ParseError(path, e.what());
        }
    }

    const auto& cascade_json = require(doc, "cascade", "<document>");
    if (!cascade_json.is_object()) throw ParseError("cascade", "expected an object");
    check_keys(cascade_json, {"nodes", "terminal"}, "cascade", mode, warnings);
    const auto& nodes_json = require(cascade_json, "nodes", "cascade");
    if (!nodes_json.is_array()) throw ParseError("cascade/nodes", "expected an array");

    std::vector<CascadeNode> nodes;
    for (size_t i = 0; i < nodes_json.size(); ++i) {
        const std::string path = "cascade/nodes/" + std::to_string(i);
        const auto& obj = nodes_json[i];
        if (!obj.is_object()) throw ParseError(path, "expected an object");
        check_keys(obj, {"id", "axis", "fis", "constant", "bindings"}, path, mode, warnings);
        CascadeNode node;
        node.id = as_string(require(obj, "id", path), path + "/id");
        if (obj.contains("axis")) {
            const auto axis = axis_from_string(as_string(obj["axis"], path + "/axis"));
            if (!axis) throw ParseError(path + "/axis", "expected EC, MC or HI");
            node.axis = axis;
        }
        if (obj.contains("constant")) node.constant = as_number(obj["constant"], path + "/constant");
        if (obj.contains("fis")) {
            const std::string fis_name = as_string(obj["fis"], path + "/fis");
            auto it = fis_map.find(fis_name);
            if (it == fis_map.end())
                throw ParseError(path + "/fis", "unknown FIS '" + fis_name + "'");
            node.fis = it->second;
            const auto& bindings = require(obj, "bindings", path);
            if (!bindings.is_object()) throw ParseError(path + "/bindings", "expected an object");
            for (const auto& var : node.fis->inputs()) {
                auto b = bindings.find(var.name());
                if (b == bindings.end())
                    throw ParseError(path + "/bindings",
                                     "missing binding for variable '" + var.name() + "'");
                node.bindings.push_back(parse_binding(*b, path + "/bindings/" + var.name()));
            }
            for (const auto& [bound_name, value] : bindings.items()) {
                (void)value;
                if (node.fis->variable_index(bound_name) < 0)
                    throw ParseError(path + "/bindings",
                                     "binding for unknown variable '" + bound_name + "'");
            }
        }
        nodes.push_back(std::move(node));
    }
    const std::string terminal = as_string(require(cascade_json, "terminal", "cascade"),
                                           "cascade/terminal");

    std::vector<std::string> schema;
    const auto& schema_json = require(doc, "record_schema", "<document>");
    if (!schema_json.is_array()) throw ParseError("record_schema", "expected an array");
    for (const auto& entry : schema_json)
        schema.push_back(as_string(entry, "record_schema"));

    TestProfile profile = [&] {
        try {
            return TestProfile{*kind,
                               doc.contains("name") ? as_string(doc["name"], "name")
                                                    : kind_text,
                               doc.contains("description")
                                   ? as_string(doc["description"], "description")
                                   : "",
                               1,
                               CascadeGraph(std::move(nodes), terminal),
                               std::move(schema)};
        } catch (const BuildError& e) {
            throw ParseError("cascade", e.what());
        }
    }();

    // Schema fields and raw-bound variables must coincide (order is the
    // document's choice; duplicates are not).
    {
        std::set<std::string> seen;
        for (const auto& field : profile.record_schema)
            if (!seen.insert(field).second)
                throw ParseError("record_schema", "duplicate field '" + field + "'");
        const auto raw = profile.graph.raw_fields();
        for (const auto& field : raw)
            if (!seen.count(field))
                throw ParseError("record_schema", "missing raw-bound field '" + field + "'");
        for (const auto& field : profile.record_schema)
            if (std::find(raw.begin(), raw.end(), field) == raw.end())
                throw ParseError("record_schema",
                                 "field '" + field + "' is not bound by any node");
    }

    // Numeric health checks on every FIS; strict mode treats findings as
    // errors, lenient mode reports them.
    for (const auto& node : profile.graph.nodes()) {
        if (!node.fis) continue;
        const auto report = node.fis->validate();
        if (report.valid()) continue;
        const std::string message = "validation findings\n" + report.to_string();
        if (mode == ParseMode::Strict) throw ParseError("fis/" + node.fis->name(), message);
        if (warnings) warnings->push_back("fis/" + node.fis->name() + ": " + message);
    }

    return profile;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

ordered_json mf_to_json(const TriangularMf& mf) {
    return ordered_json::array({mf.a(), mf.b(), mf.c()});
}

ordered_json variable_to_json(const LinguisticVariable& var) {
    ordered_json obj;
    obj["unit"] = var.unit();
    obj["domain"] = ordered_json::array({var.domain_min(), var.domain_max()});
    obj["polarity"] = std::string(to_string(var.polarity()));
    ordered_json mfs;
    for (int level = 0; level < kLevelCount; ++level)
        mfs[std::string(kLevelLabels[static_cast<size_t>(level)])] =
            mf_to_json(var.mf(level));
    obj["mfs"] = std::move(mfs);
    obj["assumed"] = var.assumed();
    return obj;
}

ordered_json fis_to_json(const SugenoFis& fis) {
    ordered_json obj;
    ordered_json inputs = ordered_json::array();
    for (const auto& var : fis.inputs()) inputs.push_back(var.name());
    obj["inputs"] = std::move(inputs);
    obj["tnorm"] = std::string(to_string(fis.tnorm()));
    obj["output"] = {{"labels", fis.output().labels}, {"values", fis.output().values}};
    ordered_json rules = ordered_json::array();
    for (const auto& rule : fis.rules()) {
        ordered_json rj;
        ordered_json antecedent;
        for (const auto& clause : rule.antecedent) antecedent[clause.variable] = clause.level;
        rj["if"] = std::move(antecedent);
        rj["then"] = rule.consequent;
        rj["weight"] = rule.weight;
        rules.push_back(std::move(rj));
    }
    obj["rules"] = std::move(rules);
    return obj;
}

}  // namespace

ordered_json profile_to_json(const TestProfile& profile) {
    ordered_json doc;
    doc["schema_version"] = profile.schema_version;
    doc["kind"] = std::string(to_string(profile.kind));
    doc["name"] = profile.name;
    doc["description"] = profile.description;

    ordered_json variables;
    for (const auto& node : profile.graph.nodes()) {
        if (!node.fis) continue;
        for (const auto& var : node.fis->inputs()) {
            ordered_json encoded = variable_to_json(var);
            auto it = variables.find(var.name());
            if (it == variables.end())
                variables[var.name()] = std::move(encoded);
            else if (*it != encoded)
                throw BuildError("variable '" + var.name() +
                                 "' has conflicting definitions across FIS nodes");
        }
    }
    doc["variables"] = std::move(variables);

    ordered_json fis;
    for (const auto& node : profile.graph.nodes())
        if (node.fis) fis[node.fis->name()] = fis_to_json(*node.fis);
    doc["fis"] = std::move(fis);

    ordered_json nodes = ordered_json::array();
    for (const auto& node : profile.graph.nodes()) {
        ordered_json obj;
        obj["id"] = node.id;
        if (node.axis) obj["axis"] = std::string(to_string(*node.axis));
        if (node.constant) obj["constant"] = *node.constant;
        if (node.fis) {
            obj["fis"] = node.fis->name();
            ordered_json bindings;
            const auto vars = node.fis->inputs();
            for (size_t b = 0; b < node.bindings.size(); ++b) {
                const auto& binding = node.bindings[b];
                bindings[vars[b].name()] =
                    binding.source == Binding::Source::Field
                        ? ordered_json{{"field", binding.name}}
                        : ordered_json{{"node", binding.name}};
            }
            obj["bindings"] = std::move(bindings);
        }
        nodes.push_back(std::move(obj));
    }
    doc["cascade"] = {{"nodes", std::move(nodes)},
                      {"terminal", profile.graph.terminal_id()}};
    doc["record_schema"] = profile.record_schema;
    return doc;
}

std::string serialize_profile(const TestProfile& profile) {
    return profile_to_json(profile).dump(2) + "\n";
}

bool operator==(const TestProfile& a, const TestProfile& b) {
    return profile_to_json(a) == profile_to_json(b);
}

}  // namespace cfis
