#include "netperc/run_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace netperc::cli {

using nlohmann::json;

namespace {

enum class FieldType { number, integer, text, boolean, number_array };

const char* type_name(FieldType type) {
    switch (type) {
        case FieldType::number: return "number";
        case FieldType::integer: return "integer";
        case FieldType::text: return "string";
        case FieldType::boolean: return "boolean";
        case FieldType::number_array: return "array of numbers";
    }
    return "?";
}

using Schema = std::map<std::string, FieldType>;

const Schema kDistKeys = {
    {"family", FieldType::text},   {"lambda", FieldType::number}, {"alpha", FieldType::number},
    {"gamma", FieldType::number},  {"k", FieldType::integer},     {"mean", FieldType::number},
    {"delta", FieldType::integer}, {"k_min", FieldType::integer}, {"pmf", FieldType::number_array},
    {"dist_spec", FieldType::text},
};

Schema with_dist(Schema extra) {
    extra.insert(kDistKeys.begin(), kDistKeys.end());
    return extra;
}

const std::map<std::string, Schema>& schemas() {
    static const std::map<std::string, Schema> table = {
        {"dist", with_dist({{"format", FieldType::text}, {"output", FieldType::text}})},
        {"check-seq",
         {{"file", FieldType::text}, {"degrees", FieldType::number_array}}},
        {"generate", with_dist({{"n", FieldType::integer},
                                {"seed", FieldType::integer},
                                {"mode", FieldType::text},
                                {"restart_budget", FieldType::integer},
                                {"binary", FieldType::boolean},
                                {"output", FieldType::text}})},
        {"percolate", with_dist({{"beta", FieldType::number},
                                 {"gamma_rate", FieldType::number},
                                 {"T", FieldType::number},
                                 {"variant", FieldType::text},
                                 {"sweep_min", FieldType::number},
                                 {"sweep_max", FieldType::number},
                                 {"sweep_points", FieldType::integer},
                                 {"output", FieldType::text}})},
        {"ebcm", with_dist({{"beta", FieldType::number},
                            {"gamma_rate", FieldType::number},
                            {"theta0", FieldType::number},
                            {"t_end", FieldType::number},
                            {"dt", FieldType::number},
                            {"trajectory", FieldType::text},
                            {"output", FieldType::text}})},
        {"simulate", with_dist({{"network", FieldType::text},
                                {"n", FieldType::integer},
                                {"beta", FieldType::number},
                                {"gamma_rate", FieldType::number},
                                {"T", FieldType::number},
                                {"mode", FieldType::text},
                                {"replicates", FieldType::integer},
                                {"cutoff", FieldType::number},
                                {"seed", FieldType::integer},
                                {"threads", FieldType::integer},
                                {"event_log", FieldType::text},
                                {"output", FieldType::text}})},
        {"compare", {{"family", FieldType::text},
                     {"mean", FieldType::number},
                     {"delta", FieldType::integer},
                     {"k_min", FieldType::integer},
                     {"gammas", FieldType::number_array},
                     {"beta_max", FieldType::number},
                     {"beta_points", FieldType::integer},
                     {"tolerance", FieldType::number},
                     {"output", FieldType::text}}},
    };
    return table;
}

bool matches(const json& value, FieldType type) {
    switch (type) {
        case FieldType::number: return value.is_number();
        case FieldType::integer: return value.is_number_integer();
        case FieldType::text: return value.is_string();
        case FieldType::boolean: return value.is_boolean();
        case FieldType::number_array:
            return value.is_array() &&
                   std::all_of(value.begin(), value.end(),
                               [](const json& item) { return item.is_number(); });
    }
    return false;
}

}  // namespace

struct RunConfig::Impl {
    json doc = json::object();
};

RunConfig RunConfig::parse(const std::string& command, const std::string& json_text) {
    const auto schema_it = schemas().find(command);
    if (schema_it == schemas().end()) throw ValidationError("unknown command: " + command);

    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ValidationError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        const auto field = schema_it->second.find(key);
        if (field == schema_it->second.end())
            throw ValidationError("config key '" + key + "' is not recognized by '" + command +
                                  "'");
        if (!matches(value, field->second))
            throw ValidationError("config key '" + key + "' must be a " +
                                  type_name(field->second));
    }

    RunConfig config;
    auto impl = std::make_shared<Impl>();
    impl->doc = std::move(doc);
    config.impl_ = std::move(impl);
    return config;
}

RunConfig RunConfig::empty(const std::string& command) { return parse(command, "{}"); }

bool RunConfig::has(const std::string& key) const { return impl_->doc.contains(key); }

double RunConfig::number(const std::string& key, double fallback) const {
    return impl_->doc.contains(key) ? impl_->doc.at(key).get<double>() : fallback;
}

long long RunConfig::integer(const std::string& key, long long fallback) const {
    return impl_->doc.contains(key) ? impl_->doc.at(key).get<long long>() : fallback;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
    return impl_->doc.contains(key) ? impl_->doc.at(key).get<std::string>() : fallback;
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
    return impl_->doc.contains(key) ? impl_->doc.at(key).get<bool>() : fallback;
}

std::vector<double> RunConfig::numbers(const std::string& key,
                                       std::vector<double> fallback) const {
    return impl_->doc.contains(key) ? impl_->doc.at(key).get<std::vector<double>>() : fallback;
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, schema] : schemas()) {
            (void)schema;
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

}  // namespace netperc::cli
