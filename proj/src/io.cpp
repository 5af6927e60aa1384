#include "archcost/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace archcost {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) throw SemanticError("unknown key \"" + key + "\" in " + where);
    }
}

std::int64_t require_int(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw SemanticError("missing key \"" + std::string(key) + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw SemanticError("key \"" + std::string(key) + "\" in " + where + " must be an integer");
    return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw SemanticError("missing key \"" + std::string(key) + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_string())
        throw SemanticError("key \"" + std::string(key) + "\" in " + where + " must be a string");
    return v.get<std::string>();
}

bool require_bool(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw SemanticError("missing key \"" + std::string(key) + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw SemanticError("key \"" + std::string(key) + "\" in " + where + " must be a boolean");
    return v.get<bool>();
}

} // namespace

NetworkSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
    if (!doc.is_object()) throw SemanticError("document root must be an object");
    check_keys(doc, {"name", "input", "stages"}, "document");

    NetworkSpec spec;
    spec.name = require_string(doc, "name", "document");

    if (!doc.contains("input") || !doc.at("input").is_object())
        throw SemanticError("missing or malformed \"input\" object");
    const json& in = doc.at("input");
    check_keys(in, {"width", "height", "channels"}, "input");
    spec.input.width = require_int(in, "width", "input");
    spec.input.height = require_int(in, "height", "input");
    spec.input.channels = require_int(in, "channels", "input");

    if (!doc.contains("stages") || !doc.at("stages").is_array())
        throw SemanticError("missing or malformed \"stages\" array");

    std::size_t idx = 0;
    for (const json& s : doc.at("stages")) {
        std::string where = "stage " + std::to_string(idx);
        if (!s.is_object()) throw SemanticError(where + " must be an object");
        check_keys(s, {"kind", "repeats", "base_channels", "growth", "partition_width",
                       "downsample", "role"},
                   where);

        Stage st;
        std::string kind_str = require_string(s, "kind", where);
        auto kind = kind_from_token(kind_str);
        if (!kind) throw SemanticError(where + ": unknown kind \"" + kind_str + "\"");
        st.block.kind = *kind;
        st.block.repeats = require_int(s, "repeats", where);
        st.block.base_channels = require_int(s, "base_channels", where);
        if (s.contains("growth")) st.block.growth = require_int(s, "growth", where);
        if (s.contains("partition_width"))
            st.block.partition_width = require_int(s, "partition_width", where);
        st.downsample = require_bool(s, "downsample", where);
        std::string role_str = require_string(s, "role", where);
        auto role = role_from_token(role_str);
        if (!role) throw SemanticError(where + ": unknown role \"" + role_str + "\"");
        st.role = *role;

        spec.stages.push_back(st);
        ++idx;
    }

    validate(spec);
    return spec;
}

std::string serialize_spec(const NetworkSpec& spec) {
    json doc;
    doc["name"] = spec.name;
    doc["input"] = {{"width", spec.input.width},
                    {"height", spec.input.height},
                    {"channels", spec.input.channels}};
    json stages = json::array();
    for (const Stage& st : spec.stages) {
        json s;
        s["kind"] = std::string(kind_token(st.block.kind));
        s["repeats"] = st.block.repeats;
        s["base_channels"] = st.block.base_channels;
        if (st.block.growth) s["growth"] = *st.block.growth;
        if (st.block.partition_width) s["partition_width"] = *st.block.partition_width;
        s["downsample"] = st.downsample;
        s["role"] = std::string(role_token(st.role));
        stages.push_back(std::move(s));
    }
    doc["stages"] = std::move(stages);
    return doc.dump(2) + "\n";
}

NetworkSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open architecture file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

} // namespace archcost
