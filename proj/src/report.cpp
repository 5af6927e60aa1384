#include "archcost/report.hpp"

#include <array>
#include <cstdio>

namespace archcost {

using nlohmann::json;

json count_to_json(u128 v) {
    if (v <= static_cast<u128>(UINT64_MAX)) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

u128 count_from_json(const json& j) {
    if (j.is_string()) return u128_from_string(j.get<std::string>());
    return static_cast<u128>(j.get<std::uint64_t>());
}

std::string humanize(u128 v) {
    static constexpr std::array<const char*, 4> units = {"", "K", "M", "G"};
    double x = static_cast<double>(v);
    std::size_t u = 0;
    while (x >= 1000.0 && u + 1 < units.size()) {
        x /= 1000.0;
        ++u;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), u == 0 ? "%.0f%s" : "%.2f %s", x, units[u]);
    return buf;
}

json CostReport::to_json() const {
    json j;
    j["flops"] = count_to_json(flops);
    j["params"] = count_to_json(params);
    j["mac"] = count_to_json(mac);
    j["cio"] = count_to_json(cio);
    j["receptive_field"] = receptive_field;
    json stages = json::array();
    for (const StageCost& s : per_stage) {
        json e;
        e["index"] = s.index;
        e["kind"] = std::string(kind_token(s.kind));
        e["role"] = std::string(role_token(s.role));
        e["width"] = s.width;
        e["height"] = s.height;
        e["flops"] = count_to_json(s.flops);
        e["params"] = count_to_json(s.params);
        e["mac"] = count_to_json(s.mac);
        e["cio"] = count_to_json(s.cio);
        e["receptive_field"] = s.receptive_field;
        stages.push_back(std::move(e));
    }
    j["per_stage"] = std::move(stages);
    return j;
}

CostReport CostReport::from_json(const json& j) {
    CostReport r;
    r.flops = count_from_json(j.at("flops"));
    r.params = count_from_json(j.at("params"));
    r.mac = count_from_json(j.at("mac"));
    r.cio = count_from_json(j.at("cio"));
    r.receptive_field = j.at("receptive_field").get<std::int64_t>();
    for (const json& e : j.at("per_stage")) {
        StageCost s;
        s.index = e.at("index").get<std::int64_t>();
        s.kind = kind_from_token(e.at("kind").get<std::string>()).value();
        s.role = role_from_token(e.at("role").get<std::string>()).value();
        s.width = e.at("width").get<std::int64_t>();
        s.height = e.at("height").get<std::int64_t>();
        s.flops = count_from_json(e.at("flops"));
        s.params = count_from_json(e.at("params"));
        s.mac = count_from_json(e.at("mac"));
        s.cio = count_from_json(e.at("cio"));
        s.receptive_field = e.at("receptive_field").get<std::int64_t>();
        r.per_stage.push_back(std::move(s));
    }
    return r;
}

} // namespace archcost
