#pragma once

#include "archcost/int128.hpp"
#include "archcost/ir.hpp"

#include <json.hpp>

#include <vector>

namespace archcost {

struct StageCost {
    std::int64_t index = 0;
    BlockKind kind = BlockKind::Dark;
    Role role = Role::Backbone;
    std::int64_t width = 0;
    std::int64_t height = 0;
    u128 flops = 0;
    u128 params = 0;
    u128 mac = 0;
    u128 cio = 0;
    std::int64_t receptive_field = 0;

    bool operator==(const StageCost&) const = default;
};

// Aggregate cost of one network. flops/params/mac/cio totals equal the sum
// of the per-stage entries; receptive_field is the final stage's (it does
// not accumulate additively).
struct CostReport {
    u128 flops = 0;
    u128 params = 0;
    u128 mac = 0;
    u128 cio = 0;
    std::int64_t receptive_field = 0;
    std::vector<StageCost> per_stage;

    bool operator==(const CostReport&) const = default;

    nlohmann::json to_json() const;
    static CostReport from_json(const nlohmann::json& j);
};

// Counts serialize as JSON integers when they fit in 64 bits, otherwise as
// decimal strings.
nlohmann::json count_to_json(u128 v);
u128 count_from_json(const nlohmann::json& j);

// "12.3 G" style rendering; raw values stay authoritative.
std::string humanize(u128 v);

} // namespace archcost
