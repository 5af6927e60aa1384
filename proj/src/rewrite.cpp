#include "archcost/rewrite.hpp"

#include <algorithm>
#include <set>

namespace archcost {

using nlohmann::json;

namespace {

double delta(u128 before, u128 after) {
    if (before == 0) return 0.0;
    return 1.0 - static_cast<double>(after) / static_cast<double>(before);
}

RewriteReport make_report(const NetworkSpec& before, const NetworkSpec& after,
                          std::vector<std::string> log) {
    RewriteReport r;
    r.before = analyze(before);
    r.after = analyze(after);
    r.flops_delta = delta(r.before.flops, r.after.flops);
    r.params_delta = delta(r.before.params, r.after.params);
    r.transform_log = std::move(log);
    return r;
}

bool role_in_scope(Role role, CspScope scope) {
    switch (scope) {
    case CspScope::Backbone: return role == Role::Backbone;
    case CspScope::Neck: return role == Role::NeckTopdown || role == Role::NeckBottomup;
    case CspScope::All: return true;
    }
    return false;
}

} // namespace

json RewriteReport::to_json() const {
    json j;
    j["before"] = before.to_json();
    j["after"] = after.to_json();
    j["flops_delta"] = flops_delta;
    j["params_delta"] = params_delta;
    j["transform_log"] = transform_log;
    return j;
}

std::pair<NetworkSpec, RewriteReport> cspize(const NetworkSpec& spec, CspScope scope) {
    validate(spec);
    NetworkSpec out = spec;
    std::vector<std::string> log;
    for (std::size_t i = 0; i < out.stages.size(); ++i) {
        Stage& st = out.stages[i];
        if (!role_in_scope(st.role, scope)) continue;
        auto counterpart = csp_counterpart(st.block.kind);
        if (!counterpart) continue;
        log.push_back("stage " + std::to_string(i) + ": " +
                      std::string(kind_token(st.block.kind)) + " -> " +
                      std::string(kind_token(*counterpart)));
        st.block.kind = *counterpart;
    }
    return {out, make_report(spec, out, std::move(log))};
}

PartitionPlan plan_pcb_partition(std::int64_t b, std::int64_t k, std::int64_t g,
                                 std::int64_t tau) {
    if (b < 1 || k < 1 || g < 1) throw SemanticError("b, k, g must be >= 1");
    if (tau < 1) throw SemanticError("bandwidth tau must be >= 1");
    PartitionPlan plan;
    plan.total_channels = b + k * g;
    plan.split_point = (plan.total_channels + 1) / 2;
    plan.bandwidth = tau;
    plan.rounded_split = ((plan.total_channels + 2 * tau - 1) / (2 * tau)) * tau;
    if (plan.rounded_split > plan.total_channels)
        throw SemanticError("bandwidth " + std::to_string(tau) +
                            " exceeds the channel pool " + std::to_string(plan.total_channels));
    return plan;
}

NetworkSpec revert_first_stage(const NetworkSpec& spec) {
    validate(spec);
    NetworkSpec out = spec;
    for (Stage& st : out.stages) {
        if (st.role != Role::Backbone || kind_is_plain_conv(st.block.kind)) continue;
        auto original = csp_original(st.block.kind);
        if (!original) throw SemanticError("first stage not CSP");
        st.block.kind = *original;
        st.block.partition_width.reset();
        validate(out);
        return out;
    }
    throw SemanticError("no backbone block stage to revert");
}

std::pair<NetworkSpec, RewriteReport> prune_heads(const NetworkSpec& spec,
                                                  const std::vector<std::string>& remove) {
    validate(spec);
    std::vector<StageCtx> ctxs = walk(spec);

    std::int64_t top = 0;
    for (std::size_t i = 0; i < spec.stages.size(); ++i)
        if (spec.stages[i].role == Role::Backbone) top = std::max(top, ctxs[i].level);

    std::set<std::int64_t> levels;
    for (const std::string& name : remove) {
        if (name.size() < 2 || (name[0] != 'P' && name[0] != 'p'))
            throw SemanticError("unknown stage name \"" + name + "\" (expected P<level>)");
        std::int64_t lvl = 0;
        try {
            lvl = std::stoll(name.substr(1));
        } catch (const std::exception&) {
            throw SemanticError("unknown stage name \"" + name + "\"");
        }
        if (lvl < 1 || lvl > top)
            throw SemanticError("unknown stage name \"" + name + "\": no pyramid level " +
                                std::to_string(lvl));
        levels.insert(lvl);
    }
    if (levels.empty()) throw SemanticError("no stages named for removal");

    // Must be a contiguous suffix from the top of the pyramid.
    std::int64_t expect = top;
    for (auto it = levels.rbegin(); it != levels.rend(); ++it, --expect)
        if (*it != expect)
            throw SemanticError("non-contiguous removal: pyramid levels must be removed "
                                "from the top down");

    NetworkSpec out = spec;
    out.stages.clear();
    std::vector<std::string> log;
    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        if (levels.count(ctxs[i].level)) {
            log.push_back("stage " + std::to_string(i) + " (" +
                          std::string(kind_token(spec.stages[i].block.kind)) + ", P" +
                          std::to_string(ctxs[i].level) + "): removed");
            continue;
        }
        out.stages.push_back(spec.stages[i]);
    }
    validate(out);
    return {out, make_report(spec, out, std::move(log))};
}

} // namespace archcost
