#include "archcost/oracle.hpp"

#include "archcost/scale.hpp"

namespace archcost {

u128 primitive_flops(const ConvPrimitive& p) {
    u128 v = static_cast<u128>(p.width) * p.height;
    v *= static_cast<u128>(p.kernel) * p.kernel;
    v *= static_cast<u128>(p.in_channels) * p.out_channels;
    return v / static_cast<u128>(p.groups);
}

u128 primitive_params(const ConvPrimitive& p) {
    u128 v = static_cast<u128>(p.kernel) * p.kernel;
    v *= static_cast<u128>(p.in_channels) * p.out_channels;
    return v / static_cast<u128>(p.groups);
}

u128 primitive_mac(const ConvPrimitive& p) {
    u128 io = static_cast<u128>(p.width) * p.height *
              (static_cast<u128>(p.in_channels) + p.out_channels);
    return io + primitive_params(p);
}

u128 primitive_cio(const ConvPrimitive& p) {
    return static_cast<u128>(p.in_channels) * p.out_channels;
}

CostReport oracle_cost(const NetworkSpec& spec) {
    Expansion ex = expand(spec);
    std::vector<StageCtx> ctxs = walk(spec);
    std::vector<std::int64_t> rf = receptive_field(spec);

    CostReport report;
    for (std::size_t i = 0; i < ex.stages.size(); ++i) {
        const StageSpan& span = ex.stages[i];
        StageCost sc;
        sc.index = static_cast<std::int64_t>(i);
        sc.kind = spec.stages[i].block.kind;
        sc.role = spec.stages[i].role;
        sc.width = ctxs[i].width;
        sc.height = ctxs[i].height;
        sc.receptive_field = rf[i];
        for (std::size_t j = span.first; j < span.first + span.count; ++j) {
            const ConvPrimitive& p = ex.prims[j];
            sc.flops += primitive_flops(p);
            sc.params += primitive_params(p);
            sc.mac += primitive_mac(p);
            sc.cio += primitive_cio(p);
        }
        report.flops += sc.flops;
        report.params += sc.params;
        report.mac += sc.mac;
        report.cio += sc.cio;
        report.per_stage.push_back(sc);
    }
    report.receptive_field = rf.empty() ? 0 : rf.back();
    return report;
}

u128 oracle_form_flops(const BlockSpec& block, std::int64_t w, std::int64_t h) {
    bool core_only = block.kind == BlockKind::Dense || block.kind == BlockKind::OSA;
    u128 total = 0;
    for (const ConvPrimitive& p : expand_block(block, w, h, block.base_channels)) {
        if (core_only && p.role != PrimRole::Core) continue;
        total += primitive_flops(p);
    }
    return total;
}

} // namespace archcost
