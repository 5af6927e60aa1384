#include "archcost/expand.hpp"

namespace archcost {

namespace {

ConvPrimitive conv(std::int64_t w, std::int64_t h, std::int64_t cin, std::int64_t cout,
                   std::int64_t kernel, PrimRole role, std::int64_t groups = 1,
                   std::int64_t stride = 1) {
    ConvPrimitive p;
    p.width = w;
    p.height = h;
    p.in_channels = cin;
    p.out_channels = cout;
    p.kernel = kernel;
    p.groups = groups;
    p.stride = stride;
    p.role = role;
    return p;
}

std::int64_t split_or_throw(std::int64_t channels, std::int64_t div, std::size_t stage_index) {
    std::int64_t part = channels / div; // round down; remainder rejoins at the final 1x1
    if (part < 1)
        throw SemanticError("stage " + std::to_string(stage_index) + ": channel count " +
                            std::to_string(channels) + " cannot be split " +
                            std::to_string(div) + " ways");
    return part;
}

} // namespace

std::vector<ConvPrimitive> expand_block(const BlockSpec& block, std::int64_t w, std::int64_t h,
                                        std::int64_t in_channels, std::size_t stage_index) {
    const std::int64_t b = block.base_channels;
    const std::int64_t k = block.repeats;
    const std::int64_t g = block.growth.value_or(0);
    std::vector<ConvPrimitive> out;

    switch (block.kind) {
    case BlockKind::Dark: {
        std::int64_t h2 = split_or_throw(b, 2, stage_index);
        for (std::int64_t r = 0; r < k; ++r) {
            std::int64_t cin = (r == 0) ? in_channels : b;
            out.push_back(conv(w, h, cin, h2, 1, PrimRole::Core));
            out.push_back(conv(w, h, h2, b, 3, PrimRole::Core));
        }
        break;
    }
    case BlockKind::Res: {
        std::int64_t q = split_or_throw(b, 4, stage_index);
        for (std::int64_t r = 0; r < k; ++r) {
            out.push_back(conv(w, h, b, q, 1, PrimRole::Core));
            out.push_back(conv(w, h, q, q, 3, PrimRole::Core));
            out.push_back(conv(w, h, q, b, 1, PrimRole::Core));
        }
        break;
    }
    case BlockKind::ResX: {
        std::int64_t h2 = split_or_throw(b, 2, stage_index);
        std::int64_t groups = block.group_width.value_or(kResXGroups);
        for (std::int64_t r = 0; r < k; ++r) {
            out.push_back(conv(w, h, b, h2, 1, PrimRole::Core));
            out.push_back(conv(w, h, h2, h2, 3, PrimRole::Core, groups));
            out.push_back(conv(w, h, h2, b, 1, PrimRole::Core));
        }
        break;
    }
    case BlockKind::CspDark: {
        std::int64_t h2 = split_or_throw(b, 2, stage_index);
        out.push_back(conv(w, h, in_channels, h2, 1, PrimRole::Core)); // entry
        for (std::int64_t r = 0; r < k; ++r) {
            out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core));
            out.push_back(conv(w, h, h2, h2, 3, PrimRole::Core));
        }
        out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core)); // post
        break;
    }
    case BlockKind::CspRes: {
        std::int64_t h2 = split_or_throw(b, 2, stage_index);
        std::int64_t q = split_or_throw(b, 4, stage_index);
        out.push_back(conv(w, h, b, h2, 1, PrimRole::Core));
        for (std::int64_t r = 0; r < k; ++r) {
            out.push_back(conv(w, h, h2, q, 1, PrimRole::Core));
            out.push_back(conv(w, h, q, q, 3, PrimRole::Core));
            out.push_back(conv(w, h, q, h2, 1, PrimRole::Core));
        }
        out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core));
        break;
    }
    case BlockKind::CspResX: {
        std::int64_t h2 = split_or_throw(b, 2, stage_index);
        std::int64_t groups = block.group_width.value_or(kResXGroups);
        out.push_back(conv(w, h, b, h2, 1, PrimRole::Core));
        for (std::int64_t r = 0; r < k; ++r) {
            out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core));
            out.push_back(conv(w, h, h2, h2, 3, PrimRole::Core, groups));
            out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core));
        }
        out.push_back(conv(w, h, h2, h2, 1, PrimRole::Core));
        break;
    }
    case BlockKind::Dense: {
        for (std::int64_t r = 0; r < k; ++r)
            out.push_back(conv(w, h, b + r * g, g, 1, PrimRole::Core));
        std::int64_t pool = b + k * g;
        out.push_back(conv(w, h, pool, (pool + 1) / 2, 1, PrimRole::Transition));
        break;
    }
    case BlockKind::OSA: {
        out.push_back(conv(w, h, b, g, 1, PrimRole::Core));
        for (std::int64_t r = 1; r < k; ++r)
            out.push_back(conv(w, h, g, g, 1, PrimRole::Core));
        std::int64_t pool = b + k * g;
        out.push_back(conv(w, h, pool, (pool + 1) / 2, 1, PrimRole::Transition));
        break;
    }
    case BlockKind::CspOSA: {
        for (std::int64_t r = 0; r < k; ++r)
            out.push_back(conv(w, h, g, g, 1, PrimRole::Core));
        out.push_back(conv(w, h, k * g, k * g, 1, PrimRole::Transition));
        break;
    }
    case BlockKind::CspOSA_PCB: {
        for (std::int64_t r = 0; r < k; ++r)
            out.push_back(conv(w, h, g, g, 1, PrimRole::Core));
        std::int64_t p = block.partition_width.value_or(default_partition(block));
        out.push_back(conv(w, h, p, p, 1, PrimRole::Transition));
        break;
    }
    case BlockKind::Conv:
    case BlockKind::Conv1: {
        std::int64_t kernel = (block.kind == BlockKind::Conv) ? 3 : 1;
        for (std::int64_t r = 0; r < k; ++r) {
            std::int64_t cin = (r == 0) ? in_channels : b;
            out.push_back(conv(w, h, cin, b, kernel, PrimRole::Core));
        }
        break;
    }
    }
    return out;
}

Expansion expand(const NetworkSpec& spec) {
    validate(spec);
    std::vector<StageCtx> ctxs = walk(spec);

    Expansion ex;
    ex.stages.reserve(spec.stages.size());

    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        const Stage& st = spec.stages[i];
        const StageCtx& ctx = ctxs[i];
        StageSpan span;
        span.first = ex.prims.size();

        if (st.downsample && kind_is_plain_conv(st.block.kind)) {
            // The stage's own first conv takes the stride.
            auto prims = expand_block(st.block, ctx.width, ctx.height, ctx.in_channels, i);
            prims.front().stride = 2;
            ex.prims.insert(ex.prims.end(), prims.begin(), prims.end());
        } else {
            if (st.downsample) {
                ConvPrimitive ds;
                ds.width = ctx.width;
                ds.height = ctx.height;
                ds.in_channels = ctx.in_channels;
                ds.out_channels = st.block.base_channels;
                ds.kernel = 3;
                ds.stride = 2;
                ds.role = PrimRole::Downsample;
                ex.prims.push_back(ds);
            }
            auto prims = expand_block(st.block, ctx.width, ctx.height, ctx.block_in, i);
            ex.prims.insert(ex.prims.end(), prims.begin(), prims.end());
        }

        span.count = ex.prims.size() - span.first;
        ex.stages.push_back(span);
    }
    return ex;
}

} // namespace archcost
