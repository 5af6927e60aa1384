#include "archcost/ir.hpp"

namespace archcost {

namespace {

struct KindInfo {
    BlockKind kind;
    std::string_view token;
};

constexpr KindInfo kKinds[] = {
    {BlockKind::Res, "res"},
    {BlockKind::ResX, "resx"},
    {BlockKind::Dark, "dark"},
    {BlockKind::Dense, "dense"},
    {BlockKind::OSA, "osa"},
    {BlockKind::CspRes, "csp_res"},
    {BlockKind::CspResX, "csp_resx"},
    {BlockKind::CspDark, "csp_dark"},
    {BlockKind::CspOSA, "csp_osa"},
    {BlockKind::CspOSA_PCB, "csp_osa_pcb"},
    {BlockKind::Conv, "conv"},
    {BlockKind::Conv1, "conv1"},
};

constexpr std::pair<Role, std::string_view> kRoles[] = {
    {Role::Backbone, "backbone"},
    {Role::NeckTopdown, "neck_topdown"},
    {Role::NeckBottomup, "neck_bottomup"},
    {Role::Head, "head"},
};

std::string stage_prefix(std::size_t i) {
    return "stage " + std::to_string(i) + ": ";
}

} // namespace

std::string_view kind_token(BlockKind k) {
    for (const auto& info : kKinds)
        if (info.kind == k) return info.token;
    return "?";
}

std::optional<BlockKind> kind_from_token(std::string_view token) {
    for (const auto& info : kKinds)
        if (info.token == token) return info.kind;
    return std::nullopt;
}

std::string_view role_token(Role r) {
    for (const auto& [role, token] : kRoles)
        if (role == r) return token;
    return "?";
}

std::optional<Role> role_from_token(std::string_view token) {
    for (const auto& [role, tok] : kRoles)
        if (tok == token) return role;
    return std::nullopt;
}

bool kind_takes_growth(BlockKind k) {
    return kind_is_osa_family(k);
}

bool kind_is_osa_family(BlockKind k) {
    return k == BlockKind::Dense || k == BlockKind::OSA || k == BlockKind::CspOSA ||
           k == BlockKind::CspOSA_PCB;
}

bool kind_is_plain_conv(BlockKind k) {
    return k == BlockKind::Conv || k == BlockKind::Conv1;
}

bool kind_is_resx_family(BlockKind k) {
    return k == BlockKind::ResX || k == BlockKind::CspResX;
}

bool kind_absorbs_input(BlockKind k) {
    return k == BlockKind::Dark || k == BlockKind::CspDark || kind_is_plain_conv(k);
}

std::optional<BlockKind> csp_counterpart(BlockKind k) {
    switch (k) {
    case BlockKind::Res: return BlockKind::CspRes;
    case BlockKind::ResX: return BlockKind::CspResX;
    case BlockKind::Dark: return BlockKind::CspDark;
    case BlockKind::OSA: return BlockKind::CspOSA;
    default: return std::nullopt;
    }
}

std::optional<BlockKind> csp_original(BlockKind k) {
    switch (k) {
    case BlockKind::CspRes: return BlockKind::Res;
    case BlockKind::CspResX: return BlockKind::ResX;
    case BlockKind::CspDark: return BlockKind::Dark;
    case BlockKind::CspOSA: return BlockKind::OSA;
    case BlockKind::CspOSA_PCB: return BlockKind::OSA;
    default: return std::nullopt;
    }
}

std::int64_t default_partition(const BlockSpec& b) {
    std::int64_t pool = b.base_channels + b.repeats * b.growth.value_or(0);
    return (pool + 1) / 2;
}

std::int64_t block_output_channels(const BlockSpec& b) {
    std::int64_t g = b.growth.value_or(0);
    std::int64_t pool = b.base_channels + b.repeats * g;
    switch (b.kind) {
    case BlockKind::Dense:
    case BlockKind::OSA:
        return (pool + 1) / 2; // transition halves the aggregated channels
    case BlockKind::CspOSA:
        return (b.base_channels - g) + b.repeats * g;
    case BlockKind::CspOSA_PCB:
        return pool; // active partition + bypass remainder
    default:
        return b.base_channels;
    }
}

namespace {

void validate_block(const BlockSpec& b, std::size_t i) {
    if (b.repeats < 1)
        throw SemanticError(stage_prefix(i) + "repeats must be >= 1");
    if (b.base_channels < 1)
        throw SemanticError(stage_prefix(i) + "base_channels must be >= 1");

    if (b.growth.has_value() && !kind_takes_growth(b.kind))
        throw SemanticError(stage_prefix(i) + "growth forbidden for kind " +
                            std::string(kind_token(b.kind)));
    if (!b.growth.has_value() && kind_takes_growth(b.kind))
        throw SemanticError(stage_prefix(i) + "growth required for kind " +
                            std::string(kind_token(b.kind)));
    if (b.growth.has_value() && *b.growth < 1)
        throw SemanticError(stage_prefix(i) + "growth must be >= 1");

    if (kind_is_resx_family(b.kind)) {
        std::int64_t gw = b.group_width.value_or(kResXGroups);
        if (gw < 1) throw SemanticError(stage_prefix(i) + "group_width must be >= 1");
        if (b.base_channels % (2 * gw) != 0)
            throw SemanticError(stage_prefix(i) + "base_channels must be divisible by 2*group_width (" +
                                std::to_string(2 * gw) + ") for kind " + std::string(kind_token(b.kind)));
    } else if (b.group_width.has_value()) {
        throw SemanticError(stage_prefix(i) + "group_width only applies to resx kinds");
    }

    if (b.kind == BlockKind::CspOSA || b.kind == BlockKind::CspOSA_PCB) {
        if (*b.growth > b.base_channels)
            throw SemanticError(stage_prefix(i) + "growth must not exceed base_channels for kind " +
                                std::string(kind_token(b.kind)));
    }

    if (b.partition_width.has_value()) {
        if (b.kind != BlockKind::CspOSA_PCB)
            throw SemanticError(stage_prefix(i) + "partition_width only applies to kind csp_osa_pcb");
        std::int64_t pool = b.base_channels + b.repeats * *b.growth;
        if (*b.partition_width < 1 || *b.partition_width > pool)
            throw SemanticError(stage_prefix(i) + "partition_width must be in [1, " +
                                std::to_string(pool) + "]");
    }
}

} // namespace

std::vector<StageCtx> walk(const NetworkSpec& spec) {
    if (spec.stages.empty()) throw SemanticError("network has no stages");
    if (spec.input.width < 1 || spec.input.height < 1 || spec.input.channels < 1)
        throw SemanticError("input dimensions must be >= 1");

    std::vector<StageCtx> out(spec.stages.size());

    std::int64_t chain_w = spec.input.width;
    std::int64_t chain_h = spec.input.height;
    std::int64_t chain_c = spec.input.channels;
    std::int64_t chain_level = 0;
    bool have_nonhead = false;

    // Branch state for runs of head stages.
    std::int64_t prev_w = chain_w, prev_h = chain_h, prev_c = chain_c, prev_level = 0;
    Role prev_nonhead_role = Role::Backbone;

    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        const Stage& st = spec.stages[i];
        StageCtx& ctx = out[i];

        bool is_head = st.role == Role::Head;
        if (is_head && i == 0)
            throw SemanticError(stage_prefix(i) + "network cannot begin with a head stage");

        std::int64_t w, h, c, level;
        if (is_head) {
            w = prev_w; h = prev_h; c = prev_c; level = prev_level;
        } else {
            w = chain_w; h = chain_h; c = chain_c; level = chain_level;
        }

        if (st.downsample) {
            w = (w + 1) / 2;
            h = (h + 1) / 2;
            level += 1;
        } else if (st.role == Role::NeckTopdown && have_nonhead &&
                   prev_nonhead_role == Role::NeckTopdown && !is_head) {
            // Consecutive top-down stages climb the pyramid: the feature map
            // is upsampled 2x before the stage computes.
            w *= 2;
            h *= 2;
            level -= 1;
            ctx.upsampled = true;
        }

        ctx.width = w;
        ctx.height = h;
        ctx.in_channels = c;
        ctx.level = level;

        const BlockSpec& blk = st.block;
        if (st.downsample) {
            ctx.block_in = blk.base_channels; // stride-2 conv bridges c -> b
        } else if (c != blk.base_channels && !kind_absorbs_input(blk.kind)) {
            throw SemanticError(stage_prefix(i) + "channel-chain mismatch: kind " +
                                std::string(kind_token(blk.kind)) + " expects " +
                                std::to_string(blk.base_channels) + " input channels, got " +
                                std::to_string(c));
        } else {
            ctx.block_in = c; // leading conv absorbs the chained width
        }

        ctx.out_channels = block_output_channels(blk);

        prev_w = w; prev_h = h; prev_c = ctx.out_channels; prev_level = level;
        if (!is_head) {
            chain_w = w; chain_h = h; chain_c = ctx.out_channels; chain_level = level;
            prev_nonhead_role = st.role;
            have_nonhead = true;
        }
    }
    return out;
}

void validate(const NetworkSpec& spec) {
    for (std::size_t i = 0; i < spec.stages.size(); ++i)
        validate_block(spec.stages[i].block, i);
    walk(spec);
}

} // namespace archcost
