#include "archcost/cost.hpp"

#include "archcost/scale.hpp"

namespace archcost {

namespace {

i128 ii(std::int64_t v) { return static_cast<i128>(v); }

u128 to_count(const Rational& r) {
    i128 v = r.round_nearest();
    if (v < 0) throw std::domain_error("negative cost");
    return static_cast<u128>(v);
}

std::int64_t require_growth(BlockKind kind, std::optional<std::int64_t> g) {
    if (!g.has_value())
        throw SemanticError("growth required for kind " + std::string(kind_token(kind)));
    return *g;
}

// Per-stage closed-form metrics, all resolution-independent except flops
// and the h*w term of mac:
//   weights  = parameter count (kernel^2 * Cin * Cout / groups summed)
//   chansum  = sum of (Cin + Cout) over convs, the mac I/O coefficient
//   products = sum of Cin * Cout, the cio accounting
struct BlockSums {
    u128 per_pixel_flops = 0;
    u128 weights = 0;
    u128 chansum = 0;
    u128 products = 0;
};

void add_conv(BlockSums& s, std::int64_t cin, std::int64_t cout, std::int64_t kernel_area,
              std::int64_t groups = 1) {
    u128 prod = static_cast<u128>(cin) * cout;
    u128 weighted = prod * static_cast<u128>(kernel_area) / static_cast<u128>(groups);
    s.per_pixel_flops += weighted;
    s.weights += weighted;
    s.chansum += static_cast<u128>(cin) + cout;
    s.products += prod;
}

void add_repeated(BlockSums& s, std::int64_t reps, std::int64_t cin, std::int64_t cout,
                  std::int64_t kernel_area, std::int64_t groups = 1) {
    if (reps <= 0) return;
    u128 n = static_cast<u128>(reps);
    u128 prod = static_cast<u128>(cin) * cout;
    u128 weighted = prod * static_cast<u128>(kernel_area) / static_cast<u128>(groups);
    s.per_pixel_flops += n * weighted;
    s.weights += n * weighted;
    s.chansum += n * (static_cast<u128>(cin) + cout);
    s.products += n * prod;
}

// Closed-form equivalents of the documented channel plans, multiplied out
// over the repeat count. `in` is the width arriving at the leading conv.
BlockSums block_sums(const BlockSpec& block, std::int64_t in) {
    const std::int64_t b = block.base_channels;
    const std::int64_t k = block.repeats;
    const std::int64_t g = block.growth.value_or(0);
    BlockSums s;

    switch (block.kind) {
    case BlockKind::Dark: {
        std::int64_t h2 = b / 2;
        add_conv(s, in, h2, 1);
        add_repeated(s, k - 1, b, h2, 1);
        add_repeated(s, k, h2, b, 9);
        break;
    }
    case BlockKind::Res: {
        std::int64_t q = b / 4;
        add_repeated(s, k, b, q, 1);
        add_repeated(s, k, q, q, 9);
        add_repeated(s, k, q, b, 1);
        break;
    }
    case BlockKind::ResX: {
        std::int64_t h2 = b / 2;
        add_repeated(s, k, b, h2, 1);
        add_repeated(s, k, h2, h2, 9, block.group_width.value_or(kResXGroups));
        add_repeated(s, k, h2, b, 1);
        break;
    }
    case BlockKind::CspDark: {
        std::int64_t h2 = b / 2;
        add_conv(s, in, h2, 1);
        add_repeated(s, k, h2, h2, 1);
        add_repeated(s, k, h2, h2, 9);
        add_conv(s, h2, h2, 1);
        break;
    }
    case BlockKind::CspRes: {
        std::int64_t h2 = b / 2, q = b / 4;
        add_conv(s, b, h2, 1);
        add_repeated(s, k, h2, q, 1);
        add_repeated(s, k, q, q, 9);
        add_repeated(s, k, q, h2, 1);
        add_conv(s, h2, h2, 1);
        break;
    }
    case BlockKind::CspResX: {
        std::int64_t h2 = b / 2;
        add_conv(s, b, h2, 1);
        add_repeated(s, k, h2, h2, 1);
        add_repeated(s, k, h2, h2, 9, block.group_width.value_or(kResXGroups));
        add_repeated(s, k, h2, h2, 1);
        add_conv(s, h2, h2, 1);
        break;
    }
    case BlockKind::Dense: {
        // sum_i (b + (i-1)g) * g = k*b*g + g^2*k(k-1)/2, all 1x1
        u128 core = static_cast<u128>(k) * b * g +
                    static_cast<u128>(k) * (k - 1) / 2 * g * g;
        s.per_pixel_flops += core;
        s.weights += core;
        s.products += core;
        s.chansum += static_cast<u128>(k) * (b + g) + static_cast<u128>(k) * (k - 1) / 2 * g;
        std::int64_t pool = b + k * g;
        add_conv(s, pool, (pool + 1) / 2, 1);
        break;
    }
    case BlockKind::OSA: {
        add_conv(s, b, g, 1);
        add_repeated(s, k - 1, g, g, 1);
        std::int64_t pool = b + k * g;
        add_conv(s, pool, (pool + 1) / 2, 1);
        break;
    }
    case BlockKind::CspOSA: {
        add_repeated(s, k, g, g, 1);
        add_conv(s, k * g, k * g, 1);
        break;
    }
    case BlockKind::CspOSA_PCB: {
        add_repeated(s, k, g, g, 1);
        std::int64_t p = block.partition_width.value_or(default_partition(block));
        add_conv(s, p, p, 1);
        break;
    }
    case BlockKind::Conv:
    case BlockKind::Conv1: {
        std::int64_t area = (block.kind == BlockKind::Conv) ? 9 : 1;
        add_conv(s, in, b, area);
        add_repeated(s, k - 1, b, b, area);
        break;
    }
    }
    return s;
}

} // namespace

u128 layer_flops(BlockKind kind, std::int64_t w, std::int64_t h, std::int64_t k, std::int64_t b,
                 std::optional<std::int64_t> g) {
    Rational wh = Rational::of(ii(w) * ii(h));
    Rational b2 = Rational::of(ii(b) * ii(b));
    Rational K = Rational::of(k);

    switch (kind) {
    case BlockKind::Res:
        return to_count(wh * K * b2 * Rational(17, 16));
    case BlockKind::ResX:
        return to_count(wh * K * b2 * Rational(137, 128));
    case BlockKind::Dark:
        return to_count(wh * K * b2 * Rational(5, 1));
    case BlockKind::CspRes:
        return to_count(wh * b2 * (Rational(3, 4) + Rational(13, 16) * K));
    case BlockKind::CspResX:
        return to_count(wh * b2 * (Rational(3, 4) + Rational(73, 128) * K));
    case BlockKind::CspDark:
        return to_count(wh * b2 * (Rational(3, 4) + Rational(5, 2) * K));
    case BlockKind::Dense: {
        i128 gg = ii(require_growth(kind, g));
        Rational core = Rational::of(ii(w) * ii(h) * gg * ii(b) * ii(k)) +
                        Rational::of(ii(w) * ii(h) * gg * gg * ii(k) * ii(k - 1), 2);
        return to_count(core);
    }
    case BlockKind::OSA: {
        i128 gg = ii(require_growth(kind, g));
        return to_count(Rational::of(ii(w) * ii(h) * ii(b) * gg) +
                        Rational::of(ii(w) * ii(h) * gg * gg * ii(k - 1)));
    }
    case BlockKind::CspOSA: {
        i128 gg = ii(require_growth(kind, g));
        return to_count(Rational::of(ii(w) * ii(h) * gg * gg * ii(k)) +
                        Rational::of(ii(w) * ii(h) * (ii(k) * gg) * (ii(k) * gg)));
    }
    case BlockKind::CspOSA_PCB: {
        i128 gg = ii(require_growth(kind, g));
        Rational pool = Rational::of(ii(b) + ii(k) * gg);
        Rational half = pool / Rational(2, 1);
        return to_count(Rational::of(ii(w) * ii(h) * gg * gg * ii(k)) +
                        Rational::of(ii(w) * ii(h)) * half * half);
    }
    case BlockKind::Conv:
        return to_count(wh * K * b2 * Rational(9, 1));
    case BlockKind::Conv1:
        return to_count(wh * K * b2);
    }
    throw SemanticError("unhandled block kind");
}

u128 apply_scaling(u128 base, ScaleFactorKind kind, const Rational& factor) {
    if (!factor.is_positive()) throw SemanticError("scaling factor must be > 0");
    Rational f = factor;
    if (kind != ScaleFactorKind::Depth) f = f * f; // size and width scale quadratically
    Rational scaled = Rational::of(static_cast<i128>(base)) * f;
    return to_count(scaled);
}

u128 mac(std::int64_t h, std::int64_t w, std::int64_t c_in, std::int64_t c_out,
         std::int64_t kernel_area) {
    u128 io = static_cast<u128>(h) * w * (static_cast<u128>(c_in) + c_out);
    u128 weights = static_cast<u128>(kernel_area) * c_in * c_out;
    return io + weights;
}

u128 cio(CioVariant variant, std::int64_t b, std::int64_t g, std::int64_t k) {
    Rational pool = Rational::of(ii(b) + ii(k) * ii(g));
    Rational core = Rational::of(ii(k) * ii(g) * ii(g));
    switch (variant) {
    case CioVariant::Osa: {
        Rational r = Rational::of(ii(b) * ii(g)) + Rational::of(ii(k - 1) * ii(g) * ii(g)) +
                     pool * pool / Rational(2, 1);
        return to_count(r);
    }
    case CioVariant::CspOsa: {
        Rational kg = Rational::of(ii(k) * ii(g));
        return to_count(core + kg * kg);
    }
    case CioVariant::CspOsaPcb:
        return to_count(core + pool * pool / Rational(4, 1));
    }
    throw SemanticError("unhandled cio variant");
}

u128 csp_stage_flops(std::int64_t w, std::int64_t h, std::int64_t k, std::int64_t b) {
    if (k < 1) throw SemanticError("repeats must be >= 1");
    Rational r = Rational::of(ii(w) * ii(h) * ii(b) * ii(b)) *
                 (Rational(9, 4) + Rational(3, 4) + Rational(5, 2) * Rational::of(ii(k)));
    return to_count(r);
}

Rational asymptotic_csp_saving_exact(SavingKind kind) {
    switch (kind) {
    case SavingKind::Res: return Rational(1, 1) - Rational(13, 17);
    case SavingKind::ResX: return Rational(1, 1) - Rational(73, 137);
    case SavingKind::Dark: return Rational(1, 2);
    }
    throw SemanticError("unhandled saving kind");
}

double asymptotic_csp_saving(SavingKind kind) {
    return asymptotic_csp_saving_exact(kind).to_double();
}

CostReport analyze(const NetworkSpec& spec) {
    validate(spec);
    std::vector<StageCtx> ctxs = walk(spec);
    std::vector<std::int64_t> rf = receptive_field(spec);

    CostReport report;
    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        const Stage& st = spec.stages[i];
        const StageCtx& ctx = ctxs[i];
        u128 wh = static_cast<u128>(ctx.width) * ctx.height;

        BlockSums sums;
        if (st.downsample && kind_is_plain_conv(st.block.kind)) {
            // The stage's own first conv takes the stride; no extra term.
            sums = block_sums(st.block, ctx.in_channels);
        } else {
            sums = block_sums(st.block, ctx.block_in);
            if (st.downsample)
                add_conv(sums, ctx.in_channels, st.block.base_channels, 9);
        }

        StageCost sc;
        sc.index = static_cast<std::int64_t>(i);
        sc.kind = st.block.kind;
        sc.role = st.role;
        sc.width = ctx.width;
        sc.height = ctx.height;
        sc.flops = wh * sums.per_pixel_flops;
        sc.params = sums.weights;
        sc.mac = wh * sums.chansum + sums.weights;
        sc.cio = sums.products;
        sc.receptive_field = rf[i];

        report.flops += sc.flops;
        report.params += sc.params;
        report.mac += sc.mac;
        report.cio += sc.cio;
        report.per_stage.push_back(sc);
    }
    report.receptive_field = rf.empty() ? 0 : rf.back();
    return report;
}

} // namespace archcost
