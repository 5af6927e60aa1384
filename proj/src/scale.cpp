#include "archcost/scale.hpp"

#include "archcost/expand.hpp"
#include "archcost/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace archcost {

const std::int64_t kDepthSchedule[7] = {1, 3, 15, 15, 7, 7, 7};

namespace {

// 3x3 convs a block contributes per repeat along its main path; the
// pointwise OSA-family blocks are receptive-field transparent.
std::int64_t threes_per_repeat(BlockKind kind) {
    switch (kind) {
    case BlockKind::Res:
    case BlockKind::ResX:
    case BlockKind::Dark:
    case BlockKind::CspRes:
    case BlockKind::CspResX:
    case BlockKind::CspDark:
    case BlockKind::Conv:
        return 1;
    default:
        return 0;
    }
}

} // namespace

std::vector<RfDetail> receptive_field_detail(const NetworkSpec& spec) {
    std::vector<StageCtx> ctxs = walk(spec);
    std::vector<RfDetail> out(spec.stages.size());

    RfDetail chain; // rf = 1, jump = 1
    RfDetail last_nonhead = chain;

    for (std::size_t i = 0; i < spec.stages.size(); ++i) {
        const Stage& st = spec.stages[i];
        RfDetail cur = (st.role == Role::Head) ? ((i > 0) ? out[i - 1] : chain) : last_nonhead;
        if (st.role == Role::Head && i > 0 && spec.stages[i - 1].role != Role::Head)
            cur = last_nonhead;

        if (ctxs[i].upsampled) cur.jump = std::max<std::int64_t>(1, cur.jump / 2);

        std::int64_t threes = threes_per_repeat(st.block.kind) * st.block.repeats;
        if (st.downsample) {
            if (kind_is_plain_conv(st.block.kind)) {
                // first conv carries the stride
                if (st.block.kind == BlockKind::Conv) cur.rf += 2 * cur.jump;
                cur.jump *= 2;
                threes -= (st.block.kind == BlockKind::Conv) ? 1 : 0;
            } else {
                cur.rf += 2 * cur.jump; // stage downsample conv
                cur.jump *= 2;
            }
        }
        cur.rf += 2 * cur.jump * threes;

        out[i] = cur;
        if (st.role != Role::Head) last_nonhead = cur;
    }
    return out;
}

std::vector<std::int64_t> receptive_field(const NetworkSpec& spec) {
    std::vector<RfDetail> detail = receptive_field_detail(spec);
    std::vector<std::int64_t> out(detail.size());
    for (std::size_t i = 0; i < detail.size(); ++i) out[i] = detail[i].rf;
    return out;
}

namespace {

// Smallest MAC over integer factor pairs of `product` at resolution h*w.
u128 best_balanced_mac(std::int64_t h, std::int64_t w, u128 product, std::int64_t kernel_area) {
    u128 best = ~static_cast<u128>(0);
    for (std::int64_t a = 1; static_cast<u128>(a) * a <= product; ++a) {
        if (product % a != 0) continue;
        std::int64_t bch = static_cast<std::int64_t>(product / a);
        best = std::min(best, mac(h, w, a, bch, kernel_area));
    }
    return best;
}

std::string fmt_ratio(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

} // namespace

TinyReport check_tiny_principles(const NetworkSpec& spec, std::int64_t tau) {
    validate(spec);
    if (tau < 1) throw SemanticError("bandwidth tau must be >= 1");
    std::vector<StageCtx> ctxs = walk(spec);
    TinyReport report;

    // 1. sub-quadratic growth in base channels
    {
        bool pass = true;
        std::ostringstream detail;
        for (std::size_t i = 0; i < spec.stages.size(); ++i) {
            const BlockSpec& blk = spec.stages[i].block;
            if (kind_is_plain_conv(blk.kind)) continue;
            BlockSpec doubled = blk;
            doubled.base_channels *= 2;
            if (blk.kind == BlockKind::CspOSA_PCB) doubled.partition_width.reset();
            u128 f1 = layer_flops(blk.kind, 1, 1, blk.repeats, blk.base_channels, blk.growth);
            u128 f2 = layer_flops(doubled.kind, 1, 1, doubled.repeats, doubled.base_channels,
                                  doubled.growth);
            double ratio = f1 == 0 ? 0.0 : static_cast<double>(f2) / static_cast<double>(f1);
            if (!(ratio < 4.0)) {
                pass = false;
                detail << "stage " << i << " (" << kind_token(blk.kind) << "): ratio "
                       << fmt_ratio(ratio) << "; ";
            }
        }
        report.principles.push_back({"computation-order", pass,
                                     pass ? "all block stages grow sub-quadratically"
                                          : detail.str()});
    }

    // 2. balanced PCB partition under bandwidth rounding
    {
        bool pass = true;
        bool any = false;
        std::ostringstream detail;
        for (std::size_t i = 0; i < spec.stages.size(); ++i) {
            const BlockSpec& blk = spec.stages[i].block;
            if (blk.kind != BlockKind::CspOSA_PCB) continue;
            any = true;
            std::int64_t pool = blk.base_channels + blk.repeats * *blk.growth;
            std::int64_t want = ((pool + 2 * tau - 1) / (2 * tau)) * tau;
            std::int64_t got = blk.partition_width.value_or(default_partition(blk));
            if (got != want) {
                pass = false;
                detail << "stage " << i << ": partition " << got << " != balanced " << want
                       << " (tau " << tau << "); ";
            }
        }
        report.principles.push_back({"balanced-partition", pass,
                                     pass ? (any ? "all PCB partitions balanced"
                                                 : "no PCB stages")
                                          : detail.str()});
    }

    // 3. equal-channel convolutions dominate
    {
        Expansion ex = expand(spec);
        std::size_t equal = 0;
        std::ostringstream detail;
        for (const ConvPrimitive& p : ex.prims) {
            if (p.in_channels == p.out_channels) {
                ++equal;
            } else {
                u128 actual = primitive_mac(p);
                u128 best = best_balanced_mac(p.height, p.width,
                                              static_cast<u128>(p.in_channels) * p.out_channels,
                                              p.kernel * p.kernel);
                detail << p.in_channels << "->" << p.out_channels << " penalty "
                       << to_string(actual - std::min(actual, best)) << "; ";
            }
        }
        double fraction = ex.prims.empty() ? 0.0
                                           : static_cast<double>(equal) /
                                                 static_cast<double>(ex.prims.size());
        bool pass = fraction >= 0.5;
        std::ostringstream head;
        head << "Cin==Cout for " << equal << "/" << ex.prims.size() << " convs ("
             << fmt_ratio(fraction * 100) << "%)";
        if (!pass) head << "; violators: " << detail.str();
        report.principles.push_back({"equal-channels", pass, head.str()});
    }

    // 4. CIO-optimal variant
    {
        bool pass = true;
        std::ostringstream detail;
        for (std::size_t i = 0; i < spec.stages.size(); ++i) {
            const BlockSpec& blk = spec.stages[i].block;
            if (!kind_is_osa_family(blk.kind) || blk.kind == BlockKind::Dense) continue;
            std::int64_t b = blk.base_channels, g = *blk.growth, k = blk.repeats;
            u128 c_osa = cio(CioVariant::Osa, b, g, k);
            u128 c_csp = cio(CioVariant::CspOsa, b, g, k);
            u128 c_pcb = cio(CioVariant::CspOsaPcb, b, g, k);
            u128 best = std::min({c_osa, c_csp, c_pcb});
            u128 own = blk.kind == BlockKind::OSA      ? c_osa
                       : blk.kind == BlockKind::CspOSA ? c_csp
                                                       : c_pcb;
            if (own != best) {
                pass = false;
                detail << "stage " << i << " (" << kind_token(blk.kind) << "): cio "
                       << to_string(own) << " > best " << to_string(best) << "; ";
            }
        }
        report.principles.push_back({"min-cio-variant", pass,
                                     pass ? "every OSA-family stage is CIO-optimal"
                                          : detail.str()});
    }

    report.all_pass = std::all_of(report.principles.begin(), report.principles.end(),
                                  [](const PrincipleResult& p) { return p.pass; });
    return report;
}

TinyGrowth derive_tiny_growth(std::int64_t b, const Rational& target_multiple) {
    if (b < 2 || b % 2 != 0)
        throw SemanticError("base channels must be even to set g = b/2");
    TinyGrowth out;
    out.g = b / 2;
    // k = (target*b - b/2) / g
    Rational k = (target_multiple * Rational::of(b) - Rational(b, 2)) / Rational(b, 2);
    if (!k.is_integer() || !k.is_positive())
        throw SemanticError("growth schedule needs integer k; got " + k.str());
    out.k = static_cast<std::int64_t>(k.num);
    return out;
}

namespace {

std::int64_t scale_width(std::int64_t base, const Rational& width) {
    Rational scaled = Rational::of(base) * width;
    if (!scaled.is_integer())
        throw SemanticError("width multiplier " + width.str() + " gives non-integer channels for " +
                            std::to_string(base));
    return static_cast<std::int64_t>(scaled.num);
}

Stage make_stage(BlockKind kind, std::int64_t repeats, std::int64_t channels, bool down, Role role) {
    Stage st;
    st.block.kind = kind;
    st.block.repeats = repeats;
    st.block.base_channels = channels;
    st.downsample = down;
    st.role = role;
    return st;
}

} // namespace

NetworkSpec generate_scaled_detector(std::int64_t input_px, int levels, const Rational& width,
                                     const std::string& name) {
    if (levels < 3 || levels > 7)
        throw SemanticError("detector template supports 3..7 pyramid levels");

    NetworkSpec spec;
    spec.name = name;
    spec.input = {input_px, input_px, 3};

    auto w = [&](std::int64_t base) { return scale_width(base, width); };
    auto bb_width = [](int level) { return std::int64_t{32} << level; }; // 64, 128, ...

    spec.stages.push_back(make_stage(BlockKind::Conv, 1, w(32), false, Role::Backbone));
    for (int lvl = 1; lvl <= levels; ++lvl)
        spec.stages.push_back(make_stage(BlockKind::CspDark, kDepthSchedule[lvl - 1],
                                         w(bb_width(lvl)), true, Role::Backbone));

    // Top-down neck at half backbone widths, then per-level heads and the
    // bottom-up path. Detection heads keep the fixed 255-channel output.
    for (int lvl = levels; lvl >= 3; --lvl)
        spec.stages.push_back(
            make_stage(BlockKind::CspDark, 3, w(bb_width(lvl) / 2), false, Role::NeckTopdown));

    auto push_head = [&](int lvl) {
        spec.stages.push_back(make_stage(BlockKind::Conv, 1, w(bb_width(lvl)), false, Role::Head));
        spec.stages.push_back(make_stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    };

    push_head(3);
    for (int lvl = 4; lvl <= levels; ++lvl) {
        spec.stages.push_back(
            make_stage(BlockKind::CspDark, 3, w(bb_width(lvl) / 2), true, Role::NeckBottomup));
        push_head(lvl);
    }

    validate(spec);
    return spec;
}

ScalePlan compound_scale_up(const NetworkSpec& base, std::int64_t target_input,
                            const Budget& budget) {
    validate(base);
    std::int64_t base_input = base.input.width;
    if (target_input < base_input)
        throw SemanticError("target input " + std::to_string(target_input) +
                            " is smaller than base input " + std::to_string(base_input));

    CostReport base_cost = analyze(base);
    u128 budget_flops = budget.kind == Budget::Kind::Flops
                            ? budget.max_flops
                            : static_cast<u128>(budget.ratio * static_cast<double>(base_cost.flops));
    if (budget_flops < base_cost.flops && target_input == base_input)
        throw SemanticError("budget infeasible for the unmodified base network");

    ScalePlan plan;
    if (target_input == base_input) {
        plan.factors = ScalingFactors{};
        plan.width_multiplier = Rational(1, 1);
        plan.resulting_spec = base;
        plan.cost = base_cost;
        for (const Stage& st : base.stages) plan.stage_depths.push_back(st.block.repeats);
        return plan;
    }

    int base_levels = 0;
    for (const Stage& st : base.stages)
        if (st.role == Role::Backbone && st.downsample) ++base_levels;

    // One extra pyramid stage per doubling of the input pixel count.
    double area_ratio = (static_cast<double>(target_input) * target_input) /
                        (static_cast<double>(base_input) * base_input);
    auto added = static_cast<std::int64_t>(std::llround(std::log2(area_ratio)));
    added = std::max<std::int64_t>(added, 0);
    int levels = static_cast<int>(base_levels + added);
    if (levels > 7)
        throw SemanticError("scaling would exceed the 7-level depth schedule");

    static const Rational kWidthGrid[] = {Rational(1, 1), Rational(9, 8), Rational(5, 4),
                                          Rational(11, 8), Rational(3, 2)};

    std::optional<Rational> chosen;
    NetworkSpec chosen_spec;
    CostReport chosen_cost;
    for (const Rational& gamma : kWidthGrid) {
        NetworkSpec candidate = generate_scaled_detector(
            target_input, levels, gamma,
            base.name + "@" + std::to_string(target_input) + "w" + gamma.str());
        CostReport cost = analyze(candidate);
        if (cost.flops <= budget_flops && (!chosen || gamma > *chosen)) {
            chosen = gamma;
            chosen_spec = std::move(candidate);
            chosen_cost = std::move(cost);
        }
    }
    if (!chosen) throw SemanticError("budget infeasible: no width in the grid fits");

    plan.factors.alpha_size = static_cast<double>(target_input) / static_cast<double>(base_input);
    plan.factors.beta_depth = 1.0;
    plan.factors.gamma_width = chosen->to_double();
    plan.factors.delta_stages = added;
    plan.width_multiplier = *chosen;
    plan.resulting_spec = std::move(chosen_spec);
    plan.cost = std::move(chosen_cost);
    for (const Stage& st : plan.resulting_spec.stages)
        plan.stage_depths.push_back(st.block.repeats);
    return plan;
}

} // namespace archcost
