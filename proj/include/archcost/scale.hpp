#pragma once

#include "archcost/cost.hpp"
#include "archcost/rational.hpp"

#include <string>
#include <vector>

namespace archcost {

// Receptive field at the end of each stage, from the stride walk: every
// kxk conv adds (k-1)*jump, a stride-2 conv then doubles the jump, a
// top-down upsample halves it. Width and input size never enter the walk.
std::vector<std::int64_t> receptive_field(const NetworkSpec& spec);

struct RfDetail {
    std::int64_t rf = 1;
    std::int64_t jump = 1; // current stride term
};
std::vector<RfDetail> receptive_field_detail(const NetworkSpec& spec);

struct Budget {
    enum class Kind { Flops, RatioToBase };
    Kind kind = Kind::Flops;
    u128 max_flops = 0;  // absolute FLOP ceiling when kind == Flops
    double ratio = 1.0;  // multiple of the base cost when kind == RatioToBase
};

struct ScalePlan {
    ScalingFactors factors;
    std::vector<std::int64_t> stage_depths; // repeats per stage of the result
    Rational width_multiplier = Rational(1, 1);
    NetworkSpec resulting_spec;
    CostReport cost;
};

struct PrincipleResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TinyReport {
    std::vector<PrincipleResult> principles;
    bool all_pass = false;
};

// The four design checks for bandwidth-bound models:
//  1. block FLOPs grow sub-quadratically in b (ratio at 2b strictly < 4;
//     plain conv stages are stem/head plumbing and are exempt)
//  2. every PCB partition equals the bandwidth-rounded balanced split
//  3. at least half of the expanded convs keep Cin == Cout (violators are
//     listed with their MAC penalty against the best balanced factor pair)
//  4. every OSA-family stage uses the variant with the smallest CIO
TinyReport check_tiny_principles(const NetworkSpec& spec, std::int64_t tau);

// g = b/2 and k chosen so the stage grows to target*b: k = (target*b - b/2)/g.
// Throws SemanticError when k would not be a positive integer.
struct TinyGrowth {
    std::int64_t g = 0;
    std::int64_t k = 0;
};
TinyGrowth derive_tiny_growth(std::int64_t b, const Rational& target_multiple);

// Template for the large detector family: CspDark backbone with the depth
// schedule [1,3,15,15,7,7,7] truncated to `levels`, a top-down/bottom-up
// CSP neck at half backbone widths, and per-level detection heads. Stage
// widths scale by `width`; the 255-channel detection convs do not.
NetworkSpec generate_scaled_detector(std::int64_t input_px, int levels, const Rational& width,
                                     const std::string& name);

extern const std::int64_t kDepthSchedule[7];

// Compound scaling: one pyramid stage per doubling of the input pixel
// count (nearest integer), depths from the schedule, then the largest
// width in {1, 1.125, 1.25, 1.375, 1.5} whose cost fits the budget.
// target equal to the base input returns the identity plan.
ScalePlan compound_scale_up(const NetworkSpec& base, std::int64_t target_input,
                            const Budget& budget);

} // namespace archcost
