#pragma once

#include "archcost/rational.hpp"
#include "archcost/report.hpp"

#include <optional>

namespace archcost {

// Closed-form FLOPs of one block layer, evaluated in exact rational
// arithmetic and rounded to nearest only at the end:
//
//   res          17*w*h*k*b^2/16
//   resx         137*w*h*k*b^2/128
//   dark         5*w*h*k*b^2
//   csp_res      w*h*b^2*(3/4 + 13k/16)
//   csp_resx     w*h*b^2*(3/4 + 73k/128)
//   csp_dark     w*h*b^2*(3/4 + 5k/2)
//   dense        w*h*g*b*k + w*h*g^2*k*(k-1)/2
//   osa          w*h*b*g + w*h*g^2*(k-1)
//   csp_osa      w*h*g^2*k + w*h*(k*g)^2           (derived from the channel plan)
//   csp_osa_pcb  w*h*g^2*k + w*h*((b+k*g)/2)^2     (derived from the channel plan)
//   conv/conv1   9*w*h*k*b^2 / w*h*k*b^2           (steady-state plain conv run)
//
// Dense/OSA formulas cover the core convolutions only; their transition is
// accounted at the stage level. Throws SemanticError when g is missing for
// a kind that needs it.
u128 layer_flops(BlockKind kind, std::int64_t w, std::int64_t h, std::int64_t k, std::int64_t b,
                 std::optional<std::int64_t> g = std::nullopt);

enum class ScaleFactorKind { Size, Depth, Width };

// size -> base*alpha^2, depth -> base*beta, width -> base*gamma^2.
u128 apply_scaling(u128 base, ScaleFactorKind kind, const Rational& factor);

// mac = h*w*(Cin+Cout) + K*Cin*Cout with K the kernel AREA.
u128 mac(std::int64_t h, std::int64_t w, std::int64_t c_in, std::int64_t c_out,
         std::int64_t kernel_area);

enum class CioVariant { Osa, CspOsa, CspOsaPcb };

// Per-block convolutional I/O in product accounting:
//   osa          b*g + (k-1)*g^2 + (b+k*g)^2/2
//   csp_osa      k*g^2 + (k*g)^2
//   csp_osa_pcb  k*g^2 + (b+k*g)^2/4
u128 cio(CioVariant variant, std::int64_t b, std::int64_t g, std::int64_t k);

// One full CSP-Darknet stage: w*h*b^2*(9/4 + 3/4 + 5k/2).
u128 csp_stage_flops(std::int64_t w, std::int64_t h, std::int64_t k, std::int64_t b);

enum class SavingKind { Res, ResX, Dark };

// lim_{k->inf} 1 - csp/original, computed symbolically:
//   res 1 - 13/17, resx 1 - 73/137, dark 1/2.
double asymptotic_csp_saving(SavingKind kind);
Rational asymptotic_csp_saving_exact(SavingKind kind);

// Closed-form cost of a whole network: per-stage formulas plus downsample
// and transition terms, never touching the primitive expansion. Must agree
// with oracle_cost exactly on every valid spec.
CostReport analyze(const NetworkSpec& spec);

} // namespace archcost
