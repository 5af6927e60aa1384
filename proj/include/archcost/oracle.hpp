#pragma once

#include "archcost/expand.hpp"
#include "archcost/report.hpp"

namespace archcost {

// Brute-force cost counting over expanded primitives. This is the ground
// truth every closed-form formula is tested against; it must stay
// independent of the formula implementations in cost.hpp.
//
// Conventions:
//   flops  = w*h*kernel^2*Cin*Cout/groups   (one multiply-accumulate = 1 FLOP)
//   params = kernel^2*Cin*Cout/groups       (conv+BN, no bias)
//   mac    = h*w*(Cin+Cout) + kernel^2*Cin*Cout/groups
//   cio    = Cin*Cout                       (per-conv product accounting)
u128 primitive_flops(const ConvPrimitive& p);
u128 primitive_params(const ConvPrimitive& p);
u128 primitive_mac(const ConvPrimitive& p);
u128 primitive_cio(const ConvPrimitive& p);

// Sums the primitive metrics over expand(spec). Receptive field comes from
// the stride walk in scale.hpp (it has no second route).
CostReport oracle_cost(const NetworkSpec& spec);

// FLOPs of one block counted over the primitives its closed-form layer
// formula covers: core convs only for Dense/OSA (whose formulas exclude
// the transition), everything but the stage downsample otherwise.
u128 oracle_form_flops(const BlockSpec& block, std::int64_t w, std::int64_t h);

} // namespace archcost
