#pragma once

#include "archcost/ir.hpp"

#include <vector>

namespace archcost {

enum class PrimRole {
    Downsample, // stride-2 3x3 attached to the stage, not the block
    Core,       // the block's computational convolutions
    Transition, // aggregation/transition conv of Dense/OSA families
};

// A single convolution. width/height are the OUTPUT spatial dims.
struct ConvPrimitive {
    std::int64_t width = 1;
    std::int64_t height = 1;
    std::int64_t in_channels = 1;
    std::int64_t out_channels = 1;
    std::int64_t kernel = 1; // side length, 1 or 3
    std::int64_t groups = 1;
    std::int64_t stride = 1;
    PrimRole role = PrimRole::Core;

    bool operator==(const ConvPrimitive&) const = default;
};

struct StageSpan {
    std::size_t first = 0;
    std::size_t count = 0;
};

struct Expansion {
    std::vector<ConvPrimitive> prims;
    std::vector<StageSpan> stages; // one span per stage, in order
};

// Unrolls one block into its primitive convolutions at resolution (w, h).
// `in_channels` is the width arriving at the block's leading conv; kinds
// that do not absorb their input require in_channels == b.
//
// Channel plans per repeat (b = base, h2 = b/2, q = b/4, g = growth):
//   dark:        1x1 in->h2, 3x3 h2->b
//   res:         1x1 b->q,  3x3 q->q,          1x1 q->b
//   resx:        1x1 b->h2, 3x3/32 h2->h2,     1x1 h2->b
//   csp_dark:    entry 1x1 in->h2; k x [1x1 h2->h2, 3x3 h2->h2]; post 1x1 h2->h2
//   csp_res:     entry 1x1 b->h2;  k x [1x1 h2->q, 3x3 q->q, 1x1 q->h2]; post 1x1 h2->h2
//   csp_resx:    entry 1x1 b->h2;  k x [1x1 h2->h2, 3x3/32 h2->h2, 1x1 h2->h2]; post
//   dense:       k x [1x1 (b+(i-1)g)->g]; transition 1x1 (b+kg)->ceil((b+kg)/2)
//   osa:         1x1 b->g, (k-1) x [1x1 g->g]; transition as dense
//   csp_osa:     k x [1x1 g->g]; transition 1x1 kg->kg
//   csp_osa_pcb: k x [1x1 g->g]; transition 1x1 p->p, p = partition
//   conv/conv1:  k x [3x3|1x1 ...->b], first conv takes in_channels
//
// Splits/concats/shortcuts are zero-cost routes and emit no primitive. The
// CSP bypass carries the channels not consumed by the entry conv.
std::vector<ConvPrimitive> expand_block(const BlockSpec& block, std::int64_t w, std::int64_t h,
                                        std::int64_t in_channels, std::size_t stage_index = 0);

// Expands the whole network; downsampling stages prepend a stride-2 3x3
// (except Conv/Conv1 stages, whose own first conv takes the stride).
Expansion expand(const NetworkSpec& spec);

} // namespace archcost
