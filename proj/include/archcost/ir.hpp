#pragma once

#include "archcost/int128.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace archcost {

// Malformed input text (bad JSON). Carries the byte offset when known.
struct SyntaxError : std::runtime_error {
    explicit SyntaxError(const std::string& msg, std::size_t byte = 0)
        : std::runtime_error(msg), byte_position(byte) {}
    std::size_t byte_position;
};

// Well-formed input that violates an IR invariant.
struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad command-line usage (unknown preset, out-of-range override, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Block families. Res/ResX/Dark are the residual trio, Dense/OSA the
// aggregation pair, Csp* their cross-stage-partial rewrites. Conv/Conv1
// are plain 3x3 / 1x1 convolution runs used for stems, projections and
// detection heads.
enum class BlockKind {
    Res,
    ResX,
    Dark,
    Dense,
    OSA,
    CspRes,
    CspResX,
    CspDark,
    CspOSA,
    CspOSA_PCB,
    Conv,
    Conv1,
};

enum class Role {
    Backbone,
    NeckTopdown,
    NeckBottomup,
    Head,
};

std::string_view kind_token(BlockKind k);
std::optional<BlockKind> kind_from_token(std::string_view token);
std::string_view role_token(Role r);
std::optional<Role> role_from_token(std::string_view token);

// Dense/OSA variants carry a growth rate; everyone else forbids it.
bool kind_takes_growth(BlockKind k);
bool kind_is_osa_family(BlockKind k); // Dense, OSA, CspOSA, CspOSA_PCB
bool kind_is_plain_conv(BlockKind k); // Conv, Conv1
bool kind_is_resx_family(BlockKind k);

// Kinds whose leading 1x1 (or the conv itself for Conv/Conv1) accepts an
// arbitrary input width; every other kind requires the chained input to
// equal base_channels exactly.
bool kind_absorbs_input(BlockKind k);

std::optional<BlockKind> csp_counterpart(BlockKind k);   // Dark -> CspDark, ...
std::optional<BlockKind> csp_original(BlockKind k);      // CspDark -> Dark, ...

struct TensorShape {
    std::int64_t width = 1;
    std::int64_t height = 1;
    std::int64_t channels = 1;

    bool operator==(const TensorShape&) const = default;
};

struct BlockSpec {
    BlockKind kind = BlockKind::Dark;
    std::int64_t repeats = 1;       // k
    std::int64_t base_channels = 1; // b
    std::optional<std::int64_t> growth;          // g, Dense/OSA families only
    std::optional<std::int64_t> group_width;     // ResX group width, fixed 32
    std::optional<std::int64_t> partition_width; // recorded PCB split

    bool operator==(const BlockSpec&) const = default;
};

struct Stage {
    BlockSpec block;
    bool downsample = false;
    Role role = Role::Backbone;

    bool operator==(const Stage&) const = default;
};

struct NetworkSpec {
    std::string name;
    TensorShape input;
    std::vector<Stage> stages;

    bool operator==(const NetworkSpec&) const = default;
};

// Compound scaling factors. Identity is (1, 1, 1, 0).
struct ScalingFactors {
    double alpha_size = 1.0;
    double beta_depth = 1.0;
    double gamma_width = 1.0;
    std::int64_t delta_stages = 0;
};

constexpr std::int64_t kResXGroups = 32;

// Resolved geometry of one stage after walking the chain.
struct StageCtx {
    std::int64_t width = 0;         // feature map size the stage computes at
    std::int64_t height = 0;
    std::int64_t in_channels = 0;   // channels arriving at the stage
    std::int64_t block_in = 0;      // channels entering the block (post-downsample)
    std::int64_t out_channels = 0;
    std::int64_t level = 0;         // log2 of the stride; pyramid level
    bool upsampled = false;         // consecutive top-down stage, 2x resolution
};

std::int64_t block_output_channels(const BlockSpec& b);

// Default PCB split: ceil((b + k*g) / 2).
std::int64_t default_partition(const BlockSpec& b);

// Walks the stage list resolving resolutions, channel chaining and pyramid
// levels. Head stages branch off the nearest preceding non-head stage and
// do not advance the chain. Throws SemanticError on any invariant
// violation, naming the stage index and the violated invariant.
std::vector<StageCtx> walk(const NetworkSpec& spec);

// Full invariant check; walk() plus per-block field validation.
void validate(const NetworkSpec& spec);

} // namespace archcost
