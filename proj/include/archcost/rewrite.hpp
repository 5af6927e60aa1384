#pragma once

#include "archcost/cost.hpp"

#include <string>
#include <vector>

namespace archcost {

struct PartitionPlan {
    std::int64_t total_channels = 0; // b + k*g
    std::int64_t split_point = 0;    // balanced split, ceil(total/2)
    std::int64_t bandwidth = 1;      // tau
    std::int64_t rounded_split = 0;  // ceil(total/(2*tau)) * tau
};

struct RewriteReport {
    CostReport before;
    CostReport after;
    double flops_delta = 0.0;  // 1 - after/before
    double params_delta = 0.0;
    std::vector<std::string> transform_log;

    nlohmann::json to_json() const;
};

enum class CspScope { Backbone, Neck, All };

// Replaces every rewritable kind in scope with its CSP counterpart
// (res -> csp_res, resx -> csp_resx, dark -> csp_dark, osa -> csp_osa).
// Structural only: repeats, base channels and input are untouched. An
// empty transform_log means nothing in scope was rewritable.
std::pair<NetworkSpec, RewriteReport> cspize(const NetworkSpec& spec, CspScope scope);

// Balanced PCB split under hardware bandwidth tau:
// rounded = ceil((b+k*g)/(2*tau)) * tau.
PartitionPlan plan_pcb_partition(std::int64_t b, std::int64_t k, std::int64_t g,
                                 std::int64_t tau);

// Converts the first backbone stage back to its non-CSP kind. Errors when
// that stage is not a CSP kind.
NetworkSpec revert_first_stage(const NetworkSpec& spec);

// Removes the named top pyramid levels ("P7", then "P6", ...) together
// with their neck stages and detection branches. Removal must be a
// contiguous suffix from the top.
std::pair<NetworkSpec, RewriteReport> prune_heads(const NetworkSpec& spec,
                                                  const std::vector<std::string>& remove);

} // namespace archcost
