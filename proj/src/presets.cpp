#include "archcost/presets.hpp"

#include "archcost/io.hpp"
#include "archcost/rewrite.hpp"
#include "archcost/scale.hpp"

#include <filesystem>

namespace archcost {

namespace {

Stage stage(BlockKind kind, std::int64_t repeats, std::int64_t channels, bool down, Role role,
            std::optional<std::int64_t> growth = std::nullopt) {
    Stage st;
    st.block.kind = kind;
    st.block.repeats = repeats;
    st.block.base_channels = channels;
    st.block.growth = growth;
    st.downsample = down;
    st.role = role;
    return st;
}

NetworkSpec darknet53_spec(BlockKind stage_kind, const std::string& name) {
    NetworkSpec spec;
    spec.name = name;
    spec.input = {608, 608, 3};
    spec.stages.push_back(stage(BlockKind::Conv, 1, 32, false, Role::Backbone));
    const std::int64_t widths[] = {64, 128, 256, 512, 1024};
    const std::int64_t depths[] = {1, 2, 8, 8, 4};
    for (int i = 0; i < 5; ++i)
        spec.stages.push_back(stage(stage_kind, depths[i], widths[i], true, Role::Backbone));
    return spec;
}

// FPN-SPP neck with per-level detection branches, chained from a 1024-wide
// stride-32 feature map. The SPP pooling itself is cost-free; its 1x1
// squeeze convs are the conv1 pair inside the P5 head branch.
std::vector<Stage> fpnspp_stages() {
    std::vector<Stage> s;
    s.push_back(stage(BlockKind::Dark, 2, 1024, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Conv1, 2, 512, false, Role::Head)); // SPP squeeze pair
    s.push_back(stage(BlockKind::Conv, 1, 1024, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    s.push_back(stage(BlockKind::Dark, 2, 512, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Conv, 1, 512, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    s.push_back(stage(BlockKind::Dark, 2, 256, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Conv, 1, 256, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    return s;
}

// PAN-SPP neck: top-down path to P3, then the bottom-up augmentation with
// detection branches at P3/P4/P5. Each computation list is modeled as a
// 3-repeat reversed dark run (the SPP group rides inside the P5 list).
std::vector<Stage> panspp_stages() {
    std::vector<Stage> s;
    s.push_back(stage(BlockKind::Dark, 3, 1024, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Dark, 3, 512, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Dark, 3, 256, false, Role::NeckTopdown));
    s.push_back(stage(BlockKind::Conv, 1, 256, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    s.push_back(stage(BlockKind::Dark, 3, 512, true, Role::NeckBottomup));
    s.push_back(stage(BlockKind::Conv, 1, 512, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    s.push_back(stage(BlockKind::Dark, 3, 1024, true, Role::NeckBottomup));
    s.push_back(stage(BlockKind::Conv, 1, 1024, false, Role::Head));
    s.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    return s;
}

NetworkSpec neck_spec(std::vector<Stage> stages, const std::string& name) {
    NetworkSpec spec;
    spec.name = name;
    spec.input = {19, 19, 1024}; // stride-32 feature map of a 608 input
    spec.stages = std::move(stages);
    return spec;
}

NetworkSpec tiny_spec() {
    NetworkSpec spec;
    spec.name = "yolov4-tiny";
    spec.input = {416, 416, 3};
    spec.stages.push_back(stage(BlockKind::Conv, 1, 32, true, Role::Backbone));
    spec.stages.push_back(stage(BlockKind::Conv, 1, 64, true, Role::Backbone));
    spec.stages.push_back(stage(BlockKind::CspOSA_PCB, 3, 64, false, Role::Backbone, 32));
    spec.stages.push_back(stage(BlockKind::CspOSA_PCB, 3, 128, true, Role::Backbone, 64));
    spec.stages.push_back(stage(BlockKind::CspOSA_PCB, 3, 256, true, Role::Backbone, 128));
    spec.stages.push_back(stage(BlockKind::Conv, 1, 512, true, Role::Backbone));
    spec.stages.push_back(stage(BlockKind::Conv1, 1, 256, false, Role::NeckTopdown));
    spec.stages.push_back(stage(BlockKind::Conv, 1, 512, false, Role::Head));
    spec.stages.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    spec.stages.push_back(stage(BlockKind::Conv1, 1, 128, false, Role::NeckTopdown));
    spec.stages.push_back(stage(BlockKind::Conv, 1, 256, false, Role::Head));
    spec.stages.push_back(stage(BlockKind::Conv1, 1, 255, false, Role::Head));
    return spec;
}

NetworkSpec compose(const NetworkSpec& backbone, const NetworkSpec& neck,
                    const std::string& name) {
    NetworkSpec spec;
    spec.name = name;
    spec.input = backbone.input;
    spec.stages = backbone.stages;
    spec.stages.insert(spec.stages.end(), neck.stages.begin(), neck.stages.end());
    validate(spec);
    return spec;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;

    NetworkSpec d53 = darknet53_spec(BlockKind::Dark, "darknet53");
    out.push_back({"darknet53",
                   {"d53"},
                   "Darknet53 backbone: 3x3 stem then five downsampling dark stages, "
                   "depths 1-2-8-8-4, widths 64..1024.",
                   d53});

    NetworkSpec cspd53 = darknet53_spec(BlockKind::CspDark, "cspdarknet53");
    out.push_back({"cspdarknet53",
                   {"cspd53"},
                   "CSPDarknet53: darknet53 with every stage cross-stage-partial, "
                   "same 1-2-8-8-4 depths.",
                   cspd53});

    NetworkSpec cd53s = revert_first_stage(cspd53);
    cd53s.name = "cd53s";
    out.push_back({"cd53s",
                   {},
                   "CSPDarknet53 with the single-repeat first stage reverted to a plain "
                   "dark stage.",
                   cd53s});

    NetworkSpec fpn = neck_spec(fpnspp_stages(), "fpn-spp-neck");
    out.push_back({"fpn-spp-neck",
                   {"fpnspp"},
                   "FPN neck with SPP, YOLOv3-style: per-level reversed-dark computation "
                   "lists (2 repeats) and 3x3+1x1 detection branches; SPP pooling is "
                   "cost-free, its squeeze convs are explicit.",
                   fpn});

    NetworkSpec cfpn = cspize(fpn, CspScope::Neck).first;
    cfpn.name = "cfpn-spp-neck";
    out.push_back({"cfpn-spp-neck",
                   {"cfpnspp"},
                   "CSP-ized FPN-SPP neck: the reversed-dark lists become CSP dark blocks.",
                   cfpn});

    NetworkSpec pan = neck_spec(panspp_stages(), "pan-spp-neck");
    out.push_back({"pan-spp-neck",
                   {"panspp"},
                   "PAN neck with SPP: top-down path to P3 plus bottom-up augmentation, "
                   "3-repeat reversed-dark computation lists per level (SPP group inside "
                   "the P5 list), detection branches at P3/P4/P5.",
                   pan});

    NetworkSpec cpan = cspize(pan, CspScope::Neck).first;
    cpan.name = "csppan-spp-neck";
    out.push_back({"csppan-spp-neck",
                   {"cspanspp", "cpanspp"},
                   "CSP-ized PAN-SPP neck (reversed CSP dark computation lists).",
                   cpan});

    out.push_back({"yolov4-csp",
                   {},
                   "CD53s backbone with the CSP-ized PAN-SPP neck at 608x608.",
                   compose(cd53s, cpan, "yolov4-csp")});

    out.push_back({"yolov4-tiny",
                   {"tiny"},
                   "Tiny detector: CSPOSA stages with partial-in-computational-block "
                   "splits, g = b/2 and k = 3 so each stage grows to 2b; YOLOv3-tiny "
                   "style channel plan and two-level FPN head.",
                   tiny_spec()});

    out.push_back({"yolov4-p5",
                   {"p5"},
                   "Large detector, 5 pyramid levels at 896x896: CSP dark backbone with "
                   "depth schedule [1,3,15,15,7], CSP neck, width 1.0.",
                   generate_scaled_detector(896, 5, Rational(1, 1), "yolov4-p5")});
    out.push_back({"yolov4-p6",
                   {"p6"},
                   "Large detector, 6 pyramid levels at 1280x1280: depth schedule "
                   "[1,3,15,15,7,7], width 1.0.",
                   generate_scaled_detector(1280, 6, Rational(1, 1), "yolov4-p6")});
    out.push_back({"yolov4-p7",
                   {"p7"},
                   "Large detector, 7 pyramid levels at 1536x1536: depth schedule "
                   "[1,3,15,15,7,7,7], width 1.25.",
                   generate_scaled_detector(1536, 7, Rational(5, 4), "yolov4-p7")});

    return out;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> registry = build_presets();
    return registry;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : presets()) {
        if (p.name == name) return &p;
        for (const std::string& a : p.aliases)
            if (a == name) return &p;
    }
    return nullptr;
}

NetworkSpec resolve_spec_source(const std::string& source) {
    if (auto pos = source.find('+'); pos != std::string::npos) {
        const Preset* a = find_preset(source.substr(0, pos));
        const Preset* b = find_preset(source.substr(pos + 1));
        if (a && b) return compose(a->spec, b->spec, source);
        throw UsageError("unknown preset composition: " + source);
    }
    if (const Preset* p = find_preset(source)) return p->spec;
    if (std::filesystem::exists(source)) return load_spec_file(source);
    throw UsageError("unknown preset or missing file: " + source);
}

} // namespace archcost
