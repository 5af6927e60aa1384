#include "archcost/cli.hpp"

#include "archcost/io.hpp"
#include "archcost/oracle.hpp"
#include "archcost/presets.hpp"
#include "archcost/rewrite.hpp"
#include "archcost/scale.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace archcost {

using nlohmann::json;

namespace {

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& f) {
    if (f == "table") return Format::Table;
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    throw UsageError("unknown format: " + f);
}

NetworkSpec resolve_with_override(const std::string& source, std::int64_t input_override) {
    NetworkSpec spec = resolve_spec_source(source);
    if (input_override != 0) {
        if (input_override < 32) throw UsageError("--input override must be >= 32");
        spec.input.width = input_override;
        spec.input.height = input_override;
        validate(spec);
    }
    return spec;
}

void print_stage_table(std::ostream& out, const CostReport& r) {
    out << std::left << std::setw(6) << "stage" << std::setw(13) << "kind" << std::setw(15)
        << "role" << std::setw(11) << "res" << std::right << std::setw(16) << "flops"
        << std::setw(14) << "params" << std::setw(16) << "mac" << std::setw(12) << "cio"
        << std::setw(6) << "rf" << "\n";
    for (const StageCost& s : r.per_stage) {
        out << std::left << std::setw(6) << s.index << std::setw(13) << kind_token(s.kind)
            << std::setw(15) << role_token(s.role) << std::setw(11)
            << (std::to_string(s.width) + "x" + std::to_string(s.height)) << std::right
            << std::setw(16) << to_string(s.flops) << std::setw(14) << to_string(s.params)
            << std::setw(16) << to_string(s.mac) << std::setw(12) << to_string(s.cio)
            << std::setw(6) << s.receptive_field << "\n";
    }
    out << std::left << std::setw(45) << "total" << std::right << std::setw(16)
        << to_string(r.flops) << std::setw(14) << to_string(r.params) << std::setw(16)
        << to_string(r.mac) << std::setw(12) << to_string(r.cio) << std::setw(6)
        << r.receptive_field << "\n";
    out << "total (humanized): flops " << humanize(r.flops) << ", params " << humanize(r.params)
        << ", mac " << humanize(r.mac) << ", cio " << humanize(r.cio) << ", rf "
        << r.receptive_field << "\n";
}

// Column order is part of the interface; see README.
void print_csv(std::ostream& out, const CostReport& r) {
    out << "stage,kind,role,width,height,flops,params,mac,cio,receptive_field\n";
    for (const StageCost& s : r.per_stage) {
        out << s.index << ',' << kind_token(s.kind) << ',' << role_token(s.role) << ','
            << s.width << ',' << s.height << ',' << to_string(s.flops) << ','
            << to_string(s.params) << ',' << to_string(s.mac) << ',' << to_string(s.cio) << ','
            << s.receptive_field << "\n";
    }
    out << "total,,,,," << to_string(r.flops) << ',' << to_string(r.params) << ','
        << to_string(r.mac) << ',' << to_string(r.cio) << ',' << r.receptive_field << "\n";
}

json difference_json(const CostReport& a, const CostReport& b) {
    auto diff = [](u128 x, u128 y) {
        return (x >= y) ? count_to_json(x - y) : json("-" + to_string(y - x));
    };
    json j;
    j["flops"] = diff(a.flops, b.flops);
    j["params"] = diff(a.params, b.params);
    j["mac"] = diff(a.mac, b.mac);
    j["cio"] = diff(a.cio, b.cio);
    return j;
}

int cmd_analyze(const std::string& source, std::int64_t input_override, Format format,
                bool use_oracle, std::ostream& out) {
    NetworkSpec spec = resolve_with_override(source, input_override);
    CostReport closed = analyze(spec);

    if (use_oracle) {
        CostReport oracle = oracle_cost(spec);
        if (format == Format::Json) {
            json j;
            j["name"] = spec.name;
            j["closed_form"] = closed.to_json();
            j["oracle"] = oracle.to_json();
            j["difference"] = difference_json(closed, oracle);
            out << j.dump(2) << "\n";
        } else if (format == Format::Csv) {
            print_csv(out, closed);
        } else {
            out << spec.name << " (closed form)\n";
            print_stage_table(out, closed);
            out << "\n" << spec.name << " (oracle)\n";
            print_stage_table(out, oracle);
            out << "\ndifference (closed - oracle): flops "
                << difference_json(closed, oracle)["flops"].dump() << ", params "
                << difference_json(closed, oracle)["params"].dump() << "\n";
        }
        return 0;
    }

    if (format == Format::Json) {
        json j;
        j["name"] = spec.name;
        j["input"] = {{"width", spec.input.width},
                      {"height", spec.input.height},
                      {"channels", spec.input.channels}};
        j["report"] = closed.to_json();
        out << j.dump(2) << "\n";
    } else if (format == Format::Csv) {
        print_csv(out, closed);
    } else {
        out << spec.name << " @ " << spec.input.width << "x" << spec.input.height << "\n";
        print_stage_table(out, closed);
    }
    return 0;
}

int cmd_compare(const std::string& src_a, const std::string& src_b, std::int64_t input_override,
                Format format, std::ostream& out) {
    NetworkSpec a = resolve_with_override(src_a, input_override);
    NetworkSpec b = resolve_with_override(src_b, input_override);
    CostReport ra = analyze(a);
    CostReport rb = analyze(b);

    auto pct = [](u128 x, u128 y) {
        if (x == 0) return 0.0;
        return 100.0 * (1.0 - static_cast<double>(y) / static_cast<double>(x));
    };
    double flops_pct = pct(ra.flops, rb.flops);
    double params_pct = pct(ra.params, rb.params);
    double mac_pct = pct(ra.mac, rb.mac);
    double cio_pct = pct(ra.cio, rb.cio);

    if (format == Format::Json) {
        json j;
        j["a"] = {{"name", a.name}, {"report", ra.to_json()}};
        j["b"] = {{"name", b.name}, {"report", rb.to_json()}};
        j["delta_pct"] = {{"flops", flops_pct},
                          {"params", params_pct},
                          {"mac", mac_pct},
                          {"cio", cio_pct}};
        out << j.dump(2) << "\n";
    } else if (format == Format::Csv) {
        out << "metric," << a.name << "," << b.name << ",delta_pct\n";
        out << "flops," << to_string(ra.flops) << ',' << to_string(rb.flops) << ',' << flops_pct
            << "\n";
        out << "params," << to_string(ra.params) << ',' << to_string(rb.params) << ','
            << params_pct << "\n";
        out << "mac," << to_string(ra.mac) << ',' << to_string(rb.mac) << ',' << mac_pct << "\n";
        out << "cio," << to_string(ra.cio) << ',' << to_string(rb.cio) << ',' << cio_pct << "\n";
    } else {
        out << std::left << std::setw(10) << "metric" << std::right << std::setw(18) << a.name
            << std::setw(18) << b.name << std::setw(12) << "delta %" << "\n";
        auto row = [&](const char* name, u128 x, u128 y, double d) {
            out << std::left << std::setw(10) << name << std::right << std::setw(18)
                << to_string(x) << std::setw(18) << to_string(y) << std::setw(12) << std::fixed
                << std::setprecision(2) << d << "\n";
        };
        row("flops", ra.flops, rb.flops, flops_pct);
        row("params", ra.params, rb.params, params_pct);
        row("mac", ra.mac, rb.mac, mac_pct);
        row("cio", ra.cio, rb.cio, cio_pct);
    }
    return 0;
}

void print_rewrite(std::ostream& out, const NetworkSpec& spec, const RewriteReport& report,
                   Format format) {
    if (format == Format::Json) {
        json j;
        j["spec"] = json::parse(serialize_spec(spec));
        j["report"] = report.to_json();
        out << j.dump(2) << "\n";
        return;
    }
    out << "transforms:\n";
    if (report.transform_log.empty()) out << "  (none)\n";
    for (const std::string& line : report.transform_log) out << "  " << line << "\n";
    out << "flops:  " << to_string(report.before.flops) << " -> " << to_string(report.after.flops)
        << "  (" << std::fixed << std::setprecision(2) << report.flops_delta * 100 << "% saved)\n";
    out << "params: " << to_string(report.before.params) << " -> "
        << to_string(report.after.params) << "  (" << std::fixed << std::setprecision(2)
        << report.params_delta * 100 << "% saved)\n";
}

int cmd_cspize(const std::string& source, const std::string& scope_str, Format format,
               std::ostream& out, std::ostream& err) {
    CspScope scope;
    if (scope_str == "backbone") scope = CspScope::Backbone;
    else if (scope_str == "neck") scope = CspScope::Neck;
    else if (scope_str == "all") scope = CspScope::All;
    else throw UsageError("unknown scope: " + scope_str);

    NetworkSpec spec = resolve_spec_source(source);
    auto [rewritten, report] = cspize(spec, scope);
    if (report.transform_log.empty())
        err << "warning: no rewritable stage in scope\n";
    print_rewrite(out, rewritten, report, format);
    return 0;
}

int cmd_prune(const std::string& source, const std::vector<std::string>& remove, Format format,
              std::ostream& out) {
    NetworkSpec spec = resolve_spec_source(source);
    auto [pruned, report] = prune_heads(spec, remove);
    print_rewrite(out, pruned, report, format);
    return 0;
}

int cmd_scale(const std::string& source, std::int64_t input_px, const std::string& budget_str,
              Format format, std::ostream& out) {
    NetworkSpec base = resolve_spec_source(source);
    Budget budget;
    budget.kind = Budget::Kind::Flops;
    budget.max_flops = u128_from_string(budget_str);
    ScalePlan plan = compound_scale_up(base, input_px, budget);

    json j;
    j["factors"] = {{"alpha_size", plan.factors.alpha_size},
                    {"beta_depth", plan.factors.beta_depth},
                    {"gamma_width", plan.factors.gamma_width},
                    {"delta_stages", plan.factors.delta_stages}};
    j["stage_depths"] = plan.stage_depths;
    j["width_multiplier"] = plan.width_multiplier.to_double();
    j["cost"] = plan.cost.to_json();
    j["spec"] = json::parse(serialize_spec(plan.resulting_spec));

    if (format == Format::Json) {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "scaled " << base.name << " " << base.input.width << " -> " << input_px << "\n";
    out << "added stages: " << plan.factors.delta_stages
        << ", width multiplier: " << plan.width_multiplier.str() << "\n";
    out << "depths:";
    for (auto d : plan.stage_depths) out << " " << d;
    out << "\n";
    print_stage_table(out, plan.cost);
    return 0;
}

int cmd_check_tiny(const std::string& source, std::int64_t tau, Format format,
                   std::ostream& out) {
    NetworkSpec spec = resolve_spec_source(source);
    TinyReport report = check_tiny_principles(spec, tau);
    if (format == Format::Json) {
        json j;
        j["name"] = spec.name;
        j["tau"] = tau;
        json list = json::array();
        for (const PrincipleResult& p : report.principles)
            list.push_back({{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}});
        j["principles"] = std::move(list);
        j["all_pass"] = report.all_pass;
        out << j.dump(2) << "\n";
    } else {
        out << spec.name << " (tau " << tau << ")\n";
        for (const PrincipleResult& p : report.principles)
            out << "  [" << (p.pass ? "pass" : "FAIL") << "] " << p.name << ": " << p.detail
                << "\n";
        out << (report.all_pass ? "all principles pass\n" : "some principles fail\n");
    }
    return 0;
}

int cmd_presets_list(Format format, std::ostream& out) {
    if (format == Format::Json) {
        json j = json::array();
        for (const Preset& p : presets()) {
            j.push_back({{"name", p.name},
                         {"aliases", p.aliases},
                         {"stages", p.spec.stages.size()},
                         {"input", p.spec.input.width},
                         {"notes", p.notes}});
        }
        out << j.dump(2) << "\n";
    } else {
        for (const Preset& p : presets()) {
            out << p.name;
            if (!p.aliases.empty()) {
                out << " (";
                for (std::size_t i = 0; i < p.aliases.size(); ++i)
                    out << (i ? ", " : "") << p.aliases[i];
                out << ")";
            }
            out << " — " << p.spec.stages.size() << " stages @ " << p.spec.input.width << "\n    "
                << p.notes << "\n";
        }
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Block-level CNN cost modeling, CSP rewriting and compound scaling"};
    app.require_subcommand(1);

    std::string format_str = "table";
    bool use_oracle = false;
    std::int64_t tau = 1;
    app.add_option("--format", format_str, "Output format: table, json or csv");
    app.add_flag("--oracle", use_oracle, "Cross-check closed forms against the brute-force oracle");
    app.add_option("--tau", tau, "Hardware bandwidth for PCB partition checks");

    std::string source, source_b, scope = "all";
    std::int64_t input_override = 0, scale_input = 0;
    std::string budget_str;
    std::vector<std::string> remove;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Cost report for a preset or file");
    analyze_cmd->add_option("spec", source, "Preset name, a+b composition, or file path")
        ->required();
    analyze_cmd->add_option("--input", input_override, "Override square input resolution");

    CLI::App* compare_cmd = app.add_subcommand("compare", "Side-by-side cost of two networks");
    compare_cmd->add_option("a", source, "First spec source")->required();
    compare_cmd->add_option("b", source_b, "Second spec source")->required();
    compare_cmd->add_option("--input", input_override, "Override square input resolution");

    CLI::App* cspize_cmd = app.add_subcommand("cspize", "Rewrite block kinds to CSP counterparts");
    cspize_cmd->add_option("spec", source, "Spec source")->required();
    cspize_cmd->add_option("--scope", scope, "backbone, neck or all");

    CLI::App* prune_cmd = app.add_subcommand("prune", "Remove top pyramid levels");
    prune_cmd->add_option("spec", source, "Spec source")->required();
    prune_cmd->add_option("--remove", remove, "Levels to remove, e.g. P7 P6")
        ->required()
        ->delimiter(',');

    CLI::App* scale_cmd = app.add_subcommand("scale", "Compound scale-up under a FLOP budget");
    scale_cmd->add_option("spec", source, "Base spec source")->required();
    scale_cmd->add_option("--input", scale_input, "Target input resolution")->required();
    scale_cmd->add_option("--budget-flops", budget_str, "FLOP budget")->required();

    CLI::App* tiny_cmd = app.add_subcommand("check-tiny", "Evaluate the tiny-model principles");
    tiny_cmd->add_option("spec", source, "Spec source")->required();

    CLI::App* presets_cmd = app.add_subcommand("presets", "Preset registry");
    CLI::App* presets_list_cmd = presets_cmd->add_subcommand("list", "List built-in presets");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        Format format = parse_format(format_str);
        if (analyze_cmd->parsed())
            return cmd_analyze(source, input_override, format, use_oracle, out);
        if (compare_cmd->parsed())
            return cmd_compare(source, source_b, input_override, format, out);
        if (cspize_cmd->parsed()) return cmd_cspize(source, scope, format, out, err);
        if (prune_cmd->parsed()) return cmd_prune(source, remove, format, out);
        if (scale_cmd->parsed()) return cmd_scale(source, scale_input, budget_str, format, out);
        if (tiny_cmd->parsed()) return cmd_check_tiny(source, tau, format, out);
        if (presets_cmd->parsed() && presets_list_cmd->parsed())
            return cmd_presets_list(format, out);
        err << "usage error: missing subcommand\n";
        return 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const SyntaxError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        err << "semantic error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace archcost
