#include "tropical/cli.hpp"

#include "tropical/cells.hpp"
#include "tropical/harness.hpp"
#include "tropical/io.hpp"
#include "tropical/rank.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace tropical {

namespace {

using nlohmann::json;

enum class Output { Text, Records };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Document load(const std::string& path) {
    try {
        return parse_document(read_file(path));
    } catch (const ParseError& e) {
        std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw ParseError(path + ": " + what);
    }
}

Divisor lookup_divisor(const Document& doc, const std::string& name) {
    auto it = doc.divisors.find(name);
    if (it != doc.divisors.end()) return it->second;
    if (name == "K") return canonical(doc.graph);
    throw ParseError("unknown divisor \"" + name + "\"");
}

const RationalFunction& lookup_function(const Document& doc, const std::string& name) {
    auto it = doc.functions.find(name);
    if (it == doc.functions.end()) throw ParseError("unknown function \"" + name + "\"");
    return it->second;
}

VertexIndex lookup_vertex(const MetricGraph& g, const std::string& id) {
    for (VertexIndex v = 0; v < g.graph().vertex_count(); ++v) {
        if (g.graph().vertex_id(v) == id) return v;
    }
    throw ParseError("unknown vertex \"" + id + "\"");
}

void add_output(CLI::App* sub, Output& output) {
    sub->add_option("--output", output, "text or records (one JSON object per line)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Output>{{"text", Output::Text},
                                                                          {"records", Output::Records}}));
}

std::string join(const std::vector<std::int64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
    return s;
}

int cmd_rank(const Document& doc, const std::string& name, int scale_cap, Output output, std::ostream& out) {
    RankOptions options;
    options.scale_cap = scale_cap;
    RankReport report = tropical_rank(lookup_divisor(doc, name), options);
    if (output == Output::Records) {
        out << rank_report_to_json(report).dump() << "\n";
    } else {
        out << "rank " << report.rank << "\n";
        out << "scales " << join(report.scales_tested) << "\n";
        out << "stabilized " << (report.stabilized ? "true" : "false") << "\n";
        if (report.witness) out << "witness " << to_string(*report.witness) << "\n";
    }
    return report.stabilized ? kExitOk : kExitInconclusive;
}

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return kExitOk;
        case Verdict::Fail:
            return kExitVerificationFailure;
        case Verdict::Inconclusive:
            return kExitInconclusive;
    }
    return kExitVerificationFailure;
}

int cmd_rr(const Document& doc, const std::string& name, int scale_cap, Output output, std::ostream& out) {
    RankOptions options;
    options.scale_cap = scale_cap;
    InstanceRecord r = verify_rr(lookup_divisor(doc, name), options);
    if (output == Output::Records) {
        out << instance_record_to_json(r).dump() << "\n";
    } else {
        out << rr_line(r) << "\n";
    }
    return verdict_code(r.verdict);
}

void print_divisor(const Divisor& d, Output output, std::ostream& out) {
    if (output == Output::Records) {
        out << divisor_to_json(d).dump() << "\n";
    } else {
        out << to_string(d) << "\n";
    }
}

int cmd_equiv(const Document& doc, const std::string& a, const std::string& b, Output output, std::ostream& out) {
    Equivalence eq = linear_equiv(lookup_divisor(doc, a), lookup_divisor(doc, b));
    if (output == Output::Records) {
        out << json{{"equivalent", eq.equivalent},
                    {"witness", eq.witness ? function_to_json(*eq.witness) : json(nullptr)}}
                   .dump()
            << "\n";
    } else {
        out << (eq.equivalent ? "equivalent" : "not equivalent") << "\n";
        if (eq.witness) out << "witness " << function_to_json(*eq.witness).dump() << "\n";
    }
    return kExitOk;
}

int cmd_cells(const Document& doc, const std::string& name, const CellCaps& caps, Output output, std::ostream& out) {
    Divisor d = lookup_divisor(doc, name);
    CoreRetraction r = retract_core(doc.graph);
    Divisor core_d = to_core(retract_divisor(d).divisor, r);
    CellReport report = enumerate_cells(core_d, caps);
    const MetricGraph& g = *core_d.host();
    if (output == Output::Records) {
        out << cell_report_to_json(g, report).dump() << "\n";
    } else {
        for (const auto& c : report.cells) {
            out << "dim " << c.dimension << " at";
            for (const auto& loc : c.signature.placement) out << " " << location_label(g, loc);
            out << " slopes";
            for (EdgeIndex e = 0; e < c.signature.slopes.size(); ++e) {
                out << " " << g.graph().edge(e).id << ":" << c.signature.slopes[e];
            }
            out << "\n";
        }
        std::vector<std::int64_t> dims;
        for (const auto& [dim, count] : report.dimension_counts) dims.insert(dims.end(), count, dim);
        out << "cells " << report.cells.size() << "\n";
        out << "dims " << join(dims) << "\n";
        out << "max_dimension " << max_cell_dimension(report) << "\n";
        out << "slope_bound " << report.slope_bound.get_str() << "\n";
        out << "truncated " << (report.truncated ? "true" : "false") << "\n";
    }
    return report.truncated ? kExitInconclusive : kExitOk;
}

int cmd_campaign(CampaignConfig config, Output output, std::ostream& out) {
    CampaignReport report = run_campaign(config);
    for (const auto& r : report.records) {
        if (output == Output::Records) {
            out << instance_record_to_json(r).dump() << "\n";
        } else {
            out << r.index << " " << r.graph_hash << " " << rr_line(r) << "\n";
        }
    }
    if (output == Output::Records) {
        out << json{{"summary", campaign_summary_to_json(report)}}.dump() << "\n";
    } else {
        out << "instances     " << report.records.size() << "\n";
        out << "passed        " << report.passed << "\n";
        out << "failed        " << report.failed << "\n";
        out << "inconclusive  " << report.inconclusive << "\n";
        out << "seconds       " << report.seconds << "\n";
    }
    if (report.failed > 0) return kExitVerificationFailure;
    return report.inconclusive > 0 ? kExitInconclusive : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Divisors, ranks and Riemann-Roch checks on tropical curves", "tropdiv"};
    app.require_subcommand(1, 1);

    Output output = Output::Text;
    int scale_cap = 4;
    std::string document, divisor, other, function, point, base, config_path;
    std::uint64_t seed = 0;
    CellCaps caps;
    std::function<int()> action;

    auto* rank = app.add_subcommand("rank", "rank of a divisor");
    rank->add_option("document", document)->required();
    rank->add_option("divisor", divisor)->required();
    rank->add_option("--scale-cap", scale_cap, "largest k in the scale schedule s0*lcm(1..k)")
        ->check(CLI::Range(1, 64));
    add_output(rank, output);
    rank->callback([&] { action = [&] { return cmd_rank(load(document), divisor, scale_cap, output, out); }; });

    auto* rr = app.add_subcommand("rr", "check r(D) - r(K-D) = deg D + 1 - g");
    rr->add_option("document", document)->required();
    rr->add_option("divisor", divisor)->required();
    rr->add_option("--scale-cap", scale_cap)->check(CLI::Range(1, 64));
    add_output(rr, output);
    rr->callback([&] { action = [&] { return cmd_rr(load(document), divisor, scale_cap, output, out); }; });

    auto* can = app.add_subcommand("canonical", "canonical divisor");
    can->add_option("document", document)->required();
    add_output(can, output);
    can->callback([&] {
        action = [&] {
            print_divisor(canonical(load(document).graph), output, out);
            return static_cast<int>(kExitOk);
        };
    });

    auto* red = app.add_subcommand("reduce", "reduced representative of a divisor class");
    red->add_option("document", document)->required();
    red->add_option("divisor", divisor)->required();
    red->add_option("--base", base, "base vertex id (default: lowest vertex of the core)");
    add_output(red, output);
    red->callback([&] {
        action = [&] {
            Document doc = load(document);
            std::optional<VertexIndex> q;
            if (!base.empty()) q = lookup_vertex(*doc.graph, base);
            print_divisor(reduce_divisor(lookup_divisor(doc, divisor), q), output, out);
            return static_cast<int>(kExitOk);
        };
    });

    auto* eq = app.add_subcommand("equiv", "linear equivalence of two divisors");
    eq->add_option("document", document)->required();
    eq->add_option("d1", divisor)->required();
    eq->add_option("d2", other)->required();
    add_output(eq, output);
    eq->callback([&] { action = [&] { return cmd_equiv(load(document), divisor, other, output, out); }; });

    auto* cells = app.add_subcommand("cells", "cells of the space of effective representatives");
    cells->add_option("document", document)->required();
    cells->add_option("divisor", divisor)->required();
    cells->add_option("--caps-edges", caps.max_edges, "largest graph handled")->check(CLI::Range(1, 64));
    cells->add_option("--caps-degree", caps.max_degree, "largest degree handled")->check(CLI::Range(0, 64));
    add_output(cells, output);
    cells->callback([&] { action = [&] { return cmd_cells(load(document), divisor, caps, output, out); }; });

    auto* camp = app.add_subcommand("campaign", "seeded Riemann-Roch campaign");
    camp->add_option("config", config_path)->required();
    camp->add_option("--seed", seed)->required();
    auto* cap_opt = camp->add_option("--scale-cap", scale_cap)->check(CLI::Range(1, 64));
    add_output(camp, output);
    camp->callback([&] {
        action = [&] {
            CampaignConfig config = parse_campaign_config(read_file(config_path));
            config.seed = seed;
            if (cap_opt->count() > 0) config.scale_cap = scale_cap;
            return cmd_campaign(config, output, out);
        };
    });

    auto* ord = app.add_subcommand("ord", "order of a function at a point");
    ord->add_option("document", document)->required();
    ord->add_option("function", function)->required();
    ord->add_option("point", point, "vertex id or edge@offset")->required();
    add_output(ord, output);
    ord->callback([&] {
        action = [&] {
            Document doc = load(document);
            const RationalFunction& f = lookup_function(doc, function);
            std::int64_t k = order(f, parse_point_label(*doc.graph, point));
            if (output == Output::Records) {
                out << json{{"order", k}}.dump() << "\n";
            } else {
                out << k << "\n";
            }
            return static_cast<int>(kExitOk);
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}

}  // namespace tropical
