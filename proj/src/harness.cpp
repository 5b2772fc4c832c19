#include "tropical/harness.hpp"

#include "tropical/random.hpp"

#include <chrono>
#include <cstdio>
#include <exception>

namespace tropical {

void CampaignConfig::validate() const {
    if (genus.first > genus.second || genus.first < 0) throw InvalidArgument("empty genus range");
    if (edges.first > edges.second || edges.second < 1) throw InvalidArgument("empty edge range");
    if (edges.second < genus.first) throw InvalidArgument("edge range cannot reach the genus range");
    if (degree.first > degree.second) throw InvalidArgument("empty degree range");
    if (max_denominator < 1) throw InvalidArgument("max denominator must be at least 1");
    if (scale_cap < 1) throw InvalidArgument("scale cap must be at least 1");
    if (max_ends < 0) throw InvalidArgument("max ends must be nonnegative");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "PASS";
        case Verdict::Fail:
            return "FAIL";
        case Verdict::Inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

Instance random_instance(const CampaignConfig& config, std::size_t index) {
    config.validate();
    Rng rng = Rng::stream(config.seed, index);
    RandomGraphSpec spec;
    spec.genus = static_cast<int>(rng.uniform(config.genus.first, config.genus.second));
    int min_edges = std::max({config.edges.first, spec.genus, 1});
    spec.edges = static_cast<int>(rng.uniform(min_edges, std::max(min_edges, config.edges.second)));
    spec.max_denominator = config.max_denominator;
    spec.ends = static_cast<int>(rng.uniform(0, config.max_ends));
    GraphPtr g = random_graph(rng, spec);
    std::int64_t degree = rng.uniform(config.degree.first, config.degree.second);
    Divisor d = random_divisor(rng, g, degree, 3, config.max_denominator);
    return Instance{g, std::move(d)};
}

InstanceRecord verify_rr(const Divisor& d, const RankOptions& options) {
    InstanceRecord r;
    const GraphPtr& g = d.host();
    r.graph_hash = graph_hash(*g);
    r.divisor = to_string(d);
    RankReport rd = tropical_rank(d, options);
    RankReport rk = tropical_rank(canonical(g) - d, options);
    r.rank_d = rd.rank;
    r.rank_k_minus_d = rk.rank;
    r.degree = d.degree();
    r.genus = genus(*g);
    r.lhs = rd.rank - rk.rank;
    r.rhs = r.degree + 1 - r.genus;
    r.scales = rd.scales_tested;
    r.scales.insert(r.scales.end(), rk.scales_tested.begin(), rk.scales_tested.end());
    r.stabilized = rd.stabilized && rk.stabilized;
    if (!r.stabilized) {
        r.verdict = Verdict::Inconclusive;
    } else {
        r.verdict = r.lhs == r.rhs ? Verdict::Pass : Verdict::Fail;
    }
    return r;
}

CampaignReport run_campaign(const CampaignConfig& config) {
    config.validate();
    auto start = std::chrono::steady_clock::now();
    CampaignReport report;
    report.records.resize(config.instances);
    RankOptions options;
    options.scale_cap = config.scale_cap;
    std::exception_ptr error;
    const std::int64_t count = static_cast<std::int64_t>(config.instances);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            auto idx = static_cast<std::size_t>(i);
            Instance inst = random_instance(config, idx);
            InstanceRecord rec = verify_rr(inst.divisor, options);
            rec.index = idx;
            report.records[idx] = std::move(rec);
        } catch (...) {
#pragma omp critical(tropical_campaign_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& r : report.records) {
        switch (r.verdict) {
            case Verdict::Pass:
                ++report.passed;
                break;
            case Verdict::Fail:
                ++report.failed;
                break;
            case Verdict::Inconclusive:
                ++report.inconclusive;
                break;
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string graph_hash(const MetricGraph& g) {
    const Graph& graph = g.graph();
    std::string text;
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) text += graph.vertex_id(v) + ",";
    text += ";";
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        text += edge.id + ":" + graph.vertex_id(edge.from) + ">" + graph.vertex_id(edge.to) + "=" +
                (g.is_infinite(e) ? std::string("inf") : to_string(g.length(e).value())) + ";";
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string rr_line(const InstanceRecord& r) {
    return std::to_string(r.rank_d) + " - " + std::to_string(r.rank_k_minus_d) + " = " + std::to_string(r.degree) +
           " + 1 - " + std::to_string(r.genus) + " " + to_string(r.verdict);
}

}  // namespace tropical
