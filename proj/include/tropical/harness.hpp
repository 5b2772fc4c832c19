#pragma once

#include "tropical/divisor.hpp"
#include "tropical/graph.hpp"
#include "tropical/rank.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tropical {

struct CampaignConfig {
    std::uint64_t seed = 0;
    std::size_t instances = 200;
    std::pair<int, int> genus{0, 3};
    std::pair<int, int> edges{1, 6};
    std::pair<std::int64_t, std::int64_t> degree{-3, 6};
    int max_denominator = 4;
    int scale_cap = 4;
    int max_ends = 2;

    /// Throws InvalidArgument on empty ranges or a cap below 1.
    void validate() const;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct InstanceRecord {
    std::size_t index = 0;
    std::string graph_hash;
    std::string divisor;
    std::int64_t rank_d = 0;
    std::int64_t rank_k_minus_d = 0;
    std::int64_t degree = 0;
    int genus = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    std::vector<std::int64_t> scales;
    bool stabilized = false;
    Verdict verdict = Verdict::Pass;
};

struct CampaignReport {
    std::vector<InstanceRecord> records;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t inconclusive = 0;
    double seconds = 0;
};

struct Instance {
    GraphPtr curve;
    Divisor divisor;
};

/// Deterministic in (config.seed, index).
Instance random_instance(const CampaignConfig& config, std::size_t index);

/// r(D) - r(K - D) against deg D + 1 - g on a curve.
InstanceRecord verify_rr(const Divisor& d, const RankOptions& options = {});

CampaignReport run_campaign(const CampaignConfig& config);

/// FNV-1a of the graph's canonical text, as 16 hex digits.
std::string graph_hash(const MetricGraph& g);

/// "1 - 0 = 2 + 1 - 2 PASS"
std::string rr_line(const InstanceRecord& r);

}  // namespace tropical
