#pragma once

#include "tropical/cells.hpp"
#include "tropical/divisor.hpp"
#include "tropical/function.hpp"
#include "tropical/graph.hpp"
#include "tropical/harness.hpp"
#include "tropical/rank.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>

namespace tropical {

/// A graph together with named divisors and functions on it.
struct Document {
    GraphPtr graph;
    std::map<std::string, Divisor> divisors;
    std::map<std::string, RationalFunction> functions;
};

/// Parses a document. Syntax errors report "line L, column C"; semantic errors
/// report the JSON pointer of the offending value. Both throw ParseError.
Document parse_document(std::string_view text);
nlohmann::json document_to_json(const Document& doc);
std::string serialize_document(const Document& doc);

GraphPtr graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const MetricGraph& g);

GraphPoint point_from_json(const MetricGraph& g, const nlohmann::json& j);
nlohmann::json point_to_json(const MetricGraph& g, const GraphPoint& p);

Divisor divisor_from_json(const GraphPtr& g, const nlohmann::json& j);
nlohmann::json divisor_to_json(const Divisor& d);

RationalFunction function_from_json(const GraphPtr& g, const nlohmann::json& j);
nlohmann::json function_to_json(const RationalFunction& f);

nlohmann::json rank_report_to_json(const RankReport& r);
nlohmann::json cell_report_to_json(const MetricGraph& g, const CellReport& r);

/// Campaign configuration; every field is optional and defaults to
/// CampaignConfig{}. Ranges are two-element arrays.
CampaignConfig campaign_config_from_json(const nlohmann::json& j);
CampaignConfig parse_campaign_config(std::string_view text);
nlohmann::json instance_record_to_json(const InstanceRecord& r);
nlohmann::json campaign_summary_to_json(const CampaignReport& r);

}  // namespace tropical
