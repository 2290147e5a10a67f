#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gauntlet/loo.hpp"
#include "gauntlet/perturb.hpp"
#include "gauntlet/report.hpp"
#include "gauntlet/search.hpp"

namespace gauntlet {

// JSON (nlohmann ADL hooks). Scores are written as full-precision doubles,
// so parsing the JSON back yields the same values and the same tables.
void to_json(nlohmann::json& j, const MetricReport& r);
void from_json(const nlohmann::json& j, MetricReport& r);
void to_json(nlohmann::json& j, const LooResult& r);
void from_json(const nlohmann::json& j, LooResult& r);
void to_json(nlohmann::json& j, const PerturbOutcome& r);
void from_json(const nlohmann::json& j, PerturbOutcome& r);
void to_json(nlohmann::json& j, const SearchResult& r);
void from_json(const nlohmann::json& j, SearchResult& r);

// Fixed-point value at the metric's table precision; never prints "-0.00".
std::string format_value(Metric m, double v);

std::string format_report_table(const MetricReport& r);

// One row per metric with "mean ±sd" columns for RvR and, when given, SvR.
std::string format_loo_table(const LooResult& rvr,
                             const std::optional<LooResult>& svr);

// Substitution share plus before/after/delta rows.
std::string format_perturb_table(const PerturbOutcome& r);

// Header and one row: the sentence wrapped in asterisks, then BLEU-1,
// BLEU-4, METEOR, CIDEr-D, ROUGE-L and embedding F when available.
std::string format_search_row(const SearchResult& r);

}  // namespace gauntlet
