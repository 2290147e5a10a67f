#include "gauntlet/format.hpp"

#include <cstdio>
#include <sstream>

namespace gauntlet {

using nlohmann::json;

namespace {

Sentence sentence_from_json(const json& j) {
  return normalize_tokens(j.get<std::string>(), false);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string format_optional(Metric m, const std::optional<double>& v) {
  return v ? format_value(m, *v) : std::string("-");
}

}  // namespace

void to_json(json& j, const MetricReport& r) {
  j = json::object();
  for (Metric m : kAllMetrics) {
    const auto v = r.get(m);
    j[std::string(metric_id(m))] = v ? json(*v) : json(nullptr);
  }
  j["warnings"] = r.warnings;
}

void from_json(const json& j, MetricReport& r) {
  r = MetricReport{};
  for (Metric m : kAllMetrics) {
    const auto& v = j.at(std::string(metric_id(m)));
    if (!v.is_null()) r.set(m, v.get<double>());
  }
  if (j.contains("warnings")) {
    r.warnings = j["warnings"].get<std::vector<std::string>>();
  }
}

void to_json(json& j, const LooResult& r) {
  j = json{{"per_iteration", r.per_iteration}, {"mean", r.mean}, {"sd", r.sd}};
}

void from_json(const json& j, LooResult& r) {
  r.per_iteration = j.at("per_iteration").get<std::vector<MetricReport>>();
  r.mean = j.at("mean").get<MetricReport>();
  r.sd = j.at("sd").get<MetricReport>();
}

void to_json(json& j, const PerturbOutcome& r) {
  std::vector<std::string> perturbed;
  for (const auto& s : r.perturbed) perturbed.push_back(s.str());
  j = json{{"substituted_tokens", r.substituted_tokens},
           {"total_tokens", r.total_tokens},
           {"substitution_fraction", r.substitution_fraction},
           {"before", r.report_before},
           {"after", r.report_after},
           {"deltas", r.deltas},
           {"perturbed", perturbed}};
}

void from_json(const json& j, PerturbOutcome& r) {
  r.substituted_tokens = j.at("substituted_tokens").get<std::size_t>();
  r.total_tokens = j.at("total_tokens").get<std::size_t>();
  r.substitution_fraction = j.at("substitution_fraction").get<double>();
  r.report_before = j.at("before").get<MetricReport>();
  r.report_after = j.at("after").get<MetricReport>();
  r.deltas = j.at("deltas").get<MetricReport>();
  r.perturbed.clear();
  for (const auto& s : j.at("perturbed")) r.perturbed.push_back(sentence_from_json(s));
}

void to_json(json& j, const SearchResult& r) {
  j = json{{"sentence", r.sentence.str()},
           {"objective", std::string(metric_id(r.objective))},
           {"objective_score", r.objective_score},
           {"candidates_evaluated", r.candidates_evaluated},
           {"full_report", r.full_report}};
}

void from_json(const json& j, SearchResult& r) {
  r.sentence = sentence_from_json(j.at("sentence"));
  r.objective = parse_metric(j.at("objective").get<std::string>());
  r.objective_score = j.at("objective_score").get<double>();
  r.candidates_evaluated = j.at("candidates_evaluated").get<std::size_t>();
  r.full_report = j.at("full_report").get<MetricReport>();
}

std::string format_value(Metric m, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", metric_precision(m), v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string format_report_table(const MetricReport& r) {
  std::ostringstream out;
  out << pad("metric", 10) << "score\n";
  for (Metric m : kAllMetrics) {
    out << pad(std::string(metric_label(m)), 10) << format_optional(m, r.get(m))
        << '\n';
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string format_loo_table(const LooResult& rvr,
                             const std::optional<LooResult>& svr) {
  auto cell = [](Metric m, const LooResult& r) {
    const auto mu = r.mean.get(m), sd = r.sd.get(m);
    if (!mu || !sd) return std::string("-");
    return format_value(m, *mu) + " ±" + format_value(m, *sd);
  };
  std::ostringstream out;
  out << pad("metric", 10) << pad("RvR", 18) << (svr ? "SvR" : "") << '\n';
  for (Metric m : kAllMetrics) {
    out << pad(std::string(metric_label(m)), 10);
    if (svr) {
      out << pad(cell(m, rvr), 18) << cell(m, *svr);
    } else {
      out << cell(m, rvr);
    }
    out << '\n';
  }
  out << "iterations: " << rvr.per_iteration.size() << '\n';
  return out.str();
}

std::string format_perturb_table(const PerturbOutcome& r) {
  std::ostringstream out;
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.2f", 100.0 * r.substitution_fraction);
  out << "substituted " << r.substituted_tokens << '/' << r.total_tokens
      << " tokens (" << pct << "%)\n";
  out << pad("metric", 10) << pad("before", 10) << pad("after", 10) << "delta\n";
  for (Metric m : kAllMetrics) {
    out << pad(std::string(metric_label(m)), 10)
        << pad(format_optional(m, r.report_before.get(m)), 10)
        << pad(format_optional(m, r.report_after.get(m)), 10)
        << format_optional(m, r.deltas.get(m)) << '\n';
  }
  return out.str();
}

std::string format_search_row(const SearchResult& r) {
  static constexpr Metric kColumns[] = {Metric::kBleu1,  Metric::kBleu4,
                                        Metric::kMeteor, Metric::kCiderD,
                                        Metric::kRougeL, Metric::kEmbedF};
  const std::string sentence = "*" + r.sentence.str() + "*";
  const std::size_t width = std::max<std::size_t>(sentence.size() + 2, 10);
  std::ostringstream out;
  out << pad("sentence", width);
  for (Metric m : kColumns) out << pad(std::string(metric_label(m)), 9);
  out << '\n' << pad(sentence, width);
  for (Metric m : kColumns) {
    out << pad(format_optional(m, r.full_report.get(m)), 9);
  }
  out << '\n'
      << "objective " << metric_id(r.objective) << " = "
      << format_value(r.objective, r.objective_score) << " over "
      << r.candidates_evaluated << " unique candidates\n";
  return out.str();
}

}  // namespace gauntlet
