#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gauntlet/bleu.hpp"
#include "gauntlet/cider.hpp"
#include "gauntlet/corpus.hpp"
#include "gauntlet/embedding.hpp"
#include "gauntlet/meteor.hpp"
#include "gauntlet/rouge.hpp"

namespace gauntlet {

enum class Metric {
  kBleu1,
  kBleu2,
  kBleu3,
  kBleu4,
  kMeteor,
  kRougeL,
  kCiderD,
  kEmbedF,
};

inline constexpr std::array<Metric, 8> kAllMetrics{
    Metric::kBleu1,  Metric::kBleu2,  Metric::kBleu3,  Metric::kBleu4,
    Metric::kMeteor, Metric::kRougeL, Metric::kCiderD, Metric::kEmbedF};

// Machine id ("bleu4", "rouge_l", ...) and the label used in tables.
std::string_view metric_id(Metric m);
std::string_view metric_label(Metric m);
// Throws kInvalidInput for an unknown id.
Metric parse_metric(std::string_view id);
// Decimal places shown in tables: 3 for CIDEr-D and embedding F, else 2.
int metric_precision(Metric m);

// One row of scores. BLEU, METEOR and ROUGE-L are on the 0-100 scale,
// CIDEr-D on 0-10, embedding F is baseline-rescaled and may be negative.
struct MetricReport {
  std::array<double, 4> bleu{};
  double meteor = 0.0;
  double rouge_l = 0.0;
  double cider_d = 0.0;
  std::optional<double> embed_f;
  std::vector<std::string> warnings;

  // nullopt only for kEmbedF when embeddings were not supplied.
  std::optional<double> get(Metric m) const;
  void set(Metric m, double value);

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct ScoreConfig {
  BleuConfig bleu;
  MeteorConfig meteor;
  double rouge_beta = kDefaultRougeBeta;
  CiderConfig cider;
  double embed_baseline = 0.0;
  bool embed_use_idf = false;
};

struct EmbeddingInputs {
  std::vector<EmbeddedSentence> hyps;
  std::vector<std::vector<EmbeddedSentence>> refs;
};

// Every metric over aligned hypotheses and references. The CIDEr-D idf table
// is built from `refs`; on a single-instance corpus every idf weight is zero
// and a warning is recorded. Throws kEmptyCorpus for no hypotheses.
MetricReport score_all(std::span<const Sentence> hyps,
                       const MultiReferences& refs, const ScoreConfig& cfg,
                       const EmbeddingInputs* embeddings = nullptr);

// Component-wise after - before; embed_f present only when both have it.
MetricReport report_difference(const MetricReport& after,
                               const MetricReport& before);

}  // namespace gauntlet
