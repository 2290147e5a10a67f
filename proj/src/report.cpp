#include "gauntlet/report.hpp"

#include <algorithm>
#include <string>

namespace gauntlet {

std::string_view metric_id(Metric m) {
  switch (m) {
    case Metric::kBleu1: return "bleu1";
    case Metric::kBleu2: return "bleu2";
    case Metric::kBleu3: return "bleu3";
    case Metric::kBleu4: return "bleu4";
    case Metric::kMeteor: return "meteor";
    case Metric::kRougeL: return "rouge_l";
    case Metric::kCiderD: return "cider_d";
    case Metric::kEmbedF: return "embed_f";
  }
  return "unknown";
}

std::string_view metric_label(Metric m) {
  switch (m) {
    case Metric::kBleu1: return "BLEU-1";
    case Metric::kBleu2: return "BLEU-2";
    case Metric::kBleu3: return "BLEU-3";
    case Metric::kBleu4: return "BLEU-4";
    case Metric::kMeteor: return "METEOR";
    case Metric::kRougeL: return "ROUGE-L";
    case Metric::kCiderD: return "CIDEr-D";
    case Metric::kEmbedF: return "EmbedF";
  }
  return "?";
}

Metric parse_metric(std::string_view id) {
  for (Metric m : kAllMetrics) {
    if (metric_id(m) == id) return m;
  }
  throw Error(ErrorCode::kInvalidInput,
              "unknown metric '" + std::string(id) + "'");
}

int metric_precision(Metric m) {
  return m == Metric::kCiderD || m == Metric::kEmbedF ? 3 : 2;
}

std::optional<double> MetricReport::get(Metric m) const {
  switch (m) {
    case Metric::kBleu1: return bleu[0];
    case Metric::kBleu2: return bleu[1];
    case Metric::kBleu3: return bleu[2];
    case Metric::kBleu4: return bleu[3];
    case Metric::kMeteor: return meteor;
    case Metric::kRougeL: return rouge_l;
    case Metric::kCiderD: return cider_d;
    case Metric::kEmbedF: return embed_f;
  }
  return std::nullopt;
}

void MetricReport::set(Metric m, double value) {
  switch (m) {
    case Metric::kBleu1: bleu[0] = value; break;
    case Metric::kBleu2: bleu[1] = value; break;
    case Metric::kBleu3: bleu[2] = value; break;
    case Metric::kBleu4: bleu[3] = value; break;
    case Metric::kMeteor: meteor = value; break;
    case Metric::kRougeL: rouge_l = value; break;
    case Metric::kCiderD: cider_d = value; break;
    case Metric::kEmbedF: embed_f = value; break;
  }
}

MetricReport score_all(std::span<const Sentence> hyps,
                       const MultiReferences& refs, const ScoreConfig& cfg,
                       const EmbeddingInputs* embeddings) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "hypothesis count " + std::to_string(hyps.size()) +
                    " != reference count " + std::to_string(refs.size()));
  }
  MetricReport r;
  BleuConfig bleu_cfg = cfg.bleu;
  bleu_cfg.max_order = kMaxNGramOrder;
  const auto bleu = bleu_corpus(hyps, refs, bleu_cfg);
  std::copy(bleu.begin(), bleu.end(), r.bleu.begin());
  r.meteor = meteor_corpus(hyps, refs, cfg.meteor);
  r.rouge_l = rouge_l_corpus(hyps, refs, cfg.rouge_beta);

  const IdfTable idf = build_idf(refs, cfg.cider.max_order);
  if (idf.degenerate()) {
    r.warnings.push_back(
        "CIDEr-D: single-document corpus, every idf weight is zero");
  }
  r.cider_d = cider_d(hyps, refs, cfg.cider, idf);

  if (embeddings) {
    if (embeddings->hyps.size() != hyps.size() ||
        embeddings->refs.size() != refs.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "embedding inputs do not align with the corpus");
    }
    r.embed_f = greedy_embed_fscore_corpus(embeddings->hyps, embeddings->refs,
                                           cfg.embed_baseline,
                                           cfg.embed_use_idf);
  }
  return r;
}

MetricReport report_difference(const MetricReport& after,
                               const MetricReport& before) {
  MetricReport d;
  for (Metric m : kAllMetrics) {
    const auto a = after.get(m), b = before.get(m);
    if (a && b) d.set(m, *a - *b);
  }
  return d;
}

}  // namespace gauntlet
