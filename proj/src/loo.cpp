#include "gauntlet/loo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gauntlet {

std::pair<MetricReport, MetricReport> summarize(
    std::span<const MetricReport> reports) {
  MetricReport mean, sd;
  if (reports.empty()) return {mean, sd};
  const auto count = static_cast<double>(reports.size());
  for (Metric m : kAllMetrics) {
    bool present = true;
    double sum = 0.0;
    for (const auto& r : reports) {
      const auto v = r.get(m);
      if (!v) {
        present = false;
        break;
      }
      sum += *v;
    }
    if (!present) continue;
    const double mu = sum / count;
    double sq = 0.0;
    for (const auto& r : reports) {
      const double d = *r.get(m) - mu;
      sq += d * d;
    }
    mean.set(m, mu);
    sd.set(m, std::sqrt(sq / count));
  }
  return {mean, sd};
}

LooResult leave_one_out(const ReferenceBundle& bundle,
                        std::optional<std::span<const Sentence>> system,
                        const ScoreConfig& cfg,
                        const LooEmbeddings* embeddings) {
  const std::size_t C = bundle.num_corpora();
  const std::size_t N = bundle.num_instances();
  if (C < 2) {
    throw Error(ErrorCode::kInvalidInput,
                "leave-one-out needs at least 2 reference corpora");
  }
  if (system && system->size() != N) {
    throw Error(ErrorCode::kRaggedReferences,
                "system output has " + std::to_string(system->size()) +
                    " sentences, references have " + std::to_string(N));
  }
  if (embeddings) {
    bool ok = embeddings->corpora.size() == C;
    for (const auto& c : embeddings->corpora) ok = ok && c.size() == N;
    if (system) ok = ok && embeddings->system && embeddings->system->size() == N;
    if (!ok) {
      throw Error(ErrorCode::kInvalidInput,
                  "embeddings do not match the reference bundle shape");
    }
  }

  LooResult out;
  out.per_iteration.reserve(C);
  for (std::size_t i = 0; i < C; ++i) {
    const MultiReferences refs = bundle.references_excluding(i);
    std::span<const Sentence> candidate =
        system ? *system : std::span<const Sentence>(bundle.corpus(i));

    std::optional<EmbeddingInputs> emb;
    if (embeddings) {
      emb.emplace();
      emb->hyps = system ? *embeddings->system : embeddings->corpora[i];
      emb->refs.resize(N);
      for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < C; ++j) {
          if (j != i) emb->refs[k].push_back(embeddings->corpora[j][k]);
        }
      }
    }
    out.per_iteration.push_back(
        score_all(candidate, refs, cfg, emb ? &*emb : nullptr));
  }
  std::tie(out.mean, out.sd) = summarize(out.per_iteration);
  for (const auto& r : out.per_iteration) {
    for (const auto& w : r.warnings) {
      if (std::find(out.mean.warnings.begin(), out.mean.warnings.end(), w) ==
          out.mean.warnings.end()) {
        out.mean.warnings.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace gauntlet
