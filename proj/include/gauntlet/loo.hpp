#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gauntlet/corpus.hpp"
#include "gauntlet/report.hpp"

namespace gauntlet {

struct LooResult {
  std::vector<MetricReport> per_iteration;
  MetricReport mean;
  MetricReport sd;  // population standard deviation (divides by C)
};

// Mean and population standard deviation of each field. Embedding F is
// summarised only when every report carries it.
std::pair<MetricReport, MetricReport> summarize(
    std::span<const MetricReport> reports);

// Optional embeddings for leave-one-out: one embedded corpus per reference
// corpus, plus one for the system output when scoring a system.
struct LooEmbeddings {
  std::vector<std::vector<EmbeddedSentence>> corpora;
  std::optional<std::vector<EmbeddedSentence>> system;
};

// Iteration i scores the candidate corpus (R_i itself, or `system` when
// given) against the remaining C-1 reference corpora. Requires C >= 2.
LooResult leave_one_out(const ReferenceBundle& bundle,
                        std::optional<std::span<const Sentence>> system,
                        const ScoreConfig& cfg,
                        const LooEmbeddings* embeddings = nullptr);

}  // namespace gauntlet
