#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gauntlet/corpus.hpp"

namespace gauntlet {

// Precomputed contextual token vectors, one row per token.
struct EmbeddedSentence {
  std::vector<Token> tokens;
  Eigen::MatrixXd vectors;
  std::optional<Eigen::VectorXd> idf;

  Eigen::Index dim() const { return vectors.cols(); }
  // Throws kEmbeddingDim when rows, tokens and idf weights disagree.
  void validate() const;
};

struct GreedyMatch {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

// Greedy max-cosine matching of every token against the other side, weighted
// by idf when requested. Zero vectors have cosine 0 with everything.
GreedyMatch greedy_match(const EmbeddedSentence& hyp,
                         const EmbeddedSentence& ref, bool use_idf);

// Baseline-rescaled F, (F - b) / (1 - b), maximised over references.
double greedy_embed_fscore(const EmbeddedSentence& hyp,
                           std::span<const EmbeddedSentence> refs,
                           double baseline, bool use_idf);

// Mean of sentence scores over the corpus.
double greedy_embed_fscore_corpus(
    std::span<const EmbeddedSentence> hyps,
    const std::vector<std::vector<EmbeddedSentence>>& refs, double baseline,
    bool use_idf);

}  // namespace gauntlet
