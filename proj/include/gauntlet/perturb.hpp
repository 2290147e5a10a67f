#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gauntlet/corpus.hpp"
#include "gauntlet/report.hpp"

namespace gauntlet {

enum class PerturbMode { kTargeted, kThreshold, kRandomContent, kSwap };

std::string_view perturb_mode_name(PerturbMode mode);
PerturbMode parse_perturb_mode(std::string_view name);

struct PerturbSpec {
  PerturbMode mode = PerturbMode::kTargeted;
  // targeted: tokens to replace; swap: exactly one source token.
  std::vector<Token> targets;
  Token replacement{kUnkToken};
  // threshold: tokens seen fewer than this many times are replaced. T = 1
  // keeps the full vocabulary and never substitutes.
  std::size_t threshold = 1;
  // random_content: smallest share of all tokens to replace.
  double target_fraction = 0.0;
  std::uint64_t seed = 0;
  // random_content: tokens that are never selected.
  std::set<Token, std::less<>> stoplist;

  void validate() const;
};

struct PerturbedCorpus {
  std::vector<Sentence> sentences;
  std::size_t substituted_tokens = 0;
  std::size_t total_tokens = 0;

  double substitution_fraction() const {
    return total_tokens == 0 ? 0.0
                             : static_cast<double>(substituted_tokens) /
                                   static_cast<double>(total_tokens);
  }
};

// Rewrites tokens in place; positions and sentence lengths never change.
// `vocab` is required in threshold mode. random_content throws
// kFractionUnreachable when too few non-stoplist tokens exist.
PerturbedCorpus perturb(std::span<const Sentence> corpus,
                        const PerturbSpec& spec,
                        const Vocabulary* vocab = nullptr);

struct PerturbOutcome {
  std::vector<Sentence> perturbed;
  std::size_t substituted_tokens = 0;
  std::size_t total_tokens = 0;
  double substitution_fraction = 0.0;
  MetricReport report_before;
  MetricReport report_after;
  MetricReport deltas;  // after - before
};

// Scores `hypothesis_corpus` against `heldout_refs` before and after the
// perturbation.
PerturbOutcome perturb_and_score(std::span<const Sentence> hypothesis_corpus,
                                 const MultiReferences& heldout_refs,
                                 const PerturbSpec& spec,
                                 const Vocabulary* vocab,
                                 const ScoreConfig& cfg);

}  // namespace gauntlet
