#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gauntlet/corpus.hpp"

namespace gauntlet {

struct BleuConfig {
  int max_order = 4;
  // Floor substituted for a zero n-gram precision. Zero disables smoothing,
  // so any zero precision zeroes BLEU at that order and above.
  double smoothing_epsilon = 0.0;

  void validate() const;
};

struct ClippedCounts {
  std::int64_t clipped = 0;
  std::int64_t total = 0;
};

// Modified precision numerator: each hypothesis n-gram is credited at most
// its largest count in any single reference.
ClippedCounts clipped_counts(const NGramProfile& hyp,
                             std::span<const NGramProfile> refs);

// Integer sufficient statistics of corpus BLEU. Sums over instances are
// exact, so any two routes that produce the same statistics produce
// bit-identical scores.
struct BleuStats {
  std::array<std::int64_t, kMaxNGramOrder> clipped{};
  std::array<std::int64_t, kMaxNGramOrder> total{};
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& o);
  friend bool operator==(const BleuStats&, const BleuStats&) = default;
};

BleuStats bleu_sentence_stats(const Sentence& hyp,
                              std::span<const Sentence> refs, int max_order);

double brevity_penalty(std::int64_t hyp_length, std::int64_t ref_length);

// BLEU-1..BLEU-max_order on the 0-100 scale.
std::vector<double> bleu_from_stats(const BleuStats& stats,
                                    const BleuConfig& cfg);

// Corpus-level BLEU: clipped counts, totals and lengths are summed over the
// corpus before precisions and the brevity penalty are formed. Throws
// kEmptyCorpus when there are no hypotheses.
std::vector<double> bleu_corpus(std::span<const Sentence> hyps,
                                 const MultiReferences& refs,
                                 const BleuConfig& cfg);

}  // namespace gauntlet
