#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gauntlet/bleu.hpp"
#include "gauntlet/corpus.hpp"
#include "gauntlet/report.hpp"

namespace gauntlet {

struct SearchConfig {
  Metric objective = Metric::kBleu4;
  // Epsilon floor for zero BLEU precisions while ranking candidates, so that
  // short sentences with no 4-gram matches remain comparable. The reported
  // winner score is always unsmoothed.
  double ranking_smoothing = 1e-7;
  // Force the naive scorer instead of the n-gram index.
  bool naive = false;
  // Worker count; 0 picks the hardware concurrency.
  unsigned threads = 0;
  ScoreConfig score;
};

struct SearchResult {
  Sentence sentence;
  double objective_score = 0.0;
  Metric objective = Metric::kBleu4;
  std::size_t candidates_evaluated = 0;
  MetricReport full_report;
};

// Corpus-level objective when `s` is the hypothesis of every instance.
// Embedding F is not supported (there are no embeddings for `s`).
double score_fixed_hypothesis(const Sentence& s, const MultiReferences& refs,
                              Metric objective, const ScoreConfig& cfg);

// Answers corpus BLEU statistics for a hypothesis repeated over every
// instance without visiting the instances. For each reference n-gram it keeps
// the sorted per-instance maximum reference counts with prefix sums, so
// sum_i min(c, maxcount_i(g)) costs one binary search; summed effective
// reference lengths are tabulated per hypothesis length.
class FixedHypothesisIndex {
 public:
  FixedHypothesisIndex(const MultiReferences& refs, int max_order,
                       std::size_t max_hypothesis_length);

  // Identical to summing bleu_sentence_stats(s, refs[i]) over instances.
  BleuStats stats(const Sentence& s) const;

  std::size_t num_instances() const { return num_instances_; }

 private:
  static constexpr std::uint32_t kMissing = 0xffffffffu;

  struct GramPostings {
    std::vector<std::uint32_t> sorted_max_counts;
    std::vector<std::int64_t> prefix;  // prefix[k] = sum of first k counts
  };

  std::uint32_t token_id(const Token& t) const;
  std::uint32_t extend(int order, std::uint32_t prefix_id,
                       std::uint32_t token) const;
  std::uint32_t intern_extend(int order, std::uint32_t prefix_id,
                              std::uint32_t token);
  std::int64_t clipped_sum(int order, std::uint32_t gram,
                           std::uint32_t count) const;
  std::int64_t ref_length_sum(std::size_t hyp_length) const;

  int max_order_;
  std::size_t num_instances_ = 0;
  std::unordered_map<Token, std::uint32_t> tokens_;
  // order n >= 2: (gram id of the (n-1)-prefix, last token id) -> gram id
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> grams_;
  std::vector<std::vector<GramPostings>> postings_;  // [order-1][gram id]
  std::vector<std::vector<std::size_t>> ref_lengths_;  // sorted, per instance
  std::vector<std::int64_t> ref_length_table_;        // index = hyp length
};

// Best single training sentence to emit for every test instance. Candidates
// are deduplicated; ties go to the shorter sentence, then the
// lexicographically smaller token sequence, so the winner does not depend on
// the worker count. BLEU objectives use the index unless cfg.naive is set;
// other objectives are always scored naively.
SearchResult search_representative_sentence(std::span<const Sentence> train,
                                            const MultiReferences& refs,
                                            const SearchConfig& cfg);

// Worker count from METRIC_GAUNTLET_THREADS, or 0 when unset or invalid.
unsigned thread_cap_from_env();

}  // namespace gauntlet
