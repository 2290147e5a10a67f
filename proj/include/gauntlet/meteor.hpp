#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gauntlet/corpus.hpp"

namespace gauntlet {

enum class MatchStage { kExact, kStem, kSynonym };

const char* match_stage_name(MatchStage stage);

// Sets of mutually synonymous surface forms. Two tokens are synonyms when
// some set contains both.
class SynonymLexicon {
 public:
  void add_set(const std::vector<Token>& forms);
  bool synonymous(const Token& a, const Token& b) const;
  std::size_t num_sets() const { return num_sets_; }

  // One set per line, forms separated by whitespace; blank lines ignored.
  static SynonymLexicon parse(std::istream& in);

 private:
  std::map<Token, std::vector<int>, std::less<>> sets_of_;
  int num_sets_ = 0;
};

struct MeteorConfig {
  double alpha = 0.85;
  double beta = 0.2;
  double gamma = 0.6;
  std::vector<MatchStage> stages{MatchStage::kExact, MatchStage::kStem,
                                 MatchStage::kSynonym};
  // The synonym stage is skipped when no lexicon is supplied.
  std::shared_ptr<const SynonymLexicon> synonyms;

  void validate() const;
};

struct AlignedPair {
  std::size_t hyp_index;
  std::size_t ref_index;
  MatchStage stage;
};

struct Alignment {
  std::vector<AlignedPair> matches;  // sorted by hyp_index
  int chunk_count = 0;
};

// Above this many tokens in contested match components the aligner switches
// from exhaustive search to a beam.
inline constexpr std::size_t kExhaustiveAmbiguityLimit = 12;
inline constexpr std::size_t kAlignmentBeamWidth = 40;

// Maximal runs of matches that are adjacent and in the same order on both
// sides. `matches` need not be sorted.
int count_chunks(std::vector<AlignedPair> matches);

// One-to-one alignment built stage by stage over still-unmatched tokens.
// Within a stage the matching has maximum cardinality and, among those, the
// fewest chunks overall.
Alignment meteor_align(const Sentence& hyp, const Sentence& ref,
                       const MeteorConfig& cfg);

// Sentence METEOR on the 0-100 scale against the best-scoring reference.
double meteor_score(const Sentence& hyp, std::span<const Sentence> refs,
                    const MeteorConfig& cfg);

// Mean of sentence scores over the corpus.
double meteor_corpus(std::span<const Sentence> hyps,
                     const MultiReferences& refs, const MeteorConfig& cfg);

}  // namespace gauntlet
