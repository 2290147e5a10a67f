#pragma once

#include <cstddef>
#include <span>

#include "gauntlet/corpus.hpp"

namespace gauntlet {

inline constexpr double kDefaultRougeBeta = 1.2;

// O(|a|·|b|): bit-parallel when the shorter side has at most 64 tokens,
// otherwise a single-row dynamic program.
std::size_t lcs_length(const Sentence& a, const Sentence& b);

// ROUGE-L F-measure on the 0-100 scale, maximised over references.
double rouge_l(const Sentence& hyp, std::span<const Sentence> refs,
               double beta = kDefaultRougeBeta);

// Mean of sentence ROUGE-L over the corpus.
double rouge_l_corpus(std::span<const Sentence> hyps,
                      const MultiReferences& refs,
                      double beta = kDefaultRougeBeta);

}  // namespace gauntlet
