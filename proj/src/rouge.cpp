#include "gauntlet/rouge.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace gauntlet {

namespace {

// Bit-parallel LCS (Hyyro) for a shorter side of at most 64 tokens: bit j of
// `v` is cleared once inner token j has been used by the longest subsequence.
std::size_t lcs_bits(const Sentence& outer, const Sentence& inner) {
  const std::size_t n = inner.size();
  std::uint64_t v = ~std::uint64_t{0};
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const std::uint64_t x = outer.key(i);
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < n; ++j) {
      m |= std::uint64_t{x == inner.key(j)} << j;
    }
    if (m != 0 && !Sentence::key_is_exact(x)) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((m >> j & 1) && outer[i] != inner[j]) m &= ~(std::uint64_t{1} << j);
      }
    }
    const std::uint64_t u = v & m;
    v = (v + u) | (v - u);
  }
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return static_cast<std::size_t>(std::popcount(~v & mask));
}

}  // namespace

std::size_t lcs_length(const Sentence& a, const Sentence& b) {
  const Sentence& outer = a.size() >= b.size() ? a : b;
  const Sentence& inner = a.size() >= b.size() ? b : a;
  const std::size_t n = inner.size();
  if (n <= 64) return lcs_bits(outer, inner);
  std::vector<std::uint32_t> row(n + 1, 0);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    std::uint32_t diag = 0;  // row[j - 1] before this pass
    for (std::size_t j = 1; j <= n; ++j) {
      const std::uint32_t up = row[j];
      row[j] = outer.same_token(i, inner, j - 1) ? diag + 1
                                                 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[n];
}

double rouge_l(const Sentence& hyp, std::span<const Sentence> refs,
               double beta) {
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "ROUGE-L needs at least one reference");
  }
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "ROUGE-L beta must be > 0");
  }
  const double b2 = beta * beta;
  double best = 0.0;
  for (const auto& ref : refs) {
    const std::size_t lcs = lcs_length(hyp, ref);
    if (lcs == 0) continue;
    const double recall = static_cast<double>(lcs) / static_cast<double>(ref.size());
    const double precision = static_cast<double>(lcs) / static_cast<double>(hyp.size());
    const double f = (1.0 + b2) * recall * precision / (recall + b2 * precision);
    best = std::max(best, f);
  }
  return 100.0 * best;
}

double rouge_l_corpus(std::span<const Sentence> hyps,
                      const MultiReferences& refs, double beta) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput, "hypothesis/reference count mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    sum += rouge_l(hyps[i], refs[i], beta);
  }
  return sum / static_cast<double>(hyps.size());
}

}  // namespace gauntlet
