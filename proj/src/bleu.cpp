#include "gauntlet/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gauntlet {

void BleuConfig::validate() const {
  if (max_order < 1 || max_order > kMaxNGramOrder) {
    throw Error(ErrorCode::kInvalidInput, "BLEU max_order must be in 1..4");
  }
  if (!(smoothing_epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "BLEU smoothing must be >= 0");
  }
}

ClippedCounts clipped_counts(const NGramProfile& hyp,
                             std::span<const NGramProfile> refs) {
  ClippedCounts out;
  out.total = hyp.total;
  for (const auto& [gram, count] : hyp.counts) {
    int max_ref = 0;
    for (const auto& r : refs) {
      if (r.order != hyp.order) {
        throw Error(ErrorCode::kInvalidInput, "n-gram order mismatch");
      }
      max_ref = std::max(max_ref, r.count(gram));
    }
    out.clipped += std::min(count, max_ref);
  }
  return out;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < kMaxNGramOrder; ++n) {
    clipped[n] += o.clipped[n];
    total[n] += o.total[n];
  }
  hyp_length += o.hyp_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats bleu_sentence_stats(const Sentence& hyp,
                              std::span<const Sentence> refs, int max_order) {
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "instance has no references");
  }
  BleuStats st;
  std::vector<std::size_t> ref_lens;
  ref_lens.reserve(refs.size());
  for (const auto& r : refs) ref_lens.push_back(r.size());
  st.hyp_length = static_cast<std::int64_t>(hyp.size());
  st.ref_length =
      static_cast<std::int64_t>(closest_ref_length(hyp.size(), ref_lens));

  std::vector<NGramProfile> ref_profiles(refs.size());
  for (int n = 1; n <= max_order; ++n) {
    for (std::size_t j = 0; j < refs.size(); ++j) {
      ref_profiles[j] = ngram_profile(refs[j], n);
    }
    const auto c = clipped_counts(ngram_profile(hyp, n), ref_profiles);
    st.clipped[n - 1] = c.clipped;
    st.total[n - 1] = c.total;
  }
  return st;
}

double brevity_penalty(std::int64_t hyp_length, std::int64_t ref_length) {
  if (hyp_length <= 0) return 0.0;
  if (hyp_length >= ref_length) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_length) /
                            static_cast<double>(hyp_length));
}

std::vector<double> bleu_from_stats(const BleuStats& stats,
                                    const BleuConfig& cfg) {
  cfg.validate();
  const double bp = brevity_penalty(stats.hyp_length, stats.ref_length);
  std::vector<double> scores(cfg.max_order, 0.0);
  double log_sum = 0.0;
  for (int n = 0; n < cfg.max_order; ++n) {
    double p;
    if (stats.clipped[n] > 0) {
      p = static_cast<double>(stats.clipped[n]) /
          static_cast<double>(stats.total[n]);
    } else if (cfg.smoothing_epsilon > 0.0) {
      p = cfg.smoothing_epsilon /
          static_cast<double>(std::max<std::int64_t>(stats.total[n], 1));
    } else {
      break;  // this order and every higher one stay at zero
    }
    log_sum += std::log(p);
    scores[n] = 100.0 * bp * std::exp(log_sum / (n + 1));
  }
  return scores;
}

std::vector<double> bleu_corpus(std::span<const Sentence> hyps,
                                const MultiReferences& refs,
                                const BleuConfig& cfg) {
  cfg.validate();
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "hypothesis count " + std::to_string(hyps.size()) +
                    " != reference count " + std::to_string(refs.size()));
  }
  BleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    total += bleu_sentence_stats(hyps[i], refs[i], cfg.max_order);
  }
  return bleu_from_stats(total, cfg);
}

}  // namespace gauntlet
