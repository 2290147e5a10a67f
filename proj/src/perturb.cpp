#include "gauntlet/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace gauntlet {

std::string_view perturb_mode_name(PerturbMode mode) {
  switch (mode) {
    case PerturbMode::kTargeted: return "targeted";
    case PerturbMode::kThreshold: return "threshold";
    case PerturbMode::kRandomContent: return "random_content";
    case PerturbMode::kSwap: return "swap";
  }
  return "unknown";
}

PerturbMode parse_perturb_mode(std::string_view name) {
  for (PerturbMode m : {PerturbMode::kTargeted, PerturbMode::kThreshold,
                        PerturbMode::kRandomContent, PerturbMode::kSwap}) {
    if (perturb_mode_name(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidInput,
              "unknown perturbation mode '" + std::string(name) + "'");
}

void PerturbSpec::validate() const {
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidInput, what);
  };
  if (replacement.empty() ||
      replacement.find_first_of(" \t\n\r\v\f") != std::string::npos) {
    bad("replacement must be a single non-empty token");
  }
  switch (mode) {
    case PerturbMode::kTargeted:
      if (targets.empty()) bad("targeted mode needs at least one target");
      break;
    case PerturbMode::kSwap:
      if (targets.size() != 1) bad("swap mode needs exactly one source token");
      break;
    case PerturbMode::kThreshold:
      if (threshold < 1) bad("threshold T must be a positive integer");
      break;
    case PerturbMode::kRandomContent:
      if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
        bad("fraction must lie in (0,1]");
      }
      break;
  }
}

namespace {

// Rejection sampling on the raw 64-bit stream; std::uniform_int_distribution
// differs between standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

PerturbedCorpus perturb(std::span<const Sentence> corpus,
                        const PerturbSpec& spec, const Vocabulary* vocab) {
  spec.validate();
  if (spec.mode == PerturbMode::kThreshold && !vocab) {
    throw Error(ErrorCode::kInvalidInput, "threshold mode needs a vocabulary");
  }

  std::vector<std::vector<Token>> tokens;
  tokens.reserve(corpus.size());
  PerturbedCorpus out;
  for (const auto& s : corpus) {
    tokens.push_back(s.tokens());
    out.total_tokens += s.size();
  }

  auto replace_where = [&](auto&& pred) {
    for (auto& sent : tokens) {
      for (auto& t : sent) {
        if (pred(t)) {
          t = spec.replacement;
          ++out.substituted_tokens;
        }
      }
    }
  };

  switch (spec.mode) {
    case PerturbMode::kTargeted:
    case PerturbMode::kSwap: {
      const std::set<Token, std::less<>> targets(spec.targets.begin(),
                                                 spec.targets.end());
      replace_where([&](const Token& t) { return targets.count(t) > 0; });
      break;
    }
    case PerturbMode::kThreshold:
      if (spec.threshold > 1) {
        replace_where(
            [&](const Token& t) { return vocab->count(t) < spec.threshold; });
      }
      break;
    case PerturbMode::kRandomContent: {
      std::vector<std::pair<std::size_t, std::size_t>> positions;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t j = 0; j < tokens[i].size(); ++j) {
          const Token& t = tokens[i][j];
          if (t != spec.replacement && !spec.stoplist.contains(t)) {
            positions.emplace_back(i, j);
          }
        }
      }
      if (out.total_tokens == 0) {
        throw Error(ErrorCode::kFractionUnreachable, "corpus has no tokens");
      }
      // Smallest count whose share of the corpus reaches the target.
      const auto total = static_cast<double>(out.total_tokens);
      auto needed =
          static_cast<std::size_t>(std::ceil(spec.target_fraction * total));
      while (needed > 0 &&
             static_cast<double>(needed - 1) / total >= spec.target_fraction) {
        --needed;
      }
      while (static_cast<double>(needed) / total < spec.target_fraction) {
        ++needed;
      }
      if (needed > positions.size()) {
        throw Error(ErrorCode::kFractionUnreachable,
                    "need " + std::to_string(needed) +
                        " content tokens to reach the requested fraction, "
                        "corpus has " + std::to_string(positions.size()));
      }
      // Partial Fisher-Yates: the first `needed` slots become the sample.
      std::mt19937_64 rng(spec.seed);
      for (std::size_t k = 0; k < needed; ++k) {
        const std::size_t pick =
            k + static_cast<std::size_t>(uniform_below(rng, positions.size() - k));
        std::swap(positions[k], positions[pick]);
        const auto [i, j] = positions[k];
        tokens[i][j] = spec.replacement;
      }
      out.substituted_tokens = needed;
      break;
    }
  }

  out.sentences.reserve(tokens.size());
  for (auto& t : tokens) out.sentences.emplace_back(std::move(t));
  return out;
}

PerturbOutcome perturb_and_score(std::span<const Sentence> hypothesis_corpus,
                                 const MultiReferences& heldout_refs,
                                 const PerturbSpec& spec,
                                 const Vocabulary* vocab,
                                 const ScoreConfig& cfg) {
  PerturbedCorpus p = perturb(hypothesis_corpus, spec, vocab);
  PerturbOutcome out;
  out.report_before = score_all(hypothesis_corpus, heldout_refs, cfg);
  out.report_after = score_all(p.sentences, heldout_refs, cfg);
  out.deltas = report_difference(out.report_after, out.report_before);
  out.substituted_tokens = p.substituted_tokens;
  out.total_tokens = p.total_tokens;
  out.substitution_fraction = p.substitution_fraction();
  out.perturbed = std::move(p.sentences);
  return out;
}

}  // namespace gauntlet
