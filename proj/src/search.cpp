#include "gauntlet/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace gauntlet {

namespace {

bool is_bleu(Metric m) {
  return m == Metric::kBleu1 || m == Metric::kBleu2 || m == Metric::kBleu3 ||
         m == Metric::kBleu4;
}

int bleu_order(Metric m) { return static_cast<int>(m) - static_cast<int>(Metric::kBleu1) + 1; }

double fixed_objective(const Sentence& s, const MultiReferences& refs,
                       Metric objective, const ScoreConfig& cfg,
                       const IdfTable* idf) {
  if (refs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no test instances");
  if (is_bleu(objective)) {
    BleuStats total;
    for (const auto& r : refs) total += bleu_sentence_stats(s, r, kMaxNGramOrder);
    BleuConfig bc = cfg.bleu;
    bc.max_order = kMaxNGramOrder;
    return bleu_from_stats(total, bc)[bleu_order(objective) - 1];
  }
  const std::vector<Sentence> hyps(refs.size(), s);
  switch (objective) {
    case Metric::kMeteor: return meteor_corpus(hyps, refs, cfg.meteor);
    case Metric::kRougeL: return rouge_l_corpus(hyps, refs, cfg.rouge_beta);
    case Metric::kCiderD: {
      if (idf) return cider_d(hyps, refs, cfg.cider, *idf);
      return cider_d(hyps, refs, cfg.cider, build_idf(refs, cfg.cider.max_order));
    }
    default:
      throw Error(ErrorCode::kInvalidInput,
                  "objective '" + std::string(metric_id(objective)) +
                      "' cannot be scored for a fixed hypothesis");
  }
}

struct Ranked {
  double score;
  const Sentence* sentence;
};

// Higher score, then shorter, then lexicographically smaller.
bool ranks_before(const Ranked& a, const Ranked& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.sentence->size() != b.sentence->size()) {
    return a.sentence->size() < b.sentence->size();
  }
  return a.sentence->tokens() < b.sentence->tokens();
}

}  // namespace

double score_fixed_hypothesis(const Sentence& s, const MultiReferences& refs,
                              Metric objective, const ScoreConfig& cfg) {
  return fixed_objective(s, refs, objective, cfg, nullptr);
}

FixedHypothesisIndex::FixedHypothesisIndex(const MultiReferences& refs,
                                           int max_order,
                                           std::size_t max_hypothesis_length)
    : max_order_(max_order), num_instances_(refs.size()) {
  if (max_order < 1 || max_order > kMaxNGramOrder) {
    throw Error(ErrorCode::kInvalidInput, "index max_order must be in 1..4");
  }
  if (refs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no test instances");
  grams_.resize(max_order_);
  postings_.resize(max_order_);

  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> instance_max(max_order_);
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  for (const auto& inst : refs) {
    if (inst.empty()) {
      throw Error(ErrorCode::kInvalidInput, "instance has no references");
    }
    std::vector<std::size_t> lens;
    for (auto& m : instance_max) m.clear();
    for (const auto& ref : inst) {
      lens.push_back(ref.size());
      std::vector<std::uint32_t> ids(ref.size());
      for (std::size_t p = 0; p < ref.size(); ++p) {
        auto [it, inserted] = tokens_.try_emplace(
            ref[p], static_cast<std::uint32_t>(tokens_.size()));
        ids[p] = it->second;
      }
      std::vector<std::uint32_t> grams = ids;
      for (int n = 1; n <= max_order_; ++n) {
        if (ref.size() < static_cast<std::size_t>(n)) break;
        const std::size_t count = ref.size() - n + 1;
        if (n > 1) {
          for (std::size_t p = 0; p < count; ++p) {
            grams[p] = intern_extend(n, grams[p], ids[p + n - 1]);
          }
        }
        counts.clear();
        for (std::size_t p = 0; p < count; ++p) ++counts[grams[p]];
        auto& mx = instance_max[n - 1];
        for (const auto& [g, c] : counts) {
          auto& slot = mx[g];
          slot = std::max(slot, c);
        }
      }
    }
    std::sort(lens.begin(), lens.end());
    ref_lengths_.push_back(std::move(lens));
    for (int n = 1; n <= max_order_; ++n) {
      auto& post = postings_[n - 1];
      for (const auto& [g, c] : instance_max[n - 1]) {
        if (g >= post.size()) post.resize(g + 1);
        post[g].sorted_max_counts.push_back(c);
      }
    }
  }
  for (auto& order : postings_) {
    for (auto& p : order) {
      std::sort(p.sorted_max_counts.begin(), p.sorted_max_counts.end());
      p.prefix.assign(p.sorted_max_counts.size() + 1, 0);
      for (std::size_t k = 0; k < p.sorted_max_counts.size(); ++k) {
        p.prefix[k + 1] = p.prefix[k] + p.sorted_max_counts[k];
      }
    }
  }
  ref_length_table_.resize(max_hypothesis_length + 1);
  for (std::size_t len = 0; len <= max_hypothesis_length; ++len) {
    std::int64_t sum = 0;
    for (const auto& lens : ref_lengths_) {
      sum += static_cast<std::int64_t>(closest_ref_length(len, lens));
    }
    ref_length_table_[len] = sum;
  }
}

std::uint32_t FixedHypothesisIndex::token_id(const Token& t) const {
  auto it = tokens_.find(t);
  return it == tokens_.end() ? kMissing : it->second;
}

std::uint32_t FixedHypothesisIndex::extend(int order, std::uint32_t prefix_id,
                                           std::uint32_t token) const {
  if (prefix_id == kMissing || token == kMissing) return kMissing;
  const auto& table = grams_[order - 1];
  auto it = table.find((static_cast<std::uint64_t>(prefix_id) << 32) | token);
  return it == table.end() ? kMissing : it->second;
}

std::uint32_t FixedHypothesisIndex::intern_extend(int order,
                                                  std::uint32_t prefix_id,
                                                  std::uint32_t token) {
  auto& table = grams_[order - 1];
  auto [it, inserted] = table.try_emplace(
      (static_cast<std::uint64_t>(prefix_id) << 32) | token,
      static_cast<std::uint32_t>(table.size()));
  return it->second;
}

std::int64_t FixedHypothesisIndex::clipped_sum(int order, std::uint32_t gram,
                                               std::uint32_t count) const {
  const auto& post = postings_[order - 1];
  if (gram >= post.size()) return 0;
  const auto& p = post[gram];
  const auto k = static_cast<std::size_t>(
      std::upper_bound(p.sorted_max_counts.begin(), p.sorted_max_counts.end(),
                       count) -
      p.sorted_max_counts.begin());
  return p.prefix[k] + static_cast<std::int64_t>(count) *
                           static_cast<std::int64_t>(p.sorted_max_counts.size() - k);
}

std::int64_t FixedHypothesisIndex::ref_length_sum(std::size_t len) const {
  if (len < ref_length_table_.size()) return ref_length_table_[len];
  std::int64_t sum = 0;
  for (const auto& lens : ref_lengths_) {
    sum += static_cast<std::int64_t>(closest_ref_length(len, lens));
  }
  return sum;
}

BleuStats FixedHypothesisIndex::stats(const Sentence& s) const {
  BleuStats st;
  const auto N = static_cast<std::int64_t>(num_instances_);
  const std::size_t L = s.size();
  st.hyp_length = N * static_cast<std::int64_t>(L);
  st.ref_length = ref_length_sum(L);

  std::vector<std::uint32_t> ids(L);
  for (std::size_t p = 0; p < L; ++p) ids[p] = token_id(s[p]);
  std::vector<std::uint32_t> grams = ids;
  std::vector<std::uint32_t> known;
  for (int n = 1; n <= max_order_; ++n) {
    if (L < static_cast<std::size_t>(n)) break;
    const std::size_t count = L - n + 1;
    st.total[n - 1] = N * static_cast<std::int64_t>(count);
    if (n > 1) {
      for (std::size_t p = 0; p < count; ++p) {
        grams[p] = extend(n, grams[p], ids[p + n - 1]);
      }
    }
    known.clear();
    for (std::size_t p = 0; p < count; ++p) {
      if (grams[p] != kMissing) known.push_back(grams[p]);
    }
    std::sort(known.begin(), known.end());
    for (std::size_t a = 0; a < known.size();) {
      std::size_t b = a;
      while (b < known.size() && known[b] == known[a]) ++b;
      st.clipped[n - 1] +=
          clipped_sum(n, known[a], static_cast<std::uint32_t>(b - a));
      a = b;
    }
  }
  return st;
}

unsigned thread_cap_from_env() {
  const char* v = std::getenv("METRIC_GAUNTLET_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n <= 0) return 0;
  return static_cast<unsigned>(n);
}

SearchResult search_representative_sentence(std::span<const Sentence> train,
                                            const MultiReferences& refs,
                                            const SearchConfig& cfg) {
  if (refs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no test instances");
  if (cfg.objective == Metric::kEmbedF) {
    throw Error(ErrorCode::kInvalidInput,
                "embedding F cannot be a search objective");
  }
  std::vector<Sentence> candidates;
  candidates.reserve(train.size());
  for (const auto& s : train) {
    if (!s.empty()) candidates.push_back(s);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "training corpus is empty");
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  ScoreConfig ranking = cfg.score;
  ranking.bleu.max_order = kMaxNGramOrder;
  ranking.bleu.smoothing_epsilon = cfg.ranking_smoothing;

  std::optional<FixedHypothesisIndex> index;
  std::optional<IdfTable> idf;
  std::function<double(const Sentence&)> rank;
  if (is_bleu(cfg.objective) && !cfg.naive) {
    std::size_t longest = 0;
    for (const auto& c : candidates) longest = std::max(longest, c.size());
    index.emplace(refs, kMaxNGramOrder, longest);
    const int k = bleu_order(cfg.objective);
    rank = [&, k](const Sentence& s) {
      return bleu_from_stats(index->stats(s), ranking.bleu)[k - 1];
    };
  } else {
    if (cfg.objective == Metric::kCiderD) {
      idf = build_idf(refs, cfg.score.cider.max_order);
    }
    rank = [&](const Sentence& s) {
      return fixed_objective(s, refs, cfg.objective, ranking,
                             idf ? &*idf : nullptr);
    };
  }

  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, candidates.size()));

  constexpr std::size_t kBlock = 256;
  std::atomic<std::size_t> next{0};
  std::vector<std::optional<Ranked>> best(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned w) {
    try {
      while (true) {
        const std::size_t begin = next.fetch_add(kBlock);
        if (begin >= candidates.size()) break;
        const std::size_t end = std::min(begin + kBlock, candidates.size());
        for (std::size_t c = begin; c < end; ++c) {
          const Ranked r{rank(candidates[c]), &candidates[c]};
          if (!best[w] || ranks_before(r, *best[w])) best[w] = r;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::optional<Ranked> winner;
  for (const auto& b : best) {
    if (b && (!winner || ranks_before(*b, *winner))) winner = b;
  }

  SearchResult out;
  out.sentence = *winner->sentence;
  out.objective = cfg.objective;
  out.candidates_evaluated = candidates.size();
  out.objective_score = score_fixed_hypothesis(out.sentence, refs,
                                               cfg.objective, cfg.score);
  const std::vector<Sentence> hyps(refs.size(), out.sentence);
  out.full_report = score_all(hyps, refs, cfg.score);
  return out;
}

}  // namespace gauntlet
