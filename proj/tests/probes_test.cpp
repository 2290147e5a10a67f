#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gauntlet/format.hpp"
#include "gauntlet/loo.hpp"
#include "gauntlet/perturb.hpp"
#include "generators.hpp"

namespace gauntlet {
namespace {

std::vector<Sentence> random_corpus(std::mt19937& rng, int n, int alphabet) {
  std::vector<Sentence> c;
  for (int i = 0; i < n; ++i) c.push_back(testgen::sentence(rng, alphabet, 4, 10));
  return c;
}

TEST(LeaveOneOut, IdenticalCorporaHitCeiling) {
  std::mt19937 rng(1);
  const auto c = random_corpus(rng, 6, 20);
  const ReferenceBundle b({c, c, c});
  const auto r = leave_one_out(b, std::nullopt, {});
  ASSERT_EQ(r.per_iteration.size(), 3u);
  EXPECT_DOUBLE_EQ(r.mean.bleu[3], 100.0);
  EXPECT_EQ(r.sd.bleu[3], 0.0);
  EXPECT_DOUBLE_EQ(r.mean.rouge_l, 100.0);
  EXPECT_EQ(r.sd.rouge_l, 0.0);
  EXPECT_EQ(r.sd.cider_d, 0.0);
  EXPECT_EQ(r.sd.meteor, 0.0);
}

TEST(LeaveOneOut, DisjointCorporaScoreZero) {
  const std::vector<Sentence> r1{{"a", "b", "c"}, {"a", "c", "b"}};
  const std::vector<Sentence> r2{{"x", "y", "z"}, {"z", "y", "x"}};
  const auto r = leave_one_out(ReferenceBundle({r1, r2}), std::nullopt, {});
  for (double v : r.mean.bleu) EXPECT_EQ(v, 0.0);
}

TEST(LeaveOneOut, SystemEqualToFirstCorpusReproducesIterationOne) {
  std::mt19937 rng(2);
  const ReferenceBundle b({random_corpus(rng, 8, 10), random_corpus(rng, 8, 10),
                           random_corpus(rng, 8, 10)});
  const auto rvr = leave_one_out(b, std::nullopt, {});
  const auto svr = leave_one_out(b, std::span<const Sentence>(b.corpus(0)), {});
  EXPECT_EQ(svr.per_iteration[0], rvr.per_iteration[0]);
}

TEST(LeaveOneOut, SummaryRecomputable) {
  std::mt19937 rng(3);
  const ReferenceBundle b({random_corpus(rng, 8, 8), random_corpus(rng, 8, 8),
                           random_corpus(rng, 8, 8), random_corpus(rng, 8, 8)});
  const auto r = leave_one_out(b, std::nullopt, {});
  for (Metric m : kAllMetrics) {
    if (m == Metric::kEmbedF) continue;
    double mean = 0;
    for (const auto& it : r.per_iteration) mean += *it.get(m);
    mean /= 4;
    double var = 0;
    for (const auto& it : r.per_iteration) var += std::pow(*it.get(m) - mean, 2);
    EXPECT_NEAR(*r.mean.get(m), mean, 1e-9 * std::max(1.0, mean));
    EXPECT_NEAR(*r.sd.get(m), std::sqrt(var / 4), 1e-9);
  }
}

TEST(LeaveOneOut, Preconditions) {
  const std::vector<Sentence> c{{"a"}};
  EXPECT_THROW(leave_one_out(ReferenceBundle({c}), std::nullopt, {}), Error);
  const std::vector<Sentence> sys{{"a"}, {"b"}};
  try {
    leave_one_out(ReferenceBundle({c, c}), std::span<const Sentence>(sys), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRaggedReferences);
  }
}

TEST(LeaveOneOut, JsonRoundTrip) {
  std::mt19937 rng(4);
  const ReferenceBundle b({random_corpus(rng, 5, 8), random_corpus(rng, 5, 8)});
  const auto r = leave_one_out(b, std::nullopt, {});
  const auto back = nlohmann::json::parse(nlohmann::json(r).dump()).get<LooResult>();
  EXPECT_EQ(format_loo_table(back, back), format_loo_table(r, r));
}

TEST(Perturb, TargetedExample) {
  const std::vector<Sentence> c{{"a", "cat"}, {"a", "dog", "a"}};
  PerturbSpec s;
  s.targets = {"a"};
  const auto p = perturb(c, s);
  EXPECT_EQ(p.sentences, (std::vector<Sentence>{{"UNK", "cat"}, {"UNK", "dog", "UNK"}}));
  EXPECT_EQ(p.substituted_tokens, 3u);
  EXPECT_EQ(p.total_tokens, 5u);
  EXPECT_DOUBLE_EQ(p.substitution_fraction(), 0.6);
}

TEST(Perturb, ThresholdExample) {
  Vocabulary v;
  for (int i = 0; i < 5; ++i) v.add(Sentence{"a"});
  v.add(Sentence{"b", "b"});
  v.add(Sentence{"c"});
  PerturbSpec s;
  s.mode = PerturbMode::kThreshold;
  s.threshold = 2;
  const std::vector<Sentence> c{{"a", "b", "c"}};
  EXPECT_EQ(perturb(c, s, &v).sentences, (std::vector<Sentence>{{"a", "b", "UNK"}}));
}

TEST(Perturb, ThresholdOneIsIdentity) {
  std::mt19937 rng(5);
  const auto c = random_corpus(rng, 20, 30);
  const Vocabulary v = build_vocabulary(std::vector<Sentence>(c.begin(), c.begin() + 3));
  PerturbSpec s;
  s.mode = PerturbMode::kThreshold;
  s.threshold = 1;
  const auto p = perturb(c, s, &v);
  EXPECT_EQ(p.sentences, c);
  EXPECT_EQ(p.substituted_tokens, 0u);
}

TEST(Perturb, ThresholdMonotoneInT) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_corpus(rng, 15, 12);
    const Vocabulary v = build_vocabulary(c);
    std::size_t prev = 0;
    for (std::size_t t = 1; t < 12; ++t) {
      PerturbSpec s;
      s.mode = PerturbMode::kThreshold;
      s.threshold = t;
      const auto n = perturb(c, s, &v).substituted_tokens;
      EXPECT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(Perturb, ThresholdNeedsVocabulary) {
  PerturbSpec s;
  s.mode = PerturbMode::kThreshold;
  s.threshold = 2;
  const std::vector<Sentence> c{{"a"}};
  EXPECT_THROW(perturb(c, s), Error);
}

TEST(Perturb, Swap) {
  PerturbSpec s;
  s.mode = PerturbMode::kSwap;
  s.targets = {"woman"};
  s.replacement = "man";
  const std::vector<Sentence> c{{"a", "woman"}};
  EXPECT_EQ(perturb(c, s).sentences, (std::vector<Sentence>{{"a", "man"}}));
  s.targets = {"woman", "girl"};
  EXPECT_THROW(perturb(c, s), Error);
}

PerturbSpec random_spec(double fraction, std::uint64_t seed) {
  PerturbSpec s;
  s.mode = PerturbMode::kRandomContent;
  s.target_fraction = fraction;
  s.seed = seed;
  s.stoplist = {"w0", "w1"};
  return s;
}

TEST(Perturb, RandomContentReproducibleAndStoplistRespected) {
  std::mt19937 rng(7);
  const auto c = random_corpus(rng, 30, 8);
  const auto a = perturb(c, random_spec(0.3, 42));
  const auto b = perturb(c, random_spec(0.3, 42));
  EXPECT_EQ(a.sentences, b.sentences);
  EXPECT_GE(a.substitution_fraction(), 0.3);
  const auto other = perturb(c, random_spec(0.3, 43));
  EXPECT_EQ(other.substituted_tokens, a.substituted_tokens);
  for (std::size_t i = 0; i < c.size(); ++i) {
    ASSERT_EQ(a.sentences[i].size(), c[i].size());
    for (std::size_t k = 0; k < c[i].size(); ++k) {
      if (c[i][k] == "w0" || c[i][k] == "w1") EXPECT_EQ(a.sentences[i][k], c[i][k]);
    }
  }
}

TEST(Perturb, RandomContentUnreachable) {
  const std::vector<Sentence> c{{"w0", "w1", "w2"}};
  try {
    perturb(c, random_spec(0.5, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFractionUnreachable);
  }
}

TEST(Perturb, ShapePreservedAndFractionRecounted) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_corpus(rng, 10, 6);
    PerturbSpec s;
    s.targets = {"w2", "w3"};
    const auto p = perturb(c, s);
    ASSERT_EQ(p.sentences.size(), c.size());
    std::size_t changed = 0, total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      ASSERT_EQ(p.sentences[i].size(), c[i].size());
      for (std::size_t k = 0; k < c[i].size(); ++k) {
        changed += c[i][k] == "w2" || c[i][k] == "w3";
        ++total;
      }
    }
    EXPECT_EQ(p.substituted_tokens, changed);
    EXPECT_EQ(p.total_tokens, total);
  }
}

TEST(PerturbAndScore, NoOpHasZeroDeltas) {
  std::mt19937 rng(9);
  const auto r1 = random_corpus(rng, 6, 8);
  MultiReferences held(6);
  for (auto& v : held) v = {testgen::sentence(rng, 8, 4, 8), testgen::sentence(rng, 8, 4, 8)};
  PerturbSpec s;
  s.targets = {"absent"};
  const auto o = perturb_and_score(r1, held, s, nullptr, {});
  for (Metric m : kAllMetrics) {
    if (m != Metric::kEmbedF) EXPECT_EQ(*o.deltas.get(m), 0.0);
  }
  EXPECT_EQ(o.substituted_tokens, 0u);
}

TEST(PerturbAndScore, UnkNeverRaisesBleuOrRouge) {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r1 = random_corpus(rng, 8, 6);
    MultiReferences held(8);
    for (auto& v : held) v = {testgen::sentence(rng, 6, 3, 9)};
    PerturbSpec s;
    s.targets = {"w" + std::to_string(trial % 6)};
    const auto o = perturb_and_score(r1, held, s, nullptr, {});
    for (int k = 0; k < 4; ++k) EXPECT_LE(o.deltas.bleu[k], 1e-12);
    EXPECT_LE(o.deltas.rouge_l, 1e-12);
    const auto after = score_all(o.perturbed, held, {});
    EXPECT_EQ(after, o.report_after);
    EXPECT_EQ(o.deltas, report_difference(after, score_all(r1, held, {})));
  }
}

TEST(PerturbSpec, ModeNames) {
  for (auto m : {PerturbMode::kTargeted, PerturbMode::kThreshold,
                 PerturbMode::kRandomContent, PerturbMode::kSwap}) {
    EXPECT_EQ(parse_perturb_mode(perturb_mode_name(m)), m);
  }
  EXPECT_THROW(parse_perturb_mode("shuffle"), Error);
}

}  // namespace
}  // namespace gauntlet
