#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gauntlet/corpus.hpp"
#include "generators.hpp"

namespace gauntlet {
namespace {

using Tokens = std::vector<Token>;

TEST(NormalizeTokens, LowercasesAndSplits) {
  EXPECT_EQ(normalize_tokens("A man is playing", true).tokens(),
            (Tokens{"a", "man", "is", "playing"}));
  EXPECT_EQ(normalize_tokens("A man", false).tokens(), (Tokens{"A", "man"}));
}

TEST(NormalizeTokens, CollapsesWhitespaceRuns) {
  EXPECT_EQ(normalize_tokens("a  b\tc", false).tokens(), (Tokens{"a", "b", "c"}));
  EXPECT_EQ(normalize_tokens("  a b \r", false).tokens(), (Tokens{"a", "b"}));
}

TEST(NormalizeTokens, BlankLineIsEmptySentence) {
  for (bool lower : {false, true}) {
    try {
      normalize_tokens("   ", lower);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptySentence);
    }
  }
}

TEST(NormalizeTokens, Idempotent) {
  std::mt19937 rng(3);
  const char* pieces[] = {"A", "b", " ", "\t", "Cd", "  ", "e\tF"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string raw = "x";
    for (int i = 0; i < 12; ++i) raw += pieces[rng() % 7];
    for (bool lower : {false, true}) {
      const Sentence s = normalize_tokens(raw, lower);
      EXPECT_EQ(normalize_tokens(s.str(), lower), s);
    }
  }
}

TEST(Sentence, RejectsWhitespaceTokens) {
  EXPECT_THROW(Sentence(Tokens{"a b"}), Error);
  EXPECT_THROW(Sentence(Tokens{""}), Error);
}

TEST(BuildVocabulary, Counts) {
  const std::vector<Sentence> c{{"a", "b"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(c);
  EXPECT_EQ(v.count("a"), 2u);
  EXPECT_EQ(v.count("b"), 1u);
  EXPECT_EQ(v.count("c"), 1u);
  EXPECT_EQ(v.count("zzz"), 0u);
  EXPECT_EQ(v.total_tokens(), 4u);

  const std::vector<Sentence> rep{{"a", "a", "a"}};
  const Vocabulary r = build_vocabulary(rep);
  EXPECT_EQ(r.size(), 1u);
  EXPECT_EQ(r.count("a"), 3u);
  EXPECT_EQ(r.total_tokens(), 3u);
}

TEST(BuildVocabulary, EmptyCorpusRejected) {
  try {
    build_vocabulary({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(BuildVocabulary, PermutationInvariant) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Sentence> c;
    for (int i = 0; i < 20; ++i) c.push_back(testgen::sentence(rng, 6, 1, 8));
    const Vocabulary before = build_vocabulary(c);
    std::shuffle(c.begin(), c.end(), rng);
    EXPECT_EQ(build_vocabulary(c), before);
  }
}

TEST(BuildVocabulary, SortedByFrequency) {
  const std::vector<Sentence> c{{"b", "a", "c", "a", "c", "d"}};
  const auto sorted = build_vocabulary(c).sorted_by_frequency();
  ASSERT_EQ(sorted.size(), 4u);
  EXPECT_EQ(sorted[0].first, "a");
  EXPECT_EQ(sorted[1].first, "c");
  EXPECT_EQ(sorted[2].first, "b");
  EXPECT_EQ(sorted[3].first, "d");
}

TEST(NGramProfile, Examples) {
  const Sentence s{"a", "b", "a"};
  const auto p1 = ngram_profile(s, 1);
  EXPECT_EQ(p1.total, 3);
  EXPECT_EQ(p1.counts.size(), 2u);
  EXPECT_EQ(p1.count("a"), 2);
  EXPECT_EQ(p1.count("b"), 1);

  const auto p2 = ngram_profile(s, 2);
  EXPECT_EQ(p2.total, 2);
  EXPECT_EQ(p2.count("a b"), 1);
  EXPECT_EQ(p2.count("b a"), 1);

  const auto p4 = ngram_profile(s, 4);
  EXPECT_EQ(p4.total, 0);
  EXPECT_TRUE(p4.counts.empty());
}

TEST(NGramProfile, OrderOutOfRange) {
  EXPECT_THROW(ngram_profile(Sentence{"a"}, 0), Error);
  EXPECT_THROW(ngram_profile(Sentence{"a"}, 5), Error);
}

TEST(NGramProfile, TotalsMatchLength) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Sentence s = testgen::sentence(rng, 4, 1, 12);
    for (int n = 1; n <= 4; ++n) {
      const auto p = ngram_profile(s, n);
      int sum = 0;
      for (const auto& [g, c] : p.counts) sum += c;
      const int expected = std::max(0, static_cast<int>(s.size()) - n + 1);
      EXPECT_EQ(sum, expected);
      EXPECT_EQ(p.total, expected);
    }
  }
}

TEST(ClosestRefLength, Examples) {
  const std::size_t a[] = {3, 7};
  EXPECT_EQ(closest_ref_length(5, a), 3u);
  EXPECT_EQ(closest_ref_length(6, a), 7u);
  const std::size_t b[] = {4};
  EXPECT_EQ(closest_ref_length(4, b), 4u);
  const std::size_t c[] = {7, 3};
  EXPECT_EQ(closest_ref_length(5, c), 3u);
}

TEST(ClosestRefLength, MemberAndFixedPoint) {
  std::mt19937 rng(9);
  for (std::size_t x = 1; x < 40; ++x) {
    const std::size_t one[] = {x};
    EXPECT_EQ(closest_ref_length(x, one), x);
    std::vector<std::size_t> lens;
    for (int i = 0; i < 5; ++i) lens.push_back(1 + rng() % 20);
    const auto r = closest_ref_length(x, lens);
    EXPECT_NE(std::find(lens.begin(), lens.end(), r), lens.end());
  }
}

TEST(ReferenceBundle, RaggedRejected) {
  std::vector<std::vector<Sentence>> c{{{"a"}, {"b"}}, {{"a"}}};
  try {
    ReferenceBundle b(std::move(c));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRaggedReferences);
  }
}

TEST(ReferenceBundle, ReferencesExcluding) {
  ReferenceBundle b({{{"a"}, {"b"}}, {{"c"}, {"d"}}, {{"e"}, {"f"}}});
  const auto refs = b.references_excluding(1);
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_EQ(refs[0], (std::vector<Sentence>{{"a"}, {"e"}}));
  EXPECT_EQ(refs[1], (std::vector<Sentence>{{"b"}, {"f"}}));
  EXPECT_EQ(b.references_excluding(3)[0].size(), 3u);
}

TEST(EvalCorpus, DuplicateIdAndEmptyRefs) {
  using Instances = std::vector<EvalInstance>;
  EXPECT_THROW(EvalCorpus(Instances{{"x", {{"a"}}, {}}, {"x", {{"b"}}, {}}}), Error);
  EXPECT_THROW(EvalCorpus(Instances{{"x", {}, {}}}), Error);
  EvalCorpus c(Instances{{"x", {{"a"}}, {}}, {"y", {{"b"}, {"c"}}, {}}});
  ASSERT_NE(c.find("y"), nullptr);
  EXPECT_EQ(c.find("y")->refs.size(), 2u);
  EXPECT_EQ(c.find("z"), nullptr);
}

}  // namespace
}  // namespace gauntlet
