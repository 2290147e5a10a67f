#include <gtest/gtest.h>

#include <random>

#include "gauntlet/embedding.hpp"
#include "oracles.hpp"

namespace gauntlet {
namespace {

EmbeddedSentence embed(const oracle::Vectors& v) {
  EmbeddedSentence s;
  s.vectors.resize(static_cast<Eigen::Index>(v.size()),
                   static_cast<Eigen::Index>(v.front().size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.tokens.push_back("t" + std::to_string(i));
    for (std::size_t d = 0; d < v[i].size(); ++d) {
      s.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = v[i][d];
    }
  }
  return s;
}

oracle::Vectors random_vectors(std::mt19937& rng, int n, int d) {
  std::normal_distribution<double> g;
  oracle::Vectors v(n, std::vector<double>(d));
  for (auto& row : v) for (auto& x : row) x = g(rng);
  return v;
}

TEST(GreedyEmbed, IdentityIsExactlyOne) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_vectors(rng, 1 + trial % 9, 1 + trial % 16);
    const auto s = embed(v);
    for (double b : {0.0, 0.3, 0.83}) {
      EXPECT_EQ(greedy_embed_fscore(s, std::span(&s, 1), b, false), 1.0);
    }
  }
}

TEST(GreedyEmbed, OrthogonalWithBaseline) {
  const auto h = embed({{1, 0}});
  const auto r = embed({{0, 1}});
  EXPECT_EQ(greedy_match(h, r, false).f, 0.0);
  EXPECT_DOUBLE_EQ(greedy_embed_fscore(h, std::span(&r, 1), 0.5, false), -1.0);
}

TEST(GreedyEmbed, CosineEqualToBaselineRescalesToZero) {
  // cos(60 degrees) = 0.5 for every pair.
  const auto h = embed({{1, 0}});
  const auto r = embed({{0.5, std::sqrt(3.0) / 2}});
  EXPECT_NEAR(greedy_embed_fscore(h, std::span(&r, 1), 0.5, false), 0.0, 1e-12);
}

TEST(GreedyEmbed, MatchesDoubleLoop) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 16);
    const auto hv = random_vectors(rng, 1 + static_cast<int>(rng() % 12), d);
    const auto rv = random_vectors(rng, 1 + static_cast<int>(rng() % 12), d);
    const auto h = embed(hv), r = embed(rv);
    EXPECT_NEAR(greedy_match(h, r, false).f, oracle::greedy_f(hv, rv), 1e-9);
  }
}

TEST(GreedyEmbed, MaxOverReferences) {
  std::mt19937 rng(6);
  const auto h = embed(random_vectors(rng, 4, 8));
  std::vector<EmbeddedSentence> refs{embed(random_vectors(rng, 5, 8)),
                                     embed(random_vectors(rng, 3, 8)), h};
  EXPECT_EQ(greedy_embed_fscore(h, refs, 0.2, false), 1.0);
}

TEST(GreedyEmbed, IdfWeights) {
  auto h = embed({{1, 0}, {0, 1}});
  auto r = embed({{1, 0}});
  // Unweighted P = (1 + 0) / 2; weighting the matched token by 3 gives 3/4.
  h.idf = Eigen::VectorXd{{3.0, 1.0}};
  r.idf = Eigen::VectorXd{{1.0}};
  EXPECT_NEAR(greedy_match(h, r, false).precision, 0.5, 1e-12);
  EXPECT_NEAR(greedy_match(h, r, true).precision, 0.75, 1e-12);
  EXPECT_NEAR(greedy_match(h, r, true).recall, 1.0, 1e-12);
}

TEST(GreedyEmbed, DimensionMismatch) {
  const auto h = embed({{1, 0}});
  const auto r = embed({{1, 0, 0}});
  try {
    greedy_match(h, r, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmbeddingDim);
  }
}

TEST(GreedyEmbed, BaselineRange) {
  const auto h = embed({{1, 0}});
  EXPECT_THROW(greedy_embed_fscore(h, std::span(&h, 1), 1.0, false), Error);
  EXPECT_THROW(greedy_embed_fscore(h, std::span(&h, 1), -0.1, false), Error);
}

}  // namespace
}  // namespace gauntlet
