#include "gauntlet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gauntlet {

void EmbeddedSentence::validate() const {
  if (static_cast<std::size_t>(vectors.rows()) != tokens.size()) {
    throw Error(ErrorCode::kEmbeddingDim,
                "embedding has " + std::to_string(vectors.rows()) +
                    " vectors for " + std::to_string(tokens.size()) + " tokens");
  }
  if (idf && static_cast<std::size_t>(idf->size()) != tokens.size()) {
    throw Error(ErrorCode::kEmbeddingDim, "idf weight count != token count");
  }
}

namespace {

// Pairwise cosines, rows = hyp tokens, cols = ref tokens. Norms come from the
// same dot product as the numerator so identical vectors give exactly 1.
Eigen::MatrixXd cosine_matrix(const Eigen::MatrixXd& hyp,
                              const Eigen::MatrixXd& ref) {
  Eigen::MatrixXd cos(hyp.rows(), ref.rows());
  for (Eigen::Index i = 0; i < hyp.rows(); ++i) {
    const double hh = hyp.row(i).dot(hyp.row(i));
    for (Eigen::Index j = 0; j < ref.rows(); ++j) {
      const double rr = ref.row(j).dot(ref.row(j));
      const double denom = std::sqrt(hh * rr);
      const double c = denom > 0.0 ? hyp.row(i).dot(ref.row(j)) / denom : 0.0;
      cos(i, j) = std::clamp(c, -1.0, 1.0);
    }
  }
  return cos;
}

double weighted_mean(const Eigen::VectorXd& best,
                     const std::optional<Eigen::VectorXd>& idf, bool use_idf) {
  if (use_idf) {
    const double w = idf->sum();
    return w > 0.0 ? best.dot(*idf) / w : 0.0;
  }
  return best.mean();
}

}  // namespace

GreedyMatch greedy_match(const EmbeddedSentence& hyp,
                         const EmbeddedSentence& ref, bool use_idf) {
  hyp.validate();
  ref.validate();
  if (hyp.dim() != ref.dim()) {
    throw Error(ErrorCode::kEmbeddingDim,
                "embedding dimension mismatch: " + std::to_string(hyp.dim()) +
                    " vs " + std::to_string(ref.dim()));
  }
  if (use_idf && (!hyp.idf || !ref.idf)) {
    throw Error(ErrorCode::kInvalidInput, "idf weighting requested but missing");
  }
  GreedyMatch m;
  if (hyp.tokens.empty() || ref.tokens.empty()) return m;
  const Eigen::MatrixXd cos = cosine_matrix(hyp.vectors, ref.vectors);
  const Eigen::VectorXd hyp_best = cos.rowwise().maxCoeff();
  const Eigen::VectorXd ref_best = cos.colwise().maxCoeff().transpose();
  m.precision = weighted_mean(hyp_best, hyp.idf, use_idf);
  m.recall = weighted_mean(ref_best, ref.idf, use_idf);
  const double sum = m.precision + m.recall;
  m.f = sum != 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

double greedy_embed_fscore(const EmbeddedSentence& hyp,
                           std::span<const EmbeddedSentence> refs,
                           double baseline, bool use_idf) {
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "embedding F needs a reference");
  }
  if (!(baseline >= 0.0 && baseline < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "baseline must lie in [0,1)");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& ref : refs) {
    const double f = greedy_match(hyp, ref, use_idf).f;
    best = std::max(best, (f - baseline) / (1.0 - baseline));
  }
  return best;
}

double greedy_embed_fscore_corpus(
    std::span<const EmbeddedSentence> hyps,
    const std::vector<std::vector<EmbeddedSentence>>& refs, double baseline,
    bool use_idf) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput, "hypothesis/reference count mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    sum += greedy_embed_fscore(hyps[i], refs[i], baseline, use_idf);
  }
  return sum / static_cast<double>(hyps.size());
}

}  // namespace gauntlet
