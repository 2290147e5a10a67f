#include "gauntlet/cider.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

namespace gauntlet {

void CiderConfig::validate() const {
  if (max_order < 1 || max_order > kMaxNGramOrder) {
    throw Error(ErrorCode::kInvalidInput, "CIDEr max_order must be in 1..4");
  }
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "CIDEr sigma must be > 0");
  }
}

double IdfTable::idf(int order, const std::string& gram) const {
  const double df = static_cast<double>(document_frequency(order, gram));
  return log_documents_ - std::log(std::max(1.0, df));
}

std::size_t IdfTable::document_frequency(int order,
                                         const std::string& gram) const {
  if (order < 1 || order > max_order_) return 0;
  const auto& table = df_[order - 1];
  auto it = table.find(gram);
  return it == table.end() ? 0 : it->second;
}

IdfTable build_idf(const MultiReferences& corpus_refs, int max_order) {
  if (corpus_refs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot build idf from no instances");
  }
  if (max_order < 1 || max_order > kMaxNGramOrder) {
    throw Error(ErrorCode::kInvalidInput, "idf max_order must be in 1..4");
  }
  IdfTable t;
  t.num_documents_ = corpus_refs.size();
  t.max_order_ = max_order;
  t.log_documents_ = std::log(static_cast<double>(t.num_documents_));
  for (const auto& refs : corpus_refs) {
    for (int n = 1; n <= max_order; ++n) {
      std::unordered_set<std::string> in_document;
      for (const auto& r : refs) {
        for (const auto& [gram, count] : ngram_profile(r, n).counts) {
          in_document.insert(gram);
        }
      }
      for (const auto& gram : in_document) ++t.df_[n - 1][gram];
    }
  }
  return t;
}

namespace {

struct TfIdf {
  std::unordered_map<std::string, double> weights;
  double norm = 0.0;
};

TfIdf tfidf(const Sentence& s, int n, const IdfTable& idf) {
  TfIdf v;
  double sq = 0.0;
  for (const auto& [gram, count] : ngram_profile(s, n).counts) {
    const double w = static_cast<double>(count) * idf.idf(n, gram);
    v.weights.emplace(gram, w);
    sq += w * w;
  }
  v.norm = std::sqrt(sq);
  return v;
}

}  // namespace

double cider_d_instance(const Sentence& hyp, std::span<const Sentence> refs,
                        const CiderConfig& cfg, const IdfTable& idf) {
  cfg.validate();
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "CIDEr-D needs at least one reference");
  }
  std::vector<TfIdf> hyp_vec;
  for (int n = 1; n <= cfg.max_order; ++n) hyp_vec.push_back(tfidf(hyp, n, idf));

  std::vector<double> per_order(cfg.max_order, 0.0);
  for (const auto& ref : refs) {
    const double delta =
        static_cast<double>(hyp.size()) - static_cast<double>(ref.size());
    const double penalty =
        std::exp(-(delta * delta) / (2.0 * cfg.sigma * cfg.sigma));
    for (int n = 1; n <= cfg.max_order; ++n) {
      const TfIdf ref_vec = tfidf(ref, n, idf);
      const TfIdf& h = hyp_vec[n - 1];
      if (h.norm == 0.0 || ref_vec.norm == 0.0) continue;
      double dot = 0.0;
      for (const auto& [gram, w] : h.weights) {
        auto it = ref_vec.weights.find(gram);
        if (it == ref_vec.weights.end()) continue;
        dot += std::min(w, it->second) * it->second;
      }
      per_order[n - 1] += penalty * dot / (h.norm * ref_vec.norm);
    }
  }
  double mean = 0.0;
  for (double v : per_order) mean += v;
  mean /= static_cast<double>(cfg.max_order);
  return 10.0 * mean / static_cast<double>(refs.size());
}

double cider_d(std::span<const Sentence> hyps, const MultiReferences& refs,
               const CiderConfig& cfg, const IdfTable& idf) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput, "hypothesis/reference count mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    sum += cider_d_instance(hyps[i], refs[i], cfg, idf);
  }
  return sum / static_cast<double>(hyps.size());
}

}  // namespace gauntlet
