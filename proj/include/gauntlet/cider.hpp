#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>

#include "gauntlet/corpus.hpp"

namespace gauntlet {

struct CiderConfig {
  int max_order = 4;
  double sigma = 6.0;  // width of the length penalty, in tokens

  void validate() const;
};

// Document frequencies over a reference set where each instance's references
// form one document. idf(g) = log(N) - log(max(1, df(g))), so unseen n-grams
// get log(N).
class IdfTable {
 public:
  IdfTable() = default;

  std::size_t num_documents() const { return num_documents_; }
  int max_order() const { return max_order_; }
  double idf(int order, const std::string& gram) const;
  std::size_t document_frequency(int order, const std::string& gram) const;

  // Every stored weight is zero: a single-document corpus.
  bool degenerate() const { return num_documents_ <= 1; }

  friend IdfTable build_idf(const MultiReferences& corpus_refs, int max_order);

 private:
  std::size_t num_documents_ = 0;
  int max_order_ = 0;
  double log_documents_ = 0.0;
  std::array<std::unordered_map<std::string, std::size_t>, kMaxNGramOrder> df_;
};

IdfTable build_idf(const MultiReferences& corpus_refs, int max_order);

// CIDEr-D of one instance on the 0-10 scale.
double cider_d_instance(const Sentence& hyp, std::span<const Sentence> refs,
                        const CiderConfig& cfg, const IdfTable& idf);

// Mean instance score over the corpus.
double cider_d(std::span<const Sentence> hyps, const MultiReferences& refs,
               const CiderConfig& cfg, const IdfTable& idf);

}  // namespace gauntlet
