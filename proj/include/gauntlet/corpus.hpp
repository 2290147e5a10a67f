#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gauntlet/error.hpp"

namespace gauntlet {

using Token = std::string;

// The literal sentinel used for substitutions unless a caller overrides it.
inline constexpr std::string_view kUnkToken = "UNK";

// An ordered, whitespace-free token sequence. Construction validates that no
// token is empty or contains whitespace, so joining with single spaces and
// re-splitting always gives back the same sentence.
class Sentence {
 public:
  Sentence() = default;
  explicit Sentence(std::vector<Token> tokens);
  Sentence(std::initializer_list<const char*> tokens);

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  // Tokens joined by single spaces.
  std::string str() const;

  // Per-token comparison key. Tokens of up to seven bytes are packed into the
  // key, so equal keys mean equal tokens; longer tokens carry a hash with the
  // top bit set and need a string comparison when keys agree.
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  static bool key_is_exact(std::uint64_t k) { return (k >> 63) == 0; }
  bool same_token(std::size_t i, const Sentence& other, std::size_t j) const {
    return keys_[i] == other.keys_[j] &&
           (key_is_exact(keys_[i]) || tokens_[i] == other.tokens_[j]);
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
  friend auto operator<=>(const Sentence&, const Sentence&) = default;

 private:
  std::vector<Token> tokens_;
  std::vector<std::uint64_t> keys_;
};

// References for one corpus: refs[i] holds every reference of instance i.
using MultiReferences = std::vector<std::vector<Sentence>>;

// C parallel reference corpora over the same N instances.
class ReferenceBundle {
 public:
  // Throws kRaggedReferences unless every corpus has the same length, and
  // kInvalidInput for an empty bundle or an empty corpus.
  explicit ReferenceBundle(std::vector<std::vector<Sentence>> corpora);

  std::size_t num_corpora() const { return corpora_.size(); }
  std::size_t num_instances() const { return corpora_.front().size(); }
  const std::vector<Sentence>& corpus(std::size_t c) const {
    return corpora_[c];
  }

  // Per-instance references drawn from every corpus except `held_out`
  // (pass num_corpora() to keep all of them), in ascending corpus order.
  MultiReferences references_excluding(std::size_t held_out) const;

 private:
  std::vector<std::vector<Sentence>> corpora_;
};

struct EvalInstance {
  std::string id;
  std::vector<Sentence> refs;
  std::optional<Sentence> hyp;
};

// Ragged, id-addressed container: each instance has at least one reference,
// ids are unique.
class EvalCorpus {
 public:
  EvalCorpus() = default;
  explicit EvalCorpus(std::vector<EvalInstance> instances);

  const std::vector<EvalInstance>& instances() const { return instances_; }
  std::size_t size() const { return instances_.size(); }
  const EvalInstance* find(std::string_view id) const;

  MultiReferences references() const;

 private:
  std::vector<EvalInstance> instances_;
  std::unordered_map<std::string, std::size_t> index_;
};

class Vocabulary {
 public:
  Vocabulary() = default;

  void add(const Sentence& s);

  // Zero for tokens never seen.
  std::size_t count(std::string_view token) const;
  std::size_t total_tokens() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  const std::map<Token, std::size_t, std::less<>>& counts() const {
    return counts_;
  }

  // Descending count, then lexicographic token.
  std::vector<std::pair<Token, std::size_t>> sorted_by_frequency() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::map<Token, std::size_t, std::less<>> counts_;
  std::size_t total_ = 0;
};

inline constexpr int kMaxNGramOrder = 4;

// Counts of the contiguous n-grams of one sentence at a single order. An
// n-gram is keyed by its tokens joined with single spaces, which is
// unambiguous because tokens never contain whitespace.
struct NGramProfile {
  int order = 1;
  std::unordered_map<std::string, int> counts;
  int total = 0;

  int count(const std::string& gram) const {
    auto it = counts.find(gram);
    return it == counts.end() ? 0 : it->second;
  }
};

// Splits on runs of whitespace, optionally lowercasing ASCII letters.
// Throws kEmptySentence when nothing remains.
Sentence normalize_tokens(std::string_view raw_line, bool lowercase);

// Throws kEmptyCorpus for an empty corpus.
Vocabulary build_vocabulary(std::span<const Sentence> corpus);

// Requires 1 <= n <= kMaxNGramOrder.
NGramProfile ngram_profile(const Sentence& s, int n);

// The reference length nearest to hyp_len, ties going to the shorter one.
std::size_t closest_ref_length(std::size_t hyp_len,
                               std::span<const std::size_t> ref_lens);

}  // namespace gauntlet
