#include "gauntlet/corpus.hpp"

#include <algorithm>
#include <functional>

namespace gauntlet {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

void check_token(const Token& t) {
  if (t.empty()) throw Error(ErrorCode::kInvalidInput, "empty token");
  if (std::any_of(t.begin(), t.end(), is_space)) {
    throw Error(ErrorCode::kInvalidInput,
                "token contains whitespace: '" + t + "'");
  }
}

std::uint64_t token_key(const Token& t) {
  if (t.size() <= 7) {
    std::uint64_t k = t.size();
    for (std::size_t i = 0; i < t.size(); ++i) {
      k |= std::uint64_t{static_cast<unsigned char>(t[i])} << (8 * (i + 1));
    }
    return k;
  }
  return std::hash<Token>{}(t) | (std::uint64_t{1} << 63);
}

}  // namespace

Sentence::Sentence(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  keys_.reserve(tokens_.size());
  for (const auto& t : tokens_) {
    check_token(t);
    keys_.push_back(token_key(t));
  }
}

Sentence::Sentence(std::initializer_list<const char*> tokens) {
  tokens_.reserve(tokens.size());
  keys_.reserve(tokens.size());
  for (const char* t : tokens) {
    tokens_.emplace_back(t);
    check_token(tokens_.back());
    keys_.push_back(token_key(tokens_.back()));
  }
}

std::string Sentence::str() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += ' ';
    out += tokens_[i];
  }
  return out;
}

ReferenceBundle::ReferenceBundle(std::vector<std::vector<Sentence>> corpora)
    : corpora_(std::move(corpora)) {
  if (corpora_.empty() || corpora_.front().empty()) {
    throw Error(ErrorCode::kInvalidInput, "reference bundle is empty");
  }
  const std::size_t n = corpora_.front().size();
  for (std::size_t c = 1; c < corpora_.size(); ++c) {
    if (corpora_[c].size() != n) {
      throw Error(ErrorCode::kRaggedReferences,
                  "reference corpus " + std::to_string(c + 1) + " has " +
                      std::to_string(corpora_[c].size()) +
                      " sentences, expected " + std::to_string(n));
    }
  }
}

MultiReferences ReferenceBundle::references_excluding(
    std::size_t held_out) const {
  MultiReferences refs(num_instances());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    refs[i].reserve(corpora_.size());
    for (std::size_t c = 0; c < corpora_.size(); ++c) {
      if (c != held_out) refs[i].push_back(corpora_[c][i]);
    }
  }
  return refs;
}

EvalCorpus::EvalCorpus(std::vector<EvalInstance> instances)
    : instances_(std::move(instances)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& inst = instances_[i];
    if (inst.refs.empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  "instance '" + inst.id + "' has no references");
    }
    if (!index_.emplace(inst.id, i).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate id '" + inst.id + "'");
    }
  }
}

const EvalInstance* EvalCorpus::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &instances_[it->second];
}

MultiReferences EvalCorpus::references() const {
  MultiReferences refs;
  refs.reserve(instances_.size());
  for (const auto& inst : instances_) refs.push_back(inst.refs);
  return refs;
}

void Vocabulary::add(const Sentence& s) {
  for (const auto& t : s) {
    auto it = counts_.find(t);
    if (it == counts_.end()) {
      counts_.emplace(t, 1);
    } else {
      ++it->second;
    }
  }
  total_ += s.size();
}

std::size_t Vocabulary::count(std::string_view token) const {
  auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<Token, std::size_t>> Vocabulary::sorted_by_frequency()
    const {
  std::vector<std::pair<Token, std::size_t>> out(counts_.begin(),
                                                 counts_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

Sentence normalize_tokens(std::string_view raw_line, bool lowercase) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < raw_line.size()) {
    while (i < raw_line.size() && is_space(raw_line[i])) ++i;
    std::size_t start = i;
    while (i < raw_line.size() && !is_space(raw_line[i])) ++i;
    if (i > start) {
      Token t(raw_line.substr(start, i - start));
      if (lowercase) {
        // ASCII only, so the result never depends on the process locale.
        for (char& c : t) {
          if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
      }
      tokens.push_back(std::move(t));
    }
  }
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptySentence, "sentence is empty after trimming");
  }
  return Sentence(std::move(tokens));
}

Vocabulary build_vocabulary(std::span<const Sentence> corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot build vocabulary of empty corpus");
  }
  Vocabulary v;
  for (const auto& s : corpus) v.add(s);
  return v;
}

NGramProfile ngram_profile(const Sentence& s, int n) {
  if (n < 1 || n > kMaxNGramOrder) {
    throw Error(ErrorCode::kInvalidInput,
                "n-gram order must be in 1..4, got " + std::to_string(n));
  }
  NGramProfile p;
  p.order = n;
  const auto len = static_cast<int>(s.size());
  for (int i = 0; i + n <= len; ++i) {
    std::string gram = s[i];
    for (int k = 1; k < n; ++k) {
      gram += ' ';
      gram += s[i + k];
    }
    ++p.counts[gram];
    ++p.total;
  }
  return p;
}

std::size_t closest_ref_length(std::size_t hyp_len,
                               std::span<const std::size_t> ref_lens) {
  if (ref_lens.empty()) {
    throw Error(ErrorCode::kInvalidInput, "no reference lengths");
  }
  std::size_t best = ref_lens.front();
  auto dist = [hyp_len](std::size_t r) {
    return r > hyp_len ? r - hyp_len : hyp_len - r;
  };
  for (std::size_t r : ref_lens.subspan(1)) {
    const auto d = dist(r), bd = dist(best);
    if (d < bd || (d == bd && r < best)) best = r;
  }
  return best;
}

}  // namespace gauntlet
