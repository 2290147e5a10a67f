#include "gauntlet/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "gauntlet/porter_stemmer.hpp"

namespace gauntlet {

const char* match_stage_name(MatchStage stage) {
  switch (stage) {
    case MatchStage::kExact: return "exact";
    case MatchStage::kStem: return "stem";
    case MatchStage::kSynonym: return "synonym";
  }
  return "unknown";
}

void SynonymLexicon::add_set(const std::vector<Token>& forms) {
  if (forms.size() < 2) return;
  const int id = num_sets_++;
  for (const auto& f : forms) {
    auto& ids = sets_of_[f];
    if (ids.empty() || ids.back() != id) ids.push_back(id);
  }
}

bool SynonymLexicon::synonymous(const Token& a, const Token& b) const {
  auto ia = sets_of_.find(a);
  if (ia == sets_of_.end()) return false;
  auto ib = sets_of_.find(b);
  if (ib == sets_of_.end()) return false;
  // both id lists are ascending
  auto x = ia->second.begin(), y = ib->second.begin();
  while (x != ia->second.end() && y != ib->second.end()) {
    if (*x == *y) return true;
    if (*x < *y) ++x; else ++y;
  }
  return false;
}

SynonymLexicon SynonymLexicon::parse(std::istream& in) {
  SynonymLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<Token> forms;
    for (Token t; fields >> t;) forms.push_back(t);
    lex.add_set(forms);
  }
  return lex;
}

void MeteorConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "METEOR alpha must be in [0,1]");
  }
  if (!(beta >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "METEOR beta must be >= 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "METEOR gamma must be in [0,1]");
  }
  if (stages.empty() || stages.front() != MatchStage::kExact) {
    throw Error(ErrorCode::kInvalidInput,
                "METEOR stage list must be non-empty and start with exact");
  }
}

int count_chunks(std::vector<AlignedPair> matches) {
  if (matches.empty()) return 0;
  std::sort(matches.begin(), matches.end(),
            [](const AlignedPair& a, const AlignedPair& b) {
              return a.hyp_index < b.hyp_index;
            });
  int chunks = 1;
  for (std::size_t i = 1; i < matches.size(); ++i) {
    const bool continues =
        matches[i].hyp_index == matches[i - 1].hyp_index + 1 &&
        matches[i].ref_index == matches[i - 1].ref_index + 1;
    if (!continues) ++chunks;
  }
  return chunks;
}

namespace {

std::string lowercase_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

struct Edge {
  std::size_t hyp;
  std::size_t ref;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Kuhn's augmenting-path maximum matching over the contested edges.
std::size_t maximum_matching_size(const std::vector<std::vector<std::size_t>>& options,
                                  std::size_t ref_count) {
  std::vector<long> owner(ref_count, -1);
  std::size_t size = 0;
  for (std::size_t h = 0; h < options.size(); ++h) {
    std::vector<char> seen(ref_count, 0);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
      for (std::size_t r : options[u]) {
        if (seen[r]) continue;
        seen[r] = 1;
        if (owner[r] < 0 || self(self, static_cast<std::size_t>(owner[r]))) {
          owner[r] = static_cast<long>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(augment, h)) ++size;
  }
  return size;
}

// Chooses, for the contested hypothesis tokens of one stage, a matching of
// maximum cardinality with the fewest total chunks given `fixed`.
class StageSolver {
 public:
  StageSolver(std::vector<std::size_t> hyps,
              std::vector<std::vector<std::size_t>> options,
              std::size_t ref_count, std::vector<AlignedPair> fixed,
              MatchStage stage)
      : hyps_(std::move(hyps)),
        options_(std::move(options)),
        ref_count_(ref_count),
        fixed_(std::move(fixed)),
        stage_(stage) {
    target_ = maximum_matching_size(options_, ref_count_);
  }

  std::vector<AlignedPair> solve_exhaustive() {
    std::vector<long> choice(hyps_.size(), -1);
    std::vector<char> used(ref_count_, 0);
    best_chunks_ = -1;
    dfs(0, 0, choice, used);
    return to_pairs(best_choice_);
  }

  std::vector<AlignedPair> solve_beam(std::size_t width) {
    struct State {
      std::vector<long> choice;
      std::vector<char> used;
      std::size_t count = 0;
      int chunks = 0;
    };
    std::vector<State> beam(1);
    beam[0].used.assign(ref_count_, 0);
    for (std::size_t idx = 0; idx < hyps_.size(); ++idx) {
      const std::size_t remaining = hyps_.size() - idx - 1;
      std::vector<State> next;
      for (const auto& st : beam) {
        for (std::size_t r : options_[idx]) {
          if (st.used[r]) continue;
          State s = st;
          s.choice.push_back(static_cast<long>(r));
          s.used[r] = 1;
          ++s.count;
          if (s.count + remaining < target_) continue;
          s.chunks = chunks_of(s.choice);
          next.push_back(std::move(s));
        }
        if (st.count + remaining >= target_) {
          State s = st;
          s.choice.push_back(-1);
          s.chunks = chunks_of(s.choice);
          next.push_back(std::move(s));
        }
      }
      std::stable_sort(next.begin(), next.end(),
                       [](const State& a, const State& b) {
                         if (a.chunks != b.chunks) return a.chunks < b.chunks;
                         if (a.count != b.count) return a.count > b.count;
                         return a.choice < b.choice;
                       });
      if (next.size() > width) next.resize(width);
      if (next.empty()) break;
      beam = std::move(next);
    }
    const State* best = nullptr;
    for (const auto& st : beam) {
      if (!best || st.count > best->count ||
          (st.count == best->count && st.chunks < best->chunks)) {
        best = &st;
      }
    }
    std::vector<long> choice = best->choice;
    choice.resize(hyps_.size(), -1);
    std::vector<char> used = best->used;
    // Keep the result maximal even if the beam lost the optimum.
    for (std::size_t idx = 0; idx < hyps_.size(); ++idx) {
      if (choice[idx] >= 0) continue;
      for (std::size_t r : options_[idx]) {
        if (!used[r]) {
          choice[idx] = static_cast<long>(r);
          used[r] = 1;
          break;
        }
      }
    }
    return to_pairs(choice);
  }

 private:
  void dfs(std::size_t idx, std::size_t count, std::vector<long>& choice,
           std::vector<char>& used) {
    if (count + (hyps_.size() - idx) < target_) return;
    if (idx == hyps_.size()) {
      const int chunks = chunks_of(choice);
      if (best_chunks_ < 0 || chunks < best_chunks_) {
        best_chunks_ = chunks;
        best_choice_ = choice;
      }
      return;
    }
    for (std::size_t r : options_[idx]) {
      if (used[r]) continue;
      used[r] = 1;
      choice[idx] = static_cast<long>(r);
      dfs(idx + 1, count + 1, choice, used);
      used[r] = 0;
    }
    choice[idx] = -1;
    dfs(idx + 1, count, choice, used);
  }

  std::vector<AlignedPair> to_pairs(const std::vector<long>& choice) const {
    std::vector<AlignedPair> out;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      if (choice[i] >= 0) {
        out.push_back({hyps_[i], static_cast<std::size_t>(choice[i]), stage_});
      }
    }
    return out;
  }

  int chunks_of(const std::vector<long>& choice) const {
    std::vector<AlignedPair> all = fixed_;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      if (choice[i] >= 0) {
        all.push_back({hyps_[i], static_cast<std::size_t>(choice[i]), stage_});
      }
    }
    return count_chunks(std::move(all));
  }

  std::vector<std::size_t> hyps_;
  std::vector<std::vector<std::size_t>> options_;
  std::size_t ref_count_;
  std::vector<AlignedPair> fixed_;
  MatchStage stage_;
  std::size_t target_ = 0;
  int best_chunks_ = -1;
  std::vector<long> best_choice_;
};

}  // namespace

Alignment meteor_align(const Sentence& hyp, const Sentence& ref,
                       const MeteorConfig& cfg) {
  cfg.validate();
  const std::size_t H = hyp.size(), R = ref.size();
  std::vector<char> hyp_used(H, 0), ref_used(R, 0);
  std::vector<AlignedPair> matches;

  std::vector<std::string> hyp_stems, ref_stems;

  for (MatchStage stage : cfg.stages) {
    if (stage == MatchStage::kSynonym && !cfg.synonyms) continue;
    if (stage == MatchStage::kStem && hyp_stems.empty()) {
      for (const auto& t : hyp) hyp_stems.push_back(porter_stem(lowercase_ascii(t)));
      for (const auto& t : ref) ref_stems.push_back(porter_stem(lowercase_ascii(t)));
    }
    auto passes = [&](std::size_t h, std::size_t r) {
      switch (stage) {
        case MatchStage::kExact: return hyp[h] == ref[r];
        case MatchStage::kStem: return hyp_stems[h] == ref_stems[r];
        case MatchStage::kSynonym: return cfg.synonyms->synonymous(hyp[h], ref[r]);
      }
      return false;
    };

    std::vector<Edge> edges;
    for (std::size_t h = 0; h < H; ++h) {
      if (hyp_used[h]) continue;
      for (std::size_t r = 0; r < R; ++r) {
        if (!ref_used[r] && passes(h, r)) edges.push_back({h, r});
      }
    }
    if (edges.empty()) continue;

    // Components over hyp nodes [0,H) and ref nodes [H,H+R).
    std::vector<std::size_t> parent(H + R);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : edges) {
      parent[find_root(parent, e.hyp)] = find_root(parent, H + e.ref);
    }
    std::vector<std::size_t> edges_in(H + R, 0), nodes_in(H + R, 0);
    for (const auto& e : edges) ++edges_in[find_root(parent, e.hyp)];
    std::vector<char> node_seen(H + R, 0);
    for (const auto& e : edges) {
      for (std::size_t node : {e.hyp, H + e.ref}) {
        if (!node_seen[node]) {
          node_seen[node] = 1;
          ++nodes_in[find_root(parent, node)];
        }
      }
    }

    std::vector<AlignedPair> forced;
    std::vector<std::size_t> contested_hyps;
    std::vector<std::vector<std::size_t>> options;
    std::size_t contested_tokens = 0;
    for (std::size_t node = 0; node < H + R; ++node) {
      if (node_seen[node] && find_root(parent, node) == node &&
          edges_in[node] > 1) {
        contested_tokens += nodes_in[node];
      }
    }
    for (const auto& e : edges) {
      if (edges_in[find_root(parent, e.hyp)] == 1) {
        forced.push_back({e.hyp, e.ref, stage});
      } else {
        if (contested_hyps.empty() || contested_hyps.back() != e.hyp) {
          contested_hyps.push_back(e.hyp);
          options.emplace_back();
        }
        options.back().push_back(e.ref);
      }
    }

    std::vector<AlignedPair> fixed = matches;
    fixed.insert(fixed.end(), forced.begin(), forced.end());
    std::vector<AlignedPair> chosen;
    if (!contested_hyps.empty()) {
      StageSolver solver(contested_hyps, options, R, fixed, stage);
      chosen = contested_tokens <= kExhaustiveAmbiguityLimit
                   ? solver.solve_exhaustive()
                   : solver.solve_beam(kAlignmentBeamWidth);
    }
    for (const auto& group : {forced, chosen}) {
      for (const auto& p : group) {
        hyp_used[p.hyp_index] = 1;
        ref_used[p.ref_index] = 1;
        matches.push_back(p);
      }
    }
  }

  std::sort(matches.begin(), matches.end(),
            [](const AlignedPair& a, const AlignedPair& b) {
              return a.hyp_index < b.hyp_index;
            });
  Alignment out;
  out.chunk_count = count_chunks(matches);
  out.matches = std::move(matches);
  return out;
}

double meteor_score(const Sentence& hyp, std::span<const Sentence> refs,
                    const MeteorConfig& cfg) {
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "METEOR needs at least one reference");
  }
  if (hyp.empty()) return 0.0;
  double best = 0.0;
  for (const auto& ref : refs) {
    if (ref.empty()) continue;
    const Alignment a = meteor_align(hyp, ref, cfg);
    const auto m = static_cast<double>(a.matches.size());
    if (a.matches.empty()) continue;
    const double precision = m / static_cast<double>(hyp.size());
    const double recall = m / static_cast<double>(ref.size());
    const double fmean = precision * recall /
                         (cfg.alpha * precision + (1.0 - cfg.alpha) * recall);
    const double penalty =
        cfg.gamma * std::pow(static_cast<double>(a.chunk_count) / m, cfg.beta);
    best = std::max(best, 100.0 * (1.0 - penalty) * fmean);
  }
  return best;
}

double meteor_corpus(std::span<const Sentence> hyps,
                     const MultiReferences& refs, const MeteorConfig& cfg) {
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no hypotheses");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidInput, "hypothesis/reference count mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    sum += meteor_score(hyps[i], refs[i], cfg);
  }
  return sum / static_cast<double>(hyps.size());
}

}  // namespace gauntlet
