#pragma once

// Independent brute-force scorers used only by tests. They work on plain
// string vectors and never call into the library's kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Words = std::vector<std::string>;

inline std::map<Words, int> ngram_counts(const Words& s, int n) {
  std::map<Words, int> out;
  for (int i = 0; i + n <= static_cast<int>(s.size()); ++i) {
    ++out[Words(s.begin() + i, s.begin() + i + n)];
  }
  return out;
}

// Sum over hypothesis n-grams of min(hyp count, max single-reference count).
inline int clip_count(const Words& hyp, const std::vector<Words>& refs, int n) {
  int clipped = 0;
  for (const auto& [gram, c] : ngram_counts(hyp, n)) {
    int best = 0;
    for (const auto& r : refs) {
      const auto rc = ngram_counts(r, n);
      auto it = rc.find(gram);
      if (it != rc.end()) best = std::max(best, it->second);
    }
    clipped += std::min(c, best);
  }
  return clipped;
}

// Corpus BLEU-1..4 on the 0-100 scale: product of precisions to the 1/k,
// closest reference length with ties to the shorter one.
inline std::vector<double> corpus_bleu(const std::vector<Words>& hyps,
                                       const std::vector<std::vector<Words>>& refs) {
  double clipped[4] = {0, 0, 0, 0}, total[4] = {0, 0, 0, 0};
  double h = 0, r = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    h += static_cast<double>(hyps[i].size());
    std::vector<std::size_t> lens;
    for (const auto& ref : refs[i]) lens.push_back(ref.size());
    std::sort(lens.begin(), lens.end(), [&](std::size_t a, std::size_t b) {
      const auto da = a > hyps[i].size() ? a - hyps[i].size() : hyps[i].size() - a;
      const auto db = b > hyps[i].size() ? b - hyps[i].size() : hyps[i].size() - b;
      return da != db ? da < db : a < b;
    });
    r += static_cast<double>(lens.front());
    for (int n = 1; n <= 4; ++n) {
      clipped[n - 1] += clip_count(hyps[i], refs[i], n);
      const int len = static_cast<int>(hyps[i].size());
      total[n - 1] += std::max(0, len - n + 1);
    }
  }
  const double bp = h >= r ? 1.0 : std::exp(1.0 - r / h);
  std::vector<double> out;
  double product = 1.0;
  for (int k = 1; k <= 4; ++k) {
    const double p = total[k - 1] > 0 ? clipped[k - 1] / total[k - 1] : 0.0;
    product *= p;
    out.push_back(product == 0.0 ? 0.0 : 100.0 * bp * std::pow(product, 1.0 / k));
  }
  return out;
}

// Longest common subsequence by enumerating every subsequence of `a`.
inline std::size_t lcs_enumerate(const Words& a, const Words& b) {
  std::size_t best = 0;
  const std::uint32_t limit = 1u << a.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const auto bits = static_cast<std::size_t>(__builtin_popcount(mask));
    if (bits <= best) continue;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false; else ++j;
    }
    if (ok) best = bits;
  }
  return best;
}

// Exact-match alignment by enumerating every one-to-one matching; returns
// (max matches, min chunks among those).
inline std::pair<int, int> exact_alignment(const Words& hyp, const Words& ref) {
  int best_m = 0, best_c = 0;
  std::vector<int> choice(hyp.size(), -1);
  std::vector<char> used(ref.size(), 0);
  auto chunks = [&]() {
    int c = 0;
    int prev_h = -2, prev_r = -2;
    for (int h = 0; h < static_cast<int>(hyp.size()); ++h) {
      if (choice[h] < 0) continue;
      if (!(h == prev_h + 1 && choice[h] == prev_r + 1)) ++c;
      prev_h = h;
      prev_r = choice[h];
    }
    return c;
  };
  auto rec = [&](auto&& self, std::size_t h, int m) -> void {
    if (h == hyp.size()) {
      const int c = chunks();
      if (m > best_m || (m == best_m && c < best_c)) {
        best_m = m;
        best_c = c;
      }
      return;
    }
    self(self, h + 1, m);
    for (std::size_t r = 0; r < ref.size(); ++r) {
      if (used[r] || hyp[h] != ref[r]) continue;
      used[r] = 1;
      choice[h] = static_cast<int>(r);
      self(self, h + 1, m + 1);
      choice[h] = -1;
      used[r] = 0;
    }
  };
  rec(rec, 0, 0);
  return {best_m, best_c};
}

// METEOR from match and chunk counts.
inline double meteor_from_counts(int matches, int chunks, std::size_t hyp_len,
                                 std::size_t ref_len, double alpha = 0.85,
                                 double beta = 0.2, double gamma = 0.6) {
  if (matches == 0) return 0.0;
  const double p = static_cast<double>(matches) / static_cast<double>(hyp_len);
  const double r = static_cast<double>(matches) / static_cast<double>(ref_len);
  const double f = p * r / (alpha * p + (1 - alpha) * r);
  const double pen = gamma * std::pow(static_cast<double>(chunks) / matches, beta);
  return 100.0 * (1 - pen) * f;
}

using Vectors = std::vector<std::vector<double>>;

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0 || bb == 0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

// Unweighted greedy max-cosine F by double loop.
inline double greedy_f(const Vectors& hyp, const Vectors& ref) {
  double p = 0, r = 0;
  for (const auto& h : hyp) {
    double best = -2;
    for (const auto& x : ref) best = std::max(best, cosine(h, x));
    p += best;
  }
  for (const auto& x : ref) {
    double best = -2;
    for (const auto& h : hyp) best = std::max(best, cosine(h, x));
    r += best;
  }
  p /= static_cast<double>(hyp.size());
  r /= static_cast<double>(ref.size());
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

}  // namespace oracle
