#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltrank {

/// A voter's weak ordering of the candidates: tier[c] is c's preference class,
/// 0 best; equal tiers are ties. Every candidate appears exactly once.
struct Ballot {
  std::string voter;
  std::vector<int> tier;
};

/// Ballot from per-candidate performance values, higher is better; exact
/// equality becomes a tie.
inline Ballot ballot_from_scores(std::string voter,
                                 std::span<const double> score_by_candidate) {
  const int n = static_cast<int>(score_by_candidate.size());
  std::vector<int> by_score(n);
  std::iota(by_score.begin(), by_score.end(), 0);
  std::sort(by_score.begin(), by_score.end(), [&](int a, int b) {
    if (score_by_candidate[a] != score_by_candidate[b])
      return score_by_candidate[a] > score_by_candidate[b];
    return a < b;
  });
  Ballot b{std::move(voter), std::vector<int>(n, 0)};
  int tier = 0;
  for (int i = 1; i < n; ++i) {
    if (score_by_candidate[by_score[i]] != score_by_candidate[by_score[i - 1]])
      ++tier;
    b.tier[by_score[i]] = tier;
  }
  return b;
}

/// Pairwise preference margins. Antisymmetric; |entry| <= ballot count.
class MarginMatrix {
 public:
  explicit MarginMatrix(int n_candidates)
      : n_(n_candidates), m_(static_cast<std::size_t>(n_) * n_, 0) {}

  int candidates() const { return n_; }
  long long& at(int d, int e) { return m_[static_cast<std::size_t>(d) * n_ + e]; }
  long long at(int d, int e) const { return m_[static_cast<std::size_t>(d) * n_ + e]; }

 private:
  int n_;
  std::vector<long long> m_;
};

/// M(d,e) = #ballots strictly preferring d over e minus the reverse count.
/// Ties contribute to neither side; counting them on both sides would cancel
/// in the subtraction anyway.
inline MarginMatrix margin_matrix(std::span<const Ballot> ballots) {
  if (ballots.empty())
    throw std::invalid_argument("margin_matrix: no ballots");
  const int n = static_cast<int>(ballots.front().tier.size());
  for (const Ballot& b : ballots)
    if (static_cast<int>(b.tier.size()) != n)
      throw std::invalid_argument("margin_matrix: ballots disagree on candidates");
  MarginMatrix m(n);
  for (const Ballot& b : ballots) {
    for (int d = 0; d < n; ++d) {
      for (int e = d + 1; e < n; ++e) {
        if (b.tier[d] < b.tier[e]) {
          ++m.at(d, e);
          --m.at(e, d);
        } else if (b.tier[e] < b.tier[d]) {
          ++m.at(e, d);
          --m.at(d, e);
        }
      }
    }
  }
  return m;
}

/// Widest-path closure: strength(d,e) = max over paths d..e of the minimum
/// edge margin, seeded with the direct margins and closed by triple-loop
/// relaxation.
inline std::vector<long long> strongest_paths(const MarginMatrix& m) {
  const int n = m.candidates();
  std::vector<long long> st(static_cast<std::size_t>(n) * n, 0);
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e)
      if (d != e) st[static_cast<std::size_t>(d) * n + e] = m.at(d, e);
  for (int x = 0; x < n; ++x)
    for (int d = 0; d < n; ++d) {
      if (d == x) continue;
      for (int e = 0; e < n; ++e) {
        if (e == x || e == d) continue;
        auto& de = st[static_cast<std::size_t>(d) * n + e];
        de = std::max(de, std::min(st[static_cast<std::size_t>(d) * n + x],
                                   st[static_cast<std::size_t>(x) * n + e]));
      }
    }
  return st;
}

/// Total ranking derived from the Schulze relation. d beats e iff
/// strength(d,e) > strength(e,d); candidates order by descending beat count,
/// residual ties by candidate id. A strict Schulze winner always lands first.
struct SchulzeResult {
  std::vector<int> order;       // candidate ids, best first
  std::vector<int> rank;        // rank[candidate], 1-based
  std::vector<int> beat_count;  // per candidate
  std::vector<bool> tied;       // candidate shares its beat count with another
};

inline SchulzeResult schulze_order(std::span<const long long> strengths,
                                   int n_candidates) {
  const int n = n_candidates;
  if (static_cast<std::size_t>(n) * n != strengths.size())
    throw std::invalid_argument("schulze_order: strength matrix size mismatch");
  SchulzeResult r;
  r.beat_count.assign(n, 0);
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e)
      if (d != e && strengths[static_cast<std::size_t>(d) * n + e] >
                        strengths[static_cast<std::size_t>(e) * n + d])
        ++r.beat_count[d];
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (r.beat_count[a] != r.beat_count[b])
      return r.beat_count[a] > r.beat_count[b];
    return a < b;
  });
  r.rank.assign(n, 0);
  for (int i = 0; i < n; ++i) r.rank[r.order[i]] = i + 1;
  r.tied.assign(n, false);
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e)
      if (d != e && r.beat_count[d] == r.beat_count[e]) r.tied[d] = true;
  return r;
}

}  // namespace ltrank
