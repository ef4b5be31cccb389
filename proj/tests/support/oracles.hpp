#pragma once
// Brute-force reference computations kept independent of the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

/// Elements of S = <gens> below `bound`.
inline std::vector<bool> semigroup_members(const std::vector<int>& gens, int bound) {
  std::vector<bool> in(bound, false);
  in[0] = true;
  for (int s = 1; s < bound; ++s)
    for (int g : gens)
      if (g <= s && in[s - g]) { in[s] = true; break; }
  return in;
}

inline int frobenius(const std::vector<int>& gens) {
  const int bound = gens.front() * gens.back() + 1;
  const auto s = semigroup_members(gens, bound);
  int f = -1;
  for (int x = 0; x < bound; ++x)
    if (!s[x]) f = x;
  return f;
}

/// H(n) = |S_n \ S_{n+1}| with S_n = n-fold sums + S, by explicit sumsets.
inline std::vector<int> semigroup_hf(const std::vector<int>& gens, int n_max) {
  const int amax = *std::max_element(gens.begin(), gens.end());
  const int f = frobenius(gens);
  const int bound = (n_max + 2) * amax + f + 2;
  const auto s = semigroup_members(gens, bound);
  std::vector<std::set<int>> layers;  // layers[n] = S_n restricted to [0,bound)
  std::set<int> sums = {0};
  for (int n = 0; n <= n_max + 1; ++n) {
    std::set<int> sn;
    for (int a : sums)
      for (int x = 0; a + x < bound; ++x)
        if (s[x]) sn.insert(a + x);
    layers.push_back(sn);
    std::set<int> next;
    for (int a : sums)
      for (int g : gens) next.insert(a + g);
    sums = next;
  }
  std::vector<int> h;
  const int cutoff = (n_max + 1) * amax + f + 1;
  for (int n = 0; n <= n_max; ++n) {
    int c = 0;
    for (int x : layers[n])
      if (x < cutoff && !layers[n + 1].count(x)) ++c;
    h.push_back(c);
  }
  return h;
}

/// Exponent vectors of a monomial ideal's generators.
using Exps = std::vector<int>;

/// Number of degree-d monomials in `nvars` variables outside the monomial
/// ideal generated by `gens`.
inline int standard_monomials(int nvars, int d, const std::vector<Exps>& gens) {
  int count = 0;
  Exps e(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = left;
      for (const auto& g : gens) {
        bool div = true;
        for (int k = 0; k < nvars; ++k) div = div && g[k] <= e[k];
        if (div) return;
      }
      ++count;
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, d);
  return count;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Coefficients of prod(1 - t^a_i) / (1 - t)^m up to degree n_max.
inline std::vector<long long> ci_series(int m, const std::vector<int>& degrees, int n_max) {
  std::vector<long long> num(n_max + 1, 0);
  num[0] = 1;
  for (int a : degrees)
    for (int d = n_max; d >= a; --d) num[d] -= num[d - a];
  std::vector<long long> out(n_max + 1, 0);
  for (int n = 0; n <= n_max; ++n)
    for (int d = 0; d <= n; ++d) out[n] += num[d] * binomial(n - d + m - 1, m - 1);
  return out;
}

}  // namespace oracle
