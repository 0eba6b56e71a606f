#pragma once

// Exhaustive classification of small two-level orthogonal arrays, written
// without the graph machinery so it can serve as an independent oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "oaenum/design.hpp"

namespace oaenum::brute {

using Form = std::vector<std::uint32_t>;

// Minimum over column permutations and level flips of the sorted row codes.
// Two designs are isomorphic iff their forms agree.
inline Form canonical_form(const Design& d) {
  const int n = d.runs(), k = d.factors();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Form best, cur(n);
  do {
    for (std::uint32_t flips = 0; flips < (1u << k); ++flips) {
      for (int i = 0; i < n; ++i) {
        std::uint32_t code = 0;
        for (int j = 0; j < k; ++j) code = (code << 1) | (d(i, perm[j]) ^ ((flips >> j) & 1u));
        cur[i] = code;
      }
      std::sort(cur.begin(), cur.end());
      if (best.empty() || cur < best) best = cur;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Classes of OA(N,k,2,t) for k = 1, 2, ... until none exist; element k-1
// maps each form to a representative.
inline std::vector<std::map<Form, Design>> classify(int runs, int t) {
  std::vector<std::map<Form, Design>> out;
  std::map<Form, Design> current{{Form(runs, 0), Design(runs, 0, 2)}};
  for (int k = 1;; ++k) {
    std::map<Form, Design> next;
    for (const auto& [form, rep] : current) {
      std::vector<Level> col(runs, 0);
      for (std::uint32_t bits = 0; bits < (1u << runs); ++bits) {
        for (int i = 0; i < runs; ++i) col[i] = (bits >> i) & 1u;
        Design d = rep.with_column(col);
        if (!verify_strength(d, std::min(t, k))) continue;
        next.try_emplace(canonical_form(d), std::move(d));
      }
    }
    if (next.empty()) return out;
    out.push_back(next);
    current = std::move(next);
  }
}

}  // namespace oaenum::brute
