#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oaenum/design.hpp"

namespace oaenum {

/// 1-based position of a level combination in the lexicographic s^k full
/// factorial: 1 + sum_j levels[j] * s^(k-1-j).
std::int64_t cell_index(std::span<const Level> levels, int s);
std::int64_t cell_index(std::span<const int> levels, int s);

/// Inverse of cell_index.
std::vector<Level> cell_levels(std::int64_t index, int s, int k);

/// The s^k full factorial in lexicographic row order.
Design full_factorial(int s, int k);

/// Counts of each cell (0-based positions) over the runs of d.
std::vector<int> frequency_vector(const Design& d);

/// Expands a frequency vector into runs in lexicographic cell order.
Design design_from_frequencies(std::span<const int> counts, int s, int k);

}  // namespace oaenum
