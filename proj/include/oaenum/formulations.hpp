#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oaenum/design.hpp"
#include "oaenum/int_system.hpp"

namespace oaenum {

enum class Formulation { identity, full, compressed };

std::string to_string(Formulation f);

/// Upper bound on any run's multiplicity in an OA of strength t: N / s^t.
int p_max_bound(int runs, int s, int t);

/// A feasibility system together with what is needed to decode its solutions.
struct ExtensionSystem {
  Formulation kind = Formulation::full;
  IntEqSystem system;
  Design input;        // the k-1 column input (lex-sorted for compressed); empty for full
  int runs = 0;
  int factors = 0;     // columns of decoded designs
  int levels = 2;
  int strength = 0;
};

/// N(s-1) binary indicator variables for the new column of `input`, with
/// column-sum, orthogonality, first-run, one-level-per-row, and replicate
/// ordering rows. No symmetry is attached.
ExtensionSystem build_identity_extension(const Design& input, int t);

/// One variable per cell of the s^k full factorial, bounded by p_max, with
/// the first cell's count at least 1. Symmetry: G_{s,k}, orbit leaders are
/// lexicographic maxima.
ExtensionSystem build_full_formulation(int runs, int k, int s, int t);

/// One variable per (distinct run, new level < s-1) of a lex-sorted input.
/// Symmetry: the input's stabilizer in G_{s,k-1} acting on distinct runs,
/// orbit leaders are lexicographic maxima.
ExtensionSystem build_compressed_extension(const Design& input, int t);

/// Decodes a solution; throws InvalidInput if x does not satisfy the system.
Design decode(const ExtensionSystem& f, std::span<const int> x);

}  // namespace oaenum
