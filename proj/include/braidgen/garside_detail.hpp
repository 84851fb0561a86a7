#pragma once

#include <cstdint>

#include "braidgen/word.hpp"

// Permutation-braid lattice primitives behind the normal-form engines,
// exposed for exhaustive validation in the test suite.
namespace braidgen::garside_detail {

/// Bitmask over generators (bit g set means sigma_{g+1} divides on that side).
std::uint64_t starting_set(const Permutation& p);
std::uint64_t finishing_set(const Permutation& p);

bool left_weighted(const Permutation& a, const Permutation& b);

/// Maximal common prefix of two permutation braids.
Permutation meet(const Permutation& a, const Permutation& b);

/// The right complement a^{-1} Delta.
Permutation right_complement(const Permutation& a);

/// Conjugation by Delta.
Permutation tau(const Permutation& a);

/// Applies the left-weighted fix to the pair; returns true if anything moved.
bool fix(Permutation& a, Permutation& b);

}  // namespace braidgen::garside_detail
