#pragma once

#include <optional>
#include <vector>

#include "reoimc/imc.hpp"

namespace reoimc {

/// Relative tolerance used when comparing cumulative rates into a class.
inline constexpr double kBisimRateTolerance = 1e-9;

/// Block index per state of the coarsest strong bisimulation on m.
///
/// Two states are equivalent iff they reach the same blocks under equal
/// interactive labels (full port sets) and have equal cumulative Markovian
/// rates into every block. No maximal-progress cut is applied.
std::vector<std::size_t> strong_bisim_partition(const Imc& m);

/// Quotient under strong bisimulation. Each block is represented by its
/// lowest-numbered member, whose label it keeps; blocks are numbered in
/// order of their representatives.
Imc strong_bisim_minimize(const Imc& m);

/// True iff the initial states are strongly bisimilar on the disjoint union.
bool are_bisimilar(const Imc& m1, const Imc& m2);

/// Witness for is_isomorphic: mapping[s] is the image in m2 of state s of m1.
using Isomorphism = std::vector<StateId>;

/// Label-, transition- and rate-preserving bijection (rates compared
/// exactly) mapping initial to initial. Returns the mapping when one exists.
std::optional<Isomorphism> find_isomorphism(const Imc& m1, const Imc& m2);

inline bool is_isomorphic(const Imc& m1, const Imc& m2) {
    return find_isomorphism(m1, m2).has_value();
}

}  // namespace reoimc
