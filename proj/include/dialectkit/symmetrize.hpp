#pragma once

#include <optional>
#include <string_view>

#include "dialectkit/aligner.hpp"

namespace dialectkit {

enum class SymmetrizationHeuristic { intersection, union_all, grow_diag_final_and };

std::string_view to_string(SymmetrizationHeuristic h);
std::optional<SymmetrizationHeuristic> heuristic_from_string(std::string_view s);

/// Combines a forward and a backward alignment of the same sentence pair.
/// grow-diag-final-and starts from the intersection, repeatedly grows with
/// 8-neighborhood links drawn from the union as long as one endpoint is still
/// uncovered, then runs a final pass over each directional alignment adding
/// links whose endpoints are both uncovered.
TokenAlignment symmetrize(const TokenAlignment& forward, const TokenAlignment& backward,
                          SymmetrizationHeuristic heuristic =
                              SymmetrizationHeuristic::grow_diag_final_and);

}  // namespace dialectkit
