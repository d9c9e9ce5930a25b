#pragma once

#include <utility>

#include "lfseg/fitting.hpp"

namespace lfseg {

// Which intensity side the object occupies. bright_object gives side1 the
// pointwise minimum of the fitting pair (and side2 the maximum), dark_object
// the reverse, off leaves the pair untouched (original model).
enum class Polarity { bright_object, dark_object, off };

// How the LGDF variance pair is exchanged: independently min/max-sorted like
// the means, or carried along with its mean partner when the means swap.
enum class VarianceSwapRule { independent, follow_means };

// Pointwise min/max exchange across the contour so the fitted object side is
// always the extreme one and the whole curve evolves in one direction.
FittingPair swap_pair(FittingPair pair, Polarity polarity);

// LGDF variant: means swapped as in swap_pair; variances exchanged per rule.
std::pair<FittingPair, FittingPair> swap_lgdf(FittingPair means, FittingPair variances,
                                              Polarity polarity,
                                              VarianceSwapRule rule = VarianceSwapRule::independent);

}  // namespace lfseg
