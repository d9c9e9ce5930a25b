#include "lfseg/swap.hpp"

#include <algorithm>

namespace lfseg {

namespace {

void sort_pointwise(ScalarField2D& lo_target, ScalarField2D& hi_target) {
  for (std::size_t i = 0; i < lo_target.size(); ++i) {
    double a = lo_target[i], b = hi_target[i];
    lo_target[i] = std::min(a, b);
    hi_target[i] = std::max(a, b);
  }
}

}  // namespace

FittingPair swap_pair(FittingPair pair, Polarity polarity) {
  if (pair.kind != FitKind::means)
    throw ParameterError("swap_pair: means pair expected");
  switch (polarity) {
    case Polarity::off:
      break;
    case Polarity::bright_object:
      sort_pointwise(pair.side1, pair.side2);
      break;
    case Polarity::dark_object:
      sort_pointwise(pair.side2, pair.side1);
      break;
  }
  return pair;
}

std::pair<FittingPair, FittingPair> swap_lgdf(FittingPair means, FittingPair variances,
                                              Polarity polarity, VarianceSwapRule rule) {
  if (polarity == Polarity::off) return {std::move(means), std::move(variances)};

  if (rule == VarianceSwapRule::follow_means) {
    for (std::size_t i = 0; i < means.side1.size(); ++i)
      if ((polarity == Polarity::bright_object) == (means.side1[i] > means.side2[i])) {
        std::swap(means.side1[i], means.side2[i]);
        std::swap(variances.side1[i], variances.side2[i]);
      }
    return {std::move(means), std::move(variances)};
  }

  // Literal rule: sort each pair independently with the same min/max
  // assignment as the means' polarity.
  if (polarity == Polarity::bright_object) {
    sort_pointwise(means.side1, means.side2);
    sort_pointwise(variances.side1, variances.side2);
  } else {
    sort_pointwise(means.side2, means.side1);
    sort_pointwise(variances.side2, variances.side1);
  }
  return {std::move(means), std::move(variances)};
}

}  // namespace lfseg
