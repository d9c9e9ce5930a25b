#pragma once

#include "lfseg/field.hpp"
#include "lfseg/kernel.hpp"

namespace lfseg {

enum class FitKind { means, variances };

// Local fitting statistics on the two sides of the contour. side1 fits the
// positive side (where heaviside_eps(phi) ~ 1), side2 the negative side.
struct FittingPair {
  ScalarField2D side1;
  ScalarField2D side2;
  FitKind kind = FitKind::means;
};

struct EnergyTerms {
  ScalarField2D e1;
  ScalarField2D e2;
};

// Floor for the convolved side weights, keeping the quotients finite where
// one side is locally empty.
inline constexpr double kWeightFloor = 1e-10;

// Floor for local variances; prevents log 0 and division by zero on locally
// constant regions.
inline constexpr double kVarianceFloor = 1e-4;

// side1 = conv(H*I)/conv(H), side2 = conv((1-H)*I)/conv(1-H), denominators
// floored at kWeightFloor. H must be in [0,1] and match the image dimensions.
FittingPair fit_means(const ScalarField2D& image, const ScalarField2D& h,
                      const GaussianKernel& kernel);

// Local weighted variances about the local means, computed by convolution
// expansion and floored at kVarianceFloor.
FittingPair fit_variances(const ScalarField2D& image, const ScalarField2D& h,
                          const FittingPair& means, const GaussianKernel& kernel);

// e_i(x) = I(x)^2*conv(1) - 2*I(x)*conv(f_i) + conv(f_i^2); conv(1) is
// computed explicitly so any boundary treatment stays consistent.
EnergyTerms e_terms(const ScalarField2D& image, const FittingPair& means,
                    const GaussianKernel& kernel);

// Gaussian-distribution analog: e_i(x) is the kernel-weighted local negative
// log-likelihood of I(x) under (u_i, sigma_i^2), up to the constant
// 0.5*log(2*pi) shared by both sides.
EnergyTerms lgdf_e_terms(const ScalarField2D& image, const FittingPair& means,
                         const FittingPair& variances, const GaussianKernel& kernel);

}  // namespace lfseg
