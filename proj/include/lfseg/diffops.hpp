#pragma once

#include "lfseg/field.hpp"

namespace lfseg {

struct GradientPair {
  ScalarField2D gx;
  ScalarField2D gy;
};

// Central differences in the interior, one-sided at the boundary rows/columns.
GradientPair gradient(const ScalarField2D& field);

// div(grad(phi)/|grad(phi)|) with |grad(phi)| regularized as
// sqrt(gx^2 + gy^2 + eta), eta = 1e-10.
ScalarField2D curvature(const ScalarField2D& phi);

// 5-point stencil with replicate boundaries.
ScalarField2D laplacian(const ScalarField2D& field);

inline constexpr double kCurvatureEta = 1e-10;

}  // namespace lfseg
