#include "lfseg/diffops.hpp"

#include <algorithm>
#include <cmath>

namespace lfseg {

GradientPair gradient(const ScalarField2D& field) {
  const int width = field.width();
  const int height = field.height();
  if (width < 2 || height < 2)
    throw ParameterError("gradient: field must be at least 2x2");

  GradientPair g{ScalarField2D(width, height), ScalarField2D(width, height)};
  for (int y = 0; y < height; ++y) {
    g.gx.at(0, y) = field.at(1, y) - field.at(0, y);
    for (int x = 1; x < width - 1; ++x)
      g.gx.at(x, y) = 0.5 * (field.at(x + 1, y) - field.at(x - 1, y));
    g.gx.at(width - 1, y) = field.at(width - 1, y) - field.at(width - 2, y);
  }
  for (int x = 0; x < width; ++x) {
    g.gy.at(x, 0) = field.at(x, 1) - field.at(x, 0);
    g.gy.at(x, height - 1) = field.at(x, height - 1) - field.at(x, height - 2);
  }
  for (int y = 1; y < height - 1; ++y)
    for (int x = 0; x < width; ++x)
      g.gy.at(x, y) = 0.5 * (field.at(x, y + 1) - field.at(x, y - 1));
  return g;
}

ScalarField2D curvature(const ScalarField2D& phi) {
  const int width = phi.width();
  const int height = phi.height();
  if (width < 3 || height < 3)
    throw ParameterError("curvature: field must be at least 3x3");

  GradientPair g = gradient(phi);
  ScalarField2D nx(width, height), ny(width, height);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double norm = std::sqrt(g.gx[i] * g.gx[i] + g.gy[i] * g.gy[i] + kCurvatureEta);
    nx[i] = g.gx[i] / norm;
    ny[i] = g.gy[i] / norm;
  }
  GradientPair dnx = gradient(nx);
  GradientPair dny = gradient(ny);
  ScalarField2D kappa(width, height);
  for (std::size_t i = 0; i < phi.size(); ++i) kappa[i] = dnx.gx[i] + dny.gy[i];
  return kappa;
}

ScalarField2D laplacian(const ScalarField2D& field) {
  const int width = field.width();
  const int height = field.height();
  if (width < 3 || height < 3)
    throw ParameterError("laplacian: field must be at least 3x3");

  ScalarField2D out(width, height);
  for (int y = 0; y < height; ++y) {
    const int yu = std::max(y - 1, 0);
    const int yd = std::min(y + 1, height - 1);
    for (int x = 0; x < width; ++x) {
      const int xl = std::max(x - 1, 0);
      const int xr = std::min(x + 1, width - 1);
      out.at(x, y) = field.at(xl, y) + field.at(xr, y) + field.at(x, yu) +
                     field.at(x, yd) - 4.0 * field.at(x, y);
    }
  }
  return out;
}

}  // namespace lfseg
