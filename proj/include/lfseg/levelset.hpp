#pragma once

#include <variant>
#include <vector>

#include "lfseg/field.hpp"
#include "lfseg/kernel.hpp"

namespace lfseg {

// Regularized Heaviside: 0.5*(1 + (2/pi)*atan(x/epsilon)). Strictly
// increasing, value 0.5 at x = 0.
double heaviside_eps(double x, double epsilon);

// Regularized Dirac: epsilon/(pi*(epsilon^2 + x^2)). Even, peak at x = 0.
double dirac_eps(double x, double epsilon);

// Level set function: the zero crossing of phi is the contour. The positive
// side is where heaviside_eps(phi) ~ 1; initialization puts +c0 outside the
// seed shapes and -c0 inside.
struct LevelSet {
  ScalarField2D phi;
  double epsilon = 1.0;
};

struct RectShape {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive pixel bounds
};

struct CircleShape {
  int cx = 0, cy = 0;
  double r = 0.0;
};

using Shape = std::variant<RectShape, CircleShape>;

// Seed geometry for the binary-step initialization.
struct InitSpec {
  std::vector<Shape> shapes;
  double c0 = 2.0;
};

// phi = -c0 at pixels inside any shape, +c0 elsewhere. Shapes must lie within
// the grid bounds.
LevelSet init_binary_step(int width, int height, const InitSpec& spec, double epsilon);

// mask = 1 where phi < 0 (the object side), else 0.
BinaryMask extract_mask(const LevelSet& ls);

// heaviside_eps / dirac_eps applied pointwise to phi.
ScalarField2D heaviside_field(const LevelSet& ls);
ScalarField2D dirac_field(const LevelSet& ls);

// phi replaced by its convolution with a truncated Gaussian of the given
// window size and variance; LIF uses 5x5 with variance 0.5.
LevelSet regularize_phi(const LevelSet& ls, int window = 5, double variance = 0.5);

}  // namespace lfseg
