#include "lfseg/levelset.hpp"

#include <cmath>
#include <numbers>

namespace lfseg {

double heaviside_eps(double x, double epsilon) {
  return 0.5 * (1.0 + (2.0 / std::numbers::pi) * std::atan(x / epsilon));
}

double dirac_eps(double x, double epsilon) {
  return epsilon / (std::numbers::pi * (epsilon * epsilon + x * x));
}

namespace {

bool contains(const Shape& shape, int x, int y) {
  if (const auto* rect = std::get_if<RectShape>(&shape))
    return x >= rect->x0 && x <= rect->x1 && y >= rect->y0 && y <= rect->y1;
  const auto& c = std::get<CircleShape>(shape);
  double dx = x - c.cx, dy = y - c.cy;
  return dx * dx + dy * dy <= c.r * c.r;
}

void validate(const Shape& shape, int width, int height) {
  if (const auto* rect = std::get_if<RectShape>(&shape)) {
    if (rect->x0 > rect->x1 || rect->y0 > rect->y1)
      throw ParameterError("init_binary_step: degenerate rectangle");
    if (rect->x0 < 0 || rect->y0 < 0 || rect->x1 >= width || rect->y1 >= height)
      throw ParameterError("init_binary_step: rectangle outside grid bounds");
    return;
  }
  const auto& c = std::get<CircleShape>(shape);
  if (c.r <= 0.0) throw ParameterError("init_binary_step: circle radius must be positive");
  if (c.cx - c.r < 0 || c.cy - c.r < 0 || c.cx + c.r >= width || c.cy + c.r >= height)
    throw ParameterError("init_binary_step: circle outside grid bounds");
}

}  // namespace

LevelSet init_binary_step(int width, int height, const InitSpec& spec, double epsilon) {
  if (!(spec.c0 > 0.0)) throw ParameterError("init_binary_step: c0 must be positive");
  if (!(epsilon > 0.0)) throw ParameterError("init_binary_step: epsilon must be positive");
  for (const Shape& s : spec.shapes) validate(s, width, height);

  LevelSet ls{ScalarField2D(width, height, spec.c0), epsilon};
  for (const Shape& s : spec.shapes)
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        if (contains(s, x, y)) ls.phi.at(x, y) = -spec.c0;
  return ls;
}

BinaryMask extract_mask(const LevelSet& ls) {
  BinaryMask mask(ls.phi.width(), ls.phi.height());
  for (std::size_t i = 0; i < ls.phi.size(); ++i) mask.values[i] = ls.phi[i] < 0.0 ? 1 : 0;
  return mask;
}

ScalarField2D heaviside_field(const LevelSet& ls) {
  ScalarField2D h(ls.phi.width(), ls.phi.height());
  for (std::size_t i = 0; i < ls.phi.size(); ++i) h[i] = heaviside_eps(ls.phi[i], ls.epsilon);
  return h;
}

ScalarField2D dirac_field(const LevelSet& ls) {
  ScalarField2D d(ls.phi.width(), ls.phi.height());
  for (std::size_t i = 0; i < ls.phi.size(); ++i) d[i] = dirac_eps(ls.phi[i], ls.epsilon);
  return d;
}

LevelSet regularize_phi(const LevelSet& ls, int window, double variance) {
  if (window < 1 || window % 2 == 0)
    throw ParameterError("regularize_phi: window must be a positive odd size");
  GaussianKernel k = make_gaussian_kernel(std::sqrt(variance), window / 2);
  return LevelSet{convolve(ls.phi, k), ls.epsilon};
}

}  // namespace lfseg
