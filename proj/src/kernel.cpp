#include "lfseg/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace lfseg {

GaussianKernel make_gaussian_kernel(double sigma) {
  return make_gaussian_kernel(sigma, static_cast<int>(std::ceil(2.0 * sigma)));
}

GaussianKernel make_gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0))
    throw ParameterError("make_gaussian_kernel: sigma must be positive");
  if (radius < 0)
    throw ParameterError("make_gaussian_kernel: radius must be nonnegative");

  GaussianKernel k;
  k.sigma = sigma;
  k.radius = radius;
  k.weights1d.resize(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k.weights1d[i + radius] = w;
    sum += w;
  }
  for (double& w : k.weights1d) w /= sum;
  return k;
}

namespace {

// One separable pass along x. Replicate extension via index clamping, with a
// clamp-free fast path for interior output pixels. Per-pixel summation order
// is fixed (taps left to right), so results do not depend on traversal order.
void convolve_rows(const ScalarField2D& in, const std::vector<double>& w, int radius,
                   ScalarField2D& out) {
  const int width = in.width();
  const int height = in.height();
  for (int y = 0; y < height; ++y) {
    const double* row = in.data() + static_cast<std::size_t>(y) * width;
    double* orow = out.data() + static_cast<std::size_t>(y) * width;
    const int lo = std::min(radius, width);
    const int hi = std::max(lo, width - radius);
    for (int x = 0; x < lo; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t)
        acc += w[t + radius] * row[std::clamp(x + t, 0, width - 1)];
      orow[x] = acc;
    }
    for (int x = lo; x < hi; ++x) {
      double acc = 0.0;
      const double* p = row + x - radius;
      for (int t = 0; t <= 2 * radius; ++t) acc += w[t] * p[t];
      orow[x] = acc;
    }
    for (int x = hi; x < width; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t)
        acc += w[t + radius] * row[std::clamp(x + t, 0, width - 1)];
      orow[x] = acc;
    }
  }
}

}  // namespace

ScalarField2D convolve(const ScalarField2D& field, const GaussianKernel& kernel) {
  if (field.width() < 1 || field.height() < 1)
    throw ParameterError("convolve: field must be at least 1x1");

  const int radius = kernel.radius;
  const int width = field.width();
  const int height = field.height();

  ScalarField2D tmp(width, height);
  convolve_rows(field, kernel.weights1d, radius, tmp);

  // Vertical pass: same per-column clamp, iterated row-wise for locality.
  ScalarField2D out(width, height);
  const std::vector<double>& w = kernel.weights1d;
  for (int y = 0; y < height; ++y) {
    double* orow = out.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) orow[x] = 0.0;
    for (int t = -radius; t <= radius; ++t) {
      const int ys = std::clamp(y + t, 0, height - 1);
      const double wt = w[t + radius];
      const double* srow = tmp.data() + static_cast<std::size_t>(ys) * width;
      for (int x = 0; x < width; ++x) orow[x] += wt * srow[x];
    }
  }
  return out;
}

}  // namespace lfseg
