#pragma once

#include <vector>

#include "lfseg/field.hpp"

namespace lfseg {

// Separable truncated Gaussian. weights1d has length 2*radius+1, is symmetric
// about the center, and sums to 1, so the implied 2-D kernel (outer product
// with itself) also sums to 1.
struct GaussianKernel {
  double sigma = 0.0;
  int radius = 0;
  std::vector<double> weights1d;
};

// Truncation radius ceil(2*sigma).
GaussianKernel make_gaussian_kernel(double sigma);

// Explicit truncation radius; used for the LIF 5x5 regularization kernel.
GaussianKernel make_gaussian_kernel(double sigma, int radius);

// Separable convolution (horizontal pass then vertical pass) with replicate
// boundary extension. Output has the same dimensions as the input.
ScalarField2D convolve(const ScalarField2D& field, const GaussianKernel& kernel);

}  // namespace lfseg
