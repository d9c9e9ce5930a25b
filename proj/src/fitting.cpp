#include "lfseg/fitting.hpp"

#include <algorithm>
#include <cmath>

namespace lfseg {

namespace {

void check_dims(const ScalarField2D& image, const ScalarField2D& h, const char* op) {
  if (!image.same_shape(h))
    throw ParameterError(std::string(op) + ": image and weight dimensions differ");
}

ScalarField2D pointwise_product(const ScalarField2D& a, const ScalarField2D& b) {
  ScalarField2D out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// One side of Eq.-3-style weighted means: conv(w*I)/conv(w).
ScalarField2D weighted_mean(const ScalarField2D& image, const ScalarField2D& w,
                            const GaussianKernel& kernel) {
  ScalarField2D num = convolve(pointwise_product(w, image), kernel);
  ScalarField2D den = convolve(w, kernel);
  ScalarField2D out(image.width(), image.height());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = num[i] / std::max(den[i], kWeightFloor);
  return out;
}

ScalarField2D weighted_variance(const ScalarField2D& image, const ScalarField2D& w,
                                const ScalarField2D& mean, const GaussianKernel& kernel) {
  ScalarField2D conv_w = convolve(w, kernel);
  ScalarField2D conv_wi = convolve(pointwise_product(w, image), kernel);
  ScalarField2D conv_wii = convolve(pointwise_product(pointwise_product(w, image), image), kernel);
  ScalarField2D out(image.width(), image.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double u = mean[i];
    double var = (conv_wii[i] - 2.0 * u * conv_wi[i] + u * u * conv_w[i]) /
                 std::max(conv_w[i], kWeightFloor);
    out[i] = std::max(var, kVarianceFloor);
  }
  return out;
}

}  // namespace

FittingPair fit_means(const ScalarField2D& image, const ScalarField2D& h,
                      const GaussianKernel& kernel) {
  check_dims(image, h, "fit_means");
  ScalarField2D one_minus_h(h.width(), h.height());
  for (std::size_t i = 0; i < h.size(); ++i) one_minus_h[i] = 1.0 - h[i];
  return FittingPair{weighted_mean(image, h, kernel),
                     weighted_mean(image, one_minus_h, kernel), FitKind::means};
}

FittingPair fit_variances(const ScalarField2D& image, const ScalarField2D& h,
                          const FittingPair& means, const GaussianKernel& kernel) {
  check_dims(image, h, "fit_variances");
  if (means.kind != FitKind::means)
    throw ParameterError("fit_variances: means pair expected");
  ScalarField2D one_minus_h(h.width(), h.height());
  for (std::size_t i = 0; i < h.size(); ++i) one_minus_h[i] = 1.0 - h[i];
  return FittingPair{weighted_variance(image, h, means.side1, kernel),
                     weighted_variance(image, one_minus_h, means.side2, kernel),
                     FitKind::variances};
}

EnergyTerms e_terms(const ScalarField2D& image, const FittingPair& means,
                    const GaussianKernel& kernel) {
  check_dims(image, means.side1, "e_terms");
  ScalarField2D ones(image.width(), image.height(), 1.0);
  ScalarField2D conv_one = convolve(ones, kernel);

  EnergyTerms out;
  for (const ScalarField2D* f : {&means.side1, &means.side2}) {
    ScalarField2D conv_f = convolve(*f, kernel);
    ScalarField2D conv_f2 = convolve(pointwise_product(*f, *f), kernel);
    ScalarField2D e(image.width(), image.height());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = image[i] * image[i] * conv_one[i] - 2.0 * image[i] * conv_f[i] + conv_f2[i];
    (f == &means.side1 ? out.e1 : out.e2) = std::move(e);
  }
  return out;
}

EnergyTerms lgdf_e_terms(const ScalarField2D& image, const FittingPair& means,
                         const FittingPair& variances, const GaussianKernel& kernel) {
  check_dims(image, means.side1, "lgdf_e_terms");
  if (variances.kind != FitKind::variances)
    throw ParameterError("lgdf_e_terms: variances pair expected");

  EnergyTerms out;
  for (int side = 0; side < 2; ++side) {
    const ScalarField2D& u = side == 0 ? means.side1 : means.side2;
    const ScalarField2D& var = side == 0 ? variances.side1 : variances.side2;
    ScalarField2D a(image.width(), image.height());  // log sigma + u^2/(2 sigma^2)
    ScalarField2D b(image.width(), image.height());  // u / sigma^2
    ScalarField2D c(image.width(), image.height());  // 1 / (2 sigma^2)
    for (std::size_t i = 0; i < a.size(); ++i) {
      double v = var[i];
      a[i] = 0.5 * std::log(v) + u[i] * u[i] / (2.0 * v);
      b[i] = u[i] / v;
      c[i] = 1.0 / (2.0 * v);
    }
    ScalarField2D conv_a = convolve(a, kernel);
    ScalarField2D conv_b = convolve(b, kernel);
    ScalarField2D conv_c = convolve(c, kernel);
    ScalarField2D e(image.width(), image.height());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = conv_a[i] - image[i] * conv_b[i] + image[i] * image[i] * conv_c[i];
    (side == 0 ? out.e1 : out.e2) = std::move(e);
  }
  return out;
}

}  // namespace lfseg
