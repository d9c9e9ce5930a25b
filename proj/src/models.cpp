#include "lfseg/models.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

#include "lfseg/diffops.hpp"
#include "lfseg/errors.hpp"

namespace lfseg {

ModelParams default_params(ModelKind kind) {
  ModelParams p;  // RSF defaults
  switch (kind) {
    case ModelKind::rsf:
      break;
    case ModelKind::lif:
      p.nu = 0.0;
      p.mu = 0.0;
      p.dt = 0.01;
      break;
    case ModelKind::lgdf:
      p.mu = 0.01;
      p.nu = 1.0;
      p.dt = 1.0;
      break;
    case ModelKind::mrsf:
      // Two coupled fronts tolerate a stronger length term.
      p.nu = 0.003 * 255.0 * 255.0;
      break;
  }
  return p;
}

void validate_params(const ModelParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ParameterError(std::string("ModelParams: ") + name + " must be positive");
  };
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0))
      throw ParameterError(std::string("ModelParams: ") + name + " must be nonnegative");
  };
  positive(p.lambda1, "lambda1");
  positive(p.lambda2, "lambda2");
  nonneg(p.nu, "nu");
  nonneg(p.mu, "mu");
  positive(p.epsilon, "epsilon");
  positive(p.sigma, "sigma");
  positive(p.dt, "dt");
  positive(p.c0, "c0");
  if (p.max_iters < 0) throw ParameterError("ModelParams: max_iters must be nonnegative");
}

namespace {

void check_dims(const LevelSet& ls, const ScalarField2D& image, const char* op) {
  if (!ls.phi.same_shape(image))
    throw ParameterError(std::string(op) + ": phi and image dimensions differ");
}

LevelSet advect(const LevelSet& ls, const ScalarField2D& rate, double dt, int iteration) {
  LevelSet next = ls;
  for (std::size_t i = 0; i < next.phi.size(); ++i) next.phi[i] += dt * rate[i];
  if (!next.phi.all_finite()) {
    std::ostringstream msg;
    msg << "curve evolution diverged at iteration " << iteration
        << ": non-finite level set value";
    throw DivergenceError(msg.str(), iteration);
  }
  return next;
}

// nu*dirac*curvature + mu*(laplacian - curvature), skipped entirely when both
// weights are zero so tiny grids stay valid for data-term-only experiments.
void add_regularizer_rate(ScalarField2D& rate, const LevelSet& ls, const ScalarField2D& delta,
                          double nu, double mu) {
  if (nu == 0.0 && mu == 0.0) return;
  ScalarField2D kappa = curvature(ls.phi);
  ScalarField2D lap = laplacian(ls.phi);
  for (std::size_t i = 0; i < rate.size(); ++i)
    rate[i] += nu * delta[i] * kappa[i] + mu * (lap[i] - kappa[i]);
}

double weighted_term_sum(const ScalarField2D& h, const EnergyTerms& et, double lambda1,
                         double lambda2) {
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    sum += lambda1 * h[i] * et.e1[i] + lambda2 * (1.0 - h[i]) * et.e2[i];
  return sum;
}

ScalarField2D term_difference_force(const ScalarField2D& delta, const EnergyTerms& et,
                                    double lambda1, double lambda2) {
  ScalarField2D force(delta.width(), delta.height());
  for (std::size_t i = 0; i < force.size(); ++i)
    force[i] = -delta[i] * (lambda1 * et.e1[i] - lambda2 * et.e2[i]);
  return force;
}

struct StepOutcome {
  LevelSet next;
  double energy;
};

StepOutcome rsf_iterate(const LevelSet& ls, const ScalarField2D& image, const ModelParams& p,
                        const GaussianKernel& kernel, int iteration) {
  ScalarField2D h = heaviside_field(ls);
  ScalarField2D delta = dirac_field(ls);
  FittingPair fits = swap_pair(fit_means(image, h, kernel), p.polarity);
  EnergyTerms et = e_terms(image, fits, kernel);
  double energy =
      weighted_term_sum(h, et, p.lambda1, p.lambda2) + regularizer_energy(ls, p.nu, p.mu);
  ScalarField2D rate = term_difference_force(delta, et, p.lambda1, p.lambda2);
  add_regularizer_rate(rate, ls, delta, p.nu, p.mu);
  return {advect(ls, rate, p.dt, iteration), energy};
}

StepOutcome lif_iterate(const LevelSet& ls, const ScalarField2D& image, const ModelParams& p,
                        const GaussianKernel& kernel, int iteration) {
  ScalarField2D h = heaviside_field(ls);
  ScalarField2D delta = dirac_field(ls);
  FittingPair fits = swap_pair(fit_means(image, h, kernel), p.polarity);
  double energy = 0.0;
  ScalarField2D rate(image.width(), image.height());
  for (std::size_t i = 0; i < rate.size(); ++i) {
    double fitted = fits.side1[i] * h[i] + fits.side2[i] * (1.0 - h[i]);
    double misfit = image[i] - fitted;
    energy += 0.5 * misfit * misfit;
    rate[i] = delta[i] * misfit * (fits.side1[i] - fits.side2[i]);
  }
  // advect checks finiteness; the smoothing that follows preserves it.
  LevelSet next = regularize_phi(advect(ls, rate, p.dt, iteration));
  return {std::move(next), energy};
}

StepOutcome lgdf_iterate(const LevelSet& ls, const ScalarField2D& image, const ModelParams& p,
                         const GaussianKernel& kernel, int iteration) {
  ScalarField2D h = heaviside_field(ls);
  ScalarField2D delta = dirac_field(ls);
  FittingPair means = fit_means(image, h, kernel);
  FittingPair variances = fit_variances(image, h, means, kernel);
  auto [swapped_means, swapped_vars] = swap_lgdf(std::move(means), std::move(variances),
                                                 p.polarity, p.variance_swap);
  EnergyTerms et = lgdf_e_terms(image, swapped_means, swapped_vars, kernel);
  double energy =
      weighted_term_sum(h, et, p.lambda1, p.lambda2) + regularizer_energy(ls, p.nu, p.mu);
  ScalarField2D rate = term_difference_force(delta, et, p.lambda1, p.lambda2);
  add_regularizer_rate(rate, ls, delta, p.nu, p.mu);
  return {advect(ls, rate, p.dt, iteration), energy};
}

StepOutcome iterate(ModelKind model, const LevelSet& ls, const ScalarField2D& image,
                    const ModelParams& p, const GaussianKernel& kernel, int iteration) {
  switch (model) {
    case ModelKind::rsf:
      return rsf_iterate(ls, image, p, kernel, iteration);
    case ModelKind::lif:
      return lif_iterate(ls, image, p, kernel, iteration);
    case ModelKind::lgdf:
      return lgdf_iterate(ls, image, p, kernel, iteration);
    default:
      throw ParameterError("run: multiphase model is driven by run_mrsf");
  }
}

}  // namespace

LevelSet rsf_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel, int iteration) {
  check_dims(phi, image, "rsf_step");
  return rsf_iterate(phi, image, params, kernel, iteration).next;
}

LevelSet lif_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel, int iteration) {
  check_dims(phi, image, "lif_step");
  return lif_iterate(phi, image, params, kernel, iteration).next;
}

LevelSet lgdf_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel, int iteration) {
  check_dims(phi, image, "lgdf_step");
  return lgdf_iterate(phi, image, params, kernel, iteration).next;
}

double rsf_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel) {
  check_dims(phi, image, "rsf_energy");
  ScalarField2D h = heaviside_field(phi);
  FittingPair fits = swap_pair(fit_means(image, h, kernel), params.polarity);
  EnergyTerms et = e_terms(image, fits, kernel);
  return weighted_term_sum(h, et, params.lambda1, params.lambda2) +
         regularizer_energy(phi, params.nu, params.mu);
}

double lif_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel) {
  check_dims(phi, image, "lif_energy");
  ScalarField2D h = heaviside_field(phi);
  FittingPair fits = swap_pair(fit_means(image, h, kernel), params.polarity);
  return lif_data_energy(phi, image, fits);
}

double lgdf_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel) {
  check_dims(phi, image, "lgdf_energy");
  ScalarField2D h = heaviside_field(phi);
  FittingPair means = fit_means(image, h, kernel);
  FittingPair variances = fit_variances(image, h, means, kernel);
  auto [swapped_means, swapped_vars] = swap_lgdf(std::move(means), std::move(variances),
                                                 params.polarity, params.variance_swap);
  return lgdf_data_energy(phi, image, swapped_means, swapped_vars, params, kernel) +
         regularizer_energy(phi, params.nu, params.mu);
}

double rsf_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& fits,
                       const ModelParams& params, const GaussianKernel& kernel) {
  check_dims(phi, image, "rsf_data_energy");
  ScalarField2D h = heaviside_field(phi);
  EnergyTerms et = e_terms(image, fits, kernel);
  return weighted_term_sum(h, et, params.lambda1, params.lambda2);
}

ScalarField2D rsf_data_force(const LevelSet& phi, const ScalarField2D& image,
                             const FittingPair& fits, const ModelParams& params,
                             const GaussianKernel& kernel) {
  check_dims(phi, image, "rsf_data_force");
  EnergyTerms et = e_terms(image, fits, kernel);
  return term_difference_force(dirac_field(phi), et, params.lambda1, params.lambda2);
}

double lif_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& fits) {
  check_dims(phi, image, "lif_data_energy");
  ScalarField2D h = heaviside_field(phi);
  double sum = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    double fitted = fits.side1[i] * h[i] + fits.side2[i] * (1.0 - h[i]);
    double misfit = image[i] - fitted;
    sum += 0.5 * misfit * misfit;
  }
  return sum;
}

ScalarField2D lif_data_force(const LevelSet& phi, const ScalarField2D& image,
                             const FittingPair& fits) {
  check_dims(phi, image, "lif_data_force");
  ScalarField2D h = heaviside_field(phi);
  ScalarField2D delta = dirac_field(phi);
  ScalarField2D force(image.width(), image.height());
  for (std::size_t i = 0; i < force.size(); ++i) {
    double fitted = fits.side1[i] * h[i] + fits.side2[i] * (1.0 - h[i]);
    force[i] = delta[i] * (image[i] - fitted) * (fits.side1[i] - fits.side2[i]);
  }
  return force;
}

double lgdf_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& means,
                        const FittingPair& variances, const ModelParams& params,
                        const GaussianKernel& kernel) {
  check_dims(phi, image, "lgdf_data_energy");
  ScalarField2D h = heaviside_field(phi);
  EnergyTerms et = lgdf_e_terms(image, means, variances, kernel);
  return weighted_term_sum(h, et, params.lambda1, params.lambda2);
}

ScalarField2D lgdf_data_force(const LevelSet& phi, const ScalarField2D& image,
                              const FittingPair& means, const FittingPair& variances,
                              const ModelParams& params, const GaussianKernel& kernel) {
  check_dims(phi, image, "lgdf_data_force");
  EnergyTerms et = lgdf_e_terms(image, means, variances, kernel);
  return term_difference_force(dirac_field(phi), et, params.lambda1, params.lambda2);
}

double regularizer_energy(const LevelSet& phi, double nu, double mu) {
  if (nu == 0.0 && mu == 0.0) return 0.0;
  GradientPair g = gradient(phi.phi);
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    double mag = std::sqrt(g.gx[i] * g.gx[i] + g.gy[i] * g.gy[i]);
    double excess = mag - 1.0;
    sum += nu * dirac_eps(phi.phi[i], phi.epsilon) * mag + mu * 0.5 * excess * excess;
  }
  return sum;
}

RunResult run(ModelKind model, const ScalarField2D& image, const InitSpec& init,
              const ModelParams& params) {
  validate_params(params);
  if (model == ModelKind::mrsf) throw ParameterError("run: multiphase model is driven by run_mrsf");

  InitSpec seeded = init;
  seeded.c0 = params.c0;
  LevelSet ls = init_binary_step(image.width(), image.height(), seeded, params.epsilon);
  GaussianKernel kernel = make_gaussian_kernel(params.sigma);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(params.max_iters));
  BinaryMask prev_mask = extract_mask(ls);
  int unchanged = 0;

  for (int iter = 0; iter < params.max_iters; ++iter) {
    StepOutcome out = iterate(model, ls, image, params, kernel, iter);
    trace.push_back(out.energy);
    ls = std::move(out.next);
    if (params.early_stop) {
      BinaryMask mask = extract_mask(ls);
      unchanged = (mask == prev_mask) ? unchanged + 1 : 0;
      prev_mask = std::move(mask);
      if (unchanged >= 10) break;
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  RunResult result{std::move(ls), BinaryMask(1, 1), std::move(trace), 0,
                   std::chrono::duration<double>(t1 - t0).count()};
  result.mask = extract_mask(result.final_phi);
  result.iterations_run = static_cast<int>(result.energy_trace.size());
  return result;
}

}  // namespace lfseg
