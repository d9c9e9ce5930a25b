#pragma once

#include <vector>

#include "lfseg/field.hpp"
#include "lfseg/fitting.hpp"
#include "lfseg/kernel.hpp"
#include "lfseg/levelset.hpp"
#include "lfseg/swap.hpp"

namespace lfseg {

enum class ModelKind { rsf, lif, lgdf, mrsf };

struct ModelParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double nu = 0.001 * 255.0 * 255.0;  // length-term weight
  double mu = 1.0;                    // distance-regularization weight
  double epsilon = 1.0;
  double sigma = 3.0;
  double dt = 0.1;
  double c0 = 2.0;
  int max_iters = 500;
  Polarity polarity = Polarity::off;
  VarianceSwapRule variance_swap = VarianceSwapRule::independent;
  bool early_stop = false;
};

// Published defaults per model; RSF values are the struct initializers.
ModelParams default_params(ModelKind kind);

// Throws ParameterError on any violated positivity constraint.
void validate_params(const ModelParams& params);

struct RunResult {
  LevelSet final_phi;
  BinaryMask mask;
  std::vector<double> energy_trace;  // one entry per executed iteration
  int iterations_run = 0;
  double elapsed_seconds = 0.0;
};

// One explicit Euler step of each model. Fitting values are recomputed from
// phi and swapped per params.polarity before the update. iteration is only
// used to label a divergence error.
LevelSet rsf_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel, int iteration = 0);
LevelSet lif_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel, int iteration = 0);
LevelSet lgdf_step(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel, int iteration = 0);

// Full energies with fitting values recomputed from phi, matching what the
// corresponding step minimizes. lif_energy is the pure fitted-image misfit;
// the other two add the length and distance regularizers.
double rsf_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel);
double lif_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                  const GaussianKernel& kernel);
double lgdf_energy(const LevelSet& phi, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel);

// Frozen-fit pieces: the data energy and the data-term force with the fitting
// fields held fixed, exposed so gradient checks can difference one against
// the other. No swap is applied here; callers pass the fields they mean.
double rsf_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& fits,
                       const ModelParams& params, const GaussianKernel& kernel);
ScalarField2D rsf_data_force(const LevelSet& phi, const ScalarField2D& image,
                             const FittingPair& fits, const ModelParams& params,
                             const GaussianKernel& kernel);
double lif_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& fits);
ScalarField2D lif_data_force(const LevelSet& phi, const ScalarField2D& image,
                             const FittingPair& fits);
double lgdf_data_energy(const LevelSet& phi, const ScalarField2D& image, const FittingPair& means,
                        const FittingPair& variances, const ModelParams& params,
                        const GaussianKernel& kernel);
ScalarField2D lgdf_data_force(const LevelSet& phi, const ScalarField2D& image,
                              const FittingPair& means, const FittingPair& variances,
                              const ModelParams& params, const GaussianKernel& kernel);

// nu * sum(dirac(phi)*|grad phi|) + mu * sum(0.5*(|grad phi| - 1)^2).
double regularizer_energy(const LevelSet& phi, double nu, double mu);

// Solver loop: initialize via init_binary_step (c0 and epsilon from params),
// run max_iters steps recording the pre-step energy each iteration. With
// early_stop, exits once the mask is unchanged for 10 consecutive iterations.
// Divergence surfaces as DivergenceError carrying the iteration index.
RunResult run(ModelKind model, const ScalarField2D& image, const InitSpec& init,
              const ModelParams& params);

}  // namespace lfseg
