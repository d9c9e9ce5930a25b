#include "lfseg/multiphase.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "lfseg/diffops.hpp"
#include "lfseg/errors.hpp"
#include "lfseg/fitting.hpp"

namespace lfseg {

namespace {

void check_dims(const PhaseSet& phases, const ScalarField2D& image, const char* op) {
  if (!phases.phi_a.phi.same_shape(image) || !phases.phi_b.phi.same_shape(image))
    throw ParameterError(std::string(op) + ": level set and image dimensions differ");
}

struct PhaseTerms {
  ScalarField2D e1, e2, e3, e4;
};

ScalarField2D single_e_term(const ScalarField2D& image, const ScalarField2D& f,
                            const GaussianKernel& kernel, const ScalarField2D& conv_one) {
  ScalarField2D f2(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) f2[i] = f[i] * f[i];
  ScalarField2D conv_f = convolve(f, kernel);
  ScalarField2D conv_f2 = convolve(f2, kernel);
  ScalarField2D e(f.width(), f.height());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = image[i] * image[i] * conv_one[i] - 2.0 * image[i] * conv_f[i] + conv_f2[i];
  return e;
}

PhaseTerms phase_e_terms(const ScalarField2D& image, const PhaseFits& fits,
                         const GaussianKernel& kernel) {
  ScalarField2D ones(image.width(), image.height(), 1.0);
  ScalarField2D conv_one = convolve(ones, kernel);
  return {single_e_term(image, fits.f1, kernel, conv_one),
          single_e_term(image, fits.f2, kernel, conv_one),
          single_e_term(image, fits.f3, kernel, conv_one),
          single_e_term(image, fits.f4, kernel, conv_one)};
}

double data_energy_from_terms(const Memberships& m, const PhaseTerms& e) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.m1.size(); ++i)
    sum += m.m1[i] * e.e1[i] + m.m2[i] * e.e2[i] + m.m3[i] * e.e3[i] + m.m4[i] * e.e4[i];
  return sum;
}

// force on phi_a = -delta_a * [(e1-e3)*Hb + (e2-e4)*(1-Hb)]; phi_b symmetric
// with Ha and the (e1-e2)/(e3-e4) pairing.
ScalarField2D force_a_from_terms(const ScalarField2D& delta_a, const ScalarField2D& hb,
                                 const PhaseTerms& e) {
  ScalarField2D force(delta_a.width(), delta_a.height());
  for (std::size_t i = 0; i < force.size(); ++i)
    force[i] = -delta_a[i] *
               ((e.e1[i] - e.e3[i]) * hb[i] + (e.e2[i] - e.e4[i]) * (1.0 - hb[i]));
  return force;
}

ScalarField2D force_b_from_terms(const ScalarField2D& delta_b, const ScalarField2D& ha,
                                 const PhaseTerms& e) {
  ScalarField2D force(delta_b.width(), delta_b.height());
  for (std::size_t i = 0; i < force.size(); ++i)
    force[i] = -delta_b[i] *
               ((e.e1[i] - e.e2[i]) * ha[i] + (e.e3[i] - e.e4[i]) * (1.0 - ha[i]));
  return force;
}

void add_regularizer_rate(ScalarField2D& rate, const LevelSet& ls, const ScalarField2D& delta,
                          double nu, double mu) {
  if (nu == 0.0 && mu == 0.0) return;
  ScalarField2D kappa = curvature(ls.phi);
  ScalarField2D lap = laplacian(ls.phi);
  for (std::size_t i = 0; i < rate.size(); ++i)
    rate[i] += nu * delta[i] * kappa[i] + mu * (lap[i] - kappa[i]);
}

LevelSet advect(const LevelSet& ls, const ScalarField2D& rate, double dt, int iteration,
                const char* which) {
  LevelSet next = ls;
  for (std::size_t i = 0; i < next.phi.size(); ++i) next.phi[i] += dt * rate[i];
  if (!next.phi.all_finite()) {
    std::ostringstream msg;
    msg << "curve evolution diverged at iteration " << iteration << ": non-finite " << which;
    throw DivergenceError(msg.str(), iteration);
  }
  return next;
}

struct StepOutcome {
  PhaseSet next;
  double energy;
};

StepOutcome mrsf_iterate(const PhaseSet& phases, const ScalarField2D& image,
                         const ModelParams& p, const GaussianKernel& kernel, int iteration) {
  ScalarField2D ha = heaviside_field(phases.phi_a);
  ScalarField2D hb = heaviside_field(phases.phi_b);
  ScalarField2D delta_a = dirac_field(phases.phi_a);
  ScalarField2D delta_b = dirac_field(phases.phi_b);

  Memberships m = memberships(phases);
  PhaseFits fits = mrsf_swap(mrsf_fit(image, phases, kernel), p.polarity);
  PhaseTerms e = phase_e_terms(image, fits, kernel);

  double energy = data_energy_from_terms(m, e) +
                  regularizer_energy(phases.phi_a, p.nu, p.mu) +
                  regularizer_energy(phases.phi_b, p.nu, p.mu);

  ScalarField2D rate_a = force_a_from_terms(delta_a, hb, e);
  add_regularizer_rate(rate_a, phases.phi_a, delta_a, p.nu, p.mu);
  ScalarField2D rate_b = force_b_from_terms(delta_b, ha, e);
  add_regularizer_rate(rate_b, phases.phi_b, delta_b, p.nu, p.mu);

  PhaseSet next{advect(phases.phi_a, rate_a, p.dt, iteration, "phi_a"),
                advect(phases.phi_b, rate_b, p.dt, iteration, "phi_b")};
  return {std::move(next), energy};
}

}  // namespace

Memberships memberships(const PhaseSet& phases) {
  ScalarField2D ha = heaviside_field(phases.phi_a);
  ScalarField2D hb = heaviside_field(phases.phi_b);
  Memberships m{ScalarField2D(ha.width(), ha.height()), ScalarField2D(ha.width(), ha.height()),
                ScalarField2D(ha.width(), ha.height()), ScalarField2D(ha.width(), ha.height())};
  for (std::size_t i = 0; i < ha.size(); ++i) {
    m.m1[i] = ha[i] * hb[i];
    m.m2[i] = ha[i] * (1.0 - hb[i]);
    m.m3[i] = (1.0 - ha[i]) * hb[i];
    m.m4[i] = (1.0 - ha[i]) * (1.0 - hb[i]);
  }
  return m;
}

PhaseFits mrsf_fit(const ScalarField2D& image, const PhaseSet& phases,
                   const GaussianKernel& kernel) {
  check_dims(phases, image, "mrsf_fit");
  Memberships m = memberships(phases);
  auto fit_one = [&](const ScalarField2D& weight) {
    ScalarField2D wi(weight.width(), weight.height());
    for (std::size_t i = 0; i < wi.size(); ++i) wi[i] = weight[i] * image[i];
    ScalarField2D num = convolve(wi, kernel);
    ScalarField2D den = convolve(weight, kernel);
    ScalarField2D f(weight.width(), weight.height());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = num[i] / std::max(den[i], kWeightFloor);
    return f;
  };
  return {fit_one(m.m1), fit_one(m.m2), fit_one(m.m3), fit_one(m.m4)};
}

PhaseFits mrsf_swap(PhaseFits fits, Polarity polarity) {
  if (polarity == Polarity::off) return fits;
  for (std::size_t i = 0; i < fits.f1.size(); ++i) {
    std::array<double, 4> v{fits.f1[i], fits.f2[i], fits.f3[i], fits.f4[i]};
    std::sort(v.begin(), v.end());
    if (polarity == Polarity::dark_object) std::reverse(v.begin(), v.end());
    fits.f1[i] = v[0];
    fits.f2[i] = v[1];
    fits.f3[i] = v[2];
    fits.f4[i] = v[3];
  }
  return fits;
}

PhaseSet mrsf_step(const PhaseSet& phases, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel, int iteration) {
  check_dims(phases, image, "mrsf_step");
  return mrsf_iterate(phases, image, params, kernel, iteration).next;
}

double mrsf_energy(const PhaseSet& phases, const ScalarField2D& image, const ModelParams& params,
                   const GaussianKernel& kernel) {
  check_dims(phases, image, "mrsf_energy");
  PhaseFits fits = mrsf_swap(mrsf_fit(image, phases, kernel), params.polarity);
  return mrsf_data_energy(phases, image, fits, kernel) +
         regularizer_energy(phases.phi_a, params.nu, params.mu) +
         regularizer_energy(phases.phi_b, params.nu, params.mu);
}

double mrsf_data_energy(const PhaseSet& phases, const ScalarField2D& image, const PhaseFits& fits,
                        const GaussianKernel& kernel) {
  check_dims(phases, image, "mrsf_data_energy");
  return data_energy_from_terms(memberships(phases), phase_e_terms(image, fits, kernel));
}

ScalarField2D mrsf_data_force_a(const PhaseSet& phases, const ScalarField2D& image,
                                const PhaseFits& fits, const GaussianKernel& kernel) {
  check_dims(phases, image, "mrsf_data_force_a");
  return force_a_from_terms(dirac_field(phases.phi_a), heaviside_field(phases.phi_b),
                            phase_e_terms(image, fits, kernel));
}

ScalarField2D mrsf_data_force_b(const PhaseSet& phases, const ScalarField2D& image,
                                const PhaseFits& fits, const GaussianKernel& kernel) {
  check_dims(phases, image, "mrsf_data_force_b");
  return force_b_from_terms(dirac_field(phases.phi_b), heaviside_field(phases.phi_a),
                            phase_e_terms(image, fits, kernel));
}

std::array<BinaryMask, 4> phase_masks(const PhaseSet& phases) {
  int w = phases.phi_a.phi.width(), h = phases.phi_a.phi.height();
  std::array<BinaryMask, 4> masks{BinaryMask(w, h), BinaryMask(w, h), BinaryMask(w, h),
                                  BinaryMask(w, h)};
  for (std::size_t i = 0; i < phases.phi_a.phi.size(); ++i) {
    bool in_a = phases.phi_a.phi[i] < 0.0;
    bool in_b = phases.phi_b.phi[i] < 0.0;
    // Mask order follows the membership products: M2 = Ha*(1-Hb) peaks when
    // phi_a > 0 and phi_b < 0, so index 1 is the in-b-only phase.
    int phase = in_a ? (in_b ? 3 : 2) : (in_b ? 1 : 0);
    masks[static_cast<std::size_t>(phase)].values[i] = 1;
  }
  return masks;
}

MrsfResult run_mrsf(const ScalarField2D& image, const MrsfInit& init, const ModelParams& params) {
  validate_params(params);

  PhaseSet phases = [&] {
    if (const auto* seeds = std::get_if<std::pair<InitSpec, InitSpec>>(&init)) {
      InitSpec a = seeds->first, b = seeds->second;
      a.c0 = params.c0;
      b.c0 = params.c0;
      return PhaseSet{init_binary_step(image.width(), image.height(), a, params.epsilon),
                      init_binary_step(image.width(), image.height(), b, params.epsilon)};
    }
    const auto& thr = std::get<ThresholdInit>(init);
    LevelSet a{ScalarField2D(image.width(), image.height()), params.epsilon};
    LevelSet b{ScalarField2D(image.width(), image.height()), params.epsilon};
    for (std::size_t i = 0; i < image.size(); ++i) {
      a.phi[i] = image[i] >= thr.t_a ? -params.c0 : params.c0;
      b.phi[i] = image[i] >= thr.t_b ? -params.c0 : params.c0;
    }
    return PhaseSet{std::move(a), std::move(b)};
  }();

  GaussianKernel kernel = make_gaussian_kernel(params.sigma);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(params.max_iters));
  std::array<BinaryMask, 4> prev_masks = phase_masks(phases);
  int unchanged = 0;

  for (int iter = 0; iter < params.max_iters; ++iter) {
    StepOutcome out = mrsf_iterate(phases, image, params, kernel, iter);
    trace.push_back(out.energy);
    phases = std::move(out.next);
    if (params.early_stop) {
      std::array<BinaryMask, 4> masks = phase_masks(phases);
      unchanged = (masks == prev_masks) ? unchanged + 1 : 0;
      prev_masks = std::move(masks);
      if (unchanged >= 10) break;
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  MrsfResult result{std::move(phases),
                    {},
                    std::move(trace),
                    0,
                    std::chrono::duration<double>(t1 - t0).count()};
  result.masks = phase_masks(result.final_phases);
  result.iterations_run = static_cast<int>(result.energy_trace.size());
  return result;
}

}  // namespace lfseg
