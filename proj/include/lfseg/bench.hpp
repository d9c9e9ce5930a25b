#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfseg/field.hpp"
#include "lfseg/models.hpp"
#include "lfseg/multiphase.hpp"

namespace lfseg {

enum class Scene { two_blob_inhomogeneous, vessel_like, four_region };

// Deterministic synthetic instance: piecewise-constant scene, additive linear
// intensity ramp across the width, seeded Gaussian noise, output clamped to
// [0,255]. levels are region intensities; two_blob_inhomogeneous and
// vessel_like take {object, background}, four_region takes {background, disc1,
// disc2, disc3} and reports regions in that order.
struct SyntheticSpec {
  Scene scene = Scene::two_blob_inhomogeneous;
  int width = 128;
  int height = 128;
  std::vector<double> levels;
  double bias = 0.0;         // edge-to-edge ramp amplitude
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
};

// Ground truth is the noise-free object support: one mask for the two-phase
// scenes, four region masks for four_region.
struct SyntheticImage {
  ScalarField2D image;
  std::vector<BinaryMask> truths;
};

SyntheticImage generate(const SyntheticSpec& spec);

// Fixed instances and initializations used by the acceptance experiments.
SyntheticSpec standard_two_blob();
SyntheticSpec standard_vessel();
SyntheticSpec standard_four_region();

struct NamedInit {
  std::string name;
  InitSpec init;
};
std::vector<NamedInit> standard_two_blob_inits();

struct NamedMrsfInit {
  std::string name;
  MrsfInit init;
};
std::vector<NamedMrsfInit> standard_four_region_inits();

// 2*|A&B| / (|A|+|B|); 1 when both masks are empty.
double dsc(const BinaryMask& a, const BinaryMask& b);

// One suite row per run. For four-phase rows dsc_value is the minimum
// per-region DSC and region_dsc holds the per-region values (intensity-sorted
// region order). error is nonempty when the run threw; other rows proceed.
// masks and energy_trace carry the run artifacts for writers (one mask for
// two-phase rows, four for four-phase rows; empty on error).
struct SuiteRow {
  std::string init_name;
  Polarity polarity = Polarity::off;
  double sigma = 0.0;
  double dsc_value = 0.0;
  std::vector<double> region_dsc;
  int iterations = 0;
  double elapsed_seconds = 0.0;
  std::string error;
  std::vector<BinaryMask> masks;
  std::vector<double> energy_trace;
};

// One run per init per variant {off, params.polarity}.
std::vector<SuiteRow> robustness_suite(ModelKind model, const ScalarField2D& image,
                                       const BinaryMask& truth,
                                       const std::vector<NamedInit>& inits,
                                       const ModelParams& params);

std::vector<SuiteRow> robustness_suite_mrsf(const ScalarField2D& image,
                                            const std::vector<BinaryMask>& truths,
                                            const std::vector<NamedMrsfInit>& inits,
                                            const ModelParams& params);

// One run per sigma per variant {off, params.polarity}.
std::vector<SuiteRow> sigma_sweep(ModelKind model, const ScalarField2D& image,
                                  const BinaryMask& truth, const std::vector<double>& sigmas,
                                  const InitSpec& init, const ModelParams& params);

// Wall-clock comparison at a fixed iteration budget; early stop is disabled so
// both variants run exactly iters iterations.
struct TimingResult {
  double t_original = 0.0;
  double t_improved = 0.0;
  double ratio = 0.0;
};
TimingResult timing_compare(ModelKind model, const ScalarField2D& image, const InitSpec& init,
                            const ModelParams& params, int iters);
TimingResult timing_compare_mrsf(const ScalarField2D& image, const MrsfInit& init,
                                 const ModelParams& params, int iters);

}  // namespace lfseg
