#include "lfseg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "lfseg/errors.hpp"
#include "lfseg/image_io.hpp"
#include "lfseg/multiphase.hpp"

namespace fs = std::filesystem;

namespace lfseg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError("config key '" + key + "': bad value '" + value + "' (expected " + expected +
                    ")");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value, "a number");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) bad_value(key, value, "an integer");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value, "an integer");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  // stoull wraps negative input silently; reject the sign up front.
  if (!value.empty() && value[0] == '-') bad_value(key, value, "a nonnegative integer");
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) bad_value(key, value, "a nonnegative integer");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value, "a nonnegative integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value, "true|false");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split(value, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) bad_value(key, value, "a comma-separated number list");
  return out;
}

ModelKind parse_model(const std::string& value) {
  if (value == "rsf") return ModelKind::rsf;
  if (value == "lif") return ModelKind::lif;
  if (value == "lgdf") return ModelKind::lgdf;
  if (value == "mrsf") return ModelKind::mrsf;
  bad_value("model", value, "rsf|lif|lgdf|mrsf");
}

Experiment parse_experiment(const std::string& value) {
  if (value == "single") return Experiment::single;
  if (value == "robustness") return Experiment::robustness;
  if (value == "sigma_sweep") return Experiment::sigma_sweep;
  if (value == "timing") return Experiment::timing;
  bad_value("experiment", value, "single|robustness|sigma_sweep|timing");
}

Polarity parse_polarity(const std::string& value) {
  if (value == "off") return Polarity::off;
  if (value == "bright_object") return Polarity::bright_object;
  if (value == "dark_object") return Polarity::dark_object;
  bad_value("polarity", value, "off|bright_object|dark_object");
}

VarianceSwapRule parse_variance_rule(const std::string& value) {
  if (value == "independent") return VarianceSwapRule::independent;
  if (value == "follow_means") return VarianceSwapRule::follow_means;
  bad_value("swap_variance_rule", value, "independent|follow_means");
}

Scene parse_scene(const std::string& value) {
  if (value == "two_blob" || value == "two_blob_inhomogeneous")
    return Scene::two_blob_inhomogeneous;
  if (value == "vessel" || value == "vessel_like") return Scene::vessel_like;
  if (value == "four_region") return Scene::four_region;
  bad_value("scene", value, "two_blob|vessel|four_region");
}

// rect:x0,y0,x1,y1 or circle:cx,cy,r
Shape parse_shape(const std::string& token) {
  std::size_t colon = token.find(':');
  if (colon == std::string::npos) bad_value("init", token, "rect:... or circle:...");
  std::string kind = trim(token.substr(0, colon));
  std::vector<std::string> parts = split(token.substr(colon + 1), ',');
  if (kind == "rect") {
    if (parts.size() != 4) bad_value("init", token, "rect:x0,y0,x1,y1");
    return RectShape{parse_int("init", parts[0]), parse_int("init", parts[1]),
                     parse_int("init", parts[2]), parse_int("init", parts[3])};
  }
  if (kind == "circle") {
    if (parts.size() != 3) bad_value("init", token, "circle:cx,cy,r");
    return CircleShape{parse_int("init", parts[0]), parse_int("init", parts[1]),
                       parse_double("init", parts[2])};
  }
  bad_value("init", token, "rect:... or circle:...");
}

InitSpec parse_init_spec(const std::string& text) {
  InitSpec spec;
  for (const std::string& token : split(text, '+')) spec.shapes.push_back(parse_shape(token));
  if (spec.shapes.empty()) bad_value("init", text, "at least one shape");
  return spec;
}

MrsfInit parse_mrsf_init(const std::string& text) {
  if (text.rfind("thresholds:", 0) == 0) {
    std::vector<std::string> parts = split(text.substr(11), ',');
    if (parts.size() != 2) bad_value("init", text, "thresholds:t_a,t_b");
    return ThresholdInit{parse_double("init", parts[0]), parse_double("init", parts[1])};
  }
  std::size_t bar = text.find('|');
  if (bar == std::string::npos)
    bad_value("init", text, "'<shapes_a> | <shapes_b>' or thresholds:t_a,t_b");
  return std::pair<InitSpec, InitSpec>{parse_init_spec(trim(text.substr(0, bar))),
                                       parse_init_spec(trim(text.substr(bar + 1)))};
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "model",   "experiment", "polarity", "input",  "scene",     "width",
      "height",  "levels",     "bias",     "noise_sigma", "seed",
      "lambda1", "lambda2",    "nu",       "mu",     "epsilon",   "sigma",
      "dt",      "c0",         "max_iters", "early_stop", "swap_variance_rule",
      "init",    "sigmas",     "iters",    "out"};
  return keys;
}

struct RawConfig {
  std::map<std::string, std::string> keys;
  std::vector<std::string> init_lines;
  bool has(const std::string& k) const { return keys.count(k) != 0; }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError("unknown config key: " + key);
    if (key == "init") {
      raw.init_lines.push_back(value);
    } else {
      if (raw.keys.count(key)) throw ConfigError("duplicate config key: " + key);
      raw.keys[key] = value;
    }
  }
  return raw;
}

SyntheticSpec scene_defaults(Scene scene) {
  switch (scene) {
    case Scene::two_blob_inhomogeneous:
      return standard_two_blob();
    case Scene::vessel_like:
      return standard_vessel();
    case Scene::four_region:
      return standard_four_region();
  }
  throw ConfigError("scene: unknown scene");
}

void default_inits(RunConfig& cfg) {
  if (!cfg.scene) throw ConfigError("init is required when input is a file");
  if (cfg.model == ModelKind::mrsf) {
    if (cfg.scene->scene == Scene::four_region) {
      cfg.mrsf_inits = standard_four_region_inits();
    } else {
      cfg.mrsf_inits.push_back(
          {"default_pair",
           std::pair<InitSpec, InitSpec>{InitSpec{{RectShape{32, 32, 96, 96}}},
                                         InitSpec{{RectShape{48, 48, 80, 80}}}}});
    }
    return;
  }
  switch (cfg.scene->scene) {
    case Scene::two_blob_inhomogeneous:
      cfg.inits = standard_two_blob_inits();
      break;
    case Scene::vessel_like:
      cfg.inits.push_back({"default_box", InitSpec{{RectShape{20, 50, 108, 78}}}});
      break;
    case Scene::four_region:
      cfg.inits.push_back({"default_box", InitSpec{{RectShape{32, 32, 96, 96}}}});
      break;
  }
}

std::string polarity_name(Polarity p) {
  switch (p) {
    case Polarity::bright_object:
      return "bright_object";
    case Polarity::dark_object:
      return "dark_object";
    default:
      return "off";
  }
}

std::string model_name(ModelKind m) {
  switch (m) {
    case ModelKind::rsf:
      return "rsf";
    case ModelKind::lif:
      return "lif";
    case ModelKind::lgdf:
      return "lgdf";
    default:
      return "mrsf";
  }
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::single:
      return "single";
    case Experiment::robustness:
      return "robustness";
    case Experiment::sigma_sweep:
      return "sigma_sweep";
    default:
      return "timing";
  }
}

std::string scene_name(Scene s) {
  switch (s) {
    case Scene::two_blob_inhomogeneous:
      return "two_blob";
    case Scene::vessel_like:
      return "vessel";
    default:
      return "four_region";
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string shape_text(const Shape& shape) {
  if (const auto* rect = std::get_if<RectShape>(&shape)) {
    std::ostringstream os;
    os << "rect:" << rect->x0 << ',' << rect->y0 << ',' << rect->x1 << ',' << rect->y1;
    return os.str();
  }
  const auto& c = std::get<CircleShape>(shape);
  std::ostringstream os;
  os << "circle:" << c.cx << ',' << c.cy << ',' << fmt(c.r);
  return os.str();
}

std::string init_text(const InitSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
    if (i) out += " + ";
    out += shape_text(spec.shapes[i]);
  }
  return out;
}

std::string mrsf_init_text(const MrsfInit& init) {
  if (const auto* thr = std::get_if<ThresholdInit>(&init))
    return "thresholds:" + fmt(thr->t_a) + "," + fmt(thr->t_b);
  const auto& pair = std::get<std::pair<InitSpec, InitSpec>>(init);
  return init_text(pair.first) + " | " + init_text(pair.second);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// ---- output writers ----

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_energy_csv(const fs::path& path, const std::vector<double>& trace) {
  std::string text = "iteration,energy\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    text += std::to_string(i) + "," + fmt_full(trace[i]) + "\n";
  write_text(path, text);
}

// Inner-boundary pixels of a mask: object pixels with a 4-neighbor outside
// the object (grid border counts as outside the neighborhood, not outside
// the object).
BinaryMask mask_boundary(const BinaryMask& mask) {
  BinaryMask edge(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      bool border = (x > 0 && !mask.at(x - 1, y)) || (x + 1 < mask.width && !mask.at(x + 1, y)) ||
                    (y > 0 && !mask.at(x, y - 1)) || (y + 1 < mask.height && !mask.at(x, y + 1));
      edge.at(x, y) = border ? 1 : 0;
    }
  }
  return edge;
}

ScalarField2D overlay_image(const ScalarField2D& image, const std::vector<BinaryMask>& contours) {
  ScalarField2D out = image;
  for (const BinaryMask& mask : contours) {
    BinaryMask edge = mask_boundary(mask);
    for (std::size_t i = 0; i < edge.values.size(); ++i)
      if (edge.values[i]) out[i] = 255.0;
  }
  return out;
}

// For four-phase rows the two level-set contours are recovered from the
// phase masks: phi_a < 0 on phases 3 and 4, phi_b < 0 on phases 2 and 4.
std::vector<BinaryMask> contour_masks(const std::vector<BinaryMask>& masks) {
  if (masks.size() != 4) return masks;
  BinaryMask in_a(masks[0].width, masks[0].height);
  BinaryMask in_b(masks[0].width, masks[0].height);
  for (std::size_t i = 0; i < in_a.values.size(); ++i) {
    in_a.values[i] = masks[2].values[i] || masks[3].values[i];
    in_b.values[i] = masks[1].values[i] || masks[3].values[i];
  }
  return {std::move(in_a), std::move(in_b)};
}

std::string row_index_name(int idx) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03d", idx);
  return buf;
}

void write_row_artifacts(const fs::path& dir, int idx, const ScalarField2D& image,
                         const SuiteRow& row) {
  if (!row.error.empty()) return;
  std::string n = row_index_name(idx);
  if (row.masks.size() == 4) {
    for (std::size_t p = 0; p < 4; ++p)
      save_mask(row.masks[p], dir / ("mask_" + n + "_phase" + std::to_string(p + 1) + ".pgm"));
  } else if (!row.masks.empty()) {
    save_mask(row.masks[0], dir / ("mask_" + n + ".pgm"));
  }
  save_image(overlay_image(image, contour_masks(row.masks)), dir / ("overlay_" + n + ".pgm"));
  write_energy_csv(dir / ("energy_" + n + ".csv"), row.energy_trace);
}

void write_results_csv(const fs::path& path, const std::vector<SuiteRow>& rows, bool have_truth) {
  std::string text =
      "init,polarity,sigma,dsc,dsc_m1,dsc_m2,dsc_m3,dsc_m4,iterations,elapsed_seconds,error\n";
  for (const SuiteRow& row : rows) {
    text += csv_escape(row.init_name) + "," + polarity_name(row.polarity) + "," + fmt(row.sigma);
    text += ",";
    if (have_truth && row.error.empty()) text += fmt(row.dsc_value);
    for (std::size_t r = 0; r < 4; ++r) {
      text += ",";
      if (r < row.region_dsc.size() && row.error.empty()) text += fmt(row.region_dsc[r]);
    }
    text += "," + std::to_string(row.iterations);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", row.elapsed_seconds);
    text += std::string(",") + buf;
    text += "," + csv_escape(row.error) + "\n";
  }
  write_text(path, text);
}

SuiteRow single_run_row(const RunConfig& cfg, const ScalarField2D& image,
                        const std::vector<BinaryMask>& truths) {
  SuiteRow row;
  row.sigma = cfg.params.sigma;
  row.polarity = cfg.params.polarity;
  if (cfg.model == ModelKind::mrsf) {
    row.init_name = cfg.mrsf_inits[0].name;
    MrsfResult res = run_mrsf(image, cfg.mrsf_inits[0].init, cfg.params);
    row.masks.assign(std::make_move_iterator(res.masks.begin()),
                     std::make_move_iterator(res.masks.end()));
    row.energy_trace = std::move(res.energy_trace);
    row.iterations = res.iterations_run;
    row.elapsed_seconds = res.elapsed_seconds;
    if (truths.size() == 4) {
      for (std::size_t r = 0; r < 4; ++r) row.region_dsc.push_back(dsc(row.masks[r], truths[r]));
      row.dsc_value = *std::min_element(row.region_dsc.begin(), row.region_dsc.end());
    }
  } else {
    row.init_name = cfg.inits[0].name;
    RunResult res = run(cfg.model, image, cfg.inits[0].init, cfg.params);
    row.iterations = res.iterations_run;
    row.elapsed_seconds = res.elapsed_seconds;
    if (!truths.empty()) row.dsc_value = dsc(res.mask, truths[0]);
    row.masks.push_back(std::move(res.mask));
    row.energy_trace = std::move(res.energy_trace);
  }
  return row;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RawConfig raw = tokenize(text);
  RunConfig cfg;

  if (raw.has("model")) cfg.model = parse_model(raw.keys.at("model"));
  if (raw.has("experiment")) cfg.experiment = parse_experiment(raw.keys.at("experiment"));
  cfg.params = default_params(cfg.model);

  if (raw.has("input") && raw.has("scene"))
    throw ConfigError("config needs exactly one input source: input or scene, not both");
  if (!raw.has("input") && !raw.has("scene"))
    throw ConfigError("config needs exactly one input source: input or scene");

  if (raw.has("scene")) {
    SyntheticSpec spec = scene_defaults(parse_scene(raw.keys.at("scene")));
    if (raw.has("width")) spec.width = parse_int("width", raw.keys.at("width"));
    if (raw.has("height")) spec.height = parse_int("height", raw.keys.at("height"));
    if (raw.has("levels")) spec.levels = parse_double_list("levels", raw.keys.at("levels"));
    if (raw.has("bias")) spec.bias = parse_double("bias", raw.keys.at("bias"));
    if (raw.has("noise_sigma"))
      spec.noise_sigma = parse_double("noise_sigma", raw.keys.at("noise_sigma"));
    if (raw.has("seed")) spec.seed = parse_seed("seed", raw.keys.at("seed"));
    cfg.scene = spec;
  } else {
    for (const char* key : {"width", "height", "levels", "bias", "noise_sigma", "seed"})
      if (raw.has(key))
        throw ConfigError(std::string("config key '") + key + "' requires scene = ...");
    cfg.input_path = raw.keys.at("input");
    if (cfg.input_path.empty()) throw ConfigError("config key 'input': empty path");
  }

  if (raw.has("polarity")) cfg.params.polarity = parse_polarity(raw.keys.at("polarity"));
  if (raw.has("lambda1")) cfg.params.lambda1 = parse_double("lambda1", raw.keys.at("lambda1"));
  if (raw.has("lambda2")) cfg.params.lambda2 = parse_double("lambda2", raw.keys.at("lambda2"));
  if (raw.has("nu")) cfg.params.nu = parse_double("nu", raw.keys.at("nu"));
  if (raw.has("mu")) cfg.params.mu = parse_double("mu", raw.keys.at("mu"));
  if (raw.has("epsilon")) cfg.params.epsilon = parse_double("epsilon", raw.keys.at("epsilon"));
  if (raw.has("sigma")) cfg.params.sigma = parse_double("sigma", raw.keys.at("sigma"));
  if (raw.has("dt")) cfg.params.dt = parse_double("dt", raw.keys.at("dt"));
  if (raw.has("c0")) cfg.params.c0 = parse_double("c0", raw.keys.at("c0"));
  if (raw.has("max_iters")) cfg.params.max_iters = parse_int("max_iters", raw.keys.at("max_iters"));
  if (raw.has("early_stop"))
    cfg.params.early_stop = parse_bool("early_stop", raw.keys.at("early_stop"));
  if (raw.has("swap_variance_rule"))
    cfg.params.variance_swap = parse_variance_rule(raw.keys.at("swap_variance_rule"));
  if (raw.has("sigmas")) cfg.sigmas = parse_double_list("sigmas", raw.keys.at("sigmas"));
  if (raw.has("iters")) cfg.timing_iters = parse_int("iters", raw.keys.at("iters"));
  if (raw.has("out")) cfg.out_dir = raw.keys.at("out");

  for (std::size_t i = 0; i < raw.init_lines.size(); ++i) {
    std::string name = "init_" + std::to_string(i);
    if (cfg.model == ModelKind::mrsf)
      cfg.mrsf_inits.push_back({name, parse_mrsf_init(raw.init_lines[i])});
    else
      cfg.inits.push_back({name, parse_init_spec(raw.init_lines[i])});
  }
  if (cfg.inits.empty() && cfg.mrsf_inits.empty()) default_inits(cfg);

  if (cfg.model == ModelKind::mrsf && cfg.experiment == Experiment::sigma_sweep)
    throw ConfigError("experiment sigma_sweep does not support model mrsf");
  if (!cfg.input_path.empty() && cfg.experiment != Experiment::single)
    throw ConfigError("experiment " + experiment_name(cfg.experiment) +
                      " requires a synthetic scene (ground truth)");
  if (cfg.timing_iters < 0) throw ConfigError("config key 'iters': must be nonnegative");
  for (double s : cfg.sigmas)
    if (!(s > 0.0)) throw ConfigError("config key 'sigmas': values must be positive");
  try {
    validate_params(cfg.params);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string print_effective_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "model = " << model_name(cfg.model) << "\n";
  os << "experiment = " << experiment_name(cfg.experiment) << "\n";
  if (cfg.scene) {
    os << "scene = " << scene_name(cfg.scene->scene) << "\n";
    os << "width = " << cfg.scene->width << "\n";
    os << "height = " << cfg.scene->height << "\n";
    os << "levels = ";
    for (std::size_t i = 0; i < cfg.scene->levels.size(); ++i)
      os << (i ? "," : "") << fmt(cfg.scene->levels[i]);
    os << "\n";
    os << "bias = " << fmt(cfg.scene->bias) << "\n";
    os << "noise_sigma = " << fmt(cfg.scene->noise_sigma) << "\n";
    os << "seed = " << cfg.scene->seed << "\n";
  } else {
    os << "input = " << cfg.input_path << "\n";
  }
  os << "polarity = " << polarity_name(cfg.params.polarity) << "\n";
  os << "lambda1 = " << fmt(cfg.params.lambda1) << "\n";
  os << "lambda2 = " << fmt(cfg.params.lambda2) << "\n";
  os << "nu = " << fmt(cfg.params.nu) << "\n";
  os << "mu = " << fmt(cfg.params.mu) << "\n";
  os << "epsilon = " << fmt(cfg.params.epsilon) << "\n";
  os << "sigma = " << fmt(cfg.params.sigma) << "\n";
  os << "dt = " << fmt(cfg.params.dt) << "\n";
  os << "c0 = " << fmt(cfg.params.c0) << "\n";
  os << "max_iters = " << cfg.params.max_iters << "\n";
  os << "early_stop = " << (cfg.params.early_stop ? "true" : "false") << "\n";
  os << "swap_variance_rule = "
     << (cfg.params.variance_swap == VarianceSwapRule::independent ? "independent"
                                                                   : "follow_means")
     << "\n";
  for (const NamedInit& ni : cfg.inits) os << "init = " << init_text(ni.init) << "\n";
  for (const NamedMrsfInit& ni : cfg.mrsf_inits)
    os << "init = " << mrsf_init_text(ni.init) << "\n";
  if (cfg.experiment == Experiment::sigma_sweep) {
    os << "sigmas = ";
    for (std::size_t i = 0; i < cfg.sigmas.size(); ++i) os << (i ? "," : "") << fmt(cfg.sigmas[i]);
    os << "\n";
  }
  if (cfg.experiment == Experiment::timing) os << "iters = " << cfg.timing_iters << "\n";
  os << "out = " << cfg.out_dir << "\n";
  return os.str();
}

void execute(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  ScalarField2D image;
  std::vector<BinaryMask> truths;
  if (cfg.scene) {
    SyntheticImage synth = generate(*cfg.scene);
    image = std::move(synth.image);
    truths = std::move(synth.truths);
  } else {
    image = load_image(cfg.input_path);
  }

  switch (cfg.experiment) {
    case Experiment::single: {
      SuiteRow row = single_run_row(cfg, image, truths);
      write_row_artifacts(dir, 0, image, row);
      write_results_csv(dir / "results.csv", {row}, !truths.empty());
      break;
    }
    case Experiment::robustness: {
      std::vector<SuiteRow> rows =
          cfg.model == ModelKind::mrsf
              ? robustness_suite_mrsf(image, truths, cfg.mrsf_inits, cfg.params)
              : robustness_suite(cfg.model, image, truths[0], cfg.inits, cfg.params);
      for (std::size_t i = 0; i < rows.size(); ++i)
        write_row_artifacts(dir, static_cast<int>(i), image, rows[i]);
      write_results_csv(dir / "results.csv", rows, true);
      break;
    }
    case Experiment::sigma_sweep: {
      std::vector<SuiteRow> rows =
          sigma_sweep(cfg.model, image, truths[0], cfg.sigmas, cfg.inits[0].init, cfg.params);
      for (std::size_t i = 0; i < rows.size(); ++i)
        write_row_artifacts(dir, static_cast<int>(i), image, rows[i]);
      write_results_csv(dir / "results.csv", rows, true);
      break;
    }
    case Experiment::timing: {
      TimingResult t =
          cfg.model == ModelKind::mrsf
              ? timing_compare_mrsf(image, cfg.mrsf_inits[0].init, cfg.params, cfg.timing_iters)
              : timing_compare(cfg.model, image, cfg.inits[0].init, cfg.params, cfg.timing_iters);
      std::string text = "model,iters,t_original_seconds,t_improved_seconds,ratio\n";
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f,%.4f\n", model_name(cfg.model).c_str(),
                    cfg.timing_iters, t.t_original, t.t_improved, t.ratio);
      write_text(dir / "results.csv", text + buf);
      break;
    }
  }
}

}  // namespace lfseg
