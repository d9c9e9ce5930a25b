#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lfseg/cli.hpp"
#include "lfseg/errors.hpp"

namespace {

void usage(std::ostream& os) {
  os << "usage: lfseg --config <path> [--out <dir>] [--print-config]\n"
        "  --config <path>  run configuration file (key = value lines)\n"
        "  --out <dir>      output directory, overrides the config's out key\n"
        "  --print-config   dump the effective configuration and exit\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string config_path, out_dir;
  bool print_only = false;

  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_path = argv[++i];
    } else if (arg == "--out" && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (arg == "--print-config") {
      print_only = true;
    } else if (arg == "--help" || arg == "-h") {
      usage(std::cout);
      return 0;
    } else {
      std::cerr << "lfseg: unknown or incomplete argument: " << arg << "\n";
      usage(std::cerr);
      return 1;
    }
  }
  if (config_path.empty()) {
    std::cerr << "lfseg: --config is required\n";
    usage(std::cerr);
    return 1;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw lfseg::IoError("cannot read config file " + config_path);
    std::ostringstream text;
    text << in.rdbuf();

    lfseg::RunConfig config = lfseg::parse_config(text.str());
    if (!out_dir.empty()) config.out_dir = out_dir;

    if (print_only) {
      std::cout << lfseg::print_effective_config(config);
      return 0;
    }
    lfseg::execute(config);
    return 0;
  } catch (const lfseg::DivergenceError& e) {
    std::cerr << "lfseg: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lfseg: " << e.what() << "\n";
    return 1;
  }
}
