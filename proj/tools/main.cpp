// blowlab command-line front end: runs catalog experiments and prints JSON.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "blowlab/config.hpp"
#include "blowlab/report.hpp"

namespace {

void usage(std::ostream& os) {
  os << "usage: blowlab <command> [options]\n"
        "\n"
        "commands:\n"
        "  riccati            pointwise blowup model studies\n"
        "  burgers            shock formation studies\n"
        "  bichar             transport ray studies\n"
        "  wkb                oscillatory wave packet studies\n"
        "  profile            steady profile / elliptic studies\n"
        "  report <name>      run one catalog entry by name\n"
        "  report --all       run every catalog entry\n"
        "  list               print the experiment catalog\n"
        "\n"
        "options:\n"
        "  --config <path>    TOML-style parameter file\n"
        "  --out <dir>        write CSV artifacts into <dir>\n"
        "  --seed <n>         seed for randomized studies (0 keeps defaults)\n";
}

const std::map<std::string, std::vector<std::string>>& command_groups() {
  static const std::map<std::string, std::vector<std::string>> groups = {
      {"riccati", {"riccati-slopes", "riccati-rescaling"}},
      {"burgers", {"burgers-origin-slope", "burgers-amplification"}},
      {"bichar", {"bichar-invariants", "bichar-beta"}},
      {"wkb", {"wkb-residual"}},
      {"profile", {"profile-tail", "profile-residual", "elliptic-ladder", "origin-gradient"}},
  };
  return groups;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(std::cerr);
    return 2;
  }
  std::string cmd = argv[1];
  if (cmd == "-h" || cmd == "--help" || cmd == "help") {
    usage(std::cout);
    return 0;
  }

  std::string config_path, outdir, bare;
  std::uint64_t seed = 0;
  bool all = false;
  for (int i = 2; i < argc; ++i) {
    std::string a = argv[i];
    auto need_value = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "blowlab: " << flag << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--config")
      config_path = need_value("--config");
    else if (a == "--out")
      outdir = need_value("--out");
    else if (a == "--seed")
      seed = std::strtoull(need_value("--seed").c_str(), nullptr, 10);
    else if (a == "--all")
      all = true;
    else if (!a.empty() && a[0] == '-') {
      std::cerr << "blowlab: unknown option " << a << "\n";
      usage(std::cerr);
      return 2;
    } else if (bare.empty())
      bare = a;
    else {
      std::cerr << "blowlab: unexpected argument " << a << "\n";
      return 2;
    }
  }

  try {
    blowlab::Config cfg;
    if (!config_path.empty()) cfg = blowlab::Config::parse_file(config_path);

    if (cmd == "list") {
      for (const auto& e : blowlab::experiment_catalog())
        std::cout << e.name << "  [" << e.anchor << "]  " << e.summary << "\n";
      return 0;
    }

    std::vector<std::string> names;
    if (cmd == "report") {
      if (all)
        for (const auto& e : blowlab::experiment_catalog()) names.push_back(e.name);
      else if (!bare.empty())
        names.push_back(bare);
      else {
        std::cerr << "blowlab: report needs an experiment name or --all\n";
        return 2;
      }
    } else {
      auto it = command_groups().find(cmd);
      if (it == command_groups().end()) {
        std::cerr << "blowlab: unknown command " << cmd << "\n";
        usage(std::cerr);
        return 2;
      }
      names = it->second;
    }

    nlohmann::json out = nlohmann::json::array();
    for (const auto& n : names)
      out.push_back(blowlab::run_experiment(n, cfg, seed, outdir));
    std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "blowlab: " << ex.what() << "\n";
    return 1;
  }
}
