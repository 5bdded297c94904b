// Experiment catalog, JSON result envelopes, and CSV artifact output.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "blowlab/config.hpp"

namespace blowlab {

// Full-precision CSV (every numeric cell printed with %.17g).
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// A runnable study. `anchor` ties the entry to the acceptance catalog
// (tags "AC-1" .. "AC-11", one entry per tag).
struct Experiment {
  std::string name;
  std::string anchor;
  std::string summary;
  std::function<nlohmann::json(const Config&, std::uint64_t seed, const std::string& outdir)>
      run;
};

const std::vector<Experiment>& experiment_catalog();
const Experiment* find_experiment(const std::string& name);

// Runs one catalog entry and wraps its data with provenance (name, anchor,
// seed, config hash). outdir may be empty to skip CSV artifacts.
nlohmann::json run_experiment(const std::string& name, const Config& cfg,
                              std::uint64_t seed, const std::string& outdir);

}  // namespace blowlab
