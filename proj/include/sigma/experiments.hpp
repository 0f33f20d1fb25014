#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sigma/config.hpp"

namespace sigma {

/// Outcome of a verification run: pass flag plus named measurements, written
/// as a flat key = value file.
struct Verdict {
  std::string experiment;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
  void add(const std::string& key, double value);
  std::string to_text() const;
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs one experiment. Shapes and grids default per experiment when the
/// config leaves them unset:
///   lemma_gradient   disk, h = 1/128
///   offset_identity  unit square, h = 1/64, config epsilons
///   typical_density  random polytopes with 8..128 facets from the config seed, h = 1/128
///   equivalence      disk, h = 1/128
///   counterexample   offset of a 128-facet random polytope by 0.2, h = 1/128
/// Writes CSV artifacts into `out_dir`.
Verdict run_experiment(const std::string& name, const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace sigma
