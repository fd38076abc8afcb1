#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfgas/config.hpp"

namespace mfgas {

struct StageRecord {
  std::string name;
  bool cached = false;
  double seconds = 0.0;
  std::string input_hash;
  // output file (relative to out_dir) and its content hash
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<std::string> warnings;
};

struct RunManifest {
  std::string config_text;  // exact snapshot of the effective config
  std::string version;
  std::string out_dir;
  std::vector<StageRecord> stages;
  std::vector<std::string> verdicts;  // "name: pass|fail" lines from the stats stage
  bool all_tests_passed = true;
};

std::string manifest_json(const RunManifest& m);

enum class PipelineStage { Equilibrium, Sample, Stats };

// equilibrium -> sample -> stats, each stage skipped when a previous run
// left matching outputs behind (content-hash keyed).  Data files are
// byte-reproducible for a fixed config; the manifest's timing fields are
// not part of that guarantee.  Stage failures raise PipelineStageError.
RunManifest run_pipeline(const ExperimentConfig& c,
                         PipelineStage last = PipelineStage::Stats);

}
