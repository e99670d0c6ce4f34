#pragma once

#include <filesystem>

#include "elpath/config.hpp"
#include "elpath/errors.hpp"
#include "elpath/report.hpp"
#include "elpath/synth.hpp"

namespace elpath {

struct AnalyzeOptions {
  std::size_t scatter_point = 0;  // 0 picks the receiver sample (n_samples)
  bool dump_fields = false;       // also write fields.csv
  unsigned threads = 1;
};

/// Runs the whole analysis: ingest, preprocess, path sampling, alignment,
/// interpolation, correlation, then writes profile.csv, summary.csv,
/// dtoa.csv, report.json and the three SVG plots into out_dir. Errors carry
/// the failing stage; any partially written outputs are removed.
RunReport run_analyze(const RunConfig& config,
                      const std::filesystem::path& toa_path,
                      const std::filesystem::path& stations_dir,
                      const std::filesystem::path& out_dir,
                      const AnalyzeOptions& options = {});

/// Generates a synthetic campaign into out_dir (station CSVs, toa.csv,
/// truth.json); errors carry the "synth" stage.
SynthOutputs run_synth(const SynthScenario& scenario,
                       const std::filesystem::path& out_dir);

/// Process exit code for a pipeline error: 2 config, 3 ingest-side input
/// problems, 4 alignment, 5 correlation; precondition/domain failures fall
/// back on the stage that raised them, and anything unclassified is 1.
int exit_code_for(const Error& error);

}  // namespace elpath
