#include <cstddef>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "elpath/csv.hpp"
#include "elpath/pipeline.hpp"

namespace {

// One JSON object per failure on stderr, so callers can parse diagnostics
// without scraping prose.
int fail(const elpath::Error& e) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = std::string(elpath::error_kind_name(e.kind()));
  if (!e.stage().empty()) j["error"]["stage"] = e.stage();
  j["error"]["message"] = e.what();
  std::cerr << j.dump() << '\n';
  return elpath::exit_code_for(e);
}

int fail_usage(const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = "config";
  j["error"]["stage"] = "cli";
  j["error"]["message"] = message;
  std::cerr << j.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-based correlation of ground-wave arrival times with "
               "meteorological factors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string toa_path;
  std::string stations_dir;
  std::string out_dir;
  std::size_t point = 0;
  bool dump_fields = false;
  unsigned threads = 1;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Ingest, preprocess, interpolate and correlate; write "
                 "tables, report and plots");
  analyze->add_option("--config", config_path, "analysis config file")
      ->required();
  analyze->add_option("--toa", toa_path, "arrival-time CSV")->required();
  analyze->add_option("--stations", stations_dir,
                      "directory with stations.csv and one CSV per station")
      ->required();
  analyze->add_option("--out", out_dir, "output directory")->required();
  analyze->add_option("--point", point,
                      "path sample for the scatter plot (default: receiver)");
  analyze->add_flag("--dump-fields", dump_fields,
                    "also write the interpolated fields as fields.csv");
  analyze->add_option("--threads", threads,
                      "worker threads for per-sample stages");

  std::string scenario_path;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic campaign with planted couplings");
  synth->add_option("--config", scenario_path, "scenario file")->required();
  synth->add_option("--out", synth_out, "output directory")->required();

  std::string check_path;
  CLI::App* validate = app.add_subcommand(
      "validate-config", "Parse and range-check an analysis config");
  validate->add_option("--config", check_path, "analysis config file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    return fail_usage(e.what());
  }

  try {
    if (app.got_subcommand(analyze)) {
      const auto config = elpath::RunConfig::from_file(config_path);
      elpath::AnalyzeOptions options;
      options.scatter_point = point;
      options.dump_fields = dump_fields;
      options.threads = threads;
      const elpath::RunReport report =
          elpath::run_analyze(config, toa_path, stations_dir, out_dir, options);

      std::cout << "path length: " << elpath::format_double(report.path_length_m)
                << " m\n";
      std::size_t used = 0;
      for (const auto& entry : report.roster) used += entry.used ? 1 : 0;
      std::cout << "stations used: " << used << "/" << report.roster.size()
                << '\n';
      for (const auto& [name, value] : report.counts) {
        std::cout << name << ": " << value << '\n';
      }
      for (const auto& warning : report.warnings) {
        std::cout << "warning: " << warning << '\n';
      }
      std::cout << "outputs: " << out_dir << '\n';
      return 0;
    }
    if (app.got_subcommand(synth)) {
      const auto scenario = elpath::SynthScenario::from_file(scenario_path);
      const elpath::SynthOutputs outputs =
          elpath::run_synth(scenario, synth_out);
      std::cout << "wrote " << outputs.station_csvs.size()
                << " station files, " << outputs.toa_csv.filename().string()
                << " and " << outputs.truth_json.filename().string() << " to "
                << synth_out << '\n';
      return 0;
    }
    const auto config = elpath::RunConfig::from_file(check_path);
    config.validate();
    std::cout << "config ok: " << check_path << '\n';
    return 0;
  } catch (const elpath::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"]["kind"] = "internal";
    j["error"]["message"] = e.what();
    std::cerr << j.dump() << '\n';
    return 1;
  }
}
