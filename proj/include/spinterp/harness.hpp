#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinterp/grem.hpp"
#include "spinterp/sk.hpp"

namespace spinterp::harness {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Model { sk, grem, abstract_gaussian };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

// A reproducible experiment: (config, seed, version) determines all output
// bytes.
struct ExperimentConfig {
  Model model = Model::sk;
  std::vector<int> sizes;
  std::vector<std::pair<int, int>> splits;
  double beta = 1.0;
  std::int64_t samples = 2000;
  std::uint64_t seed = 1;
  std::optional<grem::GremSpec> spec;  // GREM only; geometric when absent
  std::string out_dir;

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  // Throws ConfigInvalid with a field-level message; size guards surface
  // here, before any computation.
  void validate() const;
};

struct TrendRow {
  int size = 0;
  int size_unit = 0;  // N for SK, |k(N)| for GREM
  double alpha_over_size = 0.0;  // alpha / (beta * size_unit) = F_N
  double std_error = 0.0;
  double running_infimum = 0.0;
  bool ok = false;  // value >= running infimum - 3 stderr
};

struct TrendReport {
  std::vector<TrendRow> rows;
  bool all_ok = false;
};

// Quenched free energy per site along ascending sizes with the running
// infimum (the Fekete limit direction). GREM normalizes by |k(N)|, never N.
TrendReport fekete_trend(Model model, const grem::GremSpec* spec,
                         const std::vector<int>& sizes, double beta,
                         std::int64_t samples, std::uint64_t seed,
                         int threads = 1);

struct RunResult {
  bool all_ok = false;
  std::vector<std::string> files;  // paths written, in order
};

// Executes every check the config requests and writes one CSV per check
// plus manifest.json. Reruns with an identical config are byte-identical.
RunResult run_config(const ExperimentConfig& cfg, int threads = 1);

std::string trend_csv_header();
std::string trend_csv_row(const TrendRow& row);

}  // namespace spinterp::harness
