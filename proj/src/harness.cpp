#include "spinterp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spinterp/matrix_io.hpp"
#include "spinterp/rng.hpp"

namespace spinterp::harness {

namespace {

using nlohmann::json;

void write_text_file(const std::filesystem::path& path,
                     const std::string& content,
                     std::vector<std::string>& files) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + path.string());
  os << content;
  files.push_back(path.string());
}

std::string csv_join(const std::string& header,
                     const std::vector<std::string>& rows) {
  std::ostringstream os;
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
  return os.str();
}

const grem::GremSpec& effective_spec(const ExperimentConfig& cfg,
                                     grem::GremSpec& storage) {
  if (cfg.spec.has_value()) return *cfg.spec;
  storage = grem::GremSpec::geometric();
  return storage;
}

// Half/half split of each size, used when the config names none.
std::vector<std::pair<int, int>> effective_splits(
    const ExperimentConfig& cfg) {
  if (!cfg.splits.empty() || cfg.model == Model::abstract_gaussian) {
    return cfg.splits;
  }
  std::vector<std::pair<int, int>> out;
  for (int n : cfg.sizes) {
    if (n >= 2) out.emplace_back(n / 2, n - n / 2);
  }
  return out;
}

CovarianceMatrix random_psd(int n, GaussianStream& g, double scale) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g.next();
  }
  a *= std::sqrt(scale / n);
  return validate_covariance(a * a.transpose());
}

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::sk:
      return "sk";
    case Model::grem:
      return "grem";
    case Model::abstract_gaussian:
      return "abstract";
  }
  throw Error("unreachable model");
}

Model model_from_name(const std::string& name) {
  if (name == "sk") return Model::sk;
  if (name == "grem") return Model::grem;
  if (name == "abstract") return Model::abstract_gaussian;
  throw ConfigInvalid("model: expected sk, grem or abstract, got '" + name +
                      "'");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("config JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("model")) cfg.model = model_from_name(j["model"]);
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("splits")) {
      for (const auto& s : j["splits"]) {
        if (!s.is_array() || s.size() != 2) {
          throw ConfigInvalid("splits: each entry must be a pair [N1, N2]");
        }
        cfg.splits.emplace_back(s[0].get<int>(), s[1].get<int>());
      }
    }
    if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
    if (j.contains("samples")) {
      cfg.samples = j["samples"].get<std::int64_t>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grem_spec")) {
      cfg.spec = grem::spec_from_json(j["grem_spec"].dump());
    }
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("config JSON: ") + e.what());
  }
  return cfg;
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["model"] = model_name(model);
  j["sizes"] = sizes;
  json splits_j = json::array();
  for (const auto& [a, b] : splits) splits_j.push_back({a, b});
  j["splits"] = splits_j;
  j["beta"] = beta;
  j["samples"] = samples;
  j["seed"] = seed;
  if (spec.has_value()) {
    j["grem_spec"] = json::parse(grem::spec_to_json(*spec));
  }
  if (!out_dir.empty()) j["out_dir"] = out_dir;
  return j.dump(2) + "\n";
}

void ExperimentConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigInvalid("beta: must be a positive finite real");
  }
  if (samples < 2) throw ConfigInvalid("samples: need at least 2");
  if (sizes.empty()) throw ConfigInvalid("sizes: need at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ConfigInvalid("sizes: entries must be >= 1");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw ConfigInvalid("sizes: must be strictly ascending");
    }
  }
  grem::GremSpec storage = grem::GremSpec::geometric();
  switch (model) {
    case Model::sk:
      for (int n : sizes) {
        if (n > sk::kMaxEnumerationSites) {
          throw ConfigInvalid("sizes: SK enumeration caps at N = " +
                              std::to_string(sk::kMaxEnumerationSites));
        }
      }
      break;
    case Model::grem: {
      const grem::GremSpec& gs = effective_spec(*this, storage);
      for (int n : sizes) {
        const grem::GremTree t = grem::build(gs, n);
        if (t.total_spins() < 1) {
          throw ConfigInvalid("sizes: N = " + std::to_string(n) +
                              " yields an empty tree");
        }
        if (t.total_spins() > grem::kMaxEnergySpins) {
          throw ConfigInvalid("sizes: GREM energy tables cap at |k| = " +
                              std::to_string(grem::kMaxEnergySpins));
        }
      }
      break;
    }
    case Model::abstract_gaussian:
      if (!splits.empty()) {
        throw ConfigInvalid("splits: not used by the abstract model");
      }
      for (int n : sizes) {
        if (n > 64) {
          throw ConfigInvalid("sizes: abstract pairs cap at n = 64");
        }
      }
      break;
  }
  for (const auto& [n1, n2] : effective_splits(*this)) {
    if (n1 < 0 || n2 < 0) {
      throw ConfigInvalid("splits: parts must be nonnegative");
    }
    const int n = n1 + n2;
    if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) {
      throw ConfigInvalid("splits: N1 + N2 = " + std::to_string(n) +
                          " is not one of the sizes");
    }
    if (model == Model::sk && n > sk::kMaxExhaustivePairSites) {
      throw ConfigInvalid("splits: SK subadditivity caps at N = " +
                          std::to_string(sk::kMaxExhaustivePairSites));
    }
    if (model == Model::grem) {
      const grem::GremSpec& gs = effective_spec(*this, storage);
      const grem::GremTree t = grem::build(gs, n);
      if (t.total_spins() > grem::kMaxSubadditivitySpins) {
        throw ConfigInvalid("splits: GREM subadditivity caps at |k| = " +
                            std::to_string(grem::kMaxSubadditivitySpins));
      }
    }
  }
}

TrendReport fekete_trend(Model model, const grem::GremSpec* spec,
                         const std::vector<int>& sizes, double beta,
                         std::int64_t samples, std::uint64_t seed,
                         int threads) {
  if (!(beta > 0.0)) throw ConfigInvalid("beta: must be > 0");
  TrendReport report;
  report.all_ok = true;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    if (i > 0 && n <= sizes[i - 1]) {
      throw ConfigInvalid("sizes: must be strictly ascending");
    }
    TrendRow row;
    row.size = n;
    QuenchedEstimate est;
    if (model == Model::sk) {
      if (n > sk::kMaxEnumerationSites) {
        throw ConfigInvalid("sizes: SK enumeration caps at N = " +
                            std::to_string(sk::kMaxEnumerationSites));
      }
      row.size_unit = n;
      est = sk::quenched_alpha(n, beta, samples,
                               derive_seed(seed, "trend/alpha", i), threads);
    } else if (model == Model::grem) {
      const grem::GremSpec gs =
          spec != nullptr ? *spec : grem::GremSpec::geometric();
      const grem::GremTree tree = grem::build(gs, n);
      row.size_unit = tree.total_spins();
      if (row.size_unit < 1) {
        throw ConfigInvalid("sizes: N = " + std::to_string(n) +
                            " yields an empty tree");
      }
      est = grem::quenched_alpha(tree, gs, beta, samples,
                                 derive_seed(seed, "trend/alpha", i),
                                 threads);
    } else {
      throw ConfigInvalid("model: trend supports sk and grem");
    }
    row.alpha_over_size = est.mean / (beta * row.size_unit);
    row.std_error = est.std_error / (beta * row.size_unit);
    running = std::min(running, row.alpha_over_size);
    row.running_infimum = running;
    row.ok = row.alpha_over_size >= running - 3.0 * row.std_error;
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(row);
  }
  return report;
}

std::string trend_csv_header() {
  return "N,size_unit,alpha_over_size,stderr,running_infimum,ok";
}

std::string trend_csv_row(const TrendRow& row) {
  std::ostringstream os;
  os << row.size << "," << row.size_unit << ","
     << format_float(row.alpha_over_size) << ","
     << format_float(row.std_error) << ","
     << format_float(row.running_infimum) << "," << row.ok;
  return os.str();
}

RunResult run_config(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  if (cfg.out_dir.empty()) {
    throw ConfigInvalid("out_dir: required to run a config");
  }
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);

  RunResult result;
  result.all_ok = true;
  grem::GremSpec storage = grem::GremSpec::geometric();
  const auto splits = effective_splits(cfg);

  if (cfg.model == Model::abstract_gaussian) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
      const int n = cfg.sizes[i];
      GaussianStream g(derive_seed(cfg.seed, "abstract/pair", i), 0);
      const CovarianceMatrix cx = random_psd(n, g, 1.0);
      const CovarianceMatrix bump = random_psd(n, g, 0.5);
      const CovarianceMatrix cy =
          validate_covariance(cx.entries() + bump.entries());
      const InequalityReport rep = verify_inequality(
          cx, cy, WeightVector::uniform(n), cfg.samples,
          derive_seed(cfg.seed, "abstract/verify", i), threads);
      result.all_ok = result.all_ok && rep.holds;
      rows.push_back(inequality_csv_row(rep));
    }
    write_text_file(dir / "verify.csv",
                    csv_join(inequality_csv_header(), rows), result.files);
  } else {
    const grem::GremSpec& gs = effective_spec(cfg, storage);
    const grem::GremSpec* specp = cfg.model == Model::grem ? &gs : nullptr;

    const TrendReport trend =
        fekete_trend(cfg.model, specp, cfg.sizes, cfg.beta, cfg.samples,
                     derive_seed(cfg.seed, "trend"), threads);
    result.all_ok = result.all_ok && trend.all_ok;
    std::vector<std::string> trend_rows;
    for (const auto& row : trend.rows) trend_rows.push_back(trend_csv_row(row));
    write_text_file(dir / "trend.csv",
                    csv_join(trend_csv_header(), trend_rows), result.files);

    if (!splits.empty() && cfg.model == Model::sk) {
      std::vector<std::string> sub_rows, sp_rows;
      for (std::size_t i = 0; i < splits.size(); ++i) {
        const auto [n1, n2] = splits[i];
        const sk::SubadditivityReport rep = sk::check_subadditivity(
            n1, n2, cfg.beta, cfg.samples,
            derive_seed(cfg.seed, "sk/subadd", i), threads);
        result.all_ok = result.all_ok && rep.holds;
        sub_rows.push_back(sk::subadditivity_csv_row(rep));
        const sk::SuperPythagoreanReport sp =
            sk::check_superpythagorean(n1, n2, cfg.beta);
        result.all_ok = result.all_ok && sp.holds;
        std::ostringstream os;
        os << (n1 + n2) << "," << n1 << "," << n2 << ","
           << format_float(cfg.beta) << "," << sp.holds << ","
           << format_float(sp.worst_margin);
        sp_rows.push_back(os.str());
      }
      write_text_file(dir / "subadditivity.csv",
                      csv_join(sk::subadditivity_csv_header(), sub_rows),
                      result.files);
      write_text_file(dir / "superpythagorean.csv",
                      csv_join("N,N1,N2,beta,holds,worst_margin", sp_rows),
                      result.files);
    }

    if (cfg.model == Model::grem) {
      if (!splits.empty()) {
        std::vector<std::string> sub_rows, sp_rows;
        for (std::size_t i = 0; i < splits.size(); ++i) {
          const auto [n1, n2] = splits[i];
          const grem::SubadditivityReport rep = grem::check_subadditivity(
              gs, n1 + n2, n1, n2, cfg.beta, cfg.samples,
              derive_seed(cfg.seed, "grem/subadd", i), threads);
          result.all_ok = result.all_ok && rep.holds;
          sub_rows.push_back(grem::subadditivity_csv_row(rep));
          const grem::GremTree t = grem::build(gs, n1 + n2);
          if (t.total_spins() <= grem::kMaxExhaustivePairSpins) {
            const grem::SuperPythagoreanReport sp =
                grem::check_superpythagorean(gs, n1 + n2, n1, n2);
            result.all_ok = result.all_ok && sp.holds && sp.max_holds;
            std::ostringstream os;
            os << (n1 + n2) << "," << n1 << "," << n2 << "," << sp.holds
               << "," << format_float(sp.worst_margin) << "," << sp.max_holds
               << "," << format_float(sp.worst_max_gap);
            sp_rows.push_back(os.str());
          }
        }
        write_text_file(dir / "subadditivity.csv",
                        csv_join(grem::subadditivity_csv_header(), sub_rows),
                        result.files);
        write_text_file(
            dir / "superpythagorean.csv",
            csv_join("N,N1,N2,holds,worst_margin,max_holds,worst_max_gap",
                     sp_rows),
            result.files);
      }
      const auto ratios = grem::asymptotic_ratios(gs, cfg.sizes);
      std::vector<std::string> ratio_rows;
      for (const auto& r : ratios) {
        std::ostringstream os;
        os << r.n << "," << format_float(r.k_over_n) << ","
           << format_float(r.max_correction_ratio);
        ratio_rows.push_back(os.str());
      }
      write_text_file(dir / "ratios.csv",
                      csv_join("N,k_over_N,max_correction_ratio", ratio_rows),
                      result.files);
    }
  }

  json manifest;
  manifest["version"] = std::string(kVersion);
  ExperimentConfig recorded = cfg;
  recorded.out_dir.clear();  // the manifest lives inside the output dir
  manifest["config"] = json::parse(recorded.to_json_text());
  json files_j = json::array();
  for (const auto& f : result.files) {
    files_j.push_back(std::filesystem::path(f).filename().string());
  }
  manifest["files"] = files_j;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n",
                  result.files);
  return result;
}

}  // namespace spinterp::harness
