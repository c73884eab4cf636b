#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spinterp/alignment.hpp"
#include "spinterp/harness.hpp"
#include "spinterp/matrix_io.hpp"

namespace {

using namespace spinterp;

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "experiment config (JSON)");
  app->add_option("--out", f.out_dir, "output directory");
  app->add_option("--seed", f.seed, "master seed")
      ->each([&f](const std::string&) { f.seed_set = true; });
  app->add_option("--threads", f.threads, "worker threads for Monte Carlo");
}

harness::ExperimentConfig load_config(const CommonFlags& f,
                                      harness::Model fallback_model) {
  harness::ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    cfg = harness::ExperimentConfig::from_json_text(slurp(f.config_path));
  } else {
    cfg.model = fallback_model;
  }
  if (f.seed_set) cfg.seed = f.seed;
  if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
  return cfg;
}

int run_model_command(const CommonFlags& f, harness::ExperimentConfig cfg) {
  const harness::RunResult res = harness::run_config(cfg, f.threads);
  for (const auto& file : res.files) std::cout << "wrote " << file << "\n";
  std::cout << (res.all_ok ? "all inequalities held"
                           : "some inequality FAILED")
            << "\n";
  return res.all_ok ? 0 : 1;
}

std::vector<std::pair<int, int>> parse_splits(
    const std::vector<std::string>& specs) {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : specs) {
    const auto plus = s.find('+');
    if (plus == std::string::npos) {
      throw ConfigInvalid("splits: expected N1+N2, got '" + s + "'");
    }
    out.emplace_back(std::stoi(s.substr(0, plus)),
                     std::stoi(s.substr(plus + 1)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian comparison experiments for mean-field spin glasses"};
  app.require_subcommand(1);

  // verify-interp: metric/classic conditions plus Monte CarloF estimates
  // for a pair of covariance files.
  auto* verify = app.add_subcommand(
      "verify-interp", "check comparison conditions and E[f] for a pair");
  CommonFlags vf;
  std::string cx_path, cy_path, weights_path;
  std::int64_t verify_m = 100000;
  add_common(verify, vf);
  verify->add_option("--cx", cx_path, "covariance of X (matrix file)")
      ->required();
  verify->add_option("--cy", cy_path, "covariance of Y (matrix file)")
      ->required();
  verify->add_option("--weights", weights_path, "weight vector (matrix file)");
  verify->add_option("--m", verify_m, "Monte Carlo samples per estimate");

  auto* sk_cmd = app.add_subcommand("sk", "Sherrington-Kirkpatrick checks");
  CommonFlags skf;
  std::vector<int> sk_sizes;
  std::vector<std::string> sk_splits;
  double sk_beta = 1.0;
  std::int64_t sk_samples = 2000;
  add_common(sk_cmd, skf);
  sk_cmd->add_option("--sizes", sk_sizes, "system sizes (ascending)");
  sk_cmd->add_option("--splits", sk_splits, "splits like 4+4");
  sk_cmd->add_option("--beta", sk_beta, "inverse temperature");
  sk_cmd->add_option("--M", sk_samples, "disorder draws per estimate");

  auto* grem_cmd = app.add_subcommand("grem", "infinite-level GREM checks");
  CommonFlags gf;
  std::vector<int> grem_sizes;
  std::vector<std::string> grem_splits;
  double grem_beta = 1.0;
  std::int64_t grem_samples = 2000;
  std::string grem_spec_path;
  add_common(grem_cmd, gf);
  grem_cmd->add_option("--sizes", grem_sizes, "size parameters (ascending)");
  grem_cmd->add_option("--splits", grem_splits, "splits like 4+4");
  grem_cmd->add_option("--beta", grem_beta, "inverse temperature");
  grem_cmd->add_option("--M", grem_samples, "disorder draws per estimate");
  grem_cmd->add_option("--spec", grem_spec_path,
                       "GREM spec JSON file (default: geometric)");

  auto* metric = app.add_subcommand(
      "metric-check", "Euclidean embeddability of a metric or covariance");
  std::string cov_path, dist_path;
  double metric_tol = kPsdTol;
  metric->add_option("--cov", cov_path, "covariance matrix file");
  metric->add_option("--dist", dist_path, "distance matrix file");
  metric->add_option("--tol", metric_tol, "eigenvalue tolerance");

  auto* align_cmd = app.add_subcommand(
      "align", "recover the rigid motion between two point sets");
  std::string v_path, w_path, mode = "isometry";
  align_cmd->add_option("--v", v_path, "source points (rows)")->required();
  align_cmd->add_option("--w", w_path, "target points (rows)")->required();
  align_cmd->add_option("--mode", mode, "isometry (default) or rotation");

  auto* trend_cmd =
      app.add_subcommand("trend", "quenched free energy per site vs size");
  CommonFlags tf;
  std::string trend_model = "sk";
  std::vector<int> trend_sizes;
  double trend_beta = 1.0;
  std::int64_t trend_samples = 2000;
  std::string trend_spec_path;
  add_common(trend_cmd, tf);
  trend_cmd->add_option("--model", trend_model, "sk or grem");
  trend_cmd->add_option("--sizes", trend_sizes, "sizes (ascending)")
      ->required();
  trend_cmd->add_option("--beta", trend_beta, "inverse temperature");
  trend_cmd->add_option("--M", trend_samples, "disorder draws per estimate");
  trend_cmd->add_option("--spec", trend_spec_path, "GREM spec JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const CovarianceMatrix cx =
          validate_covariance(load_matrix(cx_path));
      const CovarianceMatrix cy =
          validate_covariance(load_matrix(cy_path));
      WeightVector w = WeightVector::uniform(cx.dim());
      if (!weights_path.empty()) {
        w = WeightVector::validated(
            Eigen::VectorXd(load_matrix(weights_path).reshaped()));
      }
      const std::uint64_t seed = vf.seed_set ? vf.seed : 1;
      const InequalityReport rep =
          verify_inequality(cx, cy, w, verify_m, seed, vf.threads);
      std::cout << inequality_csv_header() << "\n"
                << inequality_csv_row(rep) << "\n";
      if (!vf.out_dir.empty()) {
        std::filesystem::create_directories(vf.out_dir);
        std::ofstream os(std::filesystem::path(vf.out_dir) / "verify.csv",
                         std::ios::binary);
        os << inequality_csv_header() << "\n"
           << inequality_csv_row(rep) << "\n";
        std::cout << "wrote "
                  << (std::filesystem::path(vf.out_dir) / "verify.csv").string()
                  << "\n";
      }
      return rep.holds ? 0 : 1;
    }

    if (sk_cmd->parsed()) {
      harness::ExperimentConfig cfg = load_config(skf, harness::Model::sk);
      if (!sk_sizes.empty()) cfg.sizes = sk_sizes;
      if (!sk_splits.empty()) cfg.splits = parse_splits(sk_splits);
      if (sk_cmd->count("--beta") > 0) cfg.beta = sk_beta;
      if (sk_cmd->count("--M") > 0) cfg.samples = sk_samples;
      return run_model_command(skf, cfg);
    }

    if (grem_cmd->parsed()) {
      harness::ExperimentConfig cfg = load_config(gf, harness::Model::grem);
      if (!grem_sizes.empty()) cfg.sizes = grem_sizes;
      if (!grem_splits.empty()) cfg.splits = parse_splits(grem_splits);
      if (grem_cmd->count("--beta") > 0) cfg.beta = grem_beta;
      if (grem_cmd->count("--M") > 0) cfg.samples = grem_samples;
      if (!grem_spec_path.empty()) {
        cfg.spec = grem::spec_from_json(slurp(grem_spec_path));
      }
      return run_model_command(gf, cfg);
    }

    if (metric->parsed()) {
      if (cov_path.empty() == dist_path.empty()) {
        std::cerr << "metric-check: pass exactly one of --cov or --dist\n";
        return 2;
      }
      MetricMatrix d = cov_path.empty()
                           ? validate_metric(load_matrix(dist_path))
                           : metric_from_covariance(validate_covariance(
                                 load_matrix(cov_path)));
      const EuclideanTest t = is_euclidean_metric(d, metric_tol);
      std::cout << "euclidean," << t.euclidean << "\nmin_eigenvalue,"
                << format_float(t.min_eigenvalue) << "\n";
      return t.euclidean ? 0 : 1;
    }

    if (align_cmd->parsed()) {
      const Eigen::MatrixXd v = load_matrix(v_path);
      const Eigen::MatrixXd w = load_matrix(w_path);
      Eigen::MatrixXd rotation;
      Eigen::VectorXd offset;
      if (mode == "rotation") {
        rotation = recover_rotation(v, w);
        offset = Eigen::VectorXd::Zero(v.cols());
      } else if (mode == "isometry") {
        const RigidMotion motion = recover_isometry(v, w);
        rotation = motion.rotation;
        offset = motion.offset;
      } else {
        std::cerr << "align: unknown mode '" << mode << "'\n";
        return 2;
      }
      std::cout << "rotation\n";
      write_matrix(std::cout, rotation);
      std::cout << "offset\n";
      write_matrix(std::cout, offset.transpose());
      const double residual = alignment_residual(
          v, w, rotation, mode == "rotation" ? nullptr : &offset);
      std::cout << "residual," << format_float(residual)
                << "\northo_defect,"
                << format_float(orthogonality_defect(rotation)) << "\n";
      return 0;
    }

    if (trend_cmd->parsed()) {
      const harness::Model model = harness::model_from_name(trend_model);
      grem::GremSpec spec = grem::GremSpec::geometric();
      if (!trend_spec_path.empty()) {
        spec = grem::spec_from_json(slurp(trend_spec_path));
      }
      const std::uint64_t seed = tf.seed_set ? tf.seed : 1;
      const harness::TrendReport rep = harness::fekete_trend(
          model, model == harness::Model::grem ? &spec : nullptr, trend_sizes,
          trend_beta, trend_samples, seed, tf.threads);
      std::cout << harness::trend_csv_header() << "\n";
      for (const auto& row : rep.rows) {
        std::cout << harness::trend_csv_row(row) << "\n";
      }
      return rep.all_ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
