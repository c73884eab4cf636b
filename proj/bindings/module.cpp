#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinterp/alignment.hpp"
#include "spinterp/harness.hpp"

namespace py = pybind11;
using namespace spinterp;

namespace {

grem::LeafPath path_from_choices(const std::vector<std::uint32_t>& choices) {
  return grem::LeafPath{choices};
}

}  // namespace

PYBIND11_MODULE(spinterp, m) {
  m.doc() =
      "Gaussian comparison inequalities for mean-field spin glasses: "
      "metric conditions, SK and infinite-level GREM models, isometry "
      "recovery, and Monte Carlo verification.";

  py::register_exception<Error>(m, "Error");

  py::class_<CovarianceMatrix>(m, "CovarianceMatrix")
      .def_property_readonly("dim", &CovarianceMatrix::dim)
      .def_property_readonly(
          "entries", [](const CovarianceMatrix& c) { return c.entries(); });

  py::class_<MetricMatrix>(m, "MetricMatrix")
      .def_property_readonly("dim", &MetricMatrix::dim)
      .def_property_readonly(
          "entries", [](const MetricMatrix& d) { return d.entries(); });

  py::class_<FactorMatrix>(m, "FactorMatrix")
      .def(py::init<Eigen::MatrixXd>())
      .def_property_readonly("dim", &FactorMatrix::dim)
      .def_property_readonly(
          "entries", [](const FactorMatrix& a) { return a.entries(); });

  py::class_<WeightVector>(m, "WeightVector")
      .def_static("validated", &WeightVector::validated)
      .def_static("uniform", &WeightVector::uniform)
      .def_property_readonly(
          "entries", [](const WeightVector& w) { return w.entries(); });

  py::class_<QuenchedEstimate>(m, "QuenchedEstimate")
      .def_readonly("mean", &QuenchedEstimate::mean)
      .def_readonly("std_error", &QuenchedEstimate::std_error)
      .def_readonly("samples", &QuenchedEstimate::samples)
      .def_readonly("seed", &QuenchedEstimate::seed)
      .def("__repr__", [](const QuenchedEstimate& q) {
        return "QuenchedEstimate(mean=" + std::to_string(q.mean) +
               ", std_error=" + std::to_string(q.std_error) + ")";
      });

  py::class_<ComparisonVerdict>(m, "ComparisonVerdict")
      .def_readonly("classic_diag_ok", &ComparisonVerdict::classic_diag_ok)
      .def_readonly("classic_offdiag_ok",
                    &ComparisonVerdict::classic_offdiag_ok)
      .def_readonly("metric_ok", &ComparisonVerdict::metric_ok)
      .def_readonly("worst_violation", &ComparisonVerdict::worst_violation)
      .def_readonly("worst_i", &ComparisonVerdict::worst_i)
      .def_readonly("worst_j", &ComparisonVerdict::worst_j);

  py::class_<EuclideanTest>(m, "EuclideanTest")
      .def_readonly("euclidean", &EuclideanTest::euclidean)
      .def_readonly("gram", &EuclideanTest::gram)
      .def_readonly("min_eigenvalue", &EuclideanTest::min_eigenvalue);

  py::class_<SimplexCheck>(m, "SimplexCheck")
      .def_readonly("closed_form", &SimplexCheck::closed_form)
      .def_readonly("brute_force", &SimplexCheck::brute_force)
      .def_readonly("min_value", &SimplexCheck::min_value)
      .def_readonly("witness", &SimplexCheck::witness);

  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("n", &InequalityReport::n)
      .def_readonly("seed", &InequalityReport::seed)
      .def_readonly("m", &InequalityReport::m)
      .def_readonly("f_x", &InequalityReport::f_x)
      .def_readonly("f_y", &InequalityReport::f_y)
      .def_readonly("classic", &InequalityReport::classic)
      .def_readonly("metric", &InequalityReport::metric)
      .def_readonly("holds", &InequalityReport::holds)
      .def("csv_row", &inequality_csv_row);

  m.def("validate_covariance", &validate_covariance, py::arg("matrix"),
        py::arg("psd_tol") = kPsdTol);
  m.def("validate_metric", &validate_metric, py::arg("matrix"),
        py::arg("tol") = kCompareTol);
  m.def("metric_from_covariance", &metric_from_covariance, py::arg("cov"),
        py::arg("psd_tol") = kPsdTol);
  m.def("gram_from_points",
        py::overload_cast<const Eigen::MatrixXd&>(&gram_from_points),
        py::arg("points_as_rows"));
  m.def("factor_covariance", &factor_covariance, py::arg("cov"),
        py::arg("ridge") = -1.0);
  m.def("sample_gaussian", &sample_gaussian, py::arg("factor"),
        py::arg("seed"), py::arg("m"));
  m.def("is_euclidean_metric", &is_euclidean_metric, py::arg("metric"),
        py::arg("eig_tol") = kPsdTol);
  m.def("metrics_equal", &metrics_equal, py::arg("cx"), py::arg("cy"),
        py::arg("tol") = kCompareTol);

  m.def("log_partition_f", &log_partition_f, py::arg("x"), py::arg("weights"));
  m.def("gibbs_weights",
        [](const Eigen::VectorXd& x, const WeightVector& w) {
          return gibbs_weights(x, w).entries();
        },
        py::arg("x"), py::arg("weights"));
  m.def("hessian_f", &hessian_f, py::arg("x"), py::arg("weights"));
  m.def("estimate_F", &estimate_F, py::arg("cov"), py::arg("weights"),
        py::arg("m"), py::arg("seed"), py::arg("threads") = 1);
  m.def("interpolation_rhs", &interpolation_rhs, py::arg("cx"), py::arg("cy"),
        py::arg("weights"), py::arg("t_nodes"), py::arg("m"), py::arg("seed"),
        py::arg("threads") = 1);
  m.def("check_classic_conditions", &check_classic_conditions, py::arg("cx"),
        py::arg("cy"), py::arg("tol") = kCompareTol);
  m.def("check_metric_conditions", &check_metric_conditions, py::arg("cx"),
        py::arg("cy"), py::arg("tol") = kCompareTol);
  m.def("simplex_G",
        [](const Eigen::MatrixXd& d, const Eigen::VectorXd& mu) {
          return simplex_G(d, GibbsVector::validated(mu));
        },
        py::arg("d"), py::arg("mu"));
  m.def("simplex_G_nonneg", &simplex_G_nonneg, py::arg("d"));
  m.def("verify_inequality", &verify_inequality, py::arg("cx"), py::arg("cy"),
        py::arg("weights"), py::arg("m"), py::arg("seed"),
        py::arg("threads") = 1);

  py::class_<SpinConfig>(m, "SpinConfig")
      .def(py::init<int, std::uint32_t>(), py::arg("n"), py::arg("bits"))
      .def_property_readonly("size", &SpinConfig::size)
      .def_property_readonly("bits", &SpinConfig::bits)
      .def("spin", &SpinConfig::spin)
      .def("flipped_all", &SpinConfig::flipped_all)
      .def("__eq__", [](const SpinConfig& a, const SpinConfig& b) {
        return a == b;
      });

  py::class_<RigidMotion>(m, "RigidMotion")
      .def_readonly("rotation", &RigidMotion::rotation)
      .def_readonly("offset", &RigidMotion::offset);
  m.def("recover_rotation", &recover_rotation, py::arg("v_points"),
        py::arg("w_points"), py::arg("tol") = kAlignTol);
  m.def("recover_isometry", &recover_isometry, py::arg("v_points"),
        py::arg("w_points"), py::arg("tol") = kAlignTol);
  m.def("alignment_residual",
        [](const Eigen::MatrixXd& v, const Eigen::MatrixXd& w,
           const Eigen::MatrixXd& rot, std::optional<Eigen::VectorXd> off) {
          return alignment_residual(v, w, rot, off ? &*off : nullptr);
        },
        py::arg("v_points"), py::arg("w_points"), py::arg("rotation"),
        py::arg("offset") = std::nullopt);
  m.def("orthogonality_defect", &orthogonality_defect, py::arg("rotation"));

  auto sk_mod = m.def_submodule("sk", "Sherrington-Kirkpatrick model");
  py::class_<sk::Disorder>(sk_mod, "Disorder")
      .def_static("draw", &sk::Disorder::draw, py::arg("n"), py::arg("seed"))
      .def_readonly("n", &sk::Disorder::n)
      .def_readonly("seed", &sk::Disorder::seed)
      .def_readonly("couplings", &sk::Disorder::couplings);
  py::class_<sk::SuperPythagoreanReport>(sk_mod, "SuperPythagoreanReport")
      .def_readonly("holds", &sk::SuperPythagoreanReport::holds)
      .def_readonly("worst_margin", &sk::SuperPythagoreanReport::worst_margin)
      .def_readonly("worst_xor", &sk::SuperPythagoreanReport::worst_xor);
  py::class_<sk::SubadditivityReport>(sk_mod, "SubadditivityReport")
      .def_readonly("n", &sk::SubadditivityReport::n)
      .def_readonly("n1", &sk::SubadditivityReport::n1)
      .def_readonly("n2", &sk::SubadditivityReport::n2)
      .def_readonly("beta", &sk::SubadditivityReport::beta)
      .def_readonly("alpha_n", &sk::SubadditivityReport::alpha_n)
      .def_readonly("alpha_n1", &sk::SubadditivityReport::alpha_n1)
      .def_readonly("alpha_n2", &sk::SubadditivityReport::alpha_n2)
      .def_readonly("holds", &sk::SubadditivityReport::holds)
      .def("csv_row", &sk::subadditivity_csv_row);
  sk_mod.def("overlap", &sk::overlap);
  sk_mod.def("hamming_fraction", &sk::hamming_fraction);
  sk_mod.def("metric_entry", &sk::metric_entry, py::arg("sigma"),
             py::arg("tau"), py::arg("beta"));
  sk_mod.def("hamiltonian_table",
             [](const sk::Disorder& d,
                std::optional<std::vector<int>> subset) {
               return subset ? sk::hamiltonian_table(d, *subset)
                             : sk::hamiltonian_table(d);
             },
             py::arg("disorder"), py::arg("subset") = std::nullopt);
  sk_mod.def("quenched_alpha", &sk::quenched_alpha, py::arg("n"),
             py::arg("beta"), py::arg("m_draws"), py::arg("seed"),
             py::arg("threads") = 1);
  sk_mod.def("check_superpythagorean", &sk::check_superpythagorean,
             py::arg("n1"), py::arg("n2"), py::arg("beta"));
  sk_mod.def("check_subadditivity", &sk::check_subadditivity, py::arg("n1"),
             py::arg("n2"), py::arg("beta"), py::arg("m"), py::arg("seed"),
             py::arg("threads") = 1);
  m.def("log_partition", &log_partition, py::arg("energies"),
        py::arg("beta"));

  auto grem_mod = m.def_submodule("grem", "infinite-level GREM");
  py::enum_<grem::Tail>(grem_mod, "Tail")
      .value("none", grem::Tail::none)
      .value("geometric", grem::Tail::geometric);
  py::class_<grem::GremSpec>(grem_mod, "GremSpec")
      .def_static("validated", &grem::GremSpec::validated, py::arg("gammas"),
                  py::arg("variances"), py::arg("tail") = grem::Tail::none)
      .def_static("geometric", &grem::GremSpec::geometric)
      .def("gamma", &grem::GremSpec::gamma)
      .def("variance", &grem::GremSpec::variance)
      .def_property_readonly("tail", &grem::GremSpec::tail)
      .def("to_json", &grem::spec_to_json)
      .def_static("from_json", &grem::spec_from_json);
  py::class_<grem::GremTree>(grem_mod, "GremTree")
      .def_readonly("n_param", &grem::GremTree::n_param)
      .def_readonly("k", &grem::GremTree::k)
      .def_readonly("offsets", &grem::GremTree::offsets)
      .def_property_readonly("n_levels", &grem::GremTree::n_levels)
      .def_property_readonly("total_spins", &grem::GremTree::total_spins)
      .def_property_readonly("num_leaves", &grem::GremTree::num_leaves);
  py::class_<grem::TreeDistance>(grem_mod, "TreeDistance")
      .def_readonly("s", &grem::TreeDistance::s)
      .def_readonly("d", &grem::TreeDistance::d);
  py::class_<grem::SplitResult>(grem_mod, "SplitResult")
      .def_readonly("full", &grem::SplitResult::full)
      .def_readonly("part1", &grem::SplitResult::part1)
      .def_readonly("part2", &grem::SplitResult::part2)
      .def_readonly("labels1", &grem::SplitResult::labels1)
      .def_readonly("labels2", &grem::SplitResult::labels2)
      .def_readonly("lost", &grem::SplitResult::lost);
  py::class_<grem::MonotonicityReport>(grem_mod, "MonotonicityReport")
      .def_readonly("holds", &grem::MonotonicityReport::holds)
      .def_readonly("worst_gap", &grem::MonotonicityReport::worst_gap);
  py::class_<grem::SuperPythagoreanReport>(grem_mod, "SuperPythagoreanReport")
      .def_readonly("holds", &grem::SuperPythagoreanReport::holds)
      .def_readonly("worst_margin",
                    &grem::SuperPythagoreanReport::worst_margin)
      .def_readonly("max_holds", &grem::SuperPythagoreanReport::max_holds)
      .def_readonly("worst_max_gap",
                    &grem::SuperPythagoreanReport::worst_max_gap);
  py::class_<grem::SubadditivityReport>(grem_mod, "SubadditivityReport")
      .def_readonly("n", &grem::SubadditivityReport::n)
      .def_readonly("n1", &grem::SubadditivityReport::n1)
      .def_readonly("n2", &grem::SubadditivityReport::n2)
      .def_readonly("k_total", &grem::SubadditivityReport::k_total)
      .def_readonly("lost", &grem::SubadditivityReport::lost)
      .def_readonly("alpha_n", &grem::SubadditivityReport::alpha_n)
      .def_readonly("alpha_n1", &grem::SubadditivityReport::alpha_n1)
      .def_readonly("alpha_n2", &grem::SubadditivityReport::alpha_n2)
      .def_readonly("holds_corrected",
                    &grem::SubadditivityReport::holds_corrected)
      .def_readonly("holds_plain", &grem::SubadditivityReport::holds_plain)
      .def_readonly("holds", &grem::SubadditivityReport::holds)
      .def("csv_row", &grem::subadditivity_csv_row);
  py::class_<grem::RatioRow>(grem_mod, "RatioRow")
      .def_readonly("n", &grem::RatioRow::n)
      .def_readonly("k_over_n", &grem::RatioRow::k_over_n)
      .def_readonly("max_correction_ratio",
                    &grem::RatioRow::max_correction_ratio);
  grem_mod.def("build", &grem::build, py::arg("spec"), py::arg("n"));
  grem_mod.def("tree_from_branching", &grem::tree_from_branching,
               py::arg("k"));
  grem_mod.def("leaf_config",
               [](const grem::GremTree& t,
                  const std::vector<std::uint32_t>& choices) {
                 return grem::leaf_config(t, path_from_choices(choices));
               },
               py::arg("tree"), py::arg("choices"));
  grem_mod.def("path_from_config",
               [](const grem::GremTree& t, const SpinConfig& sigma) {
                 return grem::path_from_config(t, sigma).choices;
               },
               py::arg("tree"), py::arg("config"));
  grem_mod.def("leaf_index", &grem::leaf_index);
  grem_mod.def("config_from_leaf_index", &grem::config_from_leaf_index);
  grem_mod.def("merge_level", &grem::merge_level);
  grem_mod.def("distance", &grem::distance);
  grem_mod.def("distance_squared", &grem::distance_squared);
  grem_mod.def("covariance", &grem::covariance);
  grem_mod.def("sample_energies", &grem::sample_energies, py::arg("tree"),
               py::arg("spec"), py::arg("seed"));
  grem_mod.def("split", &grem::split, py::arg("spec"), py::arg("n"),
               py::arg("n1"), py::arg("n2"));
  grem_mod.def("restrict_config",
               [](const SpinConfig& sigma, const std::vector<int>& kept) {
                 return grem::restrict_config(sigma, kept);
               });
  grem_mod.def("check_distance_monotonicity",
               [](const grem::GremTree& tree, const grem::GremTree& subtree,
                  const std::vector<int>& label_map,
                  const grem::GremSpec& spec) {
                 return grem::check_distance_monotonicity(tree, subtree,
                                                          label_map, spec);
               });
  grem_mod.def("check_superpythagorean", &grem::check_superpythagorean);
  grem_mod.def("quenched_alpha", &grem::quenched_alpha, py::arg("tree"),
               py::arg("spec"), py::arg("beta"), py::arg("m_draws"),
               py::arg("seed"), py::arg("threads") = 1);
  grem_mod.def("check_subadditivity", &grem::check_subadditivity,
               py::arg("spec"), py::arg("n"), py::arg("n1"), py::arg("n2"),
               py::arg("beta"), py::arg("m"), py::arg("seed"),
               py::arg("threads") = 1);
  grem_mod.def("asymptotic_ratios", &grem::asymptotic_ratios);

  auto harness_mod = m.def_submodule("harness", "experiment driver");
  py::class_<harness::TrendRow>(harness_mod, "TrendRow")
      .def_readonly("size", &harness::TrendRow::size)
      .def_readonly("size_unit", &harness::TrendRow::size_unit)
      .def_readonly("alpha_over_size", &harness::TrendRow::alpha_over_size)
      .def_readonly("std_error", &harness::TrendRow::std_error)
      .def_readonly("running_infimum", &harness::TrendRow::running_infimum)
      .def_readonly("ok", &harness::TrendRow::ok);
  py::class_<harness::TrendReport>(harness_mod, "TrendReport")
      .def_readonly("rows", &harness::TrendReport::rows)
      .def_readonly("all_ok", &harness::TrendReport::all_ok);
  harness_mod.def(
      "fekete_trend",
      [](const std::string& model, std::optional<grem::GremSpec> spec,
         const std::vector<int>& sizes, double beta, std::int64_t samples,
         std::uint64_t seed, int threads) {
        return harness::fekete_trend(harness::model_from_name(model),
                                     spec ? &*spec : nullptr, sizes, beta,
                                     samples, seed, threads);
      },
      py::arg("model"), py::arg("spec"), py::arg("sizes"), py::arg("beta"),
      py::arg("samples"), py::arg("seed"), py::arg("threads") = 1);
  harness_mod.def(
      "run_config",
      [](const std::string& config_json, int threads) {
        const harness::RunResult r = harness::run_config(
            harness::ExperimentConfig::from_json_text(config_json), threads);
        return py::make_tuple(r.all_ok, r.files);
      },
      py::arg("config_json"), py::arg("threads") = 1);
}
