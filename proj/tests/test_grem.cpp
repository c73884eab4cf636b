#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "spinterp/grem.hpp"
#include "spinterp/rng.hpp"
#include "support.hpp"

using namespace spinterp;
using grem::GremSpec;
using grem::GremTree;
using grem::Tail;

namespace {

// Fixed variances a = (1/2, 1/4, 1/8, ...) used by the worked examples.
GremSpec dyadic() { return GremSpec::geometric(); }

GremTree fig_tree() { return grem::tree_from_branching({1, 2, 1}); }

}  // namespace

TEST_CASE("spec validation") {
  CHECK_NOTHROW(GremSpec::validated({0.5, 0.25}, {0.5, 0.25},
                                    Tail::geometric));
  CHECK_THROWS_AS(GremSpec::validated({0.5, -0.1}, {0.5, 0.25}, Tail::none),
                  SpecInvalid);
  CHECK_THROWS_AS(GremSpec::validated({0.8, 0.8}, {0.5, 0.25}, Tail::none),
                  SpecInvalid);
  CHECK_THROWS_AS(GremSpec::validated({0.2, 0.3}, {0.2, 0.3},
                                      Tail::geometric),
                  SpecInvalid);  // increasing tail
  const GremSpec s = dyadic();
  CHECK(s.gamma(1) == 0.5);
  CHECK(s.gamma(5) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
  CHECK(s.variance(3) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("spec json round trip") {
  const GremSpec s = dyadic();
  const GremSpec back = grem::spec_from_json(grem::spec_to_json(s));
  CHECK(back.gamma_prefix() == s.gamma_prefix());
  CHECK(back.tail() == Tail::geometric);
  CHECK_THROWS_AS(grem::spec_from_json("{}"), SpecInvalid);
}

TEST_CASE("tree construction from the geometric spec") {
  const GremSpec s = dyadic();
  const GremTree t8 = grem::build(s, 8);
  CHECK(t8.k == std::vector<int>{4, 2, 1});
  CHECK(t8.n_levels() == 3);
  CHECK(t8.total_spins() == 7);

  const GremTree t4 = grem::build(s, 4);
  CHECK(t4.k == std::vector<int>{2, 1});
  CHECK(t4.total_spins() == 3);

  for (int n = 0; n <= 64; ++n) {
    CHECK(grem::build(s, n).total_spins() <= n);
  }
  CHECK(grem::build(s, 0).total_spins() == 0);
  CHECK(grem::build(s, 1).total_spins() == 0);
}

TEST_CASE("leaf labeling reproduces the worked example") {
  const GremTree t = fig_tree();
  // k = (1,2,1), choices (0,1,0) -> sigma = (-1,-1,+1,-1).
  const SpinConfig sigma = grem::leaf_config(t, {{0, 1, 0}});
  CHECK(sigma.spin(0) == -1);
  CHECK(sigma.spin(1) == -1);
  CHECK(sigma.spin(2) == +1);
  CHECK(sigma.spin(3) == -1);
  // choices (0,3,1) -> tau = (-1,+1,+1,+1).
  const SpinConfig tau = grem::leaf_config(t, {{0, 3, 1}});
  CHECK(tau.spin(0) == -1);
  CHECK(tau.spin(1) == +1);
  CHECK(tau.spin(2) == +1);
  CHECK(tau.spin(3) == +1);

  const SpinConfig zeros = grem::leaf_config(t, {{0, 0, 0}});
  for (int i = 0; i < 4; ++i) CHECK(zeros.spin(i) == -1);

  CHECK_THROWS_AS(grem::leaf_config(t, {{0, 1}}), PathInvalid);
  CHECK_THROWS_AS(grem::leaf_config(t, {{0, 4, 0}}), PathInvalid);
}

TEST_CASE("labeling is a bijection") {
  const GremSpec s = dyadic();
  const GremTree t = grem::build(s, 8);  // |k| = 7
  std::set<std::uint32_t> seen;
  for (std::uint32_t leaf = 0; leaf < t.num_leaves(); ++leaf) {
    const SpinConfig sigma = grem::config_from_leaf_index(t, leaf);
    seen.insert(sigma.bits());
    const grem::LeafPath p = grem::path_from_config(t, sigma);
    const SpinConfig back = grem::leaf_config(t, p);
    CHECK(back == sigma);
  }
  CHECK(seen.size() == static_cast<std::size_t>(t.num_leaves()));
}

TEST_CASE("merge level") {
  const GremTree t = fig_tree();
  const SpinConfig sigma = grem::leaf_config(t, {{0, 1, 0}});
  const SpinConfig tau = grem::leaf_config(t, {{0, 3, 1}});
  CHECK(grem::merge_level(t, sigma, sigma) == 3);
  CHECK(grem::merge_level(t, sigma, tau) == 1);  // first differ at level 2
  const SpinConfig rho = grem::leaf_config(t, {{1, 1, 0}});
  CHECK(grem::merge_level(t, sigma, rho) == 0);
}

TEST_CASE("distances match the worked example") {
  const GremSpec s = dyadic();
  const GremTree t = fig_tree();
  const SpinConfig sigma = grem::leaf_config(t, {{0, 1, 0}});
  const SpinConfig tau = grem::leaf_config(t, {{0, 3, 1}});

  const grem::TreeDistance same = grem::distance(t, s, sigma, sigma);
  CHECK(same.s == 0.0);
  CHECK(same.d == 0.0);

  // merge at level 1: s = sqrt(2 (a2 + a3)) = sqrt(3/4).
  const grem::TreeDistance ds = grem::distance(t, s, sigma, tau);
  CHECK(ds.s == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(ds.d == doctest::Approx(2.0 * std::sqrt(0.75)).epsilon(1e-15));

  // Coalescing label m* = 2 gives k' = (1,1,1) and s' = sqrt(2 a3) = 1/2.
  const GremTree tp = grem::tree_from_branching({1, 1, 1});
  const std::vector<int> kept{0, 2, 3};
  const SpinConfig sp = grem::restrict_config(sigma, kept);
  const SpinConfig tp2 = grem::restrict_config(tau, kept);
  const grem::TreeDistance dsp = grem::distance(tp, s, sp, tp2);
  CHECK(dsp.s == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dsp.s < ds.s);
}

TEST_CASE("covariance and the exact metric identity") {
  const GremSpec s = dyadic();
  const GremTree t = grem::build(s, 8);  // dyadic level sums: all exact
  const int leaves = static_cast<int>(t.num_leaves());
  for (int a = 0; a < leaves; a += 3) {
    for (int b = 0; b < leaves; b += 5) {
      const SpinConfig sa = grem::config_from_leaf_index(t, a);
      const SpinConfig sb = grem::config_from_leaf_index(t, b);
      const double dsq = grem::distance_squared(t, s, sa, sb);
      const double rhs = grem::covariance(t, s, sa, sa) +
                         grem::covariance(t, s, sb, sb) -
                         2.0 * grem::covariance(t, s, sa, sb);
      CHECK(dsq == rhs);
    }
  }
  const SpinConfig first = grem::config_from_leaf_index(t, 0);
  const SpinConfig opposite =
      grem::config_from_leaf_index(t, (1u << 7) - 1u);
  CHECK(grem::covariance(t, s, first, opposite) == 0.0);  // l = 0
  const double full = grem::covariance(t, s, first, first);
  CHECK(full == 7.0 * (0.5 + 0.25 + 0.125));
}

TEST_CASE("ultrametricity holds exactly") {
  const GremSpec s = dyadic();
  const GremTree t = grem::build(s, 8);
  const int leaves = static_cast<int>(t.num_leaves());
  std::vector<std::vector<double>> d(leaves, std::vector<double>(leaves));
  for (int a = 0; a < leaves; ++a) {
    for (int b = 0; b < leaves; ++b) {
      d[a][b] = grem::distance(t, s, grem::config_from_leaf_index(t, a),
                               grem::config_from_leaf_index(t, b))
                    .d;
    }
  }
  for (int a = 0; a < leaves; ++a) {
    for (int b = 0; b < leaves; ++b) {
      for (int c = 0; c < leaves; ++c) {
        CHECK(d[a][b] <= std::max(d[a][c], d[c][b]));
      }
    }
  }
}

TEST_CASE("interior zero levels carry nothing") {
  const GremTree t = grem::tree_from_branching({2, 0, 1});
  CHECK(t.n_levels() == 3);
  CHECK(t.total_spins() == 3);
  const GremSpec s = dyadic();
  const SpinConfig a = grem::leaf_config(t, {{0, 0, 0}});
  const SpinConfig b = grem::leaf_config(t, {{0, 0, 1}});
  CHECK(grem::merge_level(t, a, b) == 2);
  // Only a3 separates them; a2 is inert on the zero level.
  CHECK(grem::distance(t, s, a, b).s ==
        doctest::Approx(std::sqrt(2.0 * 0.125)).epsilon(1e-15));
  const auto edges = grem::sample_edges(t, s, 5);
  CHECK(edges[1].empty());
}

TEST_CASE("energies share edge draws structurally") {
  const GremSpec s = dyadic();
  const GremTree t = fig_tree();
  const auto edges = grem::sample_edges(t, s, 99);
  const auto energies = grem::energies_from_edges(t, edges);
  REQUIRE(energies.size() == 16);
  const double scale = -std::sqrt(4.0);
  for (std::uint32_t leaf = 0; leaf < 16; ++leaf) {
    double acc = 0.0;
    acc += edges[0][leaf >> 3];
    acc = acc + edges[1][leaf >> 1];
    acc = acc + edges[2][leaf];
    CHECK(energies[leaf] == scale * acc);
  }
  const auto again = grem::sample_energies(t, s, 99);
  CHECK(again == energies);
}

TEST_CASE("single level is the independent case") {
  const GremSpec s = dyadic();
  const GremTree rem = grem::tree_from_branching({3});
  // Empirical second moments over many disorder draws.
  const int draws = 100000;
  double e00 = 0.0, e01 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto en = grem::sample_energies(rem, s, derive_seed(7, "rem", i));
    e00 += en[0] * en[0];
    e01 += en[0] * en[1];
  }
  e00 /= draws;
  e01 /= draws;
  // Var = |k| a1 = 1.5; distinct leaves independent.
  CHECK(std::abs(e00 - 1.5) <= 5.0 * 1.5 * std::sqrt(2.0 / draws));
  CHECK(std::abs(e01) <= 5.0 * 1.5 / std::sqrt(double(draws)));
}

TEST_CASE("empirical pair covariance matches the tree covariance") {
  const GremSpec s = dyadic();
  const GremTree t = fig_tree();
  const SpinConfig sigma = grem::leaf_config(t, {{0, 1, 0}});
  const SpinConfig tau = grem::leaf_config(t, {{0, 3, 1}});
  const std::uint32_t li = grem::leaf_index(t, sigma);
  const std::uint32_t lj = grem::leaf_index(t, tau);
  const double expected = grem::covariance(t, s, sigma, tau);

  const int draws = 100000;
  std::vector<double> prods(draws);
  for (int i = 0; i < draws; ++i) {
    const auto en = grem::sample_energies(t, s, derive_seed(8, "cov", i));
    prods[static_cast<std::size_t>(i)] = en[li] * en[lj];
  }
  const MeanStderr ms = mean_and_stderr(prods);
  CHECK(std::abs(ms.mean - expected) <= 5.0 * ms.std_error);
}

TEST_CASE("splitting loses the trailing labels") {
  const GremSpec s = dyadic();
  const grem::SplitResult sp = grem::split(s, 8, 4, 4);
  CHECK(sp.full.total_spins() == 7);
  CHECK(sp.part1.total_spins() == 3);
  CHECK(sp.part2.total_spins() == 3);
  CHECK(sp.lost == 1);
  // k(8) = (4,2,1), k(4) = (2,1): level 1 splits {0,1} | {2,3}, level 2
  // splits {4} | {5}, and the level-3 label 6 is lost.
  CHECK(sp.labels1 == std::vector<int>{0, 1, 4});
  CHECK(sp.labels2 == std::vector<int>{2, 3, 5});
  CHECK_THROWS_AS(grem::split(s, 8, 5, 4), SplitInvalid);

  const grem::SplitResult degenerate = grem::split(s, 8, 8, 0);
  CHECK(degenerate.part1.total_spins() == 7);
  CHECK(degenerate.part2.total_spins() == 0);
  CHECK(degenerate.lost == 0);
}

TEST_CASE("per-level split inequality for all sizes and splits") {
  const GremSpec s = dyadic();
  for (int n = 0; n <= 64; ++n) {
    const GremTree full = grem::build(s, n);
    for (int n1 = 0; n1 <= n; ++n1) {
      const GremTree a = grem::build(s, n1);
      const GremTree b = grem::build(s, n - n1);
      const int lost =
          full.total_spins() - a.total_spins() - b.total_spins();
      CHECK(lost >= 0);
      for (int i = 1; i <= full.n_levels(); ++i) {
        const int ki = full.k[i - 1];
        const int k1 = i <= a.n_levels() ? a.k[i - 1] : 0;
        const int k2 = i <= b.n_levels() ? b.k[i - 1] : 0;
        CHECK(k1 + k2 <= ki);
        CHECK(ki <= k1 + k2 + 1);
      }
    }
  }
}

TEST_CASE("distance monotonicity under coalescence") {
  const GremSpec s = dyadic();
  const GremTree t = fig_tree();

  // The worked case: drop label m* = 2 (site 1).
  const GremTree tp = grem::tree_from_branching({1, 1, 1});
  const grem::MonotonicityReport rep =
      grem::check_distance_monotonicity(t, tp, std::vector<int>{0, 2, 3}, s);
  CHECK(rep.holds);

  // Identity map: equality everywhere.
  std::vector<int> all{0, 1, 2, 3};
  const grem::MonotonicityReport same =
      grem::check_distance_monotonicity(t, t, all, s);
  CHECK(same.holds);
  CHECK(same.worst_gap == 0.0);

  // Random single-decrement chains stay monotone at every step.
  GaussianStream g(55, 0);
  GremTree cur = grem::build(s, 8);
  std::vector<int> labels(static_cast<std::size_t>(cur.total_spins()));
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = int(i);
  while (cur.total_spins() > 1) {
    std::vector<int> k = cur.k;
    int level = 0;
    do {
      level = int(g.uniform() * k.size());
      if (level >= int(k.size())) level = int(k.size()) - 1;
    } while (k[level] == 0);
    k[level] -= 1;
    const GremTree next = grem::tree_from_branching(k);
    // Drop one label of that level (the last of its range).
    std::vector<int> kept;
    const int drop = cur.offsets[level] + k[level];
    for (int site = 0; site < cur.total_spins(); ++site) {
      if (site != drop) kept.push_back(site);
    }
    const grem::MonotonicityReport step =
        grem::check_distance_monotonicity(cur, next, kept, s);
    CHECK(step.holds);
    // Compose the label maps so the chain stays anchored to the big tree.
    std::vector<int> composed;
    for (int site : kept) composed.push_back(labels[site]);
    labels = composed;
    cur = next;
  }
}

TEST_CASE("super-pythagorean condition for tree splits") {
  const GremSpec s = dyadic();
  for (auto [n, n1, n2] : {std::array<int, 3>{4, 2, 2},
                           std::array<int, 3>{8, 4, 4},
                           std::array<int, 3>{8, 3, 5}}) {
    const grem::SuperPythagoreanReport rep =
        grem::check_superpythagorean(s, n, n1, n2);
    CHECK(rep.holds);
    CHECK(rep.max_holds);
    CHECK(rep.worst_margin >= 0.0);
  }
}

TEST_CASE("quenched alpha: free limit, REM cross-check, Jensen floor") {
  const GremSpec s = dyadic();
  const GremTree t = grem::build(s, 8);
  const QuenchedEstimate free_limit =
      grem::quenched_alpha(t, s, 1e-8, 10, 1);
  CHECK(std::abs(free_limit.mean + 7.0 * std::numbers::ln2) <= 1e-6);

  // Single-level tree vs a direct i.i.d. simulation.
  const GremTree rem = grem::tree_from_branching({4});
  const double beta = 1.0;
  const QuenchedEstimate viatree =
      grem::quenched_alpha(rem, s, beta, 4000, 2);
  std::vector<double> direct(4000);
  const double sd = std::sqrt(4.0 * 0.5);  // |k| a_1
  for (int i = 0; i < 4000; ++i) {
    GaussianStream g(derive_seed(77, "iid", i), 0);
    std::vector<double> en(16);
    for (double& e : en) e = -sd * g.next();
    direct[static_cast<std::size_t>(i)] = -log_partition(en, beta);
  }
  const MeanStderr oracle = mean_and_stderr(direct);
  CHECK(std::abs(viatree.mean - oracle.mean) <=
        3.0 * std::sqrt(viatree.std_error * viatree.std_error +
                        oracle.std_error * oracle.std_error));

  // -alpha/|k| <= log 2 + beta^2/2 (corrected annealed bound).
  const QuenchedEstimate q = grem::quenched_alpha(t, s, beta, 500, 3);
  CHECK(-q.mean / 7.0 <=
        std::numbers::ln2 + beta * beta / 2.0 + 3.0 * q.std_error / 7.0);
}

TEST_CASE("subadditivity with the lost-spin correction") {
  const GremSpec s = dyadic();
  const grem::SubadditivityReport rep =
      grem::check_subadditivity(s, 8, 4, 4, 1.0, 500, 9);
  CHECK(rep.k_total == 7);
  CHECK(rep.lost == 1);
  CHECK(rep.holds_corrected);
  CHECK(rep.holds_plain);

  // Counting identity: |k(N)| = |k(N1)| + |k(N2)| + lost, and the beta -> 0
  // estimates sit on it.
  const grem::SubadditivityReport tiny =
      grem::check_subadditivity(s, 8, 4, 4, 1e-8, 10, 10);
  CHECK(std::abs(tiny.alpha_n.mean + 7.0 * std::numbers::ln2) <= 1e-6);
  CHECK(std::abs(tiny.alpha_n.mean - tiny.alpha_n1.mean -
                 tiny.alpha_n2.mean + tiny.lost * std::numbers::ln2) <= 1e-6);

  const std::string row = grem::subadditivity_csv_row(rep);
  CHECK(std::count(row.begin(), row.end(), ',') == 14);
}

TEST_CASE("per-draw product identity with the 2^lost factor") {
  const GremSpec s = dyadic();
  const grem::SplitResult sp = grem::split(s, 8, 4, 4);
  const double beta = 0.9;
  for (std::uint64_t seed : {1, 2}) {
    const auto e1 = grem::sample_energies(sp.part1, s, derive_seed(seed, "a"));
    const auto e2 = grem::sample_energies(sp.part2, s, derive_seed(seed, "b"));
    std::vector<double> joint(sp.full.num_leaves());
    for (std::uint32_t leaf = 0; leaf < joint.size(); ++leaf) {
      const SpinConfig sigma = grem::config_from_leaf_index(sp.full, leaf);
      const std::uint32_t i1 =
          grem::leaf_index(sp.part1, grem::restrict_config(sigma, sp.labels1));
      const std::uint32_t i2 =
          grem::leaf_index(sp.part2, grem::restrict_config(sigma, sp.labels2));
      joint[leaf] = e1[i1] + e2[i2];
    }
    const double lhs = log_partition(joint, beta);
    const double rhs = log_partition(e1, beta) + log_partition(e2, beta) +
                       sp.lost * std::numbers::ln2;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("asymptotic ratios") {
  const GremSpec s = dyadic();
  std::vector<int> sizes;
  for (int m = 2; m <= 10; ++m) sizes.push_back(1 << m);
  const auto rows = grem::asymptotic_ratios(s, sizes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int m = static_cast<int>(i) + 2;
    CHECK(rows[i].k_over_n == 1.0 - std::pow(2.0, -m));
  }
  const auto small = grem::asymptotic_ratios(s, {8});
  CHECK(rows.back().max_correction_ratio < small[0].max_correction_ratio);
}

TEST_CASE("guards reject oversized trees") {
  const GremSpec s = dyadic();
  CHECK_THROWS_AS(grem::sample_energies(grem::build(s, 24), s, 1), TooLarge);
  CHECK_THROWS_AS(grem::check_superpythagorean(s, 16, 8, 8), TooLarge);
  CHECK_THROWS_AS(grem::check_subadditivity(s, 16, 8, 8, 1.0, 10, 1),
                  TooLarge);
}

TEST_CASE("config mismatches raise ConfigInvalid") {
  const GremSpec s = dyadic();
  const GremTree t = grem::build(s, 8);
  const SpinConfig wrong(3, 0);
  CHECK_THROWS_AS(grem::merge_level(t, wrong, wrong), ConfigInvalid);
  CHECK_THROWS_AS(grem::distance(t, s, wrong, wrong), ConfigInvalid);
  CHECK_THROWS_AS(grem::covariance(t, s, wrong, wrong), ConfigInvalid);
  CHECK_THROWS_AS(grem::asymptotic_ratios(s, {8, 4}), Error);
}
