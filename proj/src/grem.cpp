#include "spinterp/grem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "spinterp/matrix_io.hpp"
#include "spinterp/rng.hpp"

namespace spinterp::grem {

namespace {

void check_sequence(const std::vector<double>& xs, Tail tail,
                    const char* name) {
  if (xs.empty()) throw SpecInvalid(std::string(name) + ": empty prefix");
  double partial = 0.0;
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw SpecInvalid(std::string(name) +
                        ": prefix entries must be strictly positive");
    }
    partial += x;
    if (partial > 1.0 + 1e-12) {
      throw SpecInvalid(std::string(name) + ": partial sums exceed 1");
    }
  }
  if (tail == Tail::geometric) {
    if (xs.size() < 2) {
      throw SpecInvalid(std::string(name) +
                        ": geometric tail needs two prefix entries");
    }
    const double r = xs.back() / xs[xs.size() - 2];
    if (!(r < 1.0)) {
      throw SpecInvalid(std::string(name) +
                        ": geometric tail must be decreasing");
    }
    // Limit of all partial sums.
    if (partial + xs.back() * r / (1.0 - r) > 1.0 + 1e-12) {
      throw SpecInvalid(std::string(name) + ": tail sum exceeds 1");
    }
  }
}

}  // namespace

GremSpec GremSpec::validated(std::vector<double> gammas,
                             std::vector<double> variances, Tail tail) {
  check_sequence(gammas, tail, "gammas");
  check_sequence(variances, tail, "variances");
  GremSpec s;
  s.gammas_ = std::move(gammas);
  s.variances_ = std::move(variances);
  s.tail_ = tail;
  if (tail == Tail::geometric) {
    s.gamma_ratio_ = s.gammas_.back() / s.gammas_[s.gammas_.size() - 2];
    s.variance_ratio_ =
        s.variances_.back() / s.variances_[s.variances_.size() - 2];
  }
  return s;
}

GremSpec GremSpec::geometric() {
  return validated({0.5, 0.25}, {0.5, 0.25}, Tail::geometric);
}

namespace {

double extend(const std::vector<double>& prefix, double ratio, Tail tail,
              int i) {
  const int p = static_cast<int>(prefix.size());
  if (i <= p) return prefix[static_cast<std::size_t>(i - 1)];
  if (tail == Tail::none) return 0.0;
  return prefix.back() * std::pow(ratio, i - p);
}

}  // namespace

double GremSpec::gamma(int i) const {
  if (i < 1) throw SpecInvalid("level index is 1-based");
  return extend(gammas_, gamma_ratio_, tail_, i);
}

double GremSpec::variance(int i) const {
  if (i < 1) throw SpecInvalid("level index is 1-based");
  return extend(variances_, variance_ratio_, tail_, i);
}

std::int64_t GremTree::num_leaves() const {
  if (total_spins() > 62) {
    throw TooLarge("leaf counts overflow past 62 spins");
  }
  return std::int64_t{1} << total_spins();
}

int GremTree::level_of_label(int m) const {
  if (m < 1 || m > total_spins()) throw Error("label out of range");
  for (int i = 1; i <= n_levels(); ++i) {
    if (m <= offsets[static_cast<std::size_t>(i)]) return i;
  }
  return n_levels();
}

GremTree tree_from_branching(std::vector<int> k) {
  for (int ki : k) {
    if (ki < 0) throw SpecInvalid("branching exponents must be nonnegative");
  }
  while (!k.empty() && k.back() == 0) k.pop_back();
  GremTree t;
  t.k = std::move(k);
  t.offsets.resize(t.k.size() + 1, 0);
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    t.offsets[i + 1] = t.offsets[i] + t.k[i];
  }
  return t;
}

GremTree build(const GremSpec& spec, int n_param) {
  if (n_param < 0) throw SpecInvalid("size parameter must be nonnegative");
  std::vector<int> k;
  // Scan the whole declared prefix (it may be non-monotone); beyond it the
  // tail is monotone, so the first zero ends the construction.
  for (int i = 1;; ++i) {
    const bool in_prefix = i <= spec.prefix_size();
    if (!in_prefix && spec.tail() == Tail::none) break;
    const int ki = static_cast<int>(std::floor(n_param * spec.gamma(i)));
    if (!in_prefix && ki == 0) break;
    k.push_back(ki);
  }
  GremTree t = tree_from_branching(std::move(k));
  t.n_param = n_param;
  return t;
}

SpinConfig leaf_config(const GremTree& tree, const LeafPath& path) {
  if (static_cast<int>(path.choices.size()) != tree.n_levels()) {
    throw PathInvalid("expected one choice per level");
  }
  std::uint32_t leaf = 0;
  for (int i = 1; i <= tree.n_levels(); ++i) {
    const int ki = tree.k[static_cast<std::size_t>(i - 1)];
    const std::uint32_t c = path.choices[static_cast<std::size_t>(i - 1)];
    if (c >= (std::uint32_t{1} << ki)) {
      throw PathInvalid("choice at level " + std::to_string(i) +
                        " out of range");
    }
    leaf = (leaf << ki) | c;
  }
  return config_from_leaf_index(tree, leaf);
}

LeafPath path_from_config(const GremTree& tree, const SpinConfig& sigma) {
  const std::uint32_t leaf = leaf_index(tree, sigma);
  LeafPath p;
  p.choices.resize(static_cast<std::size_t>(tree.n_levels()), 0);
  const int total = tree.total_spins();
  for (int i = 1; i <= tree.n_levels(); ++i) {
    const int ki = tree.k[static_cast<std::size_t>(i - 1)];
    if (ki == 0) continue;
    const int shift = total - tree.offsets[static_cast<std::size_t>(i)];
    p.choices[static_cast<std::size_t>(i - 1)] =
        (leaf >> shift) & ((std::uint32_t{1} << ki) - 1u);
  }
  return p;
}

std::uint32_t leaf_index(const GremTree& tree, const SpinConfig& sigma) {
  const int total = tree.total_spins();
  if (total > 31) throw TooLarge("leaf indices cap at 31 spins");
  if (sigma.size() != total) {
    throw ConfigInvalid("configuration size does not match the tree");
  }
  // Label m = site m-1; label 1 is the most significant leaf bit.
  std::uint32_t leaf = 0;
  for (int m = 1; m <= total; ++m) {
    leaf = (leaf << 1) | static_cast<std::uint32_t>(sigma.bit(m - 1));
  }
  return leaf;
}

SpinConfig config_from_leaf_index(const GremTree& tree, std::uint32_t leaf) {
  const int total = tree.total_spins();
  if (total > 31) throw TooLarge("leaf indices cap at 31 spins");
  std::uint32_t bits = 0;
  for (int m = 1; m <= total; ++m) {
    const std::uint32_t b = (leaf >> (total - m)) & 1u;
    bits |= b << (m - 1);
  }
  return SpinConfig(total, bits);
}

namespace {

int merge_level_of_leaves(const GremTree& tree, std::uint32_t a,
                          std::uint32_t b) {
  if (a == b) return tree.n_levels();
  const std::uint32_t x = a ^ b;
  // Most significant differing bit <-> lowest differing label.
  const int pos = 31 - std::countl_zero(x);
  const int label = tree.total_spins() - pos;
  return tree.level_of_label(label) - 1;
}

// a~ tail sums: tail[l] = sum_{i>l} a~_i via the backward recurrence, so
// tail is monotone non-increasing in l even in floating point.
struct LevelSums {
  std::vector<double> prefix;  // prefix[l] = sum_{i<=l} a~_i
  std::vector<double> tail;    // tail[l]   = sum_{i>l}  a~_i
};

LevelSums level_sums(const GremTree& tree, const GremSpec& spec) {
  const int n = tree.n_levels();
  LevelSums ls;
  ls.prefix.resize(static_cast<std::size_t>(n) + 1, 0.0);
  ls.tail.resize(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double at =
        tree.k[static_cast<std::size_t>(i - 1)] > 0 ? spec.variance(i) : 0.0;
    ls.prefix[static_cast<std::size_t>(i)] =
        ls.prefix[static_cast<std::size_t>(i - 1)] + at;
  }
  for (int l = n - 1; l >= 0; --l) {
    const double at =
        tree.k[static_cast<std::size_t>(l)] > 0 ? spec.variance(l + 1) : 0.0;
    ls.tail[static_cast<std::size_t>(l)] =
        at + ls.tail[static_cast<std::size_t>(l + 1)];
  }
  return ls;
}

}  // namespace

int merge_level(const GremTree& tree, const SpinConfig& sigma,
                const SpinConfig& tau) {
  if (sigma.size() != tree.total_spins() ||
      tau.size() != tree.total_spins()) {
    throw ConfigInvalid("configuration size does not match the tree");
  }
  return merge_level_of_leaves(tree, leaf_index(tree, sigma),
                               leaf_index(tree, tau));
}

TreeDistance distance(const GremTree& tree, const GremSpec& spec,
                      const SpinConfig& sigma, const SpinConfig& tau) {
  const int l = merge_level(tree, sigma, tau);
  const LevelSums ls = level_sums(tree, spec);
  TreeDistance out;
  out.s = std::sqrt(2.0 * ls.tail[static_cast<std::size_t>(l)]);
  out.d = std::sqrt(static_cast<double>(tree.total_spins())) * out.s;
  return out;
}

double distance_squared(const GremTree& tree, const GremSpec& spec,
                        const SpinConfig& sigma, const SpinConfig& tau) {
  const int l = merge_level(tree, sigma, tau);
  const LevelSums ls = level_sums(tree, spec);
  return 2.0 * tree.total_spins() * ls.tail[static_cast<std::size_t>(l)];
}

double covariance(const GremTree& tree, const GremSpec& spec,
                  const SpinConfig& sigma, const SpinConfig& tau) {
  const int l = merge_level(tree, sigma, tau);
  const LevelSums ls = level_sums(tree, spec);
  return tree.total_spins() * ls.prefix[static_cast<std::size_t>(l)];
}

std::vector<std::vector<double>> sample_edges(const GremTree& tree,
                                              const GremSpec& spec,
                                              std::uint64_t seed) {
  if (tree.total_spins() > kMaxEnergySpins) {
    throw TooLarge("energy tables cap at " +
                   std::to_string(kMaxEnergySpins) + " spins");
  }
  GaussianStream g(seed, 0);
  std::vector<std::vector<double>> edges(
      static_cast<std::size_t>(tree.n_levels()));
  for (int i = 1; i <= tree.n_levels(); ++i) {
    const int ki = tree.k[static_cast<std::size_t>(i - 1)];
    if (ki == 0) continue;
    const double sd = std::sqrt(spec.variance(i));
    auto& level = edges[static_cast<std::size_t>(i - 1)];
    level.resize(std::size_t{1}
                 << tree.offsets[static_cast<std::size_t>(i)]);
    for (double& e : level) e = sd * g.next();
  }
  return edges;
}

std::vector<double> energies_from_edges(
    const GremTree& tree, const std::vector<std::vector<double>>& edges) {
  if (static_cast<int>(edges.size()) != tree.n_levels()) {
    throw Error("edge table does not match the tree");
  }
  const double scale = -std::sqrt(static_cast<double>(tree.total_spins()));
  std::vector<double> acc{0.0};  // partial path sums, one per current node
  for (int i = 1; i <= tree.n_levels(); ++i) {
    const int ki = tree.k[static_cast<std::size_t>(i - 1)];
    if (ki == 0) continue;
    const auto& level = edges[static_cast<std::size_t>(i - 1)];
    std::vector<double> next(std::size_t{1}
                             << tree.offsets[static_cast<std::size_t>(i)]);
    if (level.size() != next.size()) {
      throw Error("edge table size mismatch at level " + std::to_string(i));
    }
    for (std::size_t node = 0; node < next.size(); ++node) {
      next[node] = acc[node >> ki] + level[node];
    }
    acc = std::move(next);
  }
  std::vector<double> energies(acc.size());
  for (std::size_t leaf = 0; leaf < acc.size(); ++leaf) {
    energies[leaf] = scale * acc[leaf];
  }
  return energies;
}

std::vector<double> sample_energies(const GremTree& tree,
                                    const GremSpec& spec,
                                    std::uint64_t seed) {
  return energies_from_edges(tree, sample_edges(tree, spec, seed));
}

SplitResult split(const GremSpec& spec, int n, int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 != n) {
    throw SplitInvalid("need N1 + N2 = N with nonnegative parts");
  }
  SplitResult r;
  r.full = build(spec, n);
  r.part1 = build(spec, n1);
  r.part2 = build(spec, n2);
  for (int i = 1; i <= r.full.n_levels(); ++i) {
    const int ki = r.full.k[static_cast<std::size_t>(i - 1)];
    const int k1 = i <= r.part1.n_levels()
                       ? r.part1.k[static_cast<std::size_t>(i - 1)]
                       : 0;
    const int k2 = i <= r.part2.n_levels()
                       ? r.part2.k[static_cast<std::size_t>(i - 1)]
                       : 0;
    if (k1 + k2 > ki) {
      throw SplitInvalid("level " + std::to_string(i) +
                         ": subsystem labels exceed the level range");
    }
    const int base = r.full.offsets[static_cast<std::size_t>(i - 1)];
    for (int j = 0; j < k1; ++j) r.labels1.push_back(base + j);
    for (int j = 0; j < k2; ++j) r.labels2.push_back(base + k1 + j);
  }
  r.lost = r.full.total_spins() - r.part1.total_spins() -
           r.part2.total_spins();
  return r;
}

SpinConfig restrict_config(const SpinConfig& sigma,
                           std::span<const int> kept) {
  std::uint32_t bits = 0;
  for (std::size_t r = 0; r < kept.size(); ++r) {
    bits |= static_cast<std::uint32_t>(sigma.bit(kept[r])) << r;
  }
  return SpinConfig(static_cast<int>(kept.size()), bits);
}

MonotonicityReport check_distance_monotonicity(const GremTree& tree,
                                               const GremTree& subtree,
                                               std::span<const int> label_map,
                                               const GremSpec& spec) {
  if (tree.total_spins() > kMaxExhaustivePairSpins) {
    throw TooLarge("exhaustive pair scan caps at " +
                   std::to_string(kMaxExhaustivePairSpins) + " spins");
  }
  if (subtree.n_levels() > tree.n_levels()) {
    throw Error("subtree has more levels than the tree");
  }
  for (int i = 1; i <= subtree.n_levels(); ++i) {
    if (subtree.k[static_cast<std::size_t>(i - 1)] >
        tree.k[static_cast<std::size_t>(i - 1)]) {
      throw Error("subtree branching exceeds the tree at level " +
                  std::to_string(i));
    }
  }
  if (static_cast<int>(label_map.size()) != subtree.total_spins()) {
    throw Error("label map size does not match the subtree");
  }
  for (std::size_t r = 0; r < label_map.size(); ++r) {
    const int site = label_map[r];
    if (site < 0 || site >= tree.total_spins()) {
      throw Error("label map entry out of range");
    }
    // Kept labels must come from the same level in both trees.
    if (tree.level_of_label(site + 1) !=
        subtree.level_of_label(static_cast<int>(r) + 1)) {
      throw Error("label map crosses levels");
    }
  }

  const LevelSums big = level_sums(tree, spec);
  const LevelSums small = level_sums(subtree, spec);
  const std::int64_t leaves = tree.num_leaves();

  // Restricted leaf index for every big leaf.
  std::vector<std::uint32_t> restricted(static_cast<std::size_t>(leaves));
  for (std::int64_t a = 0; a < leaves; ++a) {
    const SpinConfig sigma =
        config_from_leaf_index(tree, static_cast<std::uint32_t>(a));
    restricted[static_cast<std::size_t>(a)] =
        leaf_index(subtree, restrict_config(sigma, label_map));
  }

  MonotonicityReport rep;
  rep.holds = true;
  rep.worst_gap = std::numeric_limits<double>::infinity();
  for (std::int64_t a = 0; a < leaves; ++a) {
    for (std::int64_t b = a; b < leaves; ++b) {
      const int l = merge_level_of_leaves(
          tree, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
      const int lp = merge_level_of_leaves(
          subtree, restricted[static_cast<std::size_t>(a)],
          restricted[static_cast<std::size_t>(b)]);
      const double s = std::sqrt(2.0 * big.tail[static_cast<std::size_t>(l)]);
      const double sp =
          std::sqrt(2.0 * small.tail[static_cast<std::size_t>(lp)]);
      const double gap = s - sp;
      if (gap < rep.worst_gap) {
        rep.worst_gap = gap;
        rep.worst_a = static_cast<std::uint32_t>(a);
        rep.worst_b = static_cast<std::uint32_t>(b);
      }
      if (sp > s) rep.holds = false;
    }
  }
  return rep;
}

SuperPythagoreanReport check_superpythagorean(const GremSpec& spec, int n,
                                              int n1, int n2) {
  const SplitResult sp = split(spec, n, n1, n2);
  if (sp.full.total_spins() > kMaxExhaustivePairSpins) {
    throw TooLarge("exhaustive pair scan caps at " +
                   std::to_string(kMaxExhaustivePairSpins) + " spins");
  }
  const LevelSums full = level_sums(sp.full, spec);
  const LevelSums one = level_sums(sp.part1, spec);
  const LevelSums two = level_sums(sp.part2, spec);
  const std::int64_t leaves = sp.full.num_leaves();

  std::vector<std::uint32_t> r1(static_cast<std::size_t>(leaves));
  std::vector<std::uint32_t> r2(static_cast<std::size_t>(leaves));
  for (std::int64_t a = 0; a < leaves; ++a) {
    const SpinConfig sigma =
        config_from_leaf_index(sp.full, static_cast<std::uint32_t>(a));
    r1[static_cast<std::size_t>(a)] =
        leaf_index(sp.part1, restrict_config(sigma, sp.labels1));
    r2[static_cast<std::size_t>(a)] =
        leaf_index(sp.part2, restrict_config(sigma, sp.labels2));
  }

  const double kf = sp.full.total_spins();
  const double k1 = sp.part1.total_spins();
  const double k2 = sp.part2.total_spins();

  SuperPythagoreanReport rep;
  rep.holds = true;
  rep.max_holds = true;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.worst_max_gap = std::numeric_limits<double>::infinity();
  for (std::int64_t a = 0; a < leaves; ++a) {
    for (std::int64_t b = a; b < leaves; ++b) {
      const int l = merge_level_of_leaves(sp.full,
                                          static_cast<std::uint32_t>(a),
                                          static_cast<std::uint32_t>(b));
      const int l1 = merge_level_of_leaves(sp.part1,
                                           r1[static_cast<std::size_t>(a)],
                                           r1[static_cast<std::size_t>(b)]);
      const int l2 = merge_level_of_leaves(sp.part2,
                                           r2[static_cast<std::size_t>(a)],
                                           r2[static_cast<std::size_t>(b)]);
      const double tf = full.tail[static_cast<std::size_t>(l)];
      const double t1 = one.tail[static_cast<std::size_t>(l1)];
      const double t2 = two.tail[static_cast<std::size_t>(l2)];
      const double margin = 2.0 * (kf * tf - k1 * t1 - k2 * t2);
      if (margin < rep.worst_margin) rep.worst_margin = margin;
      if (margin < -1e-12) rep.holds = false;
      const double gap = tf - std::max(t1, t2);
      if (gap < rep.worst_max_gap) rep.worst_max_gap = gap;
      if (gap < 0.0) rep.max_holds = false;
    }
  }
  return rep;
}

QuenchedEstimate quenched_alpha(const GremTree& tree, const GremSpec& spec,
                                double beta, std::int64_t m_draws,
                                std::uint64_t seed, int threads) {
  if (tree.total_spins() > kMaxEnergySpins) {
    throw TooLarge("energy tables cap at " +
                   std::to_string(kMaxEnergySpins) + " spins");
  }
  if (m_draws < 2) throw Error("quenched_alpha needs at least 2 draws");
  std::vector<double> vals(static_cast<std::size_t>(m_draws));
  parallel_for(m_draws, threads, [&](std::int64_t i) {
    const std::vector<double> energies = sample_energies(
        tree, spec,
        derive_seed(seed, "grem/disorder", static_cast<std::uint64_t>(i)));
    vals[static_cast<std::size_t>(i)] = -log_partition(energies, beta);
  });
  const MeanStderr ms = mean_and_stderr(vals);
  return {ms.mean, ms.std_error, m_draws, seed};
}

SubadditivityReport check_subadditivity(const GremSpec& spec, int n, int n1,
                                        int n2, double beta, std::int64_t m,
                                        std::uint64_t seed, int threads) {
  const SplitResult sp = split(spec, n, n1, n2);
  if (sp.full.total_spins() > kMaxSubadditivitySpins) {
    throw TooLarge("subadditivity check caps at " +
                   std::to_string(kMaxSubadditivitySpins) + " spins");
  }
  SubadditivityReport rep;
  rep.n = n;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.k_total = sp.full.total_spins();
  rep.lost = sp.lost;
  rep.beta = beta;
  rep.m = m;
  rep.seed = seed;
  rep.alpha_n = quenched_alpha(sp.full, spec, beta, m,
                               derive_seed(seed, "grem/full"), threads);
  rep.alpha_n1 = quenched_alpha(sp.part1, spec, beta, m,
                                derive_seed(seed, "grem/sub1"), threads);
  rep.alpha_n2 = quenched_alpha(sp.part2, spec, beta, m,
                                derive_seed(seed, "grem/sub2"), threads);
  const double combined = std::sqrt(
      rep.alpha_n.std_error * rep.alpha_n.std_error +
      rep.alpha_n1.std_error * rep.alpha_n1.std_error +
      rep.alpha_n2.std_error * rep.alpha_n2.std_error);
  const double rhs = rep.alpha_n1.mean + rep.alpha_n2.mean;
  rep.holds_corrected =
      rep.alpha_n.mean <= rhs - rep.lost * std::numbers::ln2 + 3.0 * combined;
  rep.holds_plain = rep.alpha_n.mean <= rhs + 3.0 * combined;
  rep.holds = rep.holds_corrected && rep.holds_plain;
  return rep;
}

std::vector<RatioRow> asymptotic_ratios(const GremSpec& spec,
                                        const std::vector<int>& n_list) {
  std::vector<RatioRow> rows;
  rows.reserve(n_list.size());
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const int n = n_list[idx];
    if (idx > 0 && n <= n_list[idx - 1]) {
      throw Error("sizes must be ascending");
    }
    const GremTree tree = build(spec, n);
    RatioRow row;
    row.n = n;
    const int total = tree.total_spins();
    row.k_over_n = n == 0 ? 0.0 : static_cast<double>(total) / n;
    double worst = 0.0;
    for (int n1 = 0; n1 <= n; ++n1) {
      const GremTree t1 = build(spec, n1);
      const GremTree t2 = build(spec, n - n1);
      const int lost = total - t1.total_spins() - t2.total_spins();
      if (total > 0) {
        worst = std::max(worst, static_cast<double>(lost) / total);
      }
    }
    row.max_correction_ratio = worst;
    rows.push_back(row);
  }
  return rows;
}

std::string spec_to_json(const GremSpec& spec) {
  nlohmann::json j;
  j["gammas"] = spec.gamma_prefix();
  j["variances"] = spec.variance_prefix();
  j["tail"] = spec.tail() == Tail::geometric ? "geometric" : "none";
  return j.dump();
}

GremSpec spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SpecInvalid(std::string("spec JSON: ") + e.what());
  }
  if (!j.contains("gammas") || !j.contains("variances")) {
    throw SpecInvalid("spec JSON needs gammas and variances arrays");
  }
  Tail tail = Tail::none;
  if (j.contains("tail")) {
    const std::string t = j["tail"].get<std::string>();
    if (t == "geometric") {
      tail = Tail::geometric;
    } else if (t != "none") {
      throw SpecInvalid("unknown tail kind: " + t);
    }
  }
  return GremSpec::validated(j["gammas"].get<std::vector<double>>(),
                             j["variances"].get<std::vector<double>>(), tail);
}

std::string subadditivity_csv_header() {
  return "N,N1,N2,beta,M,seed,k_total,lost,alpha_N,alpha_N_stderr,alpha_N1,"
         "alpha_N1_stderr,alpha_N2,alpha_N2_stderr,holds";
}

std::string subadditivity_csv_row(const SubadditivityReport& r) {
  std::ostringstream os;
  os << r.n << "," << r.n1 << "," << r.n2 << "," << format_float(r.beta)
     << "," << r.m << "," << r.seed << "," << r.k_total << "," << r.lost
     << "," << format_float(r.alpha_n.mean) << ","
     << format_float(r.alpha_n.std_error) << ","
     << format_float(r.alpha_n1.mean) << ","
     << format_float(r.alpha_n1.std_error) << ","
     << format_float(r.alpha_n2.mean) << ","
     << format_float(r.alpha_n2.std_error) << "," << r.holds;
  return os.str();
}

}  // namespace spinterp::grem
