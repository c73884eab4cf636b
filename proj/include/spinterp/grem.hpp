#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinterp/interpolation.hpp"
#include "spinterp/spin_config.hpp"

namespace spinterp::grem {

inline constexpr int kMaxEnergySpins = 20;       // 2^20 leaf energies
inline constexpr int kMaxExhaustivePairSpins = 10;
inline constexpr int kMaxSubadditivitySpins = 14;

enum class Tail { none, geometric };

// The sequences (gamma_i) and (a_i) defining a GREM family: a declared
// finite prefix plus tail behavior. gamma_i = log alpha_i / log 2 must be
// strictly positive with partial sums <= 1; a_i likewise. A geometric tail
// continues each sequence with the ratio of its last two prefix entries and
// must be decreasing.
class GremSpec {
 public:
  static GremSpec validated(std::vector<double> gammas,
                            std::vector<double> variances,
                            Tail tail = Tail::none);

  // The canonical family gamma_i = a_i = 2^{-i}.
  static GremSpec geometric();

  double gamma(int i) const;     // 1-based, extends through the tail
  double variance(int i) const;  // 1-based
  int prefix_size() const { return static_cast<int>(gammas_.size()); }
  Tail tail() const { return tail_; }
  const std::vector<double>& gamma_prefix() const { return gammas_; }
  const std::vector<double>& variance_prefix() const { return variances_; }

 private:
  GremSpec() = default;
  std::vector<double> gammas_, variances_;
  Tail tail_ = Tail::none;
  double gamma_ratio_ = 0.0, variance_ratio_ = 0.0;
};

// A concrete tree: k_i(N) = floor(N gamma_i) up to the last positive level.
// Interior zeros stay (those levels carry no labels and no edges).
struct GremTree {
  int n_param = 0;
  std::vector<int> k;        // level i (1-based) -> k[i-1]
  std::vector<int> offsets;  // offsets[i] = k_1 + ... + k_i; offsets[0] = 0

  int n_levels() const { return static_cast<int>(k.size()); }
  int total_spins() const { return offsets.back(); }
  std::int64_t num_leaves() const;  // throws TooLarge past 62 spins
  // 1-based label m -> the level whose edge carries it.
  int level_of_label(int m) const;
};

GremTree build(const GremSpec& spec, int n_param);

// A tree from an explicit branching vector (hand-built cases, decrement
// chains). Trailing zeros are trimmed, interior zeros stay.
GremTree tree_from_branching(std::vector<int> k);

// Branch choices, one per level: the left-to-right edge index in
// [0, 2^{k_i}) (0 for levels with k_i = 0).
struct LeafPath {
  std::vector<std::uint32_t> choices;
};

// Binary-code labeling: writing the level-i choice with k_i digits, the
// most significant digit goes to the lowest label of the level's range,
// 0 <-> -1 and 1 <-> +1. Bijective between leaves and configurations.
SpinConfig leaf_config(const GremTree& tree, const LeafPath& path);
LeafPath path_from_config(const GremTree& tree, const SpinConfig& sigma);

// Leaf index with label 1 as the most significant bit; its prefixes are the
// node indices along the path to the root.
std::uint32_t leaf_index(const GremTree& tree, const SpinConfig& sigma);
SpinConfig config_from_leaf_index(const GremTree& tree, std::uint32_t leaf);

// Largest level l such that the two paths agree on all levels <= l;
// n_levels iff sigma = tau, in {0, ..., n_levels - 1} otherwise.
int merge_level(const GremTree& tree, const SpinConfig& sigma,
                const SpinConfig& tau);

struct TreeDistance {
  double s = 0.0;  // normalized: sqrt(2 sum_{i>l} a~_i)
  double d = 0.0;  // sqrt(|k|) * s
};

TreeDistance distance(const GremTree& tree, const GremSpec& spec,
                      const SpinConfig& sigma, const SpinConfig& tau);

// d^2 without the square root, for exact identities.
double distance_squared(const GremTree& tree, const GremSpec& spec,
                        const SpinConfig& sigma, const SpinConfig& tau);

// E[H(sigma) H(tau)] = |k| sum_{i<=l} a~_i (zero when l = 0).
double covariance(const GremTree& tree, const GremSpec& spec,
                  const SpinConfig& sigma, const SpinConfig& tau);

// One centered normal of variance a_i per edge between levels i-1 and i,
// drawn level-major then node-major from the stream keyed by (seed, 0).
// edges[i-1][node] is the draw for the level-i edge above `node`; levels
// with k_i = 0 hold an empty vector.
std::vector<std::vector<double>> sample_edges(const GremTree& tree,
                                              const GremSpec& spec,
                                              std::uint64_t seed);

// H(sigma) = -sqrt(|k|) (eps_1 + ... + eps_n) along the leaf's root path;
// leaves sharing a subpath share those draws exactly (table lookups).
std::vector<double> energies_from_edges(
    const GremTree& tree, const std::vector<std::vector<double>>& edges);

std::vector<double> sample_energies(const GremTree& tree,
                                    const GremSpec& spec, std::uint64_t seed);

// Splitting N = N1 + N2: subsystem 1 keeps the first k_i(N1) labels of each
// level's range, subsystem 2 the next k_i(N2); the trailing labels of each
// level (at most one per level) are lost.
struct SplitResult {
  GremTree full, part1, part2;
  std::vector<int> labels1, labels2;  // kept 0-based sites of the full config
  int lost = 0;
};

SplitResult split(const GremSpec& spec, int n, int n1, int n2);

// Restriction of a full-system configuration to the kept labels.
SpinConfig restrict_config(const SpinConfig& sigma, std::span<const int> kept);

struct MonotonicityReport {
  bool holds = false;
  double worst_gap = 0.0;  // min over pairs of s_k - s_k'
  std::uint32_t worst_a = 0, worst_b = 0;
};

// Coalescing labels can only shorten geodesics:
// s_{k'}(sigma,tau) <= s_k(sigma,tau) for every leaf pair of the big tree.
// label_map lists, per subtree site, the big-tree site it keeps.
MonotonicityReport check_distance_monotonicity(const GremTree& tree,
                                               const GremTree& subtree,
                                               std::span<const int> label_map,
                                               const GremSpec& spec);

struct SuperPythagoreanReport {
  bool holds = false;      // d_N^2 >= d_N1^2 + d_N2^2 for all pairs
  double worst_margin = 0.0;
  bool max_holds = false;  // stronger: s_N >= max(s_N1, s_N2) per pair
  double worst_max_gap = 0.0;
};

SuperPythagoreanReport check_superpythagorean(const GremSpec& spec, int n,
                                              int n1, int n2);

// alpha_N(beta) = -E[log Z] over m_draws independent edge-disorder draws.
QuenchedEstimate quenched_alpha(const GremTree& tree, const GremSpec& spec,
                                double beta, std::int64_t m_draws,
                                std::uint64_t seed, int threads = 1);

struct SubadditivityReport {
  int n = 0, n1 = 0, n2 = 0;
  int k_total = 0, lost = 0;
  double beta = 0.0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  QuenchedEstimate alpha_n, alpha_n1, alpha_n2;
  bool holds_corrected = false;  // alpha_N <= alpha_N1 + alpha_N2
                                 //            - lost log2 + 3 stderr
  bool holds_plain = false;
  bool holds = false;            // both
};

SubadditivityReport check_subadditivity(const GremSpec& spec, int n, int n1,
                                        int n2, double beta, std::int64_t m,
                                        std::uint64_t seed, int threads = 1);

struct RatioRow {
  int n = 0;
  double k_over_n = 0.0;             // |k(N)| / N
  double max_correction_ratio = 0.0; // sup over splits of lost / |k(N)|
};

// |k(N)|/N should trend to 1 and the split-correction ratio to 0.
std::vector<RatioRow> asymptotic_ratios(const GremSpec& spec,
                                        const std::vector<int>& n_list);

std::string subadditivity_csv_header();
std::string subadditivity_csv_row(const SubadditivityReport& r);

// JSON form: {"gammas": [...], "variances": [...], "tail": "geometric"}.
std::string spec_to_json(const GremSpec& spec);
GremSpec spec_from_json(const std::string& text);

}  // namespace spinterp::grem
