#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "spinterp/interpolation.hpp"
#include "spinterp/spin_config.hpp"

namespace spinterp::sk {

inline constexpr int kMaxEnumerationSites = 20;
inline constexpr int kMaxExhaustivePairSites = 16;

// One disorder draw: J_ij i.i.d. standard normal, regenerated bit-exactly
// from (n, seed).
struct Disorder {
  int n = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd couplings;

  static Disorder draw(int n, std::uint64_t seed);
};

// Overlap q = (1/N) sum_i sigma_i tau_i = 1 - 2 d_H, via popcount.
double overlap(const SpinConfig& sigma, const SpinConfig& tau);

// Hamming fraction d_H in [0, 1].
double hamming_fraction(const SpinConfig& sigma, const SpinConfig& tau);

// L2 distance between -beta H(sigma) and -beta H(tau):
// beta sqrt(8 N d_H (1 - d_H)). Zero for tau = -sigma as well.
double metric_entry(const SpinConfig& sigma, const SpinConfig& tau,
                    double beta);

// Energies of every configuration of the subsystem:
//   H(sigma) = -(1/sqrt(|subset|)) sum_{i,j in subset} J_ij sigma_i sigma_j,
// the sum running over all ordered pairs including i = j. Gray-code
// enumeration over half the cube, mirrored so H(sigma) = H(-sigma) holds
// bit for bit. Index: bit r of the table index <-> subset[r].
std::vector<double> hamiltonian_table(const Disorder& d,
                                      std::span<const int> subset);
std::vector<double> hamiltonian_table(const Disorder& d);

// alpha_N(beta) = -E[log Z_N(beta)] by exact enumeration per disorder draw,
// averaged over m_draws draws (streams keyed by (seed, draw)).
QuenchedEstimate quenched_alpha(int n, double beta, std::int64_t m_draws,
                                std::uint64_t seed, int threads = 1);

struct SuperPythagoreanReport {
  bool holds = false;
  double worst_margin = 0.0;     // min of d_N^2 - d_N1^2 - d_N2^2
  std::uint32_t worst_xor = 0;   // sigma XOR tau achieving it
};

// d_N^2 >= d_N1^2 + d_N2^2 for every pair of configurations of the joint
// system (site split: first n1 sites | last n2 sites). The margin depends
// on the pair only through sigma XOR tau, so scanning all 2^N patterns
// covers all pairs exhaustively.
SuperPythagoreanReport check_superpythagorean(int n1, int n2, double beta);

struct SubadditivityReport {
  int n = 0, n1 = 0, n2 = 0;
  double beta = 0.0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  QuenchedEstimate alpha_n, alpha_n1, alpha_n2;
  bool holds = false;  // alpha_N <= alpha_N1 + alpha_N2 + 3 combined stderr
};

// Estimates the three quenched alphas with independent disorder.
SubadditivityReport check_subadditivity(int n1, int n2, double beta,
                                        std::int64_t m, std::uint64_t seed,
                                        int threads = 1);

std::string subadditivity_csv_header();
std::string subadditivity_csv_row(const SubadditivityReport& r);

}  // namespace spinterp::sk
