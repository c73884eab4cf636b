#include "spinterp/sk.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spinterp/matrix_io.hpp"
#include "spinterp/rng.hpp"

namespace spinterp::sk {

Disorder Disorder::draw(int n, std::uint64_t seed) {
  Disorder d;
  d.n = n;
  d.seed = seed;
  d.couplings.resize(n, n);
  GaussianStream g(seed, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d.couplings(i, j) = g.next();
  }
  return d;
}

double overlap(const SpinConfig& sigma, const SpinConfig& tau) {
  const int n = sigma.size();
  const int h = hamming_count(sigma, tau);
  return 1.0 - 2.0 * static_cast<double>(h) / n;
}

double hamming_fraction(const SpinConfig& sigma, const SpinConfig& tau) {
  return static_cast<double>(hamming_count(sigma, tau)) / sigma.size();
}

double metric_entry(const SpinConfig& sigma, const SpinConfig& tau,
                    double beta) {
  const int n = sigma.size();
  const double h = hamming_fraction(sigma, tau);
  return beta * std::sqrt(8.0 * n * h * (1.0 - h));
}

std::vector<double> hamiltonian_table(const Disorder& d,
                                      std::span<const int> subset) {
  const int ns = static_cast<int>(subset.size());
  if (ns > kMaxEnumerationSites) {
    throw TooLarge("subsystem of " + std::to_string(ns) +
                   " sites exceeds the enumeration guard");
  }
  for (int s : subset) {
    if (s < 0 || s >= d.n) throw Error("subset index out of range");
  }
  if (ns == 0) return {0.0};

  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(ns));
  std::vector<double> table(std::size_t{1} << ns);

  // Pair couplings B[r][p] = J_rp + J_pr restricted to the subset.
  Eigen::MatrixXd b(ns, ns);
  double s0 = 0.0;
  for (int r = 0; r < ns; ++r) {
    for (int p = 0; p < ns; ++p) {
      const double j = d.couplings(subset[r], subset[p]);
      s0 += j;
      b(r, p) = j + d.couplings(subset[p], subset[r]);
    }
  }

  // Gray-code walk over configurations with the top spin fixed at -1; the
  // other half is filled by the sigma -> -sigma mirror, which makes the
  // gauge parity H(sigma) = H(-sigma) exact rather than within rounding.
  std::vector<int> spin(static_cast<std::size_t>(ns), -1);
  std::vector<double> t(static_cast<std::size_t>(ns), 0.0);
  for (int r = 0; r < ns; ++r) {
    double acc = 0.0;
    for (int p = 0; p < ns; ++p) {
      if (p != r) acc -= b(r, p);
    }
    t[static_cast<std::size_t>(r)] = acc;
  }

  const std::uint32_t full_mask =
      ns >= 31 ? ~0u : ((1u << ns) - 1u);
  const std::uint64_t half = std::uint64_t{1} << (ns - 1);
  double s = s0;  // sum_{i,j} J_ij sigma_i sigma_j at all -1
  std::uint32_t gray = 0;
  for (std::uint64_t c = 0;; ++c) {
    table[gray] = -s * inv_sqrt;
    table[(~gray) & full_mask] = table[gray];
    if (c + 1 >= half) break;
    const int flip = std::countr_zero(c + 1);
    const int old = spin[static_cast<std::size_t>(flip)];
    s += -2.0 * old * t[static_cast<std::size_t>(flip)];
    spin[static_cast<std::size_t>(flip)] = -old;
    const double delta = 2.0 * spin[static_cast<std::size_t>(flip)];
    for (int r = 0; r < ns; ++r) {
      if (r != flip) t[static_cast<std::size_t>(r)] += b(r, flip) * delta;
    }
    gray ^= (1u << flip);
  }
  return table;
}

std::vector<double> hamiltonian_table(const Disorder& d) {
  std::vector<int> all(static_cast<std::size_t>(d.n));
  std::iota(all.begin(), all.end(), 0);
  return hamiltonian_table(d, all);
}

QuenchedEstimate quenched_alpha(int n, double beta, std::int64_t m_draws,
                                std::uint64_t seed, int threads) {
  if (n > kMaxEnumerationSites) {
    throw TooLarge("system of " + std::to_string(n) +
                   " sites exceeds the enumeration guard");
  }
  if (m_draws < 2) throw Error("quenched_alpha needs at least 2 draws");
  std::vector<double> vals(static_cast<std::size_t>(m_draws));
  parallel_for(m_draws, threads, [&](std::int64_t i) {
    const Disorder d = Disorder::draw(
        n, derive_seed(seed, "sk/disorder", static_cast<std::uint64_t>(i)));
    vals[static_cast<std::size_t>(i)] =
        -log_partition(hamiltonian_table(d), beta);
  });
  const MeanStderr ms = mean_and_stderr(vals);
  return {ms.mean, ms.std_error, m_draws, seed};
}

namespace {

double distance_squared(int n, int flips, double beta) {
  if (n == 0 || flips == 0) return 0.0;
  const double h = static_cast<double>(flips) / n;
  return beta * beta * 8.0 * n * h * (1.0 - h);
}

}  // namespace

SuperPythagoreanReport check_superpythagorean(int n1, int n2, double beta) {
  const int n = n1 + n2;
  if (n > kMaxExhaustivePairSites) {
    throw TooLarge("exhaustive pair scan caps at " +
                   std::to_string(kMaxExhaustivePairSites) + " sites");
  }
  const std::uint32_t m1 = n1 == 0 ? 0u : ((1u << n1) - 1u);
  SuperPythagoreanReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  // The margin depends on (sigma, tau) only through x = sigma XOR tau.
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    const int c = std::popcount(x);
    const int c1 = std::popcount(x & m1);
    const double margin = distance_squared(n, c, beta) -
                          distance_squared(n1, c1, beta) -
                          distance_squared(n2, c - c1, beta);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_xor = x;
    }
  }
  rep.holds = rep.worst_margin >= -1e-12;
  return rep;
}

SubadditivityReport check_subadditivity(int n1, int n2, double beta,
                                        std::int64_t m, std::uint64_t seed,
                                        int threads) {
  const int n = n1 + n2;
  if (n > kMaxExhaustivePairSites) {
    throw TooLarge("subadditivity check caps at " +
                   std::to_string(kMaxExhaustivePairSites) + " sites");
  }
  SubadditivityReport rep;
  rep.n = n;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.beta = beta;
  rep.m = m;
  rep.seed = seed;
  rep.alpha_n =
      quenched_alpha(n, beta, m, derive_seed(seed, "sk/full"), threads);
  rep.alpha_n1 =
      quenched_alpha(n1, beta, m, derive_seed(seed, "sk/sub1"), threads);
  rep.alpha_n2 =
      quenched_alpha(n2, beta, m, derive_seed(seed, "sk/sub2"), threads);
  const double combined = std::sqrt(
      rep.alpha_n.std_error * rep.alpha_n.std_error +
      rep.alpha_n1.std_error * rep.alpha_n1.std_error +
      rep.alpha_n2.std_error * rep.alpha_n2.std_error);
  rep.holds = rep.alpha_n.mean <=
              rep.alpha_n1.mean + rep.alpha_n2.mean + 3.0 * combined;
  return rep;
}

std::string subadditivity_csv_header() {
  return "N,N1,N2,beta,M,seed,alpha_N,alpha_N_stderr,alpha_N1,alpha_N2,holds";
}

std::string subadditivity_csv_row(const SubadditivityReport& r) {
  std::ostringstream os;
  os << r.n << "," << r.n1 << "," << r.n2 << "," << format_float(r.beta) << ","
     << r.m << "," << r.seed << "," << format_float(r.alpha_n.mean) << ","
     << format_float(r.alpha_n.std_error) << ","
     << format_float(r.alpha_n1.mean) << "," << format_float(r.alpha_n2.mean)
     << "," << r.holds;
  return os.str();
}

}  // namespace spinterp::sk
