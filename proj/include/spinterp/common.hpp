#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinterp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPINTERP_ERROR_TYPE(Name)    \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

SPINTERP_ERROR_TYPE(DimensionMismatch);
SPINTERP_ERROR_TYPE(NotSymmetric);
SPINTERP_ERROR_TYPE(NotPsd);
SPINTERP_ERROR_TYPE(NegativeRadicand);
SPINTERP_ERROR_TYPE(FactorizationFailed);
SPINTERP_ERROR_TYPE(NonFinite);
SPINTERP_ERROR_TYPE(LengthMismatch);
SPINTERP_ERROR_TYPE(TooLarge);
SPINTERP_ERROR_TYPE(SpecInvalid);
SPINTERP_ERROR_TYPE(PathInvalid);
SPINTERP_ERROR_TYPE(ConfigInvalid);
SPINTERP_ERROR_TYPE(SplitInvalid);
SPINTERP_ERROR_TYPE(HypothesisViolated);

#undef SPINTERP_ERROR_TYPE

// Default tolerances. PSD / factorization tolerances are relative to
// max(1, trace/n) of the matrix at hand.
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kRidgeScale = 1e-10;
inline constexpr double kFactorTol = 1e-9;
inline constexpr double kCompareTol = 1e-9;
inline constexpr double kSimplexTol = 1e-10;
inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kAlignTol = 1e-8;

// Pairwise (cascade) summation in fixed index order; the result does not
// depend on how callers partition work across threads.
double pairwise_sum(std::span<const double> xs);

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of the mean (pairwise sums, two passes).
MeanStderr mean_and_stderr(std::span<const double> xs);

// Runs body(i) for i in [0, count). Each index must touch only its own
// output slot; results are then independent of the thread count.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace spinterp
