#pragma once

#include <stdexcept>
#include <string>

namespace ergorate {

/// |λ|^{-q} ψ(λ) is not integrable on I_r, so the DoS assumption fails for this q.
class IntegrabilityError : public std::domain_error {
 public:
  explicit IntegrabilityError(const std::string& what) : std::domain_error(what) {}
};

/// A log-log fit cannot be formed (zero defects, short T-range, constant data).
class DegenerateFit : public std::runtime_error {
 public:
  explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

/// H^{-1/2} g0 is not square integrable near ρ = 0.
class LowFrequencyDivergence : public std::domain_error {
 public:
  explicit LowFrequencyDivergence(const std::string& what) : std::domain_error(what) {}
};

/// A λ-grid reaches outside the range of the symbol on the sampled radii.
class GridRangeError : public std::out_of_range {
 public:
  explicit GridRangeError(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace ergorate
