#pragma once

#include <string>
#include <vector>

#include "flatfiber/fibration.hpp"

namespace flatfiber {

// An action of the base group on E^m / M, given by lifts of the base
// presentation generators to affine maps normalizing M.
struct ThetaSpec {
  SpaceGroup fiber;
  SpaceGroup base;
  std::vector<AffineMap> lifts;
};

struct ThetaReport {
  bool normalizes = true;
  bool homomorphism = true;
  std::vector<std::string> failures;
  bool valid() const { return normalizes && homomorphism; }
};
ThetaReport validate_theta(const ThetaSpec& spec);

struct ExtensionResult {
  SpaceGroup group;
  SubgroupHandle normal;
  std::vector<AffineMap> hat_lifts;
  SpanData product_span;  // fiber coordinates first, base coordinates last
};
// Throws when validate_theta fails.
ExtensionResult build_extension(const ThetaSpec& spec, std::string name = "extension");

// A violated precondition of verify_uniqueness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Membership of a candidate that normalizes N, has base part in the base
// group, and fiber part in M·lift(base part). Must always be true.
bool verify_uniqueness(const ExtensionResult& result, const ThetaSpec& spec,
                       const AffineMap& candidate);

// The lifts realizing Ξ∘P^{-1} for a split, as the spec that rebuilds it.
ThetaSpec theta_of_split(const FibrationSplit& split);

}  // namespace flatfiber
