#pragma once

#include <optional>
#include <vector>

#include "crn/matrix.hpp"

namespace crn {

// Outcome of an exact feasibility query. When feasible, the witness satisfies
// every equality constraint exactly and is >= 1 on each designated coordinate;
// it has one entry per constraint-matrix column.
struct FeasibilityCertificate {
  bool feasible = false;
  std::optional<RatVec> witness;
};

// Decides whether constraints * x = 0 admits a solution with x[i] >= 1 for
// every i in positive_coords; the remaining coordinates are unconstrained.
// The solution set of the equalities is a cone, so ">= 1" is equivalent to
// strict positivity on those coordinates.
//
// Exact phase-1 simplex with Bland's anti-cycling rule (entering variable:
// lowest-index negative reduced cost; leaving variable: lowest basis index
// among minimum-ratio ties), hence guaranteed termination. Every witness is
// re-verified by substitution before being returned.
FeasibilityCertificate positive_kernel_feasible(const RationalMatrix& constraints,
                                                const std::vector<int>& positive_coords);

// The substitution check applied to every witness; exposed so callers can
// re-validate certificates independently.
bool verify_positive_kernel_witness(const RationalMatrix& constraints,
                                    const std::vector<int>& positive_coords,
                                    const RatVec& witness);

}  // namespace crn
