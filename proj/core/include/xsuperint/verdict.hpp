#pragma once

#include "xsuperint/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xsuperint {

/// Outcome of comparing a printed formula against an exact computation.
enum class Verdict {
    Match,          // identical
    Normalization,  // differs by one constant factor, independent of the index
    Mismatch,       // structurally different
    Unresolvable,   // the printed form cannot be evaluated as written
};

std::string to_string(Verdict v);

/// Classifies claimed[i] against computed[i] over an index sweep.
/// Returns the common ratio computed/claimed through *ratio when the
/// verdict is Match or Normalization.
Verdict classify(const std::vector<Rational>& computed, const std::vector<Rational>& claimed,
                 Rational* ratio = nullptr);

}  // namespace xsuperint
