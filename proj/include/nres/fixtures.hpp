#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nres/generator.hpp"

namespace nres {

/// Named generator with its exact constants, used by the verification suite
/// and the acceptance checks.
struct Fixture {
  std::string name;
  GeneratorMap map;
  double a = 0.0;             // exact accretivity constant used in bounds
  bool accretive = true;      // false for the negative control
  std::optional<double> bound_b;  // derivative deviation bound when known
};

GeneratorMap identity_generator();
GeneratorMap diag_generator();        // diag(1, 2) on C^2
GeneratorMap rational_generator();    // z(1-z)/(1+z) on the disk
GeneratorMap quadratic_generator();   // (x1 + 0.5 x2^2, x2) on C^2
GeneratorMap negated_identity_generator();
GeneratorMap rotation_generator();    // i z: accretive but not strongly

/// The accretive fixtures every corpus-wide invariant runs over.
std::vector<Fixture> fixture_corpus();

}  // namespace nres
