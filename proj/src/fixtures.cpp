#include "nres/fixtures.hpp"

namespace nres {

GeneratorMap identity_generator() { return GeneratorMap::linear_map(CMatrix::identity(1)); }

GeneratorMap diag_generator() {
  return GeneratorMap::linear_map(CMatrix::diagonal({cxd(1.0, 0.0), cxd(2.0, 0.0)}));
}

GeneratorMap rational_generator() {
  // z(1-z)/(1+z) = (z - z^2)/(1 + z)
  return GeneratorMap::rational_disk({cxd(0.0, 0.0), cxd(1.0, 0.0), cxd(-1.0, 0.0)},
                                     {cxd(1.0, 0.0), cxd(1.0, 0.0)});
}

GeneratorMap quadratic_generator() {
  CMatrix lin = CMatrix::identity(2);
  HomogeneousTerm term(2, 2, {Monomial{0, {0, 2}, cxd(0.5, 0.0)}});
  return GeneratorMap::polynomial(std::move(lin), {std::move(term)});
}

GeneratorMap negated_identity_generator() {
  CMatrix lin(1);
  lin(0, 0) = -1.0;
  return GeneratorMap::linear_map(std::move(lin));
}

GeneratorMap rotation_generator() {
  CMatrix lin(1);
  lin(0, 0) = cxd(0.0, 1.0);
  return GeneratorMap::linear_map(std::move(lin));
}

std::vector<Fixture> fixture_corpus() {
  std::vector<Fixture> out;
  out.push_back({"identity", identity_generator(), 1.0, true, 0.0});
  out.push_back({"diag12", diag_generator(), 1.0, true, 0.0});
  out.push_back({"rational_extremal", rational_generator(), 0.0, true, std::nullopt});
  out.push_back({"quadratic", quadratic_generator(), 0.5, true, 1.0});
  return out;
}

}  // namespace nres
