#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superhaar/integration.hpp"

namespace superhaar {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int points = 20;
  long samples = 100000;
  int polynomials = 5;
  bool exhaustive = false;
  bool corrupt_density = false;
};

// Defining relations, antipode and the decompose round trip.
CheckReport verify_charts(const GroupSpec& spec, const VerifyOptions& o);
// Products of two points (odd coordinates in a doubled algebra) stay in the group and decompose.
CheckReport verify_closure(const GroupSpec& spec, const VerifyOptions& o);
// Brackets, symbol-vs-matrix action, coordinate realizations; Jacobi when exhaustive.
std::vector<CheckReport> verify_algebra(const GroupSpec& spec, const VerifyOptions& o);
CheckReport verify_density(const GroupSpec& spec, const VerifyOptions& o);
// Exact over all low-degree monomials for U(1|1); random polynomials otherwise.
CheckReport verify_invariance_suite(const GroupSpec& spec, const VerifyOptions& o);

// suite in {charts, algebra, density, invariance, all}
json run_verify(const GroupSpec& spec, const std::string& suite, const VerifyOptions& o, bool* pass);

}  // namespace superhaar
