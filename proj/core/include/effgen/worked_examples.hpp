#pragma once

#include <effgen/section_rings.hpp>

#include <optional>
#include <string>
#include <vector>

namespace effgen {

/// "c1*D(x1,y1) + ..." with exact coefficients; "0" for the zero divisor.
std::string to_display(const TorusDivisor& D);

struct ExpectedDivisor {
  std::string name;
  TorusDivisor value;
  std::string anchor;  // the closed form the expectation comes from
};

struct CurveSquareCheck {
  LatticePoint ray;
  Rat expected;
};

/// A surface, an adjoint boundary class and the exactly known outputs the
/// verifier must reproduce.
struct ExampleInstance {
  std::string name;
  ToricSurface surface;
  TorusDivisor boundary_class;  // invariant representative of the class
  TorusDivisor adjoint;         // K + boundary_class
  std::vector<ExpectedDivisor> expected_divisors;  // keyed "asymptotic-fix"
  std::vector<LatticePoint> expected_contracted;
  std::vector<CurveSquareCheck> curve_squares;
  std::optional<TorusDivisor> generation_target;
  std::optional<Int> generation_lower_bound;
  Int fix_horizon{8};
};

/// Smallest a making a*h - 2r*G nef on the r-step chain blow-up of the plane.
Int chain_nef_threshold(const Int& r);

/// The surface obtained from the plane by r successive blow-ups along a
/// chain of infinitely near points: exceptional chain e_1..e_{r-1} of
/// square -2 and a final e_r of square -1. Boundary class
/// (a*h - 2r*G) + (1/2) * sum e_i with G = (1/r) * sum i*e_i.
/// Throws when a_nef is below the computed nef threshold, naming it.
ExampleInstance build_Xr(const Int& r, const Int& a_nef);

/// The degree-r Hirzebruch surface with boundary class S + 2H, where S is
/// the section of square -r and H a curve of square r. The adjoint class
/// has asymptotic fixed part (2/r) S.
ExampleInstance build_Fr(const Int& r);

struct VerifyCheck {
  std::string name;
  bool pass{false};
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::string instance;
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

/// Runs the minimal model program, the Zariski decomposition, the asymptotic
/// fixed part and (when requested) the generation-degree certificate against
/// the instance's expectations; every comparison is exact.
VerifyReport verify(const ExampleInstance& instance);

}  // namespace effgen
