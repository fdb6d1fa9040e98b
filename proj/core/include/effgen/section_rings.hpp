#pragma once

#include <effgen/mmp.hpp>

#include <optional>
#include <vector>

namespace effgen {

/// Finite witness that the graded section semigroup of a divisor is
/// generated by the recorded basis. Every graded lattice point with height
/// up to `horizon_checked` decomposes over the basis, and the scan bound
/// makes the statement hold at all heights.
struct GenerationCertificate {
  TorusDivisor divisor;
  Int generation_degree{0};
  std::vector<GradedPoint> basis;
  Int horizon_checked{0};
  PointedCone3 cone;  // cone over the section polytope at height 1
};

/// Certifies the generation degree of the section ring of D through the
/// Hilbert basis of the cone over its section polytope.
/// Throws std::invalid_argument when no multiple of D is effective.
GenerationCertificate generation_degree(const TorusDivisor& D);

/// Re-checks a certificate without repeating the Hilbert-basis run: the
/// basis must saturate every graded level up to the horizon, realize the
/// stated degree, and be irredundant.
bool check_generation_certificate(const GenerationCertificate& cert);

struct SurjectivityResult {
  bool surjective{false};
  std::optional<LatticePoint> witness;  // a section of G+L missed by the products
};

/// Whether H0(G) (x) H0(L) -> H0(G+L) is onto, decided on lattice points:
/// the sum set of the two section polytopes must cover the third.
SurjectivityResult multiplication_surjective(const TorusDivisor& G, const TorusDivisor& L);

struct MultigradedCertificate {
  std::vector<TorusDivisor> divisors;
  Int degree_bound{0};
  Int box{0};
  struct Failure {
    std::vector<Int> multidegree;
    int factor_index{0};
    LatticePoint witness;
  };
  std::vector<Failure> witness_failures;
  bool success() const { return witness_failures.empty(); }
};

/// For every multidegree in the verification box with a coordinate above
/// `bound`, checks that each such coordinate factors through a surjective
/// multiplication step. The divisors must be integral, nef and base point
/// free; hypotheses tying them to adjoint classes are the caller's metadata.
MultigradedCertificate adjoint_multigraded_generation(const ToricSurface& X,
                                                      const std::vector<TorusDivisor>& divisors,
                                                      const Int& bound,
                                                      std::optional<Int> box_override = {});

struct StableBaseLocusReport {
  Int m{0};
  Int q{0};  // m!
  std::vector<LatticePoint> base_rays;              // rays in the fixed part of |qD|
  std::vector<LatticePoint> negative_support_rays;  // support of the Zariski negative part
  bool supports_match{false};
  bool scaled_fix_integral{false};  // q times the asymptotic fixed part
  bool surface_smooth{false};
  TorusDivisor scaled_fix;
};

/// With generation degree m certified and q = m!, the divisorial base locus
/// of |qD| must match the Zariski negative support, and q times the
/// asymptotic fixed part must be integral on a smooth surface.
StableBaseLocusReport stable_base_locus_check(const GenerationCertificate& cert,
                                              std::optional<Int> m_override = {});

/// Zero fixed divisor of |D| itself; the toric reading of base point freeness.
bool is_base_point_free(const TorusDivisor& D);

}  // namespace effgen
