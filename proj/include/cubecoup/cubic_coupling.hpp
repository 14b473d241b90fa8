// The cubic-coupling abstraction: a provider of couplings indexed by discrete
// cubes, with verifiers for the two axiom systems and the derived structural
// facts (simplicial conditional independence, tricube symmetry, outer-point
// coupling, face locality, and the root-corner conditional independence).
#pragma once

#include <functional>
#include <map>
#include <memory>

#include "cubecoup/abelian.hpp"
#include "cubecoup/coupling.hpp"
#include "cubecoup/cube.hpp"
#include "cubecoup/report.hpp"

namespace cubecoup {

class CubicCoupling {
 public:
  using Provider = std::function<Coupling(int)>;

  CubicCoupling(SpacePtr base, Provider provider, int n_max);

  static CubicCoupling standard_abelian(const FiniteAbelianGroup& g, int n_max);
  // Full product sequence μ^n = λ^{2^n} (passes all axioms).
  static CubicCoupling full_product(SpacePtr base, int n_max);
  // Diagonal sequence (fails ergodicity when the base has > 1 support atom).
  static CubicCoupling diagonal_sequence(SpacePtr base, int n_max);

  const SpacePtr& base() const { return base_; }
  int n_max() const { return n_max_; }
  const Coupling& mu(int n) const;  // memoized; thread-unsafe fill on demand

 private:
  SpacePtr base_;
  Provider provider_;
  int n_max_;
  mutable std::map<int, Coupling> cache_;
};

// Positions (= vertex bits) of a face's vertices in the label order of μ^n.
std::vector<size_t> face_positions(const Face& f);

// Axiom system 1: consistency under all injective morphisms, ergodicity,
// conditional independence of adjacent codimension-1 faces.
Report verify_axioms_v1(const CubicCoupling& cc, int n_max);

// Axiom system 2: face-map consistency, ergodicity, idempotence along the
// pairing of each opposite codimension-1 face pair.
Report verify_axioms_v2(const CubicCoupling& cc, int n_max);

// H1 ⊥ H2 for every pair of simplicial vertex sets in the n-cube.
Report verify_simplicial_cis(const CubicCoupling& cc, int n);

// The tricube subcoupling of μ^{2n} is invariant under all 6^n coordinatewise
// relabelings of {-1,0,1}^n.
Report verify_tricube_symmetry(const CubicCoupling& cc, int n);

// Subcoupling along the outer-point embedding equals μ^n.
Report verify_outer_point(const CubicCoupling& cc, int n);

// Every face is local: its cylinder σ-algebra is independent of every
// off-face coordinate.
Report verify_face_locality(const CubicCoupling& cc, int m);

// Conditional independence (operator identity) of the root coordinate and
// the corner coordinates in μ^d.
Report verify_keybot(const CubicCoupling& cc, int d);

// Factoring every μ^n by a partition of the base yields another sequence
// passing axiom system 1 (used with the Fourier factor).
Report verify_factor_sequence(const CubicCoupling& cc, const Partition& p, int n_max);

}  // namespace cubecoup
