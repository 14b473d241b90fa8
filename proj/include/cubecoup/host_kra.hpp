// Filtered groups acting on finite spaces by weight-preserving permutations,
// their face-generated cube groups acting on cube-indexed tuples, invariant
// σ-algebras as orbit partitions, and the recursive Host-Kra coupling.
#pragma once

#include "cubecoup/cubic_coupling.hpp"
#include "cubecoup/uniformity.hpp"

namespace cubecoup {

struct Permutation {
  std::vector<AtomId> image;

  AtomId operator()(AtomId a) const { return image[a]; }
  size_t size() const { return image.size(); }
  bool is_identity() const;
  Permutation inverse() const;
  Permutation then(const Permutation& next) const;  // apply *this, then next
  bool operator==(const Permutation& o) const = default;
  bool operator<(const Permutation& o) const { return image < o.image; }
};

// Generators are grouped by filtration level with the convention G_0 = G_1;
// levels[i] holds generators of G_{i+1}, and G_j is generated by the union of
// levels j-1, j, ... (the chain is decreasing). degree = index of the last
// nonempty level.
class FilteredAction {
 public:
  FilteredAction(SpacePtr space, std::vector<std::vector<Permutation>> levels);

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  // Generating set of G_k (union of levels >= k), with G_0 = G_1.
  std::vector<Permutation> generators_of(int k) const;
  bool is_ergodic() const;  // G_1 acts transitively on the support

  // Bounded filtration-law check on generator words.
  Report verify_filtration_law(int max_word_len = 4, size_t closure_cap = 20000) const;

 private:
  SpacePtr space_;
  std::vector<std::vector<Permutation>> levels_;
  int degree_;
};

// A generator g^F of a cube permutation group: applies g at the coordinates
// inside the face, identity elsewhere.
struct CubeGenerator {
  Face face;
  Permutation g;

  Tuple apply(const Tuple& t) const;
};

// Generators of H_{n,k} = C^n(G^{+k}): one per (face F, generator of
// G_{n - dim F + k}).
std::vector<CubeGenerator> cube_group_generators(const FilteredAction& action, int n, int k);

// Orbit partition of the generated group on the support tuples. Throws if a
// generator moves mass off the support or distorts masses.
Partition invariant_partition(const std::vector<CubeGenerator>& gens, const SupportView& view);

// μ^0 = λ, μ^{n+1} = relative square of μ^n over the H_{n,1}-invariant
// σ-algebra, with (Ω^n)^2 identified with Ω^{n+1} along the last coordinate.
CubicCoupling host_kra_coupling(const FilteredAction& action, int n_max);

// Uniformity seminorm and Host-Kra factor of the action, via the coupling.
Scalar hk_seminorm_pow(const FilteredAction& action, int d, const FunctionOnSpace& f);
double hk_seminorm(const FilteredAction& action, int d, const FunctionOnSpace& f);
// k-th Host-Kra factor H_k = F_k; additionally asserts G-invariance of the
// factor partition (level-1 generators permute its blocks).
Partition hk_factor(const FilteredAction& action, int k);

// The permutation group generated on the support tuples, enumerated by
// closure (capped).
std::vector<Permutation> generated_tuple_group(const std::vector<CubeGenerator>& gens,
                                               const SupportView& view,
                                               size_t cap = 20000);

// Bounded check of the filtration property of (H_{n,k})_k on word commutators.
Report verify_cube_filtration(const FilteredAction& action, int n, int max_word_len = 2,
                              size_t closure_cap = 20000);

// H_{n+1,k} = diag(H_{n,k}, H_{n,k+1}) as permutation groups on the support
// of μ^{n+1}.
Report verify_diag_identity(const FilteredAction& action, int n, int k,
                            size_t closure_cap = 20000);

}  // namespace cubecoup
