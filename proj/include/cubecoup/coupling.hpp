// Couplings of a finite probability space over a finite label set: sparse
// measures on tuples whose every coordinate marginal is the base measure.
// Includes the ξ forms, subcouplings, factor couplings, conditional
// independence of label sets, relative squares, idempotence and conditionally
// independent gluing.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubecoup/measure.hpp"

namespace cubecoup {

using Tuple = std::vector<AtomId>;
using MassMap = std::map<Tuple, Scalar>;

// Dense-equivalent size guard for coupling constructions.
inline constexpr double kMaxAmbientSize = 1e7;

class Coupling {
 public:
  Coupling(SpacePtr base, std::vector<std::string> labels, MassMap mass,
           bool validate = true);

  static Coupling product(SpacePtr base, std::vector<std::string> labels);  // λ x ... x λ
  static Coupling diagonal(SpacePtr base, std::vector<std::string> labels);

  const SpacePtr& base() const { return base_; }
  const std::vector<std::string>& labels() const { return labels_; }
  size_t arity() const { return labels_.size(); }
  const MassMap& mass() const { return mass_; }
  Scalar mass_of(const Tuple& t) const;
  size_t support_size() const { return mass_.size(); }

  // Exact equality of sparse maps (labels compared positionally).
  bool equals(const Coupling& o) const;

  // Marginal law check; returns an error description or empty.
  std::string validate_marginals() const;

  std::string str(size_t max_entries = 24) const;

 private:
  SpacePtr base_;
  std::vector<std::string> labels_;
  MassMap mass_;
};

// ξ(μ,F) = ∫ ∏ f_v∘p_v dμ for a label-aligned function system.
CScalar xi(const Coupling& mu, const std::vector<FunctionOnSpace>& fs);

// Subcoupling along an injection given by positions into the label list;
// position order defines the new label order.
Coupling subcoupling(const Coupling& mu, const std::vector<size_t>& positions,
                     std::vector<std::string> new_labels = {});
Coupling subcoupling_by_labels(const Coupling& mu, const std::vector<std::string>& labels);

// Same partition applied at every label; base becomes the quotient space.
Coupling factor_coupling(const Coupling& mu, const Partition& p);

// The support of μ viewed as a finite probability space of tuples.
struct SupportView {
  SpacePtr space;
  std::vector<Tuple> tuples;  // atom id -> tuple

  // Cylinder σ-algebra of the coordinates at `positions`, as a partition.
  Partition partition_by(const std::vector<size_t>& positions) const;
};
SupportView support_view(const Coupling& mu);

// T1 ⊥_μ T2: E(f|A_T2) is A_{T1∩T2}-measurable for all A_T1-cylinder
// indicators f, checked in both orientations.
bool index_cond_independent(const Coupling& mu, const std::vector<size_t>& t1,
                            const std::vector<size_t>& t2);
// The meet identity A_T1 ∧ A_T2 = A_{T1∩T2}; a theorem when ⊥ holds,
// verified separately as an invariant.
bool index_meet_identity(const Coupling& mu, const std::vector<size_t>& t1,
                         const std::vector<size_t>& t2);
// Plain independence of two cylinder σ-algebras.
bool labels_independent(const Coupling& mu, const std::vector<size_t>& t1,
                        const std::vector<size_t>& t2);

// μ(A x B) = ∫ E(1_A|P) E(1_B|P) dλ; labels {a,b}.
Coupling relative_square(SpacePtr space, const Partition& p);

// Conditionally independent gluing along the bijection pairing
// t_left[i] <-> t_right[i]; requires isomorphic overlap subcouplings.
// Result label order: labels of mu, then non-overlap labels of mup.
Coupling glue_cond_independent(const Coupling& mu, const Coupling& mup,
                               const std::vector<size_t>& t_left,
                               const std::vector<size_t>& t_right);

// Conditional coupling of μ on the remaining labels, given that the
// coordinates at `positions` equal `values`.
Coupling conditional_coupling(const Coupling& mu, const std::vector<size_t>& positions,
                              const Tuple& values);

// The triple ν on labels (a, a', b) obtained by gluing a two-label coupling
// with a copy of itself along the second label.
Coupling idempotence_triple(const Coupling& mu);

// μ is idempotent iff the outer-pair subcoupling of its triple reproduces μ.
bool is_idempotent(const Coupling& mu);

// For idempotent μ, the partition realizing the meet of the two coordinate
// σ-algebras, pushed down to the base. Throws on non-idempotent input.
Partition recover_factor(const Coupling& mu);

// Every coordinate is a function of the remaining coordinates on the support.
bool completely_dependent(const Coupling& mu);

// View μ on labels a ⊔ b (paired by position) as a two-label coupling over
// the space of a-tuples; requires μ_a ≅ μ_b under the pairing.
Coupling pair_view(const Coupling& mu, const std::vector<size_t>& a_pos,
                   const std::vector<size_t>& b_pos);

// Exhaustive isomorphism test, arity <= 4.
bool isomorphic_exhaustive(const Coupling& a, const Coupling& b);

}  // namespace cubecoup
