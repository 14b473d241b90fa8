// Finite probability spaces, complex functions on them, partitions playing
// the role of sub-σ-algebras (mod null sets), the lattice operations meet and
// join, conditional expectation and conditional independence.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubecoup/rational.hpp"

namespace cubecoup {

using AtomId = uint32_t;

class FiniteProbSpace {
 public:
  FiniteProbSpace(std::vector<std::string> atoms, std::vector<Scalar> weights);

  static std::shared_ptr<const FiniteProbSpace> uniform(size_t n);
  static std::shared_ptr<const FiniteProbSpace> make(std::vector<std::string> atoms,
                                                     std::vector<Scalar> weights);

  size_t size() const { return weights_.size(); }
  const std::string& atom_name(AtomId a) const { return atoms_[a]; }
  const Scalar& weight(AtomId a) const { return weights_[a]; }
  const std::vector<Scalar>& weights() const { return weights_; }
  std::vector<AtomId> support() const;  // atoms of positive weight

  bool same_space(const FiniteProbSpace& o) const;

 private:
  std::vector<std::string> atoms_;
  std::vector<Scalar> weights_;
};

using SpacePtr = std::shared_ptr<const FiniteProbSpace>;

class FunctionOnSpace {
 public:
  FunctionOnSpace(SpacePtr space, std::vector<CScalar> values);
  static FunctionOnSpace constant(SpacePtr space, CScalar c);
  static FunctionOnSpace indicator(SpacePtr space, const std::vector<AtomId>& set);

  const SpacePtr& space() const { return space_; }
  const CScalar& operator[](AtomId a) const { return values_[a]; }
  CScalar& operator[](AtomId a) { return values_[a]; }
  size_t size() const { return values_.size(); }

  FunctionOnSpace conj() const;
  FunctionOnSpace operator+(const FunctionOnSpace& o) const;
  FunctionOnSpace operator-(const FunctionOnSpace& o) const;
  FunctionOnSpace operator*(const FunctionOnSpace& o) const;  // pointwise
  CScalar mean() const;                                       // ∫ f dλ
  Scalar l2_norm_sq() const;                                  // ∫ |f|^2 dλ
  bool is_zero_on_support() const;

 private:
  SpacePtr space_;
  std::vector<CScalar> values_;
};

// A partition of the positive-weight atoms; zero-weight atoms carry block -1.
class Partition {
 public:
  Partition(SpacePtr space, std::vector<int> block_of, int n_blocks);

  static Partition discrete(SpacePtr space);
  static Partition trivial(SpacePtr space);
  static Partition from_blocks(SpacePtr space, const std::vector<std::vector<AtomId>>& blocks);

  const SpacePtr& space() const { return space_; }
  int n_blocks() const { return n_blocks_; }
  int block_of(AtomId a) const { return block_of_[a]; }
  std::vector<std::vector<AtomId>> blocks() const;
  Scalar block_weight(int b) const;
  FunctionOnSpace block_indicator(int b) const;

  // Equality as partitions of the support (block labels ignored).
  bool equals(const Partition& o) const;
  // True when every block of *this is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;

 private:
  SpacePtr space_;
  std::vector<int> block_of_;
  int n_blocks_;
};

Partition join(const Partition& p, const Partition& q);  // common refinement
Partition meet(const Partition& p, const Partition& q);  // overlap components

FunctionOnSpace cond_expect(const FunctionOnSpace& f, const Partition& p);

// E(f|P0∨B) == E(f|B) for f in the span of P1-block indicators.
bool cond_independent(const Partition& p0, const Partition& p1, const Partition& b);

// The operator identity E(E(f|P_i)|P_{1-i}) = E(f|P0∧P1), checked on the
// indicator basis of P_i for both i.
bool cond_independent_pair(const Partition& p0, const Partition& p1);

// One-sided criterion: every f in span(P0 indicators) with E(f|P0∧P1)=0 has
// E(f|P1)=0. Equivalent to cond_independent_pair; exposed as a cross-check.
bool cond_independent_one_sided(const Partition& p0, const Partition& p1);

// Dimension of the space of functions measurable with respect to every
// partition in `ps` simultaneously, via exact Gaussian elimination. Equals
// the block count of the iterated meet (Lemma-style L^2 intersection check).
size_t common_measurable_dimension(const std::vector<Partition>& ps);

}  // namespace cubecoup
