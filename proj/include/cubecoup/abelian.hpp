// Finite abelian groups as products of cyclic groups, their standard and
// degree-k cube groups, characters with exact rational phase bookkeeping, and
// the annihilator criteria for cube groups.
#pragma once

#include <optional>
#include <vector>

#include "cubecoup/coupling.hpp"
#include "cubecoup/cube.hpp"

namespace cubecoup {

class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> cyclic_orders);

  const std::vector<int>& orders() const { return orders_; }
  int rank() const { return (int)orders_.size(); }
  long size() const { return size_; }

  using Elem = std::vector<int>;
  long encode(const Elem& x) const;  // mixed-radix, first coordinate fastest
  Elem decode(long i) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem zero() const { return Elem(orders_.size(), 0); }
  Elem scale(int k, const Elem& x) const;

  std::string elem_name(const Elem& x) const;
  // The group viewed as a finite probability space with uniform weights.
  SpacePtr uniform_space() const;

 private:
  std::vector<int> orders_;
  long size_;
};

// Character with frequency tuple k: phase(x) = Σ k_j x_j / N_j mod 1, kept
// as an exact rational in [0,1). χ(x) = exp(2πi phase(x)).
class Character {
 public:
  Character(const FiniteAbelianGroup& g, std::vector<int> freq);

  const std::vector<int>& freq() const { return freq_; }
  Rat phase(const FiniteAbelianGroup& g, const FiniteAbelianGroup::Elem& x) const;
  bool is_trivial() const;
  // χ materialized as a complex-valued function on the uniform group space.
  FunctionOnSpace as_function(const FiniteAbelianGroup& g, SpacePtr space) const;

 private:
  std::vector<int> freq_;
};

// Uniform measure on the group of standard n-cubes
// {(x + Σ v_i h_i)_v : x, h_i}, a coupling over the uniform space on Z.
Coupling standard_cube_coupling(const FiniteAbelianGroup& g, int n, long size_cap = 1 << 20);

struct CubeGroupSpec {
  FiniteAbelianGroup group;
  int n = 0;       // cube dimension
  int k = 0;       // degree; may be negative
  bool rooted = false;
};

// Maps q: cube vertices -> Z, stored as vertex-indexed tables.
using CubeMap = std::vector<FiniteAbelianGroup::Elem>;

// Membership in C^n(D_k(Z)) (alternating sums over all (k+1)-faces vanish),
// rooted variant additionally requires q(0^n) = 0.
bool degree_cube_group_member(const CubeGroupSpec& spec, const CubeMap& q);
// Complete enumeration; throws when |Z|^(2^n) exceeds the cap.
std::vector<CubeMap> degree_cube_group(const CubeGroupSpec& spec, double enum_cap = 2e7);

// Degree-<=k polynomial maps v -> Σ_{|T|<=k} a_T Π_{i∈T} v_i. For abelian
// groups these coincide with the degree-k cube group; used as a test oracle.
std::vector<CubeMap> polynomial_cube_maps(const FiniteAbelianGroup& g, int n, int k);

// Character assignment on the full cube or on the corner K_n.
using CharacterMap = std::vector<Character>;

// Whether Π_v C^{|v|} η_v ∘ p_v is 1 on every element of the (rooted) cube
// group. For the rooted variant η is indexed by K_n = vertices 1..2^n-1.
bool annihilates(const CharacterMap& eta, const CubeGroupSpec& spec, double enum_cap = 2e7);

// The dual membership criterion: η ∈ C^n(D_{n-k-1}(dual Z)), or for the
// rooted variant η ∈ hom(K_n, D_{n-k-1}(dual Z)) computed via the face
// conditions lying entirely inside K_n.
bool dual_criterion(const CharacterMap& eta, const CubeGroupSpec& spec);

// Group-map values as a complex function on the uniform space of Z.
FunctionOnSpace function_from_values(const FiniteAbelianGroup& g, SpacePtr space,
                                     const std::vector<CScalar>& values);

}  // namespace cubecoup
