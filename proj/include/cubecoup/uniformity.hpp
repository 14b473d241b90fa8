// U^d products, convolutions and seminorms over a cubic coupling, and the
// Fourier σ-algebras (characteristic factors) computed as the meet of the
// root and corner cylinder σ-algebras pushed down to the base.
#pragma once

#include "cubecoup/cubic_coupling.hpp"

namespace cubecoup {

// ⟨F⟩_{U^d} = ∫ Π_v C^{|v|} f_v ∘ p_v dμ^d; fs indexed by vertex bits.
CScalar u_product(const CubicCoupling& cc, int d, const std::vector<FunctionOnSpace>& fs);

// ⟨f,...,f⟩_{U^d} = ‖f‖_{U^d}^{2^d}, kept in powered form. Real and
// nonnegative for a cubic coupling; a violation throws (bug signal).
Scalar u_seminorm_pow(const CubicCoupling& cc, int d, const FunctionOnSpace& f);
double u_seminorm(const CubicCoupling& cc, int d, const FunctionOnSpace& f);

// [F]_{U^d}(x) = E(Π_{v∈K_d} C^{|v|+1} f_v ∘ p_v | root = x); fs indexed by
// K_d in vertex order 1..2^d-1. Zero on zero-weight atoms.
FunctionOnSpace u_convolution(const CubicCoupling& cc, int d,
                              const std::vector<FunctionOnSpace>& fs);

// The Fourier σ-algebra F_{d-1} as a partition of the base support.
Partition fourier_factor(const CubicCoupling& cc, int d);

struct ZeroNormCheck {
  bool seminorm_zero = false;
  bool projection_zero = false;
  bool agree() const { return seminorm_zero == projection_zero; }
};
// ‖f‖_{U^d} = 0  vs  E(f | F_{d-1}) = 0, evaluated independently.
ZeroNormCheck zero_norm_projection_check(const CubicCoupling& cc, int d,
                                         const FunctionOnSpace& f);

// Optional deep check (the meet identity with the factored corner algebra):
// (F_{d-1})_root = A_root ∧ (F_{d-1})_{K_d} inside μ^d.
bool fourier_factor_deep_check(const CubicCoupling& cc, int d);

}  // namespace cubecoup
