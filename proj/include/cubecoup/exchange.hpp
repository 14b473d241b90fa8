// Cubic patterns and densities over finite abelian groups, a cubic
// convergence diagnostic, and the ζ exchangeable sampler with exact
// finite-window enumeration and statistical verification of the consistency
// and face-independence properties.
#pragma once

#include "cubecoup/abelian.hpp"
#include "cubecoup/report.hpp"
#include "cubecoup/stats.hpp"

namespace cubecoup {

struct Pattern {
  int k = 0;                        // cube dimension
  std::vector<VertexBits> plain;    // S1 multiset
  std::vector<VertexBits> conjugated;  // S2 multiset

  static Pattern even_odd(int k);   // S1 = even-height, S2 = odd-height vertices
};

// t(S1,S2,f): cube-group average of Π_{S1} f(q(v)) Π_{S2} conj f(q(v)).
CScalar pattern_density(const FiniteAbelianGroup& g, const std::vector<CScalar>& f,
                        const Pattern& pattern, long size_cap = 1 << 22);

struct ConvergenceEntry {
  size_t pattern_index;
  std::vector<CScalar> densities;  // one per sequence element
  double last_gap;
  bool cauchy_within_eps;
};
// Finite Cauchy proxy for cubic convergence: per pattern, successive density
// gaps of the supplied sequence tail.
std::vector<ConvergenceEntry> is_cubic_convergent(
    const std::vector<std::pair<FiniteAbelianGroup, std::vector<CScalar>>>& seq,
    const std::vector<Pattern>& patterns, double eps);

// Kernel x -> distribution over a finite alphabet.
struct KernelMap {
  FiniteAbelianGroup group;
  int alphabet = 0;
  std::vector<std::vector<Scalar>> probs;  // [group element][symbol]

  static KernelMap deterministic(const FiniteAbelianGroup& g,
                                 const std::vector<int>& symbol_of);  // point masses
  static KernelMap uniform(const FiniteAbelianGroup& g, int alphabet);
  void validate() const;
};

struct SampleBatch {
  uint64_t seed = 0;
  int window_dim = 0;
  int alphabet = 0;
  bool corrupted = false;  // negative control: reuses h_1 for every direction
  std::vector<std::vector<uint8_t>> samples;  // [sample][vertex] -> symbol
};

// Draw x, h_1..h_n uniformly, then Y_v ~ m(x + Σ v_i h_i) independently.
// Reproducible per seed via a counter-split stream per sample.
SampleBatch sample_zeta(const KernelMap& kernel, int window_dim, size_t n_samples,
                        uint64_t seed, bool corrupted = false);

// The exact law of the ζ window on alphabet^{2^n}, as a coupling over the
// single-vertex marginal space.
Coupling exact_zeta_window(const KernelMap& kernel, int window_dim);

// Mixture of two exact windows (consistency survives, independence fails when
// the components differ).
Coupling mix_windows(const Coupling& a, const Coupling& b, const Scalar& weight_a);

// Exact checks of the two defining properties on a finite window.
Report verify_window_consistency(const Coupling& window, int window_dim);
Report verify_window_independence(const Coupling& window, int window_dim);

// Independent face pairs inside the window: disjoint faces with disjoint
// free-coordinate sets.
std::vector<std::pair<Face, Face>> independent_face_pairs(int n);

// Statistical counterparts on a sampled batch. Consistency compares the
// empirical laws along pairs of injective morphisms in total variation with
// threshold 3*sqrt(states/n_samples); independence runs a chi-square test at
// the 0.99 quantile over independent face pairs.
Report test_consistency(const SampleBatch& batch);
Report test_face_independence(const SampleBatch& batch);

// Documented minimum batch size for the statistical tests.
size_t min_batch_size(int alphabet, int k);

}  // namespace cubecoup
