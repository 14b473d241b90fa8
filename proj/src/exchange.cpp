#include "cubecoup/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cubecoup {

Pattern Pattern::even_odd(int k) {
  Pattern p;
  p.k = k;
  for (VertexBits v = 0; v < (VertexBits)(1 << k); v++) {
    if (vertex_height(v) % 2 == 0) p.plain.push_back(v);
    else p.conjugated.push_back(v);
  }
  return p;
}

CScalar pattern_density(const FiniteAbelianGroup& g, const std::vector<CScalar>& f,
                        const Pattern& pattern, long size_cap) {
  if ((long)f.size() != g.size())
    throw std::invalid_argument("pattern_density: function arity mismatch");
  int k = pattern.k;
  double params = std::pow((double)g.size(), k + 1);
  if (params > (double)size_cap)
    throw std::invalid_argument("pattern_density: size cap exceeded");
  CScalar total;
  std::vector<long> idx(k + 1, 0);
  while (true) {
    auto x = g.decode(idx[0]);
    std::vector<AtomId> at(1 << k);
    for (int v = 0; v < (1 << k); v++) {
      auto p = x;
      for (int i = 0; i < k; i++)
        if ((v >> i) & 1) p = g.add(p, g.decode(idx[i + 1]));
      at[v] = (AtomId)g.encode(p);
    }
    CScalar prod{Scalar(1)};
    for (VertexBits v : pattern.plain) prod *= f[at[v]];
    for (VertexBits v : pattern.conjugated) prod *= f[at[v]].conj();
    total += prod;
    int j = 0;
    while (j <= k && ++idx[j] == g.size()) idx[j++] = 0;
    if (j > k) break;
  }
  Scalar inv(1, (long)params);
  return {total.re * inv, total.im * inv};
}

std::vector<ConvergenceEntry> is_cubic_convergent(
    const std::vector<std::pair<FiniteAbelianGroup, std::vector<CScalar>>>& seq,
    const std::vector<Pattern>& patterns, double eps) {
  std::vector<ConvergenceEntry> out;
  for (size_t pi = 0; pi < patterns.size(); pi++) {
    ConvergenceEntry e;
    e.pattern_index = pi;
    for (auto& [g, f] : seq) e.densities.push_back(pattern_density(g, f, patterns[pi]));
    e.last_gap = 0;
    if (e.densities.size() >= 2) {
      CScalar d = e.densities.back() - e.densities[e.densities.size() - 2];
      e.last_gap = std::sqrt(d.norm2().value());
    }
    e.cauchy_within_eps = e.last_gap <= eps;
    out.push_back(std::move(e));
  }
  return out;
}

KernelMap KernelMap::deterministic(const FiniteAbelianGroup& g,
                                   const std::vector<int>& symbol_of) {
  KernelMap k{g, 0, {}};
  for (int s : symbol_of) k.alphabet = std::max(k.alphabet, s + 1);
  k.probs.assign(g.size(), std::vector<Scalar>(k.alphabet, Scalar(0)));
  if ((long)symbol_of.size() != g.size())
    throw std::invalid_argument("KernelMap::deterministic: table size mismatch");
  for (long i = 0; i < g.size(); i++) k.probs[i][symbol_of[i]] = Scalar(1);
  return k;
}

KernelMap KernelMap::uniform(const FiniteAbelianGroup& g, int alphabet) {
  KernelMap k{g, alphabet, {}};
  k.probs.assign(g.size(), std::vector<Scalar>(alphabet, Scalar(1, alphabet)));
  return k;
}

void KernelMap::validate() const {
  if ((long)probs.size() != group.size())
    throw std::invalid_argument("KernelMap: table size mismatch");
  for (auto& row : probs) {
    if ((int)row.size() != alphabet)
      throw std::invalid_argument("KernelMap: alphabet size mismatch");
    Scalar total(0);
    for (auto& p : row) {
      if (p.sign() < 0) throw std::invalid_argument("KernelMap: negative probability");
      total += p;
    }
    if (total != Scalar(1)) throw std::invalid_argument("KernelMap: row does not sum to 1");
  }
}

SampleBatch sample_zeta(const KernelMap& kernel, int window_dim, size_t n_samples,
                        uint64_t seed, bool corrupted) {
  kernel.validate();
  const auto& g = kernel.group;
  int verts = 1 << window_dim;

  // Exact integer inversion tables: per group element, a common denominator
  // and the cumulative numerators.
  std::vector<uint64_t> denom(g.size());
  std::vector<std::vector<uint64_t>> cum(g.size());
  for (long i = 0; i < g.size(); i++) {
    mpz_class d(1);
    for (auto& p : kernel.probs[i]) d = d * p.rat().get_den() / gcd(d, mpz_class(p.rat().get_den()));
    if (!d.fits_ulong_p())
      throw std::invalid_argument("sample_zeta: kernel denominators too large");
    denom[i] = d.get_ui();
    uint64_t acc = 0;
    for (auto& p : kernel.probs[i]) {
      mpz_class num = p.rat().get_num() * (d / p.rat().get_den());
      acc += num.get_ui();
      cum[i].push_back(acc);
    }
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.window_dim = window_dim;
  batch.alphabet = kernel.alphabet;
  batch.corrupted = corrupted;
  batch.samples.reserve(n_samples);
  for (size_t s = 0; s < n_samples; s++) {
    SplitMix rng(SplitMix::derive(seed, s));
    long x = (long)rng.uniform((uint64_t)g.size());
    std::vector<long> h(window_dim);
    for (int i = 0; i < window_dim; i++) h[i] = (long)rng.uniform((uint64_t)g.size());
    if (corrupted)
      for (int i = 1; i < window_dim; i++) h[i] = h[0];
    std::vector<uint8_t> row(verts);
    for (int v = 0; v < verts; v++) {
      auto z = g.decode(x);
      for (int i = 0; i < window_dim; i++)
        if ((v >> i) & 1) z = g.add(z, g.decode(h[i]));
      long zi = g.encode(z);
      uint64_t r = rng.uniform(denom[zi]);
      int sym = (int)(std::upper_bound(cum[zi].begin(), cum[zi].end(), r) - cum[zi].begin());
      row[v] = (uint8_t)sym;
    }
    batch.samples.push_back(std::move(row));
  }
  return batch;
}

static SpacePtr alphabet_space(int alphabet, const std::vector<Scalar>& marginal) {
  std::vector<std::string> names(alphabet);
  for (int s = 0; s < alphabet; s++) names[s] = std::to_string(s);
  return FiniteProbSpace::make(std::move(names), marginal);
}

Coupling exact_zeta_window(const KernelMap& kernel, int window_dim) {
  kernel.validate();
  const auto& g = kernel.group;
  int verts = 1 << window_dim;
  int B = kernel.alphabet;
  double states = std::pow((double)B, verts) * std::pow((double)g.size(), window_dim + 1);
  if (states > 1e7) throw std::invalid_argument("exact_zeta_window: size cap exceeded");

  // Single-vertex marginal: average of the kernel rows.
  std::vector<Scalar> marginal(B, Scalar(0));
  for (long i = 0; i < g.size(); i++)
    for (int s = 0; s < B; s++) marginal[s] += kernel.probs[i][s] * Scalar(1, g.size());

  Scalar unit(1, 1);
  {
    long params = 1;
    for (int i = 0; i <= window_dim; i++) params *= g.size();
    unit = Scalar(1, params);
  }

  MassMap m;
  std::vector<long> idx(window_dim + 1, 0);
  while (true) {
    auto x = g.decode(idx[0]);
    std::vector<long> at(verts);
    for (int v = 0; v < verts; v++) {
      auto p = x;
      for (int i = 0; i < window_dim; i++)
        if ((v >> i) & 1) p = g.add(p, g.decode(idx[i + 1]));
      at[v] = g.encode(p);
    }
    // distribute over all symbol assignments
    Tuple y(verts, 0);
    while (true) {
      Scalar w = unit;
      for (int v = 0; v < verts && w.sign() > 0; v++) w *= kernel.probs[at[v]][y[v]];
      if (w.sign() > 0) {
        auto [it, fresh] = m.try_emplace(y, w);
        if (!fresh) it->second += w;
      }
      int j = 0;
      while (j < verts && (int)++y[j] == B) y[j++] = 0;
      if (j == verts) break;
    }
    int j = 0;
    while (j <= window_dim && ++idx[j] == g.size()) idx[j++] = 0;
    if (j > window_dim) break;
  }

  std::vector<std::string> labels(verts);
  for (int v = 0; v < verts; v++) labels[v] = vertex_str((VertexBits)v, window_dim);
  return Coupling(alphabet_space(B, marginal), std::move(labels), std::move(m));
}

Coupling mix_windows(const Coupling& a, const Coupling& b, const Scalar& weight_a) {
  if (a.arity() != b.arity() || a.base()->size() != b.base()->size())
    throw std::invalid_argument("mix_windows: incompatible windows");
  Scalar wb = Scalar(1) - weight_a;
  MassMap m;
  for (auto& [t, w] : a.mass()) m[t] = w * weight_a;
  for (auto& [t, w] : b.mass()) {
    auto [it, fresh] = m.try_emplace(t, w * wb);
    if (!fresh) it->second += w * wb;
  }
  int B = (int)a.base()->size();
  std::vector<Scalar> marginal(B, Scalar(0));
  for (int s = 0; s < B; s++)
    marginal[s] = a.base()->weight(s) * weight_a + b.base()->weight(s) * wb;
  return Coupling(alphabet_space(B, marginal), a.labels(), std::move(m));
}

Report verify_window_consistency(const Coupling& window, int window_dim) {
  Report rep;
  for (int k = 0; k <= window_dim; k++) {
    auto morphisms = enumerate_morphisms(k, window_dim, MorphismFilter::injective);
    bool ok = true;
    std::string witness;
    Coupling first = [&] {
      std::vector<size_t> pos(1 << k);
      for (VertexBits w = 0; w < (1u << k); w++) pos[w] = (size_t)morphisms[0].apply(w);
      return subcoupling(window, pos);
    }();
    for (size_t i = 1; i < morphisms.size() && ok; i++) {
      std::vector<size_t> pos(1 << k);
      for (VertexBits w = 0; w < (1u << k); w++) pos[w] = (size_t)morphisms[i].apply(w);
      if (!subcoupling(window, pos).equals(first)) {
        ok = false;
        witness = "phi=" + morphisms[i].str();
      }
    }
    rep.add("window_consistency", "k=" + std::to_string(k), ok, witness);
  }
  return rep;
}

std::vector<std::pair<Face, Face>> independent_face_pairs(int n) {
  std::vector<std::pair<Face, Face>> out;
  auto faces = enumerate_all_faces(n);
  for (size_t i = 0; i < faces.size(); i++) {
    for (size_t j = i + 1; j < faces.size(); j++) {
      const Face& f1 = faces[i];
      const Face& f2 = faces[j];
      if ((f1.free_mask() & f2.free_mask()) != 0) continue;
      VertexBits common = f1.fixed_mask & f2.fixed_mask;
      if ((f1.fixed_vals & common) == (f2.fixed_vals & common)) continue;  // intersecting
      out.push_back({f1, f2});
    }
  }
  return out;
}

Report verify_window_independence(const Coupling& window, int window_dim) {
  Report rep;
  bool ok = true;
  std::string witness;
  for (auto& [f1, f2] : independent_face_pairs(window_dim)) {
    if (!labels_independent(window, face_positions(f1), face_positions(f2))) {
      ok = false;
      witness = "F1=" + f1.str() + " F2=" + f2.str();
      break;
    }
  }
  rep.add("window_independence", "n=" + std::to_string(window_dim), ok, witness);
  return rep;
}

size_t min_batch_size(int alphabet, int k) {
  double states = std::pow((double)alphabet, 1 << k);
  return (size_t)(50.0 * states);
}

// Empirical distribution of the coordinates at `pos`, flattened base-B.
static std::vector<double> empirical(const SampleBatch& batch, const std::vector<size_t>& pos) {
  size_t states = 1;
  for (size_t i = 0; i < pos.size(); i++) states *= (size_t)batch.alphabet;
  std::vector<double> freq(states, 0.0);
  for (auto& row : batch.samples) {
    size_t idx = 0;
    for (size_t i = 0; i < pos.size(); i++) idx = idx * batch.alphabet + row[pos[i]];
    freq[idx] += 1.0;
  }
  for (auto& f : freq) f /= (double)batch.samples.size();
  return freq;
}

Report test_consistency(const SampleBatch& batch) {
  Report rep;
  int n = batch.window_dim;
  for (int k = 0; k <= n; k++) {
    if (batch.samples.size() < min_batch_size(batch.alphabet, k))
      throw std::invalid_argument("test_consistency: batch too small for k=" +
                                  std::to_string(k));
    double states = std::pow((double)batch.alphabet, 1 << k);
    double threshold = 3.0 * std::sqrt(states / (double)batch.samples.size());
    auto morphisms = enumerate_morphisms(k, n, MorphismFilter::injective);
    std::vector<size_t> pos0(1 << k);
    for (VertexBits w = 0; w < (1u << k); w++) pos0[w] = (size_t)morphisms[0].apply(w);
    auto base_freq = empirical(batch, pos0);
    double worst = 0;
    std::string worst_at;
    for (size_t i = 1; i < morphisms.size(); i++) {
      std::vector<size_t> pos(1 << k);
      for (VertexBits w = 0; w < (1u << k); w++) pos[w] = (size_t)morphisms[i].apply(w);
      double tv = total_variation(base_freq, empirical(batch, pos));
      if (tv > worst) { worst = tv; worst_at = morphisms[i].str(); }
    }
    std::ostringstream os;
    os << "max_tv=" << worst << " threshold=" << threshold
       << (worst_at.empty() ? "" : " at phi=" + worst_at);
    rep.add("sample_consistency", "k=" + std::to_string(k), worst <= threshold, os.str());
  }
  return rep;
}

Report test_face_independence(const SampleBatch& batch) {
  Report rep;
  int n = batch.window_dim;
  for (auto& [f1, f2] : independent_face_pairs(n)) {
    size_t s1 = (size_t)std::pow((double)batch.alphabet, f1.free_dim() ? (1 << f1.free_dim()) : 1);
    size_t s2 = (size_t)std::pow((double)batch.alphabet, f2.free_dim() ? (1 << f2.free_dim()) : 1);
    // table index: flattened symbols over the face vertices
    auto pos1 = face_positions(f1);
    auto pos2 = face_positions(f2);
    s1 = 1;
    for (size_t i = 0; i < pos1.size(); i++) s1 *= (size_t)batch.alphabet;
    s2 = 1;
    for (size_t i = 0; i < pos2.size(); i++) s2 *= (size_t)batch.alphabet;
    std::vector<std::vector<int64_t>> table(s1, std::vector<int64_t>(s2, 0));
    for (auto& row : batch.samples) {
      size_t i1 = 0, i2 = 0;
      for (size_t p : pos1) i1 = i1 * batch.alphabet + row[p];
      for (size_t p : pos2) i2 = i2 * batch.alphabet + row[p];
      table[i1][i2]++;
    }
    ChiSquare cs = chi_square_independence(table);
    double q = chi_square_quantile(0.99, cs.dof);
    std::ostringstream os;
    os << "stat=" << cs.statistic << " dof=" << cs.dof << " q99=" << q;
    rep.add("sample_face_independence", "F1=" + f1.str() + ",F2=" + f2.str(),
            cs.statistic <= q, os.str());
  }
  return rep;
}

}  // namespace cubecoup
