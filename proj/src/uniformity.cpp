#include "cubecoup/uniformity.hpp"

#include <cmath>
#include <stdexcept>

namespace cubecoup {

CScalar u_product(const CubicCoupling& cc, int d, const std::vector<FunctionOnSpace>& fs) {
  if ((int)fs.size() != (1 << d)) throw std::invalid_argument("u_product: need 2^d functions");
  std::vector<FunctionOnSpace> adj;
  adj.reserve(fs.size());
  for (VertexBits v = 0; v < (VertexBits)(1 << d); v++)
    adj.push_back(vertex_height(v) % 2 ? fs[v].conj() : fs[v]);
  return xi(cc.mu(d), adj);
}

Scalar u_seminorm_pow(const CubicCoupling& cc, int d, const FunctionOnSpace& f) {
  std::vector<FunctionOnSpace> fs((size_t)1 << d, f);
  CScalar val = u_product(cc, d, fs);
  if (!val.im.is_zero())
    throw std::runtime_error("u_seminorm: U^d power has nonzero imaginary part " + val.im.str());
  if (val.re.sign() < 0 && !val.re.is_zero())
    throw std::runtime_error("u_seminorm: negative U^d power " + val.re.str());
  return val.re;
}

double u_seminorm(const CubicCoupling& cc, int d, const FunctionOnSpace& f) {
  double p = u_seminorm_pow(cc, d, f).value();
  if (p < 0) p = 0;  // exact zero may round below
  return std::pow(p, 1.0 / std::pow(2.0, d));
}

FunctionOnSpace u_convolution(const CubicCoupling& cc, int d,
                              const std::vector<FunctionOnSpace>& fs) {
  int corner = (1 << d) - 1;
  if ((int)fs.size() != corner)
    throw std::invalid_argument("u_convolution: need 2^d - 1 corner functions");
  const Coupling& mu = cc.mu(d);
  auto base = cc.base();
  std::vector<CScalar> acc(base->size(), CScalar(Scalar(0)));
  for (auto& [t, w] : mu.mass()) {
    CScalar prod{Scalar(1)};
    for (int v = 1; v <= corner; v++) {
      CScalar val = fs[v - 1][t[v]];
      if ((vertex_height((VertexBits)v) + 1) % 2) val = val.conj();
      prod *= val;
    }
    acc[t[0]] += prod * CScalar(w);
  }
  // fibre mass at root x equals λ(x) by the marginal law
  std::vector<CScalar> out(base->size(), CScalar(Scalar(0)));
  for (AtomId a = 0; a < base->size(); a++) {
    if (base->weight(a).sign() <= 0) continue;
    out[a] = CScalar(acc[a].re / base->weight(a), acc[a].im / base->weight(a));
  }
  return FunctionOnSpace(base, std::move(out));
}

Partition fourier_factor(const CubicCoupling& cc, int d) {
  const Coupling& mu = cc.mu(d);
  SupportView v = support_view(mu);
  std::vector<size_t> corner;
  for (size_t p = 1; p < (size_t)(1 << d); p++) corner.push_back(p);
  Partition m = meet(v.partition_by({0}), v.partition_by(corner));

  auto base = cc.base();
  std::vector<int> block(base->size(), -1);
  for (AtomId a = 0; a < v.space->size(); a++) {
    AtomId x = v.tuples[a][0];
    int b = m.block_of(a);
    if (block[x] != -1 && block[x] != b)
      throw std::logic_error("fourier_factor: meet does not push down to the base");
    block[x] = b;
  }
  std::map<int, int> ids;
  for (AtomId a = 0; a < base->size(); a++) {
    if (base->weight(a).sign() <= 0) { block[a] = -1; continue; }
    if (block[a] == -1)
      throw std::logic_error("fourier_factor: support atom missing from mu^d roots");
    auto [it, fresh] = ids.try_emplace(block[a], (int)ids.size());
    block[a] = it->second;
  }
  return Partition(base, std::move(block), (int)ids.size());
}

ZeroNormCheck zero_norm_projection_check(const CubicCoupling& cc, int d,
                                         const FunctionOnSpace& f) {
  ZeroNormCheck out;
  out.seminorm_zero = u_seminorm_pow(cc, d, f).is_zero();
  Partition fd = fourier_factor(cc, d);
  out.projection_zero = cond_expect(f, fd).is_zero_on_support();
  return out;
}

bool fourier_factor_deep_check(const CubicCoupling& cc, int d) {
  Partition fd = fourier_factor(cc, d);
  const Coupling& mu = cc.mu(d);
  SupportView v = support_view(mu);

  // Partition of the support by the F_{d-1}-block of a single coordinate, and
  // by the tuple of F_{d-1}-blocks over the corner.
  auto factor_partition = [&](const std::vector<size_t>& positions) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> block(v.space->size(), -1);
    for (AtomId a = 0; a < v.space->size(); a++) {
      std::vector<int> key(positions.size());
      for (size_t j = 0; j < positions.size(); j++)
        key[j] = fd.block_of(v.tuples[a][positions[j]]);
      auto [it, fresh] = ids.try_emplace(std::move(key), (int)ids.size());
      block[a] = it->second;
    }
    return Partition(v.space, std::move(block), (int)ids.size());
  };

  std::vector<size_t> corner;
  for (size_t p = 1; p < (size_t)(1 << d); p++) corner.push_back(p);
  Partition lhs = factor_partition({0});
  Partition rhs = meet(v.partition_by({0}), factor_partition(corner));
  return lhs.equals(rhs);
}

}  // namespace cubecoup
