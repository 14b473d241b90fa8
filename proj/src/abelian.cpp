#include "cubecoup/abelian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubecoup {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
  if (orders_.empty()) throw std::invalid_argument("FiniteAbelianGroup: empty order list");
  size_ = 1;
  for (int n : orders_) {
    if (n < 1) throw std::invalid_argument("FiniteAbelianGroup: orders must be >= 1");
    size_ *= n;
  }
}

long FiniteAbelianGroup::encode(const Elem& x) const {
  long i = 0, mult = 1;
  for (size_t j = 0; j < orders_.size(); j++) {
    i += mult * (((x[j] % orders_[j]) + orders_[j]) % orders_[j]);
    mult *= orders_[j];
  }
  return i;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::decode(long i) const {
  Elem x(orders_.size());
  for (size_t j = 0; j < orders_.size(); j++) {
    x[j] = (int)(i % orders_[j]);
    i /= orders_[j];
  }
  return x;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::add(const Elem& x, const Elem& y) const {
  Elem z(orders_.size());
  for (size_t j = 0; j < orders_.size(); j++) z[j] = (x[j] + y[j]) % orders_[j];
  return z;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::neg(const Elem& x) const {
  Elem z(orders_.size());
  for (size_t j = 0; j < orders_.size(); j++) z[j] = (orders_[j] - x[j]) % orders_[j];
  return z;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::scale(int k, const Elem& x) const {
  Elem z(orders_.size());
  for (size_t j = 0; j < orders_.size(); j++) {
    long v = ((long)k * x[j]) % orders_[j];
    z[j] = (int)((v + orders_[j]) % orders_[j]);
  }
  return z;
}

std::string FiniteAbelianGroup::elem_name(const Elem& x) const {
  if (orders_.size() == 1) return std::to_string(x[0]);
  std::string s = "(";
  for (size_t j = 0; j < x.size(); j++) s += (j ? "," : "") + std::to_string(x[j]);
  return s + ")";
}

SpacePtr FiniteAbelianGroup::uniform_space() const {
  std::vector<std::string> names(size_);
  for (long i = 0; i < size_; i++) names[i] = elem_name(decode(i));
  std::vector<Scalar> w(size_, Scalar(1, size_));
  return FiniteProbSpace::make(std::move(names), std::move(w));
}

Character::Character(const FiniteAbelianGroup& g, std::vector<int> freq) : freq_(std::move(freq)) {
  if ((int)freq_.size() != g.rank())
    throw std::invalid_argument("Character: frequency arity mismatch");
  for (int j = 0; j < g.rank(); j++)
    freq_[j] = ((freq_[j] % g.orders()[j]) + g.orders()[j]) % g.orders()[j];
}

Rat Character::phase(const FiniteAbelianGroup& g, const FiniteAbelianGroup::Elem& x) const {
  Rat p(0);
  for (int j = 0; j < g.rank(); j++) {
    p += Rat((long)freq_[j] * x[j], g.orders()[j]);
  }
  // reduce mod 1
  mpz_class num = p.get_num(), den = p.get_den();
  mpz_class rem = num % den;
  if (rem < 0) rem += den;
  Rat out(rem, den);
  out.canonicalize();
  return out;
}

bool Character::is_trivial() const {
  for (int k : freq_)
    if (k != 0) return false;
  return true;
}

FunctionOnSpace Character::as_function(const FiniteAbelianGroup& g, SpacePtr space) const {
  std::vector<CScalar> vals(g.size());
  for (long i = 0; i < g.size(); i++) {
    double ph = 2.0 * std::numbers::pi * rat_to_double(phase(g, g.decode(i)));
    vals[i] = CScalar(Scalar::approx(std::cos(ph)), Scalar::approx(std::sin(ph)));
  }
  return FunctionOnSpace(std::move(space), std::move(vals));
}

Coupling standard_cube_coupling(const FiniteAbelianGroup& g, int n, long size_cap) {
  if (n < 0 || n > kMaxCubeDim) throw std::invalid_argument("standard_cube_coupling: bad n");
  double points = std::pow((double)g.size(), n + 1);
  if (points > (double)size_cap)
    throw std::invalid_argument("standard_cube_coupling: size cap exceeded");
  SpacePtr space = g.uniform_space();
  int verts = 1 << n;
  std::vector<std::string> labels(verts);
  for (int v = 0; v < verts; v++) labels[v] = vertex_str((VertexBits)v, n);

  MassMap m;
  std::vector<long> params(n + 1, 0);  // (x, h_1..h_n) as element indices
  Scalar unit(1, (long)points);
  while (true) {
    auto x = g.decode(params[0]);
    Tuple t(verts);
    for (int v = 0; v < verts; v++) {
      auto p = x;
      for (int i = 0; i < n; i++)
        if ((v >> i) & 1) p = g.add(p, g.decode(params[i + 1]));
      t[v] = (AtomId)g.encode(p);
    }
    auto [it, fresh] = m.try_emplace(std::move(t), unit);
    if (!fresh) it->second += unit;
    int j = 0;
    while (j <= n && ++params[j] == g.size()) params[j++] = 0;
    if (j > n) break;
  }
  return Coupling(space, std::move(labels), std::move(m), false);
}

// Alternating sum of q over a face of dimension d+1 vanishes; signs taken by
// global vertex height (orientation changes flip all signs simultaneously).
static bool face_condition_holds(const FiniteAbelianGroup& g, const CubeMap& q, const Face& f) {
  std::vector<long> acc(g.rank(), 0);
  for (VertexBits v : f.vertices()) {
    int sign = (vertex_height(v) % 2 == 0) ? 1 : -1;
    for (int j = 0; j < g.rank(); j++) acc[j] += sign * q[v][j];
  }
  for (int j = 0; j < g.rank(); j++)
    if (((acc[j] % g.orders()[j]) + g.orders()[j]) % g.orders()[j] != 0) return false;
  return true;
}

bool degree_cube_group_member(const CubeGroupSpec& spec, const CubeMap& q) {
  const auto& g = spec.group;
  int verts = 1 << spec.n;
  if ((int)q.size() != verts) throw std::invalid_argument("cube map arity mismatch");
  if (spec.rooted)
    for (int j = 0; j < g.rank(); j++)
      if (q[0][j] != 0) return false;
  if (spec.k < 0) {
    for (int v = 0; v < verts; v++)
      for (int j = 0; j < g.rank(); j++)
        if (q[v][j] != 0) return false;
    return true;
  }
  if (spec.k >= spec.n) return true;
  for (const Face& f : enumerate_faces(spec.n, spec.k + 1))
    if (!face_condition_holds(g, q, f)) return false;
  return true;
}

std::vector<CubeMap> degree_cube_group(const CubeGroupSpec& spec, double enum_cap) {
  const auto& g = spec.group;
  int verts = 1 << spec.n;
  double total = std::pow((double)g.size(), verts);
  if (total > enum_cap)
    throw std::invalid_argument("degree_cube_group: enumeration cap exceeded; use membership");
  std::vector<CubeMap> out;
  std::vector<long> idx(verts, 0);
  while (true) {
    CubeMap q(verts);
    for (int v = 0; v < verts; v++) q[v] = g.decode(idx[v]);
    if (degree_cube_group_member(spec, q)) out.push_back(std::move(q));
    int j = 0;
    while (j < verts && ++idx[j] == g.size()) idx[j++] = 0;
    if (j == verts) break;
  }
  return out;
}

std::vector<CubeMap> polynomial_cube_maps(const FiniteAbelianGroup& g, int n, int k) {
  std::vector<VertexBits> monomials;  // subsets T with |T| <= k
  for (VertexBits t = 0; t < (1u << n); t++)
    if (vertex_height(t) <= k) monomials.push_back(t);
  if (k < 0) monomials.clear();

  std::vector<CubeMap> out;
  size_t m = monomials.size();
  std::vector<long> coeff(m, 0);
  int verts = 1 << n;
  while (true) {
    CubeMap q(verts, g.zero());
    for (int v = 0; v < verts; v++)
      for (size_t t = 0; t < m; t++)
        if ((monomials[t] & ~(VertexBits)v) == 0)  // Π_{i∈T} v_i = 1
          q[v] = g.add(q[v], g.decode(coeff[t]));
    out.push_back(std::move(q));
    size_t j = 0;
    while (j < m && ++coeff[j] == g.size()) coeff[j++] = 0;
    if (j == m || m == 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool annihilates(const CharacterMap& eta, const CubeGroupSpec& spec, double enum_cap) {
  int verts = 1 << spec.n;
  int expected = spec.rooted ? verts - 1 : verts;  // rooted maps live on K_n
  if ((int)eta.size() != expected)
    throw std::invalid_argument("annihilates: character map arity mismatch");
  auto cubes = degree_cube_group(spec, enum_cap);
  const auto& g = spec.group;
  for (const CubeMap& q : cubes) {
    Rat total(0);
    for (int v = spec.rooted ? 1 : 0; v < verts; v++) {
      const Character& ch = eta[spec.rooted ? v - 1 : v];
      Rat p = ch.phase(g, q[v]);
      if (vertex_height((VertexBits)v) % 2 == 1) p = -p;  // C^{|v|} conjugation
      total += p;
    }
    mpz_class num = total.get_num(), den = total.get_den();
    if (num % den != 0) return false;
  }
  return true;
}

bool dual_criterion(const CharacterMap& eta, const CubeGroupSpec& spec) {
  const auto& g = spec.group;
  int verts = 1 << spec.n;
  int j = spec.n - spec.k - 1;  // degree of the dual cube group

  auto freq_at = [&](int v) -> const std::vector<int>& {
    return eta[spec.rooted ? v - 1 : v].freq();
  };
  int first = spec.rooted ? 1 : 0;

  if (j < 0) {
    // dual group D_j = {0}: every character must be trivial
    for (int v = first; v < verts; v++)
      if (!eta[spec.rooted ? v - 1 : v].is_trivial()) return false;
    return true;
  }
  if (j >= spec.n) return true;

  for (const Face& f : enumerate_faces(spec.n, j + 1)) {
    if (spec.rooted && f.contains(0)) continue;  // only faces inside K_n
    std::vector<long> acc(g.rank(), 0);
    for (VertexBits v : f.vertices()) {
      int sign = (vertex_height(v) % 2 == 0) ? 1 : -1;
      const auto& fr = freq_at((int)v);
      for (int r = 0; r < g.rank(); r++) acc[r] += sign * fr[r];
    }
    for (int r = 0; r < g.rank(); r++)
      if (((acc[r] % g.orders()[r]) + g.orders()[r]) % g.orders()[r] != 0) return false;
  }
  return true;
}

FunctionOnSpace function_from_values(const FiniteAbelianGroup& g, SpacePtr space,
                                     const std::vector<CScalar>& values) {
  if ((long)values.size() != g.size())
    throw std::invalid_argument("function_from_values: wrong number of values");
  return FunctionOnSpace(std::move(space), values);
}

}  // namespace cubecoup
