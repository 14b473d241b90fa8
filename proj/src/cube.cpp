#include "cubecoup/cube.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cubecoup {

std::string vertex_str(VertexBits v, int dim) {
  std::string s(dim, '0');
  for (int i = 0; i < dim; i++)
    if ((v >> i) & 1u) s[i] = '1';
  return s;
}

int vertex_height(VertexBits v) { return __builtin_popcount(v); }

std::string Vertex::str() const { return vertex_str(bits, dim); }

CubeMorphism::CubeMorphism(int m, int n, std::vector<MorphCoord> coords)
    : m_(m), n_(n), coords_(std::move(coords)) {
  if (m < 0 || n < 0 || (int)coords_.size() != n)
    throw std::invalid_argument("CubeMorphism: coordinate count must equal codomain dim");
  for (auto& c : coords_)
    if ((c.kind == MorphCoord::kId || c.kind == MorphCoord::kNeg) &&
        (c.input < 0 || c.input >= m))
      throw std::invalid_argument("CubeMorphism: input index out of range");
}

CubeMorphism CubeMorphism::identity(int n) {
  std::vector<MorphCoord> cs(n);
  for (int j = 0; j < n; j++) cs[j] = {MorphCoord::kId, j};
  return CubeMorphism(n, n, std::move(cs));
}

VertexBits CubeMorphism::apply(VertexBits v) const {
  VertexBits out = 0;
  for (int j = 0; j < n_; j++) {
    bool bit;
    const auto& c = coords_[j];
    switch (c.kind) {
      case MorphCoord::kConst0: bit = false; break;
      case MorphCoord::kConst1: bit = true; break;
      case MorphCoord::kId: bit = (v >> c.input) & 1u; break;
      default: bit = !((v >> c.input) & 1u); break;
    }
    if (bit) out |= (1u << j);
  }
  return out;
}

Vertex CubeMorphism::apply(Vertex v) const {
  if (v.dim != m_) throw std::invalid_argument("CubeMorphism: vertex dimension mismatch");
  return Vertex{apply(v.bits), n_};
}

bool CubeMorphism::is_injective() const {
  uint32_t used = 0;
  for (auto& c : coords_)
    if (c.kind == MorphCoord::kId || c.kind == MorphCoord::kNeg) used |= (1u << c.input);
  return used == ((m_ >= 32) ? ~0u : ((1u << m_) - 1u));
}

bool CubeMorphism::is_face_map() const {
  std::vector<int> count(m_, 0);
  for (auto& c : coords_)
    if (c.kind == MorphCoord::kId || c.kind == MorphCoord::kNeg) count[c.input]++;
  for (int i = 0; i < m_; i++)
    if (count[i] != 1) return false;
  return true;
}

bool CubeMorphism::is_automorphism() const { return m_ == n_ && is_face_map(); }

CubeMorphism CubeMorphism::compose(const CubeMorphism& other) const {
  if (other.n_ != m_) throw std::invalid_argument("CubeMorphism: composition dims");
  std::vector<MorphCoord> cs(n_);
  for (int j = 0; j < n_; j++) {
    const auto& c = coords_[j];
    if (c.kind == MorphCoord::kConst0 || c.kind == MorphCoord::kConst1) {
      cs[j] = c;
      continue;
    }
    MorphCoord inner = other.coords_[c.input];
    bool negate = (c.kind == MorphCoord::kNeg);
    switch (inner.kind) {
      case MorphCoord::kConst0:
        cs[j] = {negate ? MorphCoord::kConst1 : MorphCoord::kConst0, 0};
        break;
      case MorphCoord::kConst1:
        cs[j] = {negate ? MorphCoord::kConst0 : MorphCoord::kConst1, 0};
        break;
      case MorphCoord::kId:
        cs[j] = {negate ? MorphCoord::kNeg : MorphCoord::kId, inner.input};
        break;
      default:
        cs[j] = {negate ? MorphCoord::kId : MorphCoord::kNeg, inner.input};
        break;
    }
  }
  return CubeMorphism(other.m_, n_, std::move(cs));
}

std::string CubeMorphism::str() const {
  std::string s = "(";
  for (int j = 0; j < n_; j++) {
    if (j) s += ",";
    const auto& c = coords_[j];
    switch (c.kind) {
      case MorphCoord::kConst0: s += "0"; break;
      case MorphCoord::kConst1: s += "1"; break;
      case MorphCoord::kId: s += "v" + std::to_string(c.input + 1); break;
      default: s += "1-v" + std::to_string(c.input + 1); break;
    }
  }
  return s + ")";
}

std::vector<CubeMorphism> enumerate_morphisms(int m, int n, MorphismFilter filter) {
  if (m > kMaxEnumDim || n > kMaxEnumDim)
    throw std::invalid_argument("enumerate_morphisms: dimension cap exceeded");
  if (filter == MorphismFilter::automorphism && m != n)
    throw std::invalid_argument("enumerate_morphisms: automorphisms need m == n");
  if ((filter == MorphismFilter::injective || filter == MorphismFilter::face_map) && m > n)
    throw std::invalid_argument("enumerate_morphisms: need m <= n for this filter");

  std::vector<CubeMorphism> out;
  int options = 2 + 2 * m;
  std::vector<int> pick(n, 0);
  // Coordinate forms are in bijection with morphisms, so plain odometer
  // enumeration is duplicate-free.
  while (true) {
    std::vector<MorphCoord> cs(n);
    for (int j = 0; j < n; j++) {
      int p = pick[j];
      if (p == 0) cs[j] = {MorphCoord::kConst0, 0};
      else if (p == 1) cs[j] = {MorphCoord::kConst1, 0};
      else if (p < 2 + m) cs[j] = {MorphCoord::kId, p - 2};
      else cs[j] = {MorphCoord::kNeg, p - 2 - m};
    }
    CubeMorphism phi(m, n, std::move(cs));
    bool keep = true;
    switch (filter) {
      case MorphismFilter::all: break;
      case MorphismFilter::injective: keep = phi.is_injective(); break;
      case MorphismFilter::face_map: keep = phi.is_face_map(); break;
      case MorphismFilter::automorphism: keep = phi.is_automorphism(); break;
    }
    if (keep) out.push_back(std::move(phi));
    int j = 0;
    while (j < n && ++pick[j] == options) pick[j++] = 0;
    if (j == n) break;
    if (n == 0) break;
  }
  return out;
}

bool extends_to_affine(const std::vector<VertexBits>& table, int m, int n) {
  if ((int)table.size() != (1 << m)) return false;
  // f(v) = c + sum v_i d_i over Z^n, with c = f(0), d_i = f(e_i) - f(0).
  std::vector<std::vector<int>> d(m, std::vector<int>(n));
  VertexBits c = table[0];
  for (int i = 0; i < m; i++)
    for (int j = 0; j < n; j++)
      d[i][j] = (int)((table[1u << i] >> j) & 1u) - (int)((c >> j) & 1u);
  for (VertexBits v = 0; v < (VertexBits)(1 << m); v++) {
    for (int j = 0; j < n; j++) {
      int val = (c >> j) & 1u;
      for (int i = 0; i < m; i++)
        if ((v >> i) & 1u) val += d[i][j];
      if (val != (int)((table[v] >> j) & 1u)) return false;
    }
  }
  return true;
}

std::vector<VertexBits> Face::vertices() const {
  std::vector<VertexBits> out;
  VertexBits fm = free_mask();
  std::vector<int> free_idx;
  for (int i = 0; i < dim; i++)
    if ((fm >> i) & 1u) free_idx.push_back(i);
  for (VertexBits w = 0; w < (1u << free_idx.size()); w++) {
    VertexBits v = fixed_vals;
    for (size_t k = 0; k < free_idx.size(); k++)
      if ((w >> k) & 1u) v |= (1u << free_idx[k]);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Face::str() const {
  std::string s(dim, '*');
  for (int i = 0; i < dim; i++)
    if ((fixed_mask >> i) & 1u) s[i] = ((fixed_vals >> i) & 1u) ? '1' : '0';
  return s;
}

std::vector<Face> enumerate_faces(int n, int d) {
  if (n > kMaxCubeDim) throw std::invalid_argument("enumerate_faces: dimension cap");
  std::vector<Face> out;
  if (d < 0 || d > n) return out;
  VertexBits full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  for (VertexBits mask = 0; mask <= full; mask++) {
    if (__builtin_popcount(mask) != n - d) continue;
    VertexBits sub = mask;
    while (true) {
      out.push_back(Face{n, mask, sub});
      if (sub == 0) break;
      sub = (sub - 1) & mask;
    }
    if (mask == full) break;  // avoid wrap when n == 32 (cannot happen under cap)
  }
  return out;
}

std::vector<Face> enumerate_all_faces(int n) {
  std::vector<Face> out;
  for (int d = 0; d <= n; d++) {
    auto fs = enumerate_faces(n, d);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

CubeMorphism face_embedding(const Face& f) {
  int k = f.free_dim();
  std::vector<MorphCoord> cs(f.dim);
  int next = 0;
  for (int j = 0; j < f.dim; j++) {
    if ((f.fixed_mask >> j) & 1u)
      cs[j] = {((f.fixed_vals >> j) & 1u) ? MorphCoord::kConst1 : MorphCoord::kConst0, 0};
    else
      cs[j] = {MorphCoord::kId, next++};
  }
  return CubeMorphism(k, f.dim, std::move(cs));
}

SimplicialSet::SimplicialSet(int dim, std::vector<VertexBits> verts) : dim_(dim) {
  if (!is_simplicial(dim, verts))
    throw std::invalid_argument("SimplicialSet: vertex set is not down-closed");
  verts_ = std::move(verts);
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
}

bool SimplicialSet::is_simplicial(int dim, const std::vector<VertexBits>& verts) {
  std::set<VertexBits> s(verts.begin(), verts.end());
  for (VertexBits v : s) {
    // enumerate w <= v
    VertexBits w = v;
    while (true) {
      if (!s.count(w)) return false;
      if (w == 0) break;
      w = (w - 1) & v;
    }
  }
  return true;
}

SimplicialSet SimplicialSet::closure(int dim, const std::vector<VertexBits>& seed) {
  std::set<VertexBits> s;
  for (VertexBits v : seed) {
    VertexBits w = v;
    while (true) {
      s.insert(w);
      if (w == 0) break;
      w = (w - 1) & v;
    }
  }
  return SimplicialSet(dim, std::vector<VertexBits>(s.begin(), s.end()));
}

std::vector<SimplicialSet> SimplicialSet::enumerate_all(int n) {
  if (n > kMaxEnumDim) throw std::invalid_argument("SimplicialSet::enumerate_all: cap");
  std::vector<SimplicialSet> out;
  int verts = 1 << n;
  for (uint64_t mask = 0; mask < (1ull << verts); mask++) {
    std::vector<VertexBits> vs;
    for (int v = 0; v < verts; v++)
      if ((mask >> v) & 1ull) vs.push_back((VertexBits)v);
    if (is_simplicial(n, vs)) out.push_back(SimplicialSet(n, std::move(vs)));
  }
  return out;
}

bool SimplicialSet::contains(VertexBits v) const {
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

int SimplicialSet::height() const {
  int h = 0;
  for (VertexBits v : verts_) h = std::max(h, vertex_height(v));
  return h;
}

int SimplicialSet::degree(VertexBits u) const {
  if (!contains(u)) throw std::invalid_argument("SimplicialSet::degree: vertex not in set");
  int d = 0;
  for (VertexBits w : verts_)
    if ((u & ~w) == 0) d = std::max(d, vertex_height(w));
  return d;
}

std::vector<VertexBits> SimplicialSet::maximal_vertices() const {
  std::vector<VertexBits> out;
  for (VertexBits v : verts_) {
    bool maximal = true;
    for (VertexBits w : verts_)
      if (w != v && (v & ~w) == 0) { maximal = false; break; }
    if (maximal) out.push_back(v);
  }
  return out;
}

VertexBits tricube_embed(int n, const TriPoint& t) {
  if ((int)t.size() != n) throw std::invalid_argument("tricube_embed: arity");
  VertexBits v = 0;
  for (int i = 0; i < n; i++) {
    switch (t[i]) {
      case 1: v |= (1u << i); break;
      case 0: break;
      case -1: v |= (1u << (i + n)); break;
      default: throw std::invalid_argument("tricube_embed: entries must be in {-1,0,1}");
    }
  }
  return v;
}

TriPoint tricube_unembed(int n, VertexBits v) {
  TriPoint t(n);
  for (int i = 0; i < n; i++)
    t[i] = (int)((v >> i) & 1u) - (int)((v >> (i + n)) & 1u);
  return t;
}

bool in_tricube_image(int n, VertexBits v) {
  for (int i = 0; i < n; i++)
    if (((v >> i) & 1u) && ((v >> (i + n)) & 1u)) return false;
  return true;
}

std::vector<TriPoint> tricube_points(int n) {
  std::vector<TriPoint> out;
  TriPoint t(n, -1);
  while (true) {
    out.push_back(t);
    int i = 0;
    while (i < n && t[i] == 1) t[i++] = -1;
    if (i == n) break;
    t[i]++;
    if (n == 0) break;
  }
  if (n == 0) out.assign(1, TriPoint{});
  return out;
}

TriPoint outer_point(int n, VertexBits v) {
  TriPoint t(n);
  for (int i = 0; i < n; i++) t[i] = ((v >> i) & 1u) ? 1 : -1;
  return t;
}

std::vector<std::vector<int>> tricube_symmetries(int n) {
  // the 6 permutations of {-1,0,1}
  static const int perms[6][3] = {{-1, 0, 1}, {-1, 1, 0}, {0, -1, 1},
                                  {0, 1, -1}, {1, -1, 0}, {1, 0, -1}};
  auto pts = tricube_points(n);
  std::map<TriPoint, int> index;
  for (size_t i = 0; i < pts.size(); i++) index[pts[i]] = (int)i;

  std::vector<std::vector<int>> out;
  std::vector<int> choice(n, 0);
  while (true) {
    std::vector<int> img(pts.size());
    for (size_t p = 0; p < pts.size(); p++) {
      TriPoint t = pts[p];
      for (int i = 0; i < n; i++) t[i] = perms[choice[i]][t[i] + 1];
      img[p] = index.at(t);
    }
    out.push_back(std::move(img));
    int i = 0;
    while (i < n && ++choice[i] == 6) choice[i++] = 0;
    if (i == n) break;
    if (n == 0) break;
  }
  return out;
}

}  // namespace cubecoup
