#include "cubecoup/cubic_coupling.hpp"

#include <algorithm>
#include <sstream>

namespace cubecoup {

CubicCoupling::CubicCoupling(SpacePtr base, Provider provider, int n_max)
    : base_(std::move(base)), provider_(std::move(provider)), n_max_(n_max) {}

const Coupling& CubicCoupling::mu(int n) const {
  if (n < 0 || n > n_max_)
    throw std::invalid_argument("CubicCoupling: level beyond verification horizon");
  auto it = cache_.find(n);
  if (it == cache_.end()) it = cache_.emplace(n, provider_(n)).first;
  return it->second;
}

static std::vector<std::string> cube_labels(int n) {
  std::vector<std::string> labels(1 << n);
  for (int v = 0; v < (1 << n); v++) labels[v] = vertex_str((VertexBits)v, n);
  return labels;
}

CubicCoupling CubicCoupling::standard_abelian(const FiniteAbelianGroup& g, int n_max) {
  SpacePtr space = g.uniform_space();
  auto provider = [g](int n) { return standard_cube_coupling(g, n); };
  return CubicCoupling(space, provider, n_max);
}

CubicCoupling CubicCoupling::full_product(SpacePtr base, int n_max) {
  auto provider = [base](int n) { return Coupling::product(base, cube_labels(n)); };
  return CubicCoupling(base, provider, n_max);
}

CubicCoupling CubicCoupling::diagonal_sequence(SpacePtr base, int n_max) {
  auto provider = [base](int n) { return Coupling::diagonal(base, cube_labels(n)); };
  return CubicCoupling(base, provider, n_max);
}

std::vector<size_t> face_positions(const Face& f) {
  std::vector<size_t> out;
  for (VertexBits v : f.vertices()) out.push_back((size_t)v);
  return out;
}

// Subcoupling along a morphism viewed as a vertex injection: label w of the
// domain cube picks coordinate φ(w) of the codomain cube.
static Coupling subcoupling_along_morphism(const Coupling& mu, const CubeMorphism& phi) {
  int m = phi.domain_dim();
  std::vector<size_t> pos(1 << m);
  for (VertexBits w = 0; w < (1u << m); w++) pos[w] = (size_t)phi.apply(w);
  return subcoupling(mu, pos, cube_labels(m));
}

Report verify_axioms_v1(const CubicCoupling& cc, int n_max) {
  Report rep;
  for (int n = 0; n <= n_max; n++) {
    const Coupling& mun = cc.mu(n);
    // marginal law comes first; everything else assumes it
    std::string err = mun.validate_marginals();
    rep.add("marginal_law", "n=" + std::to_string(n), err.empty(), err);

    for (int m = 0; m <= n; m++) {
      bool ok = true;
      std::string witness;
      for (const auto& phi : enumerate_morphisms(m, n, MorphismFilter::injective)) {
        if (!subcoupling_along_morphism(mun, phi).equals(cc.mu(m))) {
          ok = false;
          witness = "phi=" + phi.str();
          break;
        }
      }
      rep.add("consistency", "m=" + std::to_string(m) + ",n=" + std::to_string(n), ok, witness);
    }
  }
  {
    const Coupling& mu1 = cc.mu(1);
    bool ok = mu1.equals(Coupling::product(cc.base(), cube_labels(1)));
    rep.add("ergodicity", "n=1", ok, ok ? "" : "mu^1 is not the independent coupling");
  }
  for (int n = 2; n <= n_max; n++) {
    bool ok = true;
    std::string witness;
    auto faces = enumerate_faces(n, n - 1);
    for (size_t i = 0; i < faces.size() && ok; i++) {
      for (size_t j = i + 1; j < faces.size() && ok; j++) {
        if (faces[i].fixed_mask == faces[j].fixed_mask) continue;  // opposite or equal
        if (!index_cond_independent(cc.mu(n), face_positions(faces[i]),
                                    face_positions(faces[j]))) {
          ok = false;
          witness = "F0=" + faces[i].str() + " F1=" + faces[j].str();
        }
      }
    }
    rep.add("cond_independence", "n=" + std::to_string(n), ok, witness);
  }
  return rep;
}

Report verify_axioms_v2(const CubicCoupling& cc, int n_max) {
  Report rep;
  for (int n = 0; n <= n_max; n++) {
    const Coupling& mun = cc.mu(n);
    for (int m = 0; m <= n; m++) {
      bool ok = true;
      std::string witness;
      for (const auto& phi : enumerate_morphisms(m, n, MorphismFilter::face_map)) {
        if (!subcoupling_along_morphism(mun, phi).equals(cc.mu(m))) {
          ok = false;
          witness = "phi=" + phi.str();
          break;
        }
      }
      rep.add("face_consistency", "m=" + std::to_string(m) + ",n=" + std::to_string(n), ok,
              witness);
    }
  }
  {
    bool ok = cc.mu(1).equals(Coupling::product(cc.base(), cube_labels(1)));
    rep.add("ergodicity", "n=1", ok, ok ? "" : "mu^1 is not the independent coupling");
  }
  for (int n = 1; n <= n_max; n++) {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n && ok; i++) {
      Face f0{n, (VertexBits)(1u << i), 0};
      Face f1{n, (VertexBits)(1u << i), (VertexBits)(1u << i)};
      try {
        Coupling two = pair_view(cc.mu(n), face_positions(f0), face_positions(f1));
        if (!is_idempotent(two)) {
          ok = false;
          witness = "faces v" + std::to_string(i + 1) + "=0/1: not idempotent";
        }
      } catch (const std::exception& e) {
        ok = false;
        witness = std::string("pair_view: ") + e.what();
      }
    }
    rep.add("idempotence", "n=" + std::to_string(n), ok, witness);
  }
  return rep;
}

Report verify_simplicial_cis(const CubicCoupling& cc, int n) {
  Report rep;
  if (n > 3) throw std::invalid_argument("verify_simplicial_cis: n cap is 3");
  auto sets = SimplicialSet::enumerate_all(n);
  const Coupling& mun = cc.mu(n);
  bool ok = true;
  std::string witness;
  for (size_t i = 0; i < sets.size() && ok; i++) {
    if (sets[i].vertices().empty()) continue;
    for (size_t j = i; j < sets.size() && ok; j++) {
      if (sets[j].vertices().empty()) continue;
      std::vector<size_t> t1, t2;
      for (VertexBits v : sets[i].vertices()) t1.push_back(v);
      for (VertexBits v : sets[j].vertices()) t2.push_back(v);
      if (!index_cond_independent(mun, t1, t2) || !index_meet_identity(mun, t1, t2)) {
        ok = false;
        std::ostringstream os;
        os << "H1={";
        for (VertexBits v : sets[i].vertices()) os << vertex_str(v, n) << " ";
        os << "} H2={";
        for (VertexBits v : sets[j].vertices()) os << vertex_str(v, n) << " ";
        os << "}";
        witness = os.str();
      }
    }
  }
  rep.add("simplicial_cis", "n=" + std::to_string(n), ok, witness);
  return rep;
}

Report verify_tricube_symmetry(const CubicCoupling& cc, int n) {
  Report rep;
  if (n > 2) throw std::invalid_argument("verify_tricube_symmetry: n cap is 2");
  const Coupling& big = cc.mu(2 * n);
  auto pts = tricube_points(n);
  std::vector<size_t> pos;
  for (auto& t : pts) pos.push_back((size_t)tricube_embed(n, t));
  std::vector<std::string> labels(pts.size());
  for (size_t i = 0; i < pts.size(); i++) {
    std::string s;
    for (int x : pts[i]) s += (x == -1 ? "-" : x == 0 ? "0" : "+");
    labels[i] = s;
  }
  Coupling tri = subcoupling(big, pos, labels);

  bool ok = true;
  std::string witness;
  auto syms = tricube_symmetries(n);
  for (size_t s = 0; s < syms.size() && ok; s++) {
    // relabel: coordinate i of the new tuple reads old coordinate img[i]
    std::vector<size_t> perm(pts.size());
    for (size_t i = 0; i < pts.size(); i++) perm[i] = (size_t)syms[s][i];
    if (!subcoupling(tri, perm, labels).equals(tri)) {
      ok = false;
      witness = "symmetry #" + std::to_string(s);
    }
  }
  rep.add("tricube_symmetry", "n=" + std::to_string(n), ok, witness);
  return rep;
}

Report verify_outer_point(const CubicCoupling& cc, int n) {
  Report rep;
  const Coupling& big = cc.mu(2 * n);
  std::vector<size_t> pos(1 << n);
  for (VertexBits v = 0; v < (1u << n); v++)
    pos[v] = (size_t)tricube_embed(n, outer_point(n, v));
  Coupling sub = subcoupling(big, pos, cube_labels(n));
  bool ok = sub.equals(cc.mu(n));
  rep.add("outer_point", "n=" + std::to_string(n), ok,
          ok ? "" : "outer-point subcoupling differs from mu^n");
  return rep;
}

Report verify_face_locality(const CubicCoupling& cc, int m) {
  Report rep;
  const Coupling& mum = cc.mu(m);
  bool ok = true;
  std::string witness;
  for (const Face& f : enumerate_all_faces(m)) {
    if (!ok) break;
    for (VertexBits w = 0; w < (1u << m) && ok; w++) {
      if (f.contains(w)) continue;
      if (!labels_independent(mum, face_positions(f), {(size_t)w})) {
        ok = false;
        witness = "F=" + f.str() + " w=" + vertex_str(w, m);
      }
    }
  }
  rep.add("face_locality", "m=" + std::to_string(m), ok, witness);
  return rep;
}

Report verify_keybot(const CubicCoupling& cc, int d) {
  Report rep;
  SupportView v = support_view(cc.mu(d));
  std::vector<size_t> corner;
  for (size_t p = 1; p < (size_t)(1 << d); p++) corner.push_back(p);
  Partition root = v.partition_by({0});
  Partition rest = v.partition_by(corner);
  bool ok = cond_independent_pair(root, rest) && cond_independent_one_sided(root, rest);
  rep.add("keybot", "d=" + std::to_string(d), ok,
          ok ? "" : "root and corner sigma-algebras are not conditionally independent");
  return rep;
}

Report verify_factor_sequence(const CubicCoupling& cc, const Partition& p, int n_max) {
  auto provider = [&cc, p](int n) { return factor_coupling(cc.mu(n), p); };
  CubicCoupling factored(factor_coupling(cc.mu(0), p).base(), provider, n_max);
  return verify_axioms_v1(factored, n_max);
}

}  // namespace cubecoup
