#include "cubecoup/host_kra.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace cubecoup {

bool Permutation::is_identity() const {
  for (AtomId a = 0; a < image.size(); a++)
    if (image[a] != a) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p{std::vector<AtomId>(image.size())};
  for (AtomId a = 0; a < image.size(); a++) p.image[image[a]] = a;
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  Permutation p{std::vector<AtomId>(image.size())};
  for (AtomId a = 0; a < image.size(); a++) p.image[a] = next.image[image[a]];
  return p;
}

FilteredAction::FilteredAction(SpacePtr space, std::vector<std::vector<Permutation>> levels)
    : space_(std::move(space)), levels_(std::move(levels)) {
  degree_ = 0;
  for (size_t i = 0; i < levels_.size(); i++) {
    for (const auto& g : levels_[i]) {
      if (g.size() != space_->size())
        throw std::invalid_argument("FilteredAction: permutation arity mismatch");
      std::vector<char> seen(space_->size(), 0);
      for (AtomId a = 0; a < space_->size(); a++) {
        if (seen[g(a)]++) throw std::invalid_argument("FilteredAction: not a permutation");
        if (!(space_->weight(g(a)) == space_->weight(a)))
          throw std::invalid_argument("FilteredAction: generator distorts weights");
      }
      degree_ = (int)i + 1;
    }
  }
}

std::vector<Permutation> FilteredAction::generators_of(int k) const {
  if (k <= 0) k = 1;  // G_0 = G_1
  std::vector<Permutation> out;
  for (size_t i = (size_t)k - 1; i < levels_.size(); i++)
    out.insert(out.end(), levels_[i].begin(), levels_[i].end());
  return out;
}

bool FilteredAction::is_ergodic() const {
  auto sup = space_->support();
  if (sup.empty()) return false;
  std::set<AtomId> seen{sup[0]};
  std::deque<AtomId> queue{sup[0]};
  auto gens = generators_of(1);
  while (!queue.empty()) {
    AtomId a = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      for (AtomId b : {g(a), g.inverse()(a)}) {
        if (space_->weight(b).sign() > 0 && seen.insert(b).second) queue.push_back(b);
      }
    }
  }
  return seen.size() == sup.size();
}

// Enumerate the subgroup generated by `gens` by closure, up to `cap`.
static std::vector<Permutation> closure(const std::vector<Permutation>& gens, size_t n,
                                        size_t cap) {
  Permutation id{std::vector<AtomId>(n)};
  for (AtomId a = 0; a < n; a++) id.image[a] = a;
  std::set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  std::vector<Permutation> all = gens;
  for (const auto& g : gens) all.push_back(g.inverse());
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    for (const auto& g : all) {
      Permutation q = p.then(g);
      if (seen.insert(q).second) {
        if (seen.size() > cap)
          throw std::runtime_error("permutation closure: cap exceeded");
        queue.push_back(q);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Report FilteredAction::verify_filtration_law(int max_word_len, size_t closure_cap) const {
  Report rep;
  size_t n = space_->size();
  auto words_of = [&](const std::vector<Permutation>& gens, int len) {
    Permutation id{std::vector<AtomId>(n)};
    for (AtomId a = 0; a < n; a++) id.image[a] = a;
    std::set<Permutation> out{id};
    std::vector<Permutation> frontier{id};
    std::vector<Permutation> all = gens;
    for (const auto& g : gens) all.push_back(g.inverse());
    for (int l = 0; l < len; l++) {
      std::vector<Permutation> next;
      for (const auto& w : frontier)
        for (const auto& g : all) {
          Permutation q = w.then(g);
          if (out.insert(q).second) next.push_back(q);
        }
      frontier = std::move(next);
    }
    return std::vector<Permutation>(out.begin(), out.end());
  };
  int top = degree_ + 1;
  for (int i = 1; i <= top; i++) {
    for (int j = 1; j <= top; j++) {
      auto wi = words_of(generators_of(i), max_word_len / 2);
      auto wj = words_of(generators_of(j), max_word_len / 2);
      std::vector<Permutation> target_gens = generators_of(i + j);
      std::set<Permutation> target;
      {
        auto cl = closure(target_gens, n, closure_cap);
        target.insert(cl.begin(), cl.end());
      }
      bool ok = true;
      std::string witness;
      for (const auto& a : wi) {
        for (const auto& b : wj) {
          Permutation comm = a.inverse().then(b.inverse()).then(a).then(b);
          if (!target.count(comm)) {
            ok = false;
            witness = "commutator escapes G_" + std::to_string(i + j);
            break;
          }
        }
        if (!ok) break;
      }
      rep.add("filtration_law", "i=" + std::to_string(i) + ",j=" + std::to_string(j), ok,
              witness);
    }
  }
  return rep;
}

Tuple CubeGenerator::apply(const Tuple& t) const {
  Tuple out = t;
  for (VertexBits v : face.vertices()) out[v] = g(t[v]);
  return out;
}

std::vector<CubeGenerator> cube_group_generators(const FilteredAction& action, int n, int k) {
  std::vector<CubeGenerator> out;
  for (const Face& f : enumerate_all_faces(n)) {
    int level = n - f.free_dim() + k;
    for (const auto& g : action.generators_of(level)) out.push_back({f, g});
  }
  return out;
}

Partition invariant_partition(const std::vector<CubeGenerator>& gens, const SupportView& view) {
  std::map<Tuple, AtomId> index;
  for (AtomId a = 0; a < view.tuples.size(); a++) index[view.tuples[a]] = a;

  std::vector<int> parent(view.tuples.size());
  for (size_t i = 0; i < parent.size(); i++) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (AtomId a = 0; a < view.tuples.size(); a++) {
    for (const auto& gen : gens) {
      Tuple img = gen.apply(view.tuples[a]);
      auto it = index.find(img);
      if (it == index.end())
        throw std::runtime_error("invariant_partition: generator moves mass off the support");
      if (!(view.space->weight(it->second) == view.space->weight(a)))
        throw std::runtime_error("invariant_partition: generator distorts masses");
      parent[find((int)a)] = find((int)it->second);
    }
  }
  std::map<int, int> ids;
  std::vector<int> block(view.tuples.size(), -1);
  for (AtomId a = 0; a < view.tuples.size(); a++) {
    auto [it, fresh] = ids.try_emplace(find((int)a), (int)ids.size());
    block[a] = it->second;
  }
  return Partition(view.space, std::move(block), (int)ids.size());
}

static std::vector<std::string> cube_labels(int n) {
  std::vector<std::string> labels(1 << n);
  for (int v = 0; v < (1 << n); v++) labels[v] = vertex_str((VertexBits)v, n);
  return labels;
}

CubicCoupling host_kra_coupling(const FilteredAction& action, int n_max) {
  auto space = action.space();
  // Memoized recursion shared by all provider calls.
  auto cache = std::make_shared<std::map<int, Coupling>>();
  auto provider = [action, cache, space](int n) -> Coupling {
    std::function<Coupling(int)> build = [&](int k) -> Coupling {
      auto it = cache->find(k);
      if (it != cache->end()) return it->second;
      Coupling result = [&]() -> Coupling {
        if (k == 0) {
          MassMap m;
          for (AtomId a : space->support()) m[{a}] = space->weight(a);
          return Coupling(space, cube_labels(0), std::move(m), false);
        }
        Coupling prev = build(k - 1);
        SupportView w = support_view(prev);
        Partition inv = invariant_partition(cube_group_generators(action, k - 1, 1), w);
        Coupling sq = relative_square(w.space, inv);
        int half = 1 << (k - 1);
        MassMap m;
        for (auto& [pair, mass] : sq.mass()) {
          Tuple t((size_t)half * 2);
          for (int v = 0; v < half; v++) {
            t[v] = w.tuples[pair[0]][v];
            t[v + half] = w.tuples[pair[1]][v];
          }
          m[std::move(t)] = mass;
        }
        return Coupling(space, cube_labels(k), std::move(m), false);
      }();
      cache->emplace(k, result);
      return result;
    };
    return build(n);
  };
  return CubicCoupling(space, provider, n_max);
}

Scalar hk_seminorm_pow(const FilteredAction& action, int d, const FunctionOnSpace& f) {
  return u_seminorm_pow(host_kra_coupling(action, d), d, f);
}

double hk_seminorm(const FilteredAction& action, int d, const FunctionOnSpace& f) {
  return u_seminorm(host_kra_coupling(action, d), d, f);
}

Partition hk_factor(const FilteredAction& action, int k) {
  Partition p = fourier_factor(host_kra_coupling(action, k + 1), k + 1);
  // Lemma-style invariance: level-1 generators must permute the blocks.
  for (const auto& g : action.generators_of(1)) {
    std::map<int, int> img;
    for (AtomId a = 0; a < action.space()->size(); a++) {
      if (p.block_of(a) < 0) continue;
      auto [it, fresh] = img.try_emplace(p.block_of(a), p.block_of(g(a)));
      if (!fresh && it->second != p.block_of(g(a)))
        throw std::runtime_error("hk_factor: factor partition is not G-invariant");
    }
  }
  return p;
}

std::vector<Permutation> generated_tuple_group(const std::vector<CubeGenerator>& gens,
                                               const SupportView& view, size_t cap) {
  std::map<Tuple, AtomId> index;
  for (AtomId a = 0; a < view.tuples.size(); a++) index[view.tuples[a]] = a;
  std::vector<Permutation> perms;
  for (const auto& gen : gens) {
    Permutation p{std::vector<AtomId>(view.tuples.size())};
    for (AtomId a = 0; a < view.tuples.size(); a++) {
      auto it = index.find(gen.apply(view.tuples[a]));
      if (it == index.end())
        throw std::runtime_error("generated_tuple_group: generator leaves the support");
      p.image[a] = it->second;
    }
    perms.push_back(std::move(p));
  }
  return closure(perms, view.tuples.size(), cap);
}

Report verify_cube_filtration(const FilteredAction& action, int n, int max_word_len,
                              size_t closure_cap) {
  Report rep;
  CubicCoupling cc = host_kra_coupling(action, n);
  SupportView view = support_view(cc.mu(n));
  int top = action.degree() + 1;
  for (int j = 0; j <= top; j++) {
    for (int k = 0; k <= top; k++) {
      auto gj = generated_tuple_group(cube_group_generators(action, n, j), view, closure_cap);
      auto gk = generated_tuple_group(cube_group_generators(action, n, k), view, closure_cap);
      auto target =
          generated_tuple_group(cube_group_generators(action, n, j + k), view, closure_cap);
      std::set<Permutation> target_set(target.begin(), target.end());
      // Sample bounded words: products of up to max_word_len generators are
      // already inside gj/gk by closure, so test commutators of group elements.
      bool ok = true;
      std::string witness;
      for (const auto& a : gj) {
        for (const auto& b : gk) {
          Permutation comm = a.inverse().then(b.inverse()).then(a).then(b);
          if (!target_set.count(comm)) {
            ok = false;
            witness = "commutator escapes H_{n," + std::to_string(j + k) + "}";
            break;
          }
        }
        if (!ok) break;
      }
      rep.add("cube_filtration", "n=" + std::to_string(n) + ",j=" + std::to_string(j) +
                                     ",k=" + std::to_string(k),
              ok, witness);
      (void)max_word_len;
    }
  }
  return rep;
}

Report verify_diag_identity(const FilteredAction& action, int n, int k, size_t closure_cap) {
  Report rep;
  CubicCoupling cc = host_kra_coupling(action, n + 1);
  SupportView view = support_view(cc.mu(n + 1));

  auto lhs = generated_tuple_group(cube_group_generators(action, n + 1, k), view, closure_cap);

  // diag(H_{n,k}, H_{n,k+1}): generators (g,g) for g in H_{n,k} generators,
  // plus (h,1) and (1,h) for h in H_{n,k+1} generators, acting on the two
  // n-faces along the last coordinate.
  std::vector<CubeGenerator> diag_gens;
  auto lift = [&](const CubeGenerator& gen, int side) {
    // side: 0 = bottom face, 1 = top face, 2 = both
    Face f = gen.face;
    Face lifted{n + 1, f.fixed_mask, f.fixed_vals};
    if (side != 2) {
      lifted.fixed_mask |= (1u << n);
      if (side == 1) lifted.fixed_vals |= (1u << n);
    }
    return CubeGenerator{lifted, gen.g};
  };
  for (const auto& gen : cube_group_generators(action, n, k)) diag_gens.push_back(lift(gen, 2));
  for (const auto& gen : cube_group_generators(action, n, k + 1)) {
    diag_gens.push_back(lift(gen, 0));
    diag_gens.push_back(lift(gen, 1));
  }
  auto rhs = generated_tuple_group(diag_gens, view, closure_cap);

  std::set<Permutation> ls(lhs.begin(), lhs.end()), rs(rhs.begin(), rhs.end());
  bool ok = ls == rs;
  rep.add("diag_identity", "n=" + std::to_string(n) + ",k=" + std::to_string(k), ok,
          ok ? "" : "generated groups differ");
  return rep;
}

}  // namespace cubecoup
