#include "cubecoup/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cubecoup {

Coupling::Coupling(SpacePtr base, std::vector<std::string> labels, MassMap mass, bool validate)
    : base_(std::move(base)), labels_(std::move(labels)), mass_(std::move(mass)) {
  for (auto it = mass_.begin(); it != mass_.end();) {
    if ((int)it->first.size() != (int)labels_.size())
      throw std::invalid_argument("Coupling: tuple arity mismatch");
    if (it->second.sign() < 0) throw std::invalid_argument("Coupling: negative mass");
    if (it->second.sign() == 0) it = mass_.erase(it);
    else ++it;
  }
  if (validate) {
    auto err = validate_marginals();
    if (!err.empty()) throw std::invalid_argument("Coupling: " + err);
  }
}

Coupling Coupling::product(SpacePtr base, std::vector<std::string> labels) {
  double ambient = std::pow((double)base->size(), (double)labels.size());
  if (ambient > kMaxAmbientSize)
    throw std::invalid_argument("Coupling::product: ambient size cap exceeded");
  auto sup = base->support();
  MassMap m;
  std::vector<size_t> idx(labels.size(), 0);
  if (labels.empty()) throw std::invalid_argument("Coupling::product: empty label set");
  while (true) {
    Tuple t(labels.size());
    Scalar w(1);
    for (size_t j = 0; j < labels.size(); j++) {
      t[j] = sup[idx[j]];
      w *= base->weight(sup[idx[j]]);
    }
    m[t] = w;
    size_t j = 0;
    while (j < labels.size() && ++idx[j] == sup.size()) idx[j++] = 0;
    if (j == labels.size()) break;
  }
  return Coupling(std::move(base), std::move(labels), std::move(m));
}

Coupling Coupling::diagonal(SpacePtr base, std::vector<std::string> labels) {
  MassMap m;
  for (AtomId a : base->support()) m[Tuple(labels.size(), a)] = base->weight(a);
  return Coupling(std::move(base), std::move(labels), std::move(m));
}

Scalar Coupling::mass_of(const Tuple& t) const {
  auto it = mass_.find(t);
  return it == mass_.end() ? Scalar(0) : it->second;
}

bool Coupling::equals(const Coupling& o) const {
  if (labels_.size() != o.labels_.size()) return false;
  if (mass_.size() != o.mass_.size()) return false;
  auto it = mass_.begin();
  auto jt = o.mass_.begin();
  for (; it != mass_.end(); ++it, ++jt) {
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  }
  return true;
}

std::string Coupling::validate_marginals() const {
  Scalar total(0);
  for (auto& [t, w] : mass_) total += w;
  if (total != Scalar(1)) return "total mass " + total.str() + " != 1";
  for (size_t j = 0; j < labels_.size(); j++) {
    std::vector<Scalar> marg(base_->size(), Scalar(0));
    for (auto& [t, w] : mass_) marg[t[j]] += w;
    for (AtomId a = 0; a < base_->size(); a++)
      if (marg[a] != base_->weight(a))
        return "marginal law fails at label " + labels_[j] + ", atom " +
               base_->atom_name(a) + ": " + marg[a].str() + " != " +
               base_->weight(a).str();
  }
  return {};
}

std::string Coupling::str(size_t max_entries) const {
  std::ostringstream os;
  os << "coupling[";
  for (size_t j = 0; j < labels_.size(); j++) os << (j ? "," : "") << labels_[j];
  os << "] " << mass_.size() << " pts";
  size_t k = 0;
  for (auto& [t, w] : mass_) {
    if (k++ >= max_entries) { os << " ..."; break; }
    os << " (";
    for (size_t j = 0; j < t.size(); j++)
      os << (j ? "," : "") << base_->atom_name(t[j]);
    os << ")=" << w.str();
  }
  return os.str();
}

CScalar xi(const Coupling& mu, const std::vector<FunctionOnSpace>& fs) {
  if (fs.size() != mu.arity())
    throw std::invalid_argument("xi: function system misaligned with labels");
  for (auto& f : fs)
    if (!f.space()->same_space(*mu.base()))
      throw std::invalid_argument("xi: function on wrong space");
  CScalar total;
  for (auto& [t, w] : mu.mass()) {
    CScalar prod{Scalar(1)};
    for (size_t j = 0; j < fs.size(); j++) prod *= fs[j][t[j]];
    total += prod * CScalar(w);
  }
  return total;
}

Coupling subcoupling(const Coupling& mu, const std::vector<size_t>& positions,
                     std::vector<std::string> new_labels) {
  {
    std::vector<size_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("subcoupling: injection required");
  }
  if (new_labels.empty())
    for (size_t p : positions) new_labels.push_back(mu.labels().at(p));
  MassMap m;
  for (auto& [t, w] : mu.mass()) {
    Tuple s(positions.size());
    for (size_t j = 0; j < positions.size(); j++) s[j] = t.at(positions[j]);
    auto [it, fresh] = m.try_emplace(std::move(s), w);
    if (!fresh) it->second += w;
  }
  return Coupling(mu.base(), std::move(new_labels), std::move(m), false);
}

Coupling subcoupling_by_labels(const Coupling& mu, const std::vector<std::string>& labels) {
  std::vector<size_t> pos;
  for (auto& l : labels) {
    auto it = std::find(mu.labels().begin(), mu.labels().end(), l);
    if (it == mu.labels().end())
      throw std::invalid_argument("subcoupling_by_labels: unknown label " + l);
    pos.push_back((size_t)(it - mu.labels().begin()));
  }
  return subcoupling(mu, pos);
}

Coupling factor_coupling(const Coupling& mu, const Partition& p) {
  if (!p.space()->same_space(*mu.base()))
    throw std::invalid_argument("factor_coupling: partition on wrong space");
  std::vector<std::string> names(p.n_blocks());
  std::vector<Scalar> weights(p.n_blocks(), Scalar(0));
  auto blocks = p.blocks();
  for (int b = 0; b < p.n_blocks(); b++) {
    std::string nm = "{";
    for (size_t i = 0; i < blocks[b].size(); i++)
      nm += (i ? "," : "") + mu.base()->atom_name(blocks[b][i]);
    names[b] = nm + "}";
    for (AtomId a : blocks[b]) weights[b] += mu.base()->weight(a);
  }
  auto qspace = FiniteProbSpace::make(std::move(names), std::move(weights));
  MassMap m;
  for (auto& [t, w] : mu.mass()) {
    Tuple s(t.size());
    for (size_t j = 0; j < t.size(); j++) {
      int b = p.block_of(t[j]);
      if (b < 0) throw std::logic_error("factor_coupling: support atom without block");
      s[j] = (AtomId)b;
    }
    auto [it, fresh] = m.try_emplace(std::move(s), w);
    if (!fresh) it->second += w;
  }
  return Coupling(qspace, mu.labels(), std::move(m), false);
}

SupportView support_view(const Coupling& mu) {
  SupportView v;
  std::vector<std::string> names;
  std::vector<Scalar> weights;
  for (auto& [t, w] : mu.mass()) {
    v.tuples.push_back(t);
    std::string nm = "(";
    for (size_t j = 0; j < t.size(); j++)
      nm += (j ? "," : "") + mu.base()->atom_name(t[j]);
    names.push_back(nm + ")");
    weights.push_back(w);
  }
  v.space = FiniteProbSpace::make(std::move(names), std::move(weights));
  return v;
}

Partition SupportView::partition_by(const std::vector<size_t>& positions) const {
  std::map<Tuple, int> ids;
  std::vector<int> block(tuples.size(), -1);
  for (size_t a = 0; a < tuples.size(); a++) {
    Tuple key(positions.size());
    for (size_t j = 0; j < positions.size(); j++) key[j] = tuples[a].at(positions[j]);
    auto [it, fresh] = ids.try_emplace(std::move(key), (int)ids.size());
    block[a] = it->second;
  }
  return Partition(space, std::move(block), (int)ids.size());
}

static std::vector<size_t> intersect_positions(const std::vector<size_t>& t1,
                                               const std::vector<size_t>& t2) {
  std::vector<size_t> out;
  for (size_t p : t1)
    if (std::find(t2.begin(), t2.end(), p) != t2.end()) out.push_back(p);
  return out;
}

bool index_cond_independent(const Coupling& mu, const std::vector<size_t>& t1,
                            const std::vector<size_t>& t2) {
  for (size_t p : t1)
    if (p >= mu.arity()) throw std::invalid_argument("index_cond_independent: label out of range");
  for (size_t p : t2)
    if (p >= mu.arity()) throw std::invalid_argument("index_cond_independent: label out of range");
  SupportView v = support_view(mu);
  Partition p1 = v.partition_by(t1);
  Partition p2 = v.partition_by(t2);
  Partition p12 = v.partition_by(intersect_positions(t1, t2));
  // E(1_B | P_other) must be constant on every block of P_{T1∩T2}.
  auto one_side = [&](const Partition& pa, const Partition& pb) {
    for (int blk = 0; blk < pa.n_blocks(); blk++) {
      FunctionOnSpace e = cond_expect(pa.block_indicator(blk), pb);
      std::vector<char> seen(p12.n_blocks(), 0);
      std::vector<CScalar> val(p12.n_blocks());
      for (AtomId a = 0; a < v.space->size(); a++) {
        int c = p12.block_of(a);
        if (c < 0) continue;
        if (!seen[c]) { seen[c] = 1; val[c] = e[a]; }
        else if (val[c] != e[a]) return false;
      }
    }
    return true;
  };
  return one_side(p1, p2) && one_side(p2, p1);
}

bool index_meet_identity(const Coupling& mu, const std::vector<size_t>& t1,
                         const std::vector<size_t>& t2) {
  SupportView v = support_view(mu);
  Partition m = meet(v.partition_by(t1), v.partition_by(t2));
  return m.equals(v.partition_by(intersect_positions(t1, t2)));
}

bool labels_independent(const Coupling& mu, const std::vector<size_t>& t1,
                        const std::vector<size_t>& t2) {
  SupportView v = support_view(mu);
  Partition p1 = v.partition_by(t1);
  Partition p2 = v.partition_by(t2);
  std::vector<std::vector<Scalar>> joint(p1.n_blocks(),
                                         std::vector<Scalar>(p2.n_blocks(), Scalar(0)));
  std::vector<Scalar> m1(p1.n_blocks(), Scalar(0)), m2(p2.n_blocks(), Scalar(0));
  for (AtomId a = 0; a < v.space->size(); a++) {
    const Scalar& w = v.space->weight(a);
    joint[p1.block_of(a)][p2.block_of(a)] += w;
    m1[p1.block_of(a)] += w;
    m2[p2.block_of(a)] += w;
  }
  for (int i = 0; i < p1.n_blocks(); i++)
    for (int j = 0; j < p2.n_blocks(); j++)
      if (joint[i][j] != m1[i] * m2[j]) return false;
  return true;
}

Coupling relative_square(SpacePtr space, const Partition& p) {
  if (!p.space()->same_space(*space))
    throw std::invalid_argument("relative_square: partition on wrong space");
  MassMap m;
  for (auto& blk : p.blocks()) {
    Scalar bw(0);
    for (AtomId a : blk) bw += space->weight(a);
    for (AtomId x : blk)
      for (AtomId y : blk)
        m[{x, y}] = space->weight(x) * space->weight(y) / bw;
  }
  return Coupling(std::move(space), {"a", "b"}, std::move(m), false);
}

Coupling glue_cond_independent(const Coupling& mu, const Coupling& mup,
                               const std::vector<size_t>& t_left,
                               const std::vector<size_t>& t_right) {
  if (t_left.size() != t_right.size())
    throw std::invalid_argument("glue: overlap arity mismatch");
  if (!mu.base()->same_space(*mup.base()))
    throw std::invalid_argument("glue: different base spaces");
  Coupling over_l = subcoupling(mu, t_left);
  Coupling over_r = subcoupling(mup, t_right);
  {
    // The overlap subcouplings must agree under the pairing σ.
    auto it = over_l.mass().begin();
    auto jt = over_r.mass().begin();
    for (; it != over_l.mass().end() || jt != over_r.mass().end(); ++it, ++jt) {
      if (it == over_l.mass().end() || jt == over_r.mass().end() ||
          it->first != jt->first || !(it->second == jt->second)) {
        const Tuple& t = it != over_l.mass().end() ? it->first : jt->first;
        std::string cyl = "(";
        for (size_t j = 0; j < t.size(); j++)
          cyl += (j ? "," : "") + mu.base()->atom_name(t[j]);
        throw std::invalid_argument("glue: overlap subcouplings differ at cylinder " + cyl + ")");
      }
    }
  }
  std::vector<size_t> rest_r;
  for (size_t j = 0; j < mup.arity(); j++)
    if (std::find(t_right.begin(), t_right.end(), j) == t_right.end()) rest_r.push_back(j);

  std::vector<std::string> labels = mu.labels();
  for (size_t j : rest_r) {
    std::string l = mup.labels()[j];
    while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
    labels.push_back(l);
  }

  // Index right tuples by their overlap sub-tuple.
  std::map<Tuple, std::vector<std::pair<Tuple, Scalar>>> by_overlap;
  for (auto& [t, w] : mup.mass()) {
    Tuple key(t_right.size());
    for (size_t j = 0; j < t_right.size(); j++) key[j] = t[t_right[j]];
    Tuple rest(rest_r.size());
    for (size_t j = 0; j < rest_r.size(); j++) rest[j] = t[rest_r[j]];
    by_overlap[key].push_back({std::move(rest), w});
  }

  MassMap m;
  for (auto& [t, w] : mu.mass()) {
    Tuple key(t_left.size());
    for (size_t j = 0; j < t_left.size(); j++) key[j] = t[t_left[j]];
    Scalar denom = t_left.empty() ? Scalar(1) : over_l.mass_of(key);
    auto it = by_overlap.find(key);
    if (it == by_overlap.end()) continue;  // zero-mass overlap block
    for (auto& [rest, wr] : it->second) {
      Tuple full = t;
      full.insert(full.end(), rest.begin(), rest.end());
      Scalar add = w * wr / denom;
      auto [mit, fresh] = m.try_emplace(std::move(full), add);
      if (!fresh) mit->second += add;
    }
  }
  return Coupling(mu.base(), std::move(labels), std::move(m), false);
}

Coupling conditional_coupling(const Coupling& mu, const std::vector<size_t>& positions,
                              const Tuple& values) {
  std::vector<size_t> rest;
  for (size_t j = 0; j < mu.arity(); j++)
    if (std::find(positions.begin(), positions.end(), j) == positions.end()) rest.push_back(j);
  Scalar total(0);
  MassMap m;
  for (auto& [t, w] : mu.mass()) {
    bool match = true;
    for (size_t j = 0; j < positions.size(); j++)
      if (t[positions[j]] != values[j]) { match = false; break; }
    if (!match) continue;
    Tuple s(rest.size());
    for (size_t j = 0; j < rest.size(); j++) s[j] = t[rest[j]];
    auto [it, fresh] = m.try_emplace(std::move(s), w);
    if (!fresh) it->second += w;
    total += w;
  }
  if (total.sign() == 0)
    throw std::invalid_argument("conditional_coupling: conditioning on a null cylinder");
  for (auto& [t, w] : m) w /= total;
  std::vector<std::string> labels;
  for (size_t j : rest) labels.push_back(mu.labels()[j]);
  return Coupling(mu.base(), std::move(labels), std::move(m), false);
}

Coupling idempotence_triple(const Coupling& mu) {
  if (mu.arity() != 2) throw std::invalid_argument("idempotence: two-label coupling required");
  Coupling copy(mu.base(), {mu.labels()[0] + "'", mu.labels()[1] + "'"}, mu.mass(), false);
  // Glue along the second label: result labels (a, b, a').
  return glue_cond_independent(mu, copy, {1}, {1});
}

bool is_idempotent(const Coupling& mu) {
  Coupling nu = idempotence_triple(mu);
  Coupling outer = subcoupling(nu, {0, 2}, {mu.labels()[0], mu.labels()[1]});
  return outer.equals(mu);
}

Partition recover_factor(const Coupling& mu) {
  if (!is_idempotent(mu))
    throw std::invalid_argument("recover_factor: coupling is not idempotent");
  SupportView v = support_view(mu);
  Partition m = meet(v.partition_by({0}), v.partition_by({1}));
  auto base = mu.base();
  std::vector<int> block(base->size(), -1);
  for (AtomId a = 0; a < v.space->size(); a++) {
    AtomId x = v.tuples[a][0];
    int b = m.block_of(a);
    if (block[x] != -1 && block[x] != b)
      throw std::logic_error("recover_factor: meet does not project to a partition");
    block[x] = b;
  }
  // Renumber blocks consecutively over the base support.
  std::map<int, int> ids;
  for (AtomId a = 0; a < base->size(); a++) {
    if (base->weight(a).sign() <= 0) { block[a] = -1; continue; }
    if (block[a] == -1) throw std::logic_error("recover_factor: base support atom missing");
    auto [it, fresh] = ids.try_emplace(block[a], (int)ids.size());
    block[a] = it->second;
  }
  return Partition(base, std::move(block), (int)ids.size());
}

bool completely_dependent(const Coupling& mu) {
  size_t k = mu.arity();
  for (size_t v = 0; v < k; v++) {
    std::map<Tuple, AtomId> determined;
    for (auto& [t, w] : mu.mass()) {
      Tuple rest;
      rest.reserve(k - 1);
      for (size_t j = 0; j < k; j++)
        if (j != v) rest.push_back(t[j]);
      auto [it, fresh] = determined.try_emplace(std::move(rest), t[v]);
      if (!fresh && it->second != t[v]) return false;
    }
  }
  return true;
}

Coupling pair_view(const Coupling& mu, const std::vector<size_t>& a_pos,
                   const std::vector<size_t>& b_pos) {
  if (a_pos.size() != b_pos.size() || a_pos.size() + b_pos.size() != mu.arity())
    throw std::invalid_argument("pair_view: positions must split the labels into two halves");
  Coupling ma = subcoupling(mu, a_pos);
  Coupling mb = subcoupling(mu, b_pos);
  if (!ma.equals(mb))
    throw std::invalid_argument("pair_view: the two halves have different marginal couplings");
  std::map<Tuple, AtomId> atom_of;
  std::vector<std::string> names;
  std::vector<Scalar> weights;
  for (auto& [t, w] : ma.mass()) {
    atom_of[t] = (AtomId)names.size();
    std::string nm = "(";
    for (size_t j = 0; j < t.size(); j++)
      nm += (j ? "," : "") + mu.base()->atom_name(t[j]);
    names.push_back(nm + ")");
    weights.push_back(w);
  }
  auto w_space = FiniteProbSpace::make(std::move(names), std::move(weights));
  MassMap m;
  for (auto& [t, w] : mu.mass()) {
    Tuple ta(a_pos.size()), tb(b_pos.size());
    for (size_t j = 0; j < a_pos.size(); j++) ta[j] = t[a_pos[j]];
    for (size_t j = 0; j < b_pos.size(); j++) tb[j] = t[b_pos[j]];
    Tuple key{atom_of.at(ta), atom_of.at(tb)};
    auto [it, fresh] = m.try_emplace(std::move(key), w);
    if (!fresh) it->second += w;
  }
  return Coupling(w_space, {"a", "b"}, std::move(m), false);
}

bool isomorphic_exhaustive(const Coupling& a, const Coupling& b) {
  if (a.arity() != b.arity()) return false;
  if (a.arity() > 4) throw std::invalid_argument("isomorphic_exhaustive: arity cap 4");
  std::vector<size_t> perm(a.arity());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (subcoupling(a, perm).equals(b)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace cubecoup
