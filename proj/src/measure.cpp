#include "cubecoup/measure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cubecoup {

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> atoms, std::vector<Scalar> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.size() != weights_.size())
    throw std::invalid_argument("FiniteProbSpace: atoms/weights length mismatch");
  Scalar total(0);
  for (auto& w : weights_) {
    if (w < Scalar(0)) throw std::invalid_argument("FiniteProbSpace: negative weight");
    total += w;
  }
  if (total != Scalar(1))
    throw std::invalid_argument("FiniteProbSpace: weights must sum to 1, got " + total.str());
}

std::shared_ptr<const FiniteProbSpace> FiniteProbSpace::uniform(size_t n) {
  std::vector<std::string> names(n);
  std::vector<Scalar> w(n, Scalar(1, (long)n));
  for (size_t i = 0; i < n; i++) names[i] = std::to_string(i);
  return std::make_shared<FiniteProbSpace>(std::move(names), std::move(w));
}

std::shared_ptr<const FiniteProbSpace> FiniteProbSpace::make(std::vector<std::string> atoms,
                                                             std::vector<Scalar> weights) {
  return std::make_shared<FiniteProbSpace>(std::move(atoms), std::move(weights));
}

std::vector<AtomId> FiniteProbSpace::support() const {
  std::vector<AtomId> s;
  for (AtomId a = 0; a < weights_.size(); a++)
    if (weights_[a].sign() > 0) s.push_back(a);
  return s;
}

bool FiniteProbSpace::same_space(const FiniteProbSpace& o) const {
  if (this == &o) return true;
  return atoms_ == o.atoms_ &&
         std::equal(weights_.begin(), weights_.end(), o.weights_.begin(), o.weights_.end(),
                    [](const Scalar& a, const Scalar& b) { return a == b; });
}

FunctionOnSpace::FunctionOnSpace(SpacePtr space, std::vector<CScalar> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->size())
    throw std::invalid_argument("FunctionOnSpace: wrong number of values");
}

FunctionOnSpace FunctionOnSpace::constant(SpacePtr space, CScalar c) {
  std::vector<CScalar> v(space->size(), c);
  return FunctionOnSpace(std::move(space), std::move(v));
}

FunctionOnSpace FunctionOnSpace::indicator(SpacePtr space, const std::vector<AtomId>& set) {
  std::vector<CScalar> v(space->size(), CScalar(Scalar(0)));
  for (AtomId a : set) v.at(a) = CScalar(Scalar(1));
  return FunctionOnSpace(std::move(space), std::move(v));
}

FunctionOnSpace FunctionOnSpace::conj() const {
  std::vector<CScalar> v(values_.size());
  for (size_t i = 0; i < values_.size(); i++) v[i] = values_[i].conj();
  return FunctionOnSpace(space_, std::move(v));
}

FunctionOnSpace FunctionOnSpace::operator+(const FunctionOnSpace& o) const {
  std::vector<CScalar> v(values_.size());
  for (size_t i = 0; i < values_.size(); i++) v[i] = values_[i] + o.values_[i];
  return FunctionOnSpace(space_, std::move(v));
}

FunctionOnSpace FunctionOnSpace::operator-(const FunctionOnSpace& o) const {
  std::vector<CScalar> v(values_.size());
  for (size_t i = 0; i < values_.size(); i++) v[i] = values_[i] - o.values_[i];
  return FunctionOnSpace(space_, std::move(v));
}

FunctionOnSpace FunctionOnSpace::operator*(const FunctionOnSpace& o) const {
  std::vector<CScalar> v(values_.size());
  for (size_t i = 0; i < values_.size(); i++) v[i] = values_[i] * o.values_[i];
  return FunctionOnSpace(space_, std::move(v));
}

CScalar FunctionOnSpace::mean() const {
  CScalar s;
  for (size_t i = 0; i < values_.size(); i++)
    s += values_[i] * CScalar(space_->weight((AtomId)i));
  return s;
}

Scalar FunctionOnSpace::l2_norm_sq() const {
  Scalar s(0);
  for (size_t i = 0; i < values_.size(); i++)
    s += values_[i].norm2() * space_->weight((AtomId)i);
  return s;
}

bool FunctionOnSpace::is_zero_on_support() const {
  for (size_t i = 0; i < values_.size(); i++)
    if (space_->weight((AtomId)i).sign() > 0 && !values_[i].is_zero()) return false;
  return true;
}

Partition::Partition(SpacePtr space, std::vector<int> block_of, int n_blocks)
    : space_(std::move(space)), block_of_(std::move(block_of)), n_blocks_(n_blocks) {
  if (block_of_.size() != space_->size())
    throw std::invalid_argument("Partition: block map size mismatch");
  for (AtomId a = 0; a < block_of_.size(); a++) {
    bool pos = space_->weight(a).sign() > 0;
    if (pos && (block_of_[a] < 0 || block_of_[a] >= n_blocks_))
      throw std::invalid_argument("Partition: support atom without block");
    if (!pos && block_of_[a] != -1)
      throw std::invalid_argument("Partition: zero-weight atom must be excluded");
  }
}

Partition Partition::discrete(SpacePtr space) {
  std::vector<int> b(space->size(), -1);
  int n = 0;
  for (AtomId a = 0; a < space->size(); a++)
    if (space->weight(a).sign() > 0) b[a] = n++;
  return Partition(std::move(space), std::move(b), n);
}

Partition Partition::trivial(SpacePtr space) {
  std::vector<int> b(space->size(), -1);
  int n = 0;
  for (AtomId a = 0; a < space->size(); a++)
    if (space->weight(a).sign() > 0) { b[a] = 0; n = 1; }
  return Partition(std::move(space), std::move(b), n);
}

Partition Partition::from_blocks(SpacePtr space, const std::vector<std::vector<AtomId>>& blocks) {
  std::vector<int> b(space->size(), -1);
  int id = 0;
  for (auto& blk : blocks) {
    bool used = false;
    for (AtomId a : blk) {
      if (space->weight(a).sign() <= 0) continue;  // zero-weight atoms dropped
      if (b[a] != -1) throw std::invalid_argument("Partition: blocks overlap");
      b[a] = id;
      used = true;
    }
    if (used) id++;
  }
  for (AtomId a = 0; a < space->size(); a++)
    if (space->weight(a).sign() > 0 && b[a] == -1)
      throw std::invalid_argument("Partition: blocks do not cover the support");
  return Partition(std::move(space), std::move(b), id);
}

std::vector<std::vector<AtomId>> Partition::blocks() const {
  std::vector<std::vector<AtomId>> out(n_blocks_);
  for (AtomId a = 0; a < block_of_.size(); a++)
    if (block_of_[a] >= 0) out[block_of_[a]].push_back(a);
  return out;
}

Scalar Partition::block_weight(int b) const {
  Scalar s(0);
  for (AtomId a = 0; a < block_of_.size(); a++)
    if (block_of_[a] == b) s += space_->weight(a);
  return s;
}

FunctionOnSpace Partition::block_indicator(int b) const {
  std::vector<CScalar> v(space_->size(), CScalar(Scalar(0)));
  for (AtomId a = 0; a < block_of_.size(); a++)
    if (block_of_[a] == b) v[a] = CScalar(Scalar(1));
  return FunctionOnSpace(space_, std::move(v));
}

bool Partition::equals(const Partition& o) const {
  if (!space_->same_space(*o.space_)) return false;
  if (n_blocks_ != o.n_blocks_) return false;
  std::map<int, int> fwd;
  for (AtomId a = 0; a < block_of_.size(); a++) {
    if (block_of_[a] < 0) continue;
    auto it = fwd.find(block_of_[a]);
    if (it == fwd.end()) fwd[block_of_[a]] = o.block_of_[a];
    else if (it->second != o.block_of_[a]) return false;
  }
  return true;
}

bool Partition::refines(const Partition& coarser) const {
  if (!space_->same_space(*coarser.space_)) return false;
  std::map<int, int> target;
  for (AtomId a = 0; a < block_of_.size(); a++) {
    if (block_of_[a] < 0) continue;
    auto it = target.find(block_of_[a]);
    if (it == target.end()) target[block_of_[a]] = coarser.block_of_[a];
    else if (it->second != coarser.block_of_[a]) return false;
  }
  return true;
}

static void require_same_space(const Partition& p, const Partition& q) {
  if (!p.space()->same_space(*q.space()))
    throw std::invalid_argument("partition lattice: space mismatch");
}

Partition join(const Partition& p, const Partition& q) {
  require_same_space(p, q);
  std::map<std::pair<int, int>, int> ids;
  std::vector<int> b(p.space()->size(), -1);
  for (AtomId a = 0; a < b.size(); a++) {
    if (p.block_of(a) < 0) continue;
    auto key = std::make_pair(p.block_of(a), q.block_of(a));
    auto [it, fresh] = ids.try_emplace(key, (int)ids.size());
    b[a] = it->second;
  }
  return Partition(p.space(), std::move(b), (int)ids.size());
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

Partition meet(const Partition& p, const Partition& q) {
  require_same_space(p, q);
  size_t n = p.space()->size();
  UnionFind uf(n);
  std::map<int, AtomId> first_p, first_q;
  for (AtomId a = 0; a < n; a++) {
    if (p.block_of(a) < 0) continue;
    auto [ip, newp] = first_p.try_emplace(p.block_of(a), a);
    if (!newp) uf.unite((int)a, (int)ip->second);
    auto [iq, newq] = first_q.try_emplace(q.block_of(a), a);
    if (!newq) uf.unite((int)a, (int)iq->second);
  }
  std::map<int, int> ids;
  std::vector<int> b(n, -1);
  for (AtomId a = 0; a < n; a++) {
    if (p.block_of(a) < 0) continue;
    int root = uf.find((int)a);
    auto [it, fresh] = ids.try_emplace(root, (int)ids.size());
    b[a] = it->second;
  }
  return Partition(p.space(), std::move(b), (int)ids.size());
}

FunctionOnSpace cond_expect(const FunctionOnSpace& f, const Partition& p) {
  if (!f.space()->same_space(*p.space()))
    throw std::invalid_argument("cond_expect: space mismatch");
  std::vector<CScalar> sums(p.n_blocks(), CScalar(Scalar(0)));
  std::vector<Scalar> mass(p.n_blocks(), Scalar(0));
  size_t n = f.space()->size();
  for (AtomId a = 0; a < n; a++) {
    int b = p.block_of(a);
    if (b < 0) continue;
    sums[b] += f[a] * CScalar(f.space()->weight(a));
    mass[b] += f.space()->weight(a);
  }
  std::vector<CScalar> out(n, CScalar(Scalar(0)));  // zero on null atoms
  for (AtomId a = 0; a < n; a++) {
    int b = p.block_of(a);
    if (b < 0) continue;
    out[a] = CScalar(sums[b].re / mass[b], sums[b].im / mass[b]);
  }
  return FunctionOnSpace(f.space(), std::move(out));
}

static bool functions_equal_on_support(const FunctionOnSpace& f, const FunctionOnSpace& g) {
  return (f - g).is_zero_on_support();
}

bool cond_independent(const Partition& p0, const Partition& p1, const Partition& b) {
  require_same_space(p0, p1);
  require_same_space(p0, b);
  Partition p0b = join(p0, b);
  for (int blk = 0; blk < p1.n_blocks(); blk++) {
    FunctionOnSpace f = p1.block_indicator(blk);
    if (!functions_equal_on_support(cond_expect(f, p0b), cond_expect(f, b))) return false;
  }
  return true;
}

bool cond_independent_pair(const Partition& p0, const Partition& p1) {
  require_same_space(p0, p1);
  Partition m = meet(p0, p1);
  for (int dir = 0; dir < 2; dir++) {
    const Partition& pi = dir == 0 ? p0 : p1;
    const Partition& pj = dir == 0 ? p1 : p0;
    for (int blk = 0; blk < pi.n_blocks(); blk++) {
      FunctionOnSpace f = pi.block_indicator(blk);
      if (!functions_equal_on_support(cond_expect(f, pj), cond_expect(f, m))) return false;
    }
  }
  return true;
}

bool cond_independent_one_sided(const Partition& p0, const Partition& p1) {
  require_same_space(p0, p1);
  Partition m = meet(p0, p1);
  for (int blk = 0; blk < p0.n_blocks(); blk++) {
    FunctionOnSpace f = p0.block_indicator(blk);
    FunctionOnSpace g = f - cond_expect(f, m);  // E(g|P0∧P1) = 0 and g is P0-measurable
    if (!cond_expect(g, p1).is_zero_on_support()) return false;
  }
  return true;
}

size_t common_measurable_dimension(const std::vector<Partition>& ps) {
  if (ps.empty()) throw std::invalid_argument("common_measurable_dimension: no partitions");
  auto space = ps[0].space();
  std::vector<AtomId> sup = space->support();
  std::map<AtomId, size_t> col;
  for (size_t i = 0; i < sup.size(); i++) col[sup[i]] = i;

  // Constraint rows: f(x) - f(y) = 0 whenever x,y share a block in some partition.
  std::vector<std::vector<Rat>> rows;
  for (const auto& p : ps) {
    for (auto& blk : p.blocks()) {
      for (size_t i = 1; i < blk.size(); i++) {
        std::vector<Rat> row(sup.size(), Rat(0));
        row[col[blk[0]]] = 1;
        row[col[blk[i]]] = -1;
        rows.push_back(std::move(row));
      }
    }
  }
  // Exact Gaussian elimination; solution dimension = #columns - rank.
  size_t rank = 0, n = sup.size();
  for (size_t c = 0; c < n && rank < rows.size(); c++) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) piv++;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); r++) {
      if (r == rank || rows[r][c] == 0) continue;
      Rat factor = rows[r][c] / rows[rank][c];
      for (size_t k = c; k < n; k++) rows[r][k] -= factor * rows[rank][k];
    }
    rank++;
  }
  return n - rank;
}

}  // namespace cubecoup
