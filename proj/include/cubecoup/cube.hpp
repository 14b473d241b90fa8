// Combinatorics of discrete cubes {0,1}^n: vertices, morphisms in coordinate
// normal form, faces, simplicial (down-closed) vertex sets and tricubes.
//
// Conventions: a vertex of the n-cube is an unsigned integer in [0, 2^n);
// paper-style coordinate i (1-based) is bit i-1, so the bitstring is printed
// little-endian ("10" is the vertex with first coordinate 1).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubecoup {

using VertexBits = uint32_t;

// Hard caps: vertex iteration needs 2^n, several verifiers need sets of
// vertex subsets. Calls beyond the caps throw.
inline constexpr int kMaxCubeDim = 12;
inline constexpr int kMaxEnumDim = 4;

struct Vertex {
  VertexBits bits = 0;
  int dim = 0;

  int height() const { return __builtin_popcount(bits); }
  bool get(int i) const { return (bits >> i) & 1u; }  // 0-based coordinate
  bool leq(const Vertex& v) const { return (bits & ~v.bits) == 0; }
  bool operator==(const Vertex& o) const = default;
  std::string str() const;
};

std::string vertex_str(VertexBits v, int dim);
int vertex_height(VertexBits v);

// One output coordinate of a morphism: constant 0/1, or input i, or 1-input i.
struct MorphCoord {
  enum Kind : uint8_t { kConst0, kConst1, kId, kNeg };
  Kind kind = kConst0;
  int input = 0;  // 0-based, meaningful for kId/kNeg
  bool operator==(const MorphCoord&) const = default;
};

class CubeMorphism {
 public:
  CubeMorphism(int domain_dim, int codomain_dim, std::vector<MorphCoord> coords);

  static CubeMorphism identity(int n);
  int domain_dim() const { return m_; }
  int codomain_dim() const { return n_; }
  const std::vector<MorphCoord>& coords() const { return coords_; }

  VertexBits apply(VertexBits v) const;
  Vertex apply(Vertex v) const;

  bool is_injective() const;    // every input used at least once
  bool is_face_map() const;     // image is an m-face: every input used exactly once
  bool is_automorphism() const; // bijective, requires m == n

  // φ after ψ (this ∘ other): other maps into this's domain.
  CubeMorphism compose(const CubeMorphism& other) const;

  bool operator==(const CubeMorphism& o) const = default;
  std::string str() const;

 private:
  int m_, n_;
  std::vector<MorphCoord> coords_;
};

enum class MorphismFilter { all, injective, face_map, automorphism };

std::vector<CubeMorphism> enumerate_morphisms(int m, int n, MorphismFilter filter);

// Whether the vertex table f: [0,2^m) -> [0,2^n) extends to an affine
// homomorphism Z^m -> Z^n. Used as the derived predicate cross-checking the
// coordinate normal form.
bool extends_to_affine(const std::vector<VertexBits>& table, int m, int n);

struct Face {
  int dim = 0;              // ambient cube dimension
  VertexBits fixed_mask = 0;
  VertexBits fixed_vals = 0;  // subset of fixed_mask

  int free_dim() const { return dim - __builtin_popcount(fixed_mask); }
  VertexBits free_mask() const {
    return ~fixed_mask & ((dim >= 32) ? ~0u : ((1u << dim) - 1u));
  }
  bool contains(VertexBits v) const { return (v & fixed_mask) == fixed_vals; }
  std::vector<VertexBits> vertices() const;
  bool operator==(const Face& o) const = default;
  std::string str() const;
};

std::vector<Face> enumerate_faces(int n, int d);       // all d-dimensional faces
std::vector<Face> enumerate_all_faces(int n);          // every dimension
// The face map embedding the k-cube onto `f` with identity orientation
// (free coordinates in increasing order, no negation).
CubeMorphism face_embedding(const Face& f);

class SimplicialSet {
 public:
  SimplicialSet(int dim, std::vector<VertexBits> verts);  // verts need not be closed

  static SimplicialSet closure(int dim, const std::vector<VertexBits>& seed);
  static bool is_simplicial(int dim, const std::vector<VertexBits>& verts);
  static std::vector<SimplicialSet> enumerate_all(int n);  // all down-closed sets

  int dim() const { return dim_; }
  const std::vector<VertexBits>& vertices() const { return verts_; }
  bool contains(VertexBits v) const;
  int height() const;                       // max |v|
  int degree(VertexBits u) const;           // max |w| over w >= u in the set
  std::vector<VertexBits> maximal_vertices() const;
  bool operator==(const SimplicialSet& o) const = default;

 private:
  int dim_;
  std::vector<VertexBits> verts_;  // sorted, down-closed
};

// Tricube {-1,0,1}^n embedded in the 2n-cube: coordinate pairs
// (v_i, v_{i+n}) with  1 -> (1,0),  0 -> (0,0),  -1 -> (0,1).
using TriPoint = std::vector<int>;  // entries in {-1,0,1}, length n

VertexBits tricube_embed(int n, const TriPoint& t);
TriPoint tricube_unembed(int n, VertexBits v);          // t_i = v_i - v_{i+n}
bool in_tricube_image(int n, VertexBits v);             // v_i * v_{i+n} == 0 for all i
std::vector<TriPoint> tricube_points(int n);            // all 3^n, fixed order
TriPoint outer_point(int n, VertexBits v);              // v -> (2v_i - 1)_i

// All |S_3|^n coordinatewise actions on {-1,0,1}^n, each given as the image
// table over tricube_points(n) index order.
std::vector<std::vector<int>> tricube_symmetries(int n);

}  // namespace cubecoup
