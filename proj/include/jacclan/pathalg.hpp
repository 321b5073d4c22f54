#pragma once

#include <map>
#include <string>
#include <vector>

#include "jacclan/galois.hpp"

namespace jc {

struct VertexInfo {
  std::string name;
  int weight = 1;  // degree over F of the vertex field
};

struct ArrowInfo {
  std::string name;
  int tail = 0, head = 0;
  bool special = false;
  int gexp = 0;  // modulating automorphism rho^gexp on F_head ∩ F_tail
};

struct Quiver {
  std::vector<VertexInfo> vertices;
  std::vector<ArrowInfo> arrows;
  int vertex_index(const std::string& name) const;  // -1 when absent
  int arrow_index(const std::string& name) const;   // -1 when absent
  int add_vertex(const std::string& name, int weight);
  int add_arrow(const std::string& name, int tail, int head, int gexp = 0, bool special = false);
};

// Decorated path omega_0 a_1 omega_1 ... a_n omega_n, composed right to left.
// exps[r] is the exponent of v in omega_r.
struct Path {
  int head = 0, tail = 0;
  std::vector<int> arrows;
  std::vector<int> exps;
  size_t length() const { return arrows.size(); }
  bool operator<(const Path& o) const;
  bool operator==(const Path& o) const;
};

using Element = std::map<Path, Scalar>;

void add_term(Element& x, const Path& p, const Scalar& c);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Element& x, const Scalar& c);
bool is_zero(const Element& x);

struct Grade {
  int head = 0, tail = 0;
  size_t length = 0;
  bool operator<(const Grade& o) const {
    if (length != o.length) return length < o.length;
    if (head != o.head) return head < o.head;
    return tail < o.tail;
  }
  bool operator==(const Grade& o) const { return head == o.head && tail == o.tail && length == o.length; }
};

Grade grade_of(const Path& p);

// Tensor algebra of a species given by a weighted quiver and a modulating function.
class PathAlgebra {
 public:
  PathAlgebra(DatumPtr datum, Quiver q);

  const GaloisDatum& datum() const { return *datum_; }
  DatumPtr datum_ptr() const { return datum_; }
  const Quiver& quiver() const { return q_; }
  uint32_t p() const { return datum_->p(); }
  int degree() const { return datum_->degree; }
  int weight(int v) const { return q_.vertices[v].weight; }
  int arrow_weight(int a) const;
  int step(int v) const { return degree() / weight(v); }
  Scalar F(long long n) const { return datum_->F(n); }

  Element normalize(int head, int tail, std::vector<int> arrows, std::vector<int> exps, Scalar coef) const;
  Element normalize(const Path& raw, const Scalar& coef) const;
  Element mul(const Element& x, const Element& y) const;
  Element e(int v, int exp = 0) const;
  Element arrow(int a) const;
  Element arrow(const std::string& name) const;
  // v^l * x * v^r, with the decorations placed at the two ends of each term.
  Element conj(const Element& x, int l, int r) const;

  Grade grade(const Element& x) const;  // GradeMismatch when inhomogeneous
  // pi_rho for rho = rho^rho_exp acting on F_head ∩ F_tail.
  Element semilinear_part(const Element& x, int rho_exp) const;
  Element naive_derivative(const Element& w, int a) const;
  Element cyclic_derivative(const Element& w, int a) const;

  // Normal-form paths of a given length; each is an F-basis vector of the tensor algebra.
  std::vector<Path> layer(size_t len) const;
  std::vector<Path> grade_basis(const Grade& g) const;
  // dim_F of A_{a_1} ⊗ ... ⊗ A_{a_n} including the two end fields.
  size_t sequence_dim(const std::vector<int>& arrows) const;

  Element parse(const std::string& text) const;
  std::string str(const Element& x) const;
  std::string path_str(const Path& p) const;
  std::string dec_str(int e) const;

 private:
  void check_slot(int v, int e) const;
  DatumPtr datum_;
  Quiver q_;
};

}  // namespace jc
