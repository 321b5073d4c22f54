#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jacclan/matrix.hpp"
#include "jacclan/pathalg.hpp"

namespace jc {

// s^2 = coef * v^exp * e at the vertex of the special loop s.
struct SpecialQuadratic {
  int loop = 0;
  Scalar coef;
  int exp = 0;
};

struct ClannishRelations {
  std::vector<std::pair<int, int>> zero_pairs;  // (left, right): paths containing left.right vanish
  std::vector<SpecialQuadratic> quadratics;
};

// Finite-dimensional quotient of a tensor algebra, with a chosen path basis and a reduction map.
class QuotientAlgebra {
 public:
  enum class Mode { Jacobian, Clannish };

  // Ideal generated by homogeneous relations; saturates layer by layer.
  static QuotientAlgebra jacobian(const PathAlgebra& A, const std::vector<Element>& relations, int lmax = -1);
  // Monomial zero relations plus special quadratics, by rewriting.
  static QuotientAlgebra clannish(const PathAlgebra& A, const ClannishRelations& rel, int lmax = -1);

  const PathAlgebra& algebra() const { return A_; }
  Mode mode() const { return mode_; }
  const std::vector<Path>& basis() const { return basis_; }
  size_t dim() const { return basis_.size(); }
  // Smallest length at which every path reduces to zero.
  size_t stop_length() const { return stop_; }
  std::map<Grade, size_t> grade_dims() const;
  int basis_index(const Path& p) const;  // -1 when not a basis path

  Element reduce(const Element& x) const;
  Element mul(const Element& x, const Element& y) const { return reduce(A_.mul(x, y)); }
  // Coordinates of reduce(x) in the basis.
  std::vector<Scalar> coords(const Element& x) const;
  // Generators of the quotient: every v^step e_k, e_k, and every arrow.
  std::vector<Element> generators() const;
  size_t center_dim() const;
  const std::vector<Element>& relations() const { return relations_; }
  const ClannishRelations& clannish_relations() const { return crel_; }

 private:
  struct GradeIdeal {
    std::vector<Path> cols;  // descending path order
    std::map<Path, size_t> idx;
    Matrix rref;
    std::vector<size_t> pivots;
    std::vector<bool> is_pivot;
  };
  QuotientAlgebra(const PathAlgebra& A, Mode m) : A_(A), mode_(m) {}
  Element reduce_jacobian(const Element& x) const;
  Element reduce_clannish(const Element& x) const;
  // Zero when a Z pair occurs; rewrites one special square otherwise; returns false if irreducible.
  bool rewrite_once(const Path& p, const Scalar& c, Element& out) const;
  bool irreducible(const Path& p) const;
  void finish_basis();

  PathAlgebra A_;
  Mode mode_;
  std::vector<Element> relations_;
  ClannishRelations crel_;
  std::map<Grade, GradeIdeal> ideal_;
  std::vector<Path> basis_;
  std::map<Path, size_t> basis_idx_;
  size_t stop_ = 0;
};

}  // namespace jc
