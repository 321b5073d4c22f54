#include "jacclan/quotient.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace jc {

namespace {

int default_bound(const PathAlgebra& A, int lmax) {
  return lmax >= 0 ? lmax : 2 * static_cast<int>(A.quiver().arrows.size()) + 4;
}

}  // namespace

QuotientAlgebra QuotientAlgebra::jacobian(const PathAlgebra& A, const std::vector<Element>& relations, int lmax) {
  QuotientAlgebra q(A, Mode::Jacobian);
  q.relations_ = relations;
  const int bound = default_bound(A, lmax);
  const int d = A.degree();
  const auto& Q = A.quiver();

  std::map<size_t, std::vector<Element>> rel_by_len;
  for (const auto& r : relations) {
    if (r.empty()) continue;
    size_t len = r.begin()->first.length();
    for (const auto& [P, c] : r)
      if (P.length() != len) fail(ErrorKind::GradeMismatch, "relation is not homogeneous in length");
    rel_by_len[len].push_back(r);
  }

  std::vector<Element> prev;
  bool stopped = false;
  for (int ell = 0; ell <= bound; ++ell) {
    const size_t len = static_cast<size_t>(ell);
    std::vector<Element> gens;
    for (const auto& x : prev) {
      Grade g = A.grade(x);
      for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const auto& ar = Q.arrows[a];
        if (ar.tail == g.head)
          for (int w = 0; w < d; w += A.step(ar.head)) {
            Element left = A.normalize(ar.head, ar.tail, {static_cast<int>(a)}, {w, 0}, A.F(1));
            gens.push_back(A.mul(left, x));
          }
        if (ar.head == g.tail)
          for (int w = 0; w < d; w += A.step(ar.tail)) {
            Element right = A.normalize(ar.head, ar.tail, {static_cast<int>(a)}, {0, w}, A.F(1));
            gens.push_back(A.mul(x, right));
          }
      }
    }
    for (const auto& r : rel_by_len[len]) {
      std::map<std::pair<int, int>, Element> split;
      for (const auto& [P, c] : r) add_term(split[{P.head, P.tail}], P, c);
      for (const auto& [ht, piece] : split)
        for (int wl = 0; wl < d; wl += A.step(ht.first))
          for (int wr = 0; wr < d; wr += A.step(ht.second))
            gens.push_back(A.conj(piece, wl, wr));
    }

    std::map<Grade, std::vector<Path>> paths;
    for (auto& P : A.layer(len)) paths[grade_of(P)].push_back(std::move(P));
    std::map<Grade, std::vector<Element>> parts_by_grade;
    for (const auto& x : gens) {
      std::map<Grade, Element> parts;
      for (const auto& [P, c] : x) add_term(parts[grade_of(P)], P, c);
      for (auto& [g, part] : parts)
        if (!part.empty()) parts_by_grade[g].push_back(std::move(part));
    }

    size_t layer_total = 0, ideal_total = 0;
    prev.clear();
    for (auto& [g, cols] : paths) {
      GradeIdeal gi;
      gi.cols = cols;
      std::sort(gi.cols.begin(), gi.cols.end(), [](const Path& a, const Path& b) { return b < a; });
      for (size_t i = 0; i < gi.cols.size(); ++i) gi.idx[gi.cols[i]] = i;
      const auto& rows = parts_by_grade[g];
      Matrix M(rows.size(), gi.cols.size(), A.p());
      for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& [P, c] : rows[i]) M.at(i, gi.idx.at(P)) = c;
      auto ech = M.echelon();
      gi.rref = ech.rref;
      gi.pivots = ech.pivots;
      gi.is_pivot.assign(gi.cols.size(), false);
      for (size_t pc : gi.pivots) gi.is_pivot[pc] = true;
      for (size_t i = 0; i < gi.pivots.size(); ++i) {
        Element row;
        for (size_t j = 0; j < gi.cols.size(); ++j) add_term(row, gi.cols[j], gi.rref.at(i, j));
        prev.push_back(std::move(row));
      }
      layer_total += gi.cols.size();
      ideal_total += gi.pivots.size();
      q.ideal_[g] = std::move(gi);
    }
    if (ideal_total == layer_total) {
      q.stop_ = len;
      stopped = true;
      break;
    }
  }
  if (!stopped) fail(ErrorKind::SaturationBoundExceeded, "ideal did not saturate by length " + std::to_string(bound));
  for (const auto& [g, gi] : q.ideal_) {
    if (g.length >= q.stop_) continue;
    for (size_t j = gi.cols.size(); j-- > 0;)
      if (!gi.is_pivot[j]) q.basis_.push_back(gi.cols[j]);
  }
  q.finish_basis();
  return q;
}

bool QuotientAlgebra::irreducible(const Path& p) const {
  for (size_t r = 0; r + 1 < p.arrows.size(); ++r) {
    const int a = p.arrows[r], b = p.arrows[r + 1];
    for (const auto& z : crel_.zero_pairs)
      if (z.first == a && z.second == b) return false;
    if (a == b)
      for (const auto& sq : crel_.quadratics)
        if (sq.loop == a) return false;
  }
  return true;
}

bool QuotientAlgebra::rewrite_once(const Path& p, const Scalar& c, Element& out) const {
  out.clear();
  for (size_t r = 0; r + 1 < p.arrows.size(); ++r) {
    const int a = p.arrows[r], b = p.arrows[r + 1];
    for (const auto& z : crel_.zero_pairs)
      if (z.first == a && z.second == b) return true;
    if (a != b) continue;
    for (const auto& sq : crel_.quadratics) {
      if (sq.loop != a) continue;
      const int mid = p.exps[r + 1];
      Scalar coef = c * sq.coef * A_.datum().zeta_pow(static_cast<long long>(A_.quiver().arrows[a].gexp) * mid);
      std::vector<int> arrows = p.arrows;
      arrows.erase(arrows.begin() + r, arrows.begin() + r + 2);
      std::vector<int> exps = p.exps;
      exps[r] = p.exps[r] + mid + sq.exp + p.exps[r + 2];
      exps.erase(exps.begin() + r + 1, exps.begin() + r + 3);
      out = A_.normalize(p.head, p.tail, std::move(arrows), std::move(exps), coef);
      return true;
    }
  }
  return false;
}

QuotientAlgebra QuotientAlgebra::clannish(const PathAlgebra& A, const ClannishRelations& rel, int lmax) {
  QuotientAlgebra q(A, Mode::Clannish);
  q.crel_ = rel;
  for (const auto& sq : rel.quadratics) {
    const auto& ar = A.quiver().arrows.at(sq.loop);
    if (!ar.special) fail(ErrorKind::ClannishConditionViolation, "quadratic on non-special arrow " + ar.name);
    if (sq.coef.is_zero()) fail(ErrorKind::ClannishConditionViolation, "quadratic with zero constant term at " + ar.name);
  }
  const int bound = default_bound(A, lmax);
  const int d = A.degree();
  const auto& Q = A.quiver();
  std::vector<Path> cur = A.layer(0);
  for (int ell = 0;; ++ell) {
    if (cur.empty()) {
      q.stop_ = static_cast<size_t>(ell);
      break;
    }
    if (ell > bound) fail(ErrorKind::SaturationBoundExceeded, "clannish quotient has nonzero paths of length " + std::to_string(ell));
    q.basis_.insert(q.basis_.end(), cur.begin(), cur.end());
    std::vector<Path> next;
    for (const auto& P : cur)
      for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const auto& ar = Q.arrows[a];
        if (ar.head != P.tail) continue;
        for (int w = 0; w < d / A.arrow_weight(static_cast<int>(a)); w += A.step(ar.tail)) {
          Path N = P;
          N.arrows.push_back(static_cast<int>(a));
          N.exps.push_back(w);
          N.tail = ar.tail;
          if (q.irreducible(N)) next.push_back(std::move(N));
        }
      }
    cur = std::move(next);
  }
  q.finish_basis();
  return q;
}

void QuotientAlgebra::finish_basis() {
  std::sort(basis_.begin(), basis_.end());
  basis_idx_.clear();
  for (size_t i = 0; i < basis_.size(); ++i) basis_idx_[basis_[i]] = i;
}

int QuotientAlgebra::basis_index(const Path& p) const {
  auto it = basis_idx_.find(p);
  return it == basis_idx_.end() ? -1 : static_cast<int>(it->second);
}

std::map<Grade, size_t> QuotientAlgebra::grade_dims() const {
  std::map<Grade, size_t> out;
  for (const auto& P : basis_) ++out[grade_of(P)];
  return out;
}

Element QuotientAlgebra::reduce_jacobian(const Element& x) const {
  std::map<Grade, Element> parts;
  for (const auto& [P, c] : x)
    if (P.length() < stop_) add_term(parts[grade_of(P)], P, c);
  Element out;
  for (const auto& [g, part] : parts) {
    const GradeIdeal& gi = ideal_.at(g);
    std::vector<Scalar> v(gi.cols.size(), A_.F(0));
    for (const auto& [P, c] : part) v[gi.idx.at(P)] = c;
    for (size_t i = 0; i < gi.pivots.size(); ++i) {
      Scalar f = v[gi.pivots[i]];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < v.size(); ++j) {
        const Scalar& r = gi.rref.at(i, j);
        if (!r.is_zero()) v[j] -= f * r;
      }
    }
    for (size_t j = 0; j < v.size(); ++j) add_term(out, gi.cols[j], v[j]);
  }
  return out;
}

Element QuotientAlgebra::reduce_clannish(const Element& x) const {
  Element out;
  std::deque<std::pair<Path, Scalar>> work(x.begin(), x.end());
  Element tmp;
  while (!work.empty()) {
    auto [P, c] = work.front();
    work.pop_front();
    if (rewrite_once(P, c, tmp)) {
      for (const auto& t : tmp) work.push_back(t);
    } else {
      add_term(out, P, c);
    }
  }
  return out;
}

Element QuotientAlgebra::reduce(const Element& x) const {
  return mode_ == Mode::Jacobian ? reduce_jacobian(x) : reduce_clannish(x);
}

std::vector<Scalar> QuotientAlgebra::coords(const Element& x) const {
  std::vector<Scalar> v(basis_.size(), A_.F(0));
  for (const auto& [P, c] : reduce(x)) {
    int i = basis_index(P);
    if (i < 0) fail(ErrorKind::VerificationFailed, "reduction left a non-basis path " + A_.path_str(P));
    v[i] = c;
  }
  return v;
}

std::vector<Element> QuotientAlgebra::generators() const {
  std::vector<Element> g;
  for (size_t k = 0; k < A_.quiver().vertices.size(); ++k) {
    g.push_back(A_.e(static_cast<int>(k)));
    if (A_.weight(static_cast<int>(k)) > 1) g.push_back(A_.e(static_cast<int>(k), A_.step(static_cast<int>(k))));
  }
  for (size_t a = 0; a < A_.quiver().arrows.size(); ++a) g.push_back(A_.arrow(static_cast<int>(a)));
  return g;
}

size_t QuotientAlgebra::center_dim() const {
  const size_t n = basis_.size();
  auto gens = generators();
  Matrix M(n * gens.size(), n, A_.p());
  for (size_t j = 0; j < n; ++j) {
    Element b;
    add_term(b, basis_[j], A_.F(1));
    for (size_t k = 0; k < gens.size(); ++k) {
      auto v = coords(sub(A_.mul(gens[k], b), A_.mul(b, gens[k])));
      for (size_t i = 0; i < n; ++i) M.at(k * n + i, j) = v[i];
    }
  }
  return n - M.rank();
}

}  // namespace jc
