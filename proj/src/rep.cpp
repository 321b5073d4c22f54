#include "jacclan/rep.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace jc {

using json = nlohmann::json;

namespace {

Scalar zero_of(uint32_t p) { return Scalar(0).in_field(p); }
Scalar one_of(uint32_t p) { return Scalar(1).in_field(p); }

// ---------- polynomials over F, coefficients from low to high degree ----------

using Poly = std::vector<Scalar>;

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly padd(const Poly& a, const Poly& b, uint32_t p) {
  Poly r(std::max(a.size(), b.size()), zero_of(p));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly pneg(const Poly& a) {
  Poly r = a;
  for (auto& x : r) x = -x;
  return r;
}

Poly pmul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, zero_of(p));
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero())
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

void pdivmod(const Poly& a, const Poly& b, Poly& q, Poly& r, uint32_t p) {
  r = a;
  trim(r);
  q.clear();
  if (deg(r) < deg(b)) return;
  q.assign(r.size() - b.size() + 1, zero_of(p));
  Scalar lead = b.back().inv();
  while (!r.empty() && deg(r) >= deg(b)) {
    size_t s = r.size() - b.size();
    Scalar f = r.back() * lead;
    q[s] = f;
    for (size_t i = 0; i < b.size(); ++i) r[s + i] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

Poly pmod(const Poly& a, const Poly& b, uint32_t p) {
  Poly q, r;
  pdivmod(a, b, q, r, p);
  return r;
}

Poly pdiv(const Poly& a, const Poly& b, uint32_t p) {
  Poly q, r;
  pdivmod(a, b, q, r, p);
  return q;
}

Poly monic(Poly a) {
  trim(a);
  if (a.empty()) return a;
  Scalar l = a.back().inv();
  for (auto& x : a) x = x * l;
  return a;
}

Poly pgcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly pderiv(const Poly& a, uint32_t p) {
  Poly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Scalar(static_cast<long long>(i)).in_field(p));
  trim(r);
  return r;
}

Poly powmod(Poly base, mpz_class e, const Poly& m, uint32_t p) {
  Poly r{one_of(p)};
  base = pmod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Product of the distinct monic irreducible factors.
Poly radical(const Poly& m0, uint32_t p) {
  Poly m = monic(m0);
  if (deg(m) <= 0) return {one_of(p)};
  Poly d = pderiv(m, p);
  if (d.empty()) {
    Poly h;
    for (size_t i = 0; i < m.size(); i += p) h.push_back(m[i]);
    return radical(h, p);
  }
  Poly g = pgcd(m, d, p);
  Poly w = monic(pdiv(m, g, p));
  if (deg(g) <= 0) return w;
  Poly r = radical(g, p);
  Poly l = pdiv(pmul(w, r, p), pgcd(w, r, p), p);
  return monic(l);
}

bool rational_sqrt(const mpq_class& q, mpq_class& out) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = mpq_class(sn, sd);
  out.canonicalize();
  return true;
}

// Nontrivial monic factor of a squarefree polynomial, or nothing when irreducible.
std::optional<Poly> split_factor(const Poly& g0, uint32_t p, std::mt19937_64& rng) {
  Poly g = monic(g0);
  const int n = deg(g);
  if (n <= 1) return std::nullopt;
  if (p == 0) {
    if (n == 2) {
      mpq_class b = g[1].to_mpq(), c = g[0].to_mpq(), s;
      mpq_class disc = b * b - 4 * c;
      if (!rational_sqrt(disc, s)) return std::nullopt;
      mpq_class root = (-b + s) / 2;
      return Poly{Scalar::rational(-root), Scalar(1)};
    }
    if (n == 3) {
      mpz_class L = 1;
      for (const auto& x : g) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.to_mpq().get_den().get_mpz_t());
      // y = L t gives an integral monic cubic whose integer roots divide its constant term
      mpz_class c0 = mpz_class(g[0].to_mpq() * L * L * L);
      if (c0 == 0) return Poly{Scalar(0), Scalar(1)};
      mpz_class a = abs(c0);
      if (a > 100000000) fail(ErrorKind::RadicalAlgorithmUnsupported, "cubic root search too large over Q");
      long long A = a.get_si();
      for (long long dv = 1; dv * dv <= A; ++dv) {
        if (A % dv) continue;
        for (long long cand : {dv, -dv, A / dv, -(A / dv)}) {
          mpq_class t(mpz_class(static_cast<long>(cand)), L);
          t.canonicalize();
          mpq_class v = ((t + g[2].to_mpq()) * t + g[1].to_mpq()) * t + g[0].to_mpq();
          if (v == 0) return Poly{Scalar::rational(-t), Scalar(1)};
        }
      }
      return std::nullopt;
    }
    fail(ErrorKind::RadicalAlgorithmUnsupported, "irreducibility over Q above degree 3");
  }
  Poly x{zero_of(p), one_of(p)};
  Poly h = x;
  for (int i = 1; 2 * i <= n; ++i) {
    h = powmod(h, mpz_class(p), g, p);
    Poly G = pgcd(padd(h, pneg(x), p), g, p);
    if (deg(G) <= 0) continue;
    if (deg(G) < n) return G;
    // every irreducible factor has degree i
    mpz_class q = 1;
    for (int k = 0; k < i; ++k) q *= p;
    for (int attempt = 0; attempt < 200; ++attempt) {
      Poly a(n);
      for (auto& c : a) c = Scalar::mod(p, static_cast<long long>(rng() % p));
      trim(a);
      if (deg(a) <= 0) continue;
      Poly b;
      if (p == 2) {
        Poly t = a;
        b = a;
        for (int k = 1; k < i; ++k) {
          t = pmod(pmul(t, t, p), g, p);
          b = padd(b, t, p);
        }
      } else {
        b = padd(powmod(a, (q - 1) / 2, g, p), Poly{Scalar::mod(p, -1)}, p);
      }
      Poly F = pgcd(b, g, p);
      if (deg(F) > 0 && deg(F) < n) return F;
    }
    fail(ErrorKind::RadicalAlgorithmUnsupported, "equal-degree splitting did not converge");
  }
  return std::nullopt;
}

Matrix peval(const Poly& f, const Matrix& X) {
  const uint32_t p = X.field();
  Matrix r(X.rows(), X.cols(), p);
  for (int i = deg(f); i >= 0; --i) r = r * X + Matrix::scalar(X.rows(), f[i], p);
  return r;
}

// ---------- incremental row spans ----------

using Vec = std::vector<Scalar>;

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

Matrix unflatten(const Vec& v, size_t r, size_t c, uint32_t p) {
  Matrix m(r, c, p);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = v[i * c + j];
  return m;
}

struct RowSpan {
  std::vector<Vec> rows;
  std::vector<size_t> piv;

  void reduce(Vec& v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      Scalar f = v[piv[i]];
      if (f.is_zero()) continue;
      const Vec& r = rows[i];
      for (size_t j = 0; j < v.size(); ++j)
        if (!r[j].is_zero()) v[j] -= f * r[j];
    }
  }
  bool contains(Vec v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  bool add(Vec v) {
    reduce(v);
    size_t k = 0;
    while (k < v.size() && v[k].is_zero()) ++k;
    if (k == v.size()) return false;
    Scalar l = v[k].inv();
    for (auto& x : v) x = x * l;
    rows.push_back(std::move(v));
    piv.push_back(k);
    return true;
  }
  size_t dim() const { return rows.size(); }
};

Matrix column_basis(const Matrix& m) {
  auto e = m.echelon();
  std::vector<Matrix> cols;
  for (size_t c : e.pivots) cols.push_back(m.col(c));
  return Matrix::hstack(cols, m.rows(), m.field());
}

Matrix random_matrix(size_t r, size_t c, uint32_t p, std::mt19937_64& rng) {
  Matrix m(r, c, p);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) {
      long long x = p ? static_cast<long long>(rng() % p) : static_cast<long long>(rng() % 7) - 3;
      m.at(i, j) = Scalar(x).in_field(p);
    }
  return m;
}

// Minimal polynomial of y modulo the span J.
Poly minpoly_mod(const Matrix& y, const std::vector<Matrix>& J) {
  const uint32_t p = y.field();
  const size_t n = y.rows();
  std::vector<Matrix> cols;
  for (const auto& j : J) {
    Vec f = flatten(j);
    cols.push_back(unflatten(f, n * n, 1, p));
  }
  const size_t nj = cols.size();
  Matrix pw = Matrix::identity(n, p);
  for (size_t k = 0;; ++k) {
    Matrix target = unflatten(flatten(pw), n * n, 1, p);
    if (!cols.empty()) {
      Matrix A = Matrix::hstack(cols, n * n, p), x;
      if (A.solve(target, x)) {
        Poly m(k + 1, zero_of(p));
        for (size_t i = 0; i < k; ++i) m[i] = -x.at(nj + i, 0);
        m[k] = one_of(p);
        return m;
      }
    } else if (target.is_zero()) {
      return Poly{one_of(p)};
    }
    cols.push_back(target);
    pw = pw * y;
    if (k > n * n + 1) fail(ErrorKind::RadicalAlgorithmUnsupported, "minimal polynomial search did not terminate");
  }
}

bool span_contains_identity(const RowSpan& J, size_t n, uint32_t p) { return J.contains(flatten(Matrix::identity(n, p))); }

// The ideal spanned by J is nilpotent iff iterating J on the whole space reaches zero.
bool ideal_nilpotent(const std::vector<Matrix>& J, size_t n, uint32_t p) {
  if (J.empty() || n == 0) return true;
  Matrix V = Matrix::identity(n, p);
  for (size_t step = 0; step <= n; ++step) {
    if (V.cols() == 0) return true;
    std::vector<Matrix> imgs;
    for (const auto& x : J) imgs.push_back(x * V);
    Matrix W = Matrix::hstack(imgs, n, p);
    Matrix B = column_basis(W);
    if (B.cols() == V.cols()) return false;
    V = B;
  }
  return V.cols() == 0;
}

std::vector<Matrix> span_matrices(const RowSpan& S, size_t n, uint32_t p) {
  std::vector<Matrix> out;
  for (const auto& r : S.rows) out.push_back(unflatten(r, n, n, p));
  return out;
}

// Two-sided ideal generated by J and z inside the algebra with the given basis.
RowSpan ideal_closure(const RowSpan& J, const Matrix& z, const std::vector<Matrix>& basis) {
  RowSpan left;
  for (const auto& b : basis) left.add(flatten(b * z));
  const size_t n = z.rows();
  const uint32_t p = z.field();
  RowSpan out = J;
  for (const auto& l : span_matrices(left, n, p))
    for (const auto& b : basis) out.add(flatten(l * b));
  return out;
}

Matrix power(const Matrix& x, size_t e) {
  Matrix r = Matrix::identity(x.rows(), x.field());
  Matrix b = x;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Matrix block_of(const Matrix& total, const Representation& M, const Representation& N, int k) {
  return total.block(N.offset(k), M.offset(k), N.dims[k], M.dims[k]);
}

Morphism split_total(const Matrix& total, const Representation& M) {
  Morphism f;
  for (size_t k = 0; k < M.dims.size(); ++k) f.push_back(block_of(total, M, M, static_cast<int>(k)));
  return f;
}

}  // namespace

// ---------- Representation basics ----------

size_t Representation::total() const { return std::accumulate(dims.begin(), dims.end(), size_t{0}); }

size_t Representation::offset(int v) const {
  size_t o = 0;
  for (int i = 0; i < v; ++i) o += dims[i];
  return o;
}

std::vector<size_t> Representation::field_dims(const PathAlgebra& A) const {
  std::vector<size_t> out;
  for (size_t k = 0; k < dims.size(); ++k) out.push_back(dims[k] / A.weight(static_cast<int>(k)));
  return out;
}

Representation zero_rep(const PathAlgebra& A) {
  Representation M;
  const auto& Q = A.quiver();
  M.dims.assign(Q.vertices.size(), 0);
  for (size_t k = 0; k < Q.vertices.size(); ++k) M.field.emplace_back(0, 0, A.p());
  for (size_t a = 0; a < Q.arrows.size(); ++a) M.arrows.emplace_back(0, 0, A.p());
  return M;
}

Matrix field_companion(const PathAlgebra& A, int k) {
  const int w = A.weight(k);
  Matrix G(w, w, A.p());
  for (int j = 0; j + 1 < w; ++j) G.at(j + 1, j) = one_of(A.p());
  G.at(0, w - 1) = A.datum().c.in_field(A.p());
  return G;
}

Matrix decoration_operator(const PathAlgebra& A, const Representation& M, int k, int e) {
  const int st = A.step(k);
  if (e % st != 0) fail(ErrorKind::LevelMismatch, "decoration outside the vertex field");
  int q = e / st;
  if (q >= 0) return M.field[k].pow(static_cast<unsigned>(q));
  return M.field[k].inverse().pow(static_cast<unsigned>(-q));
}

Matrix path_operator(const PathAlgebra& A, const Representation& M, const Path& p) {
  Matrix op = decoration_operator(A, M, p.head, p.exps[0]);
  for (size_t r = 0; r < p.arrows.size(); ++r) {
    const int a = p.arrows[r];
    const int t = A.quiver().arrows[a].tail;
    op = op * M.arrows[a] * decoration_operator(A, M, t, p.exps[r + 1]);
  }
  return op;
}

Matrix element_operator(const PathAlgebra& A, const Representation& M, const Element& x) {
  const size_t n = M.total();
  Matrix out(n, n, A.p());
  for (const auto& [P, c] : x) {
    if (M.dims[P.head] == 0 || M.dims[P.tail] == 0) continue;
    Matrix op = path_operator(A, M, P).scaled(c);
    const size_t r0 = M.offset(P.head), c0 = M.offset(P.tail);
    for (size_t i = 0; i < op.rows(); ++i)
      for (size_t j = 0; j < op.cols(); ++j) out.at(r0 + i, c0 + j) += op.at(i, j);
  }
  return out;
}

std::vector<Element> defining_relations(const QuotientAlgebra& Q) {
  if (Q.mode() == QuotientAlgebra::Mode::Jacobian) return Q.relations();
  const PathAlgebra& A = Q.algebra();
  std::vector<Element> out;
  const auto& cr = Q.clannish_relations();
  for (const auto& [l, r] : cr.zero_pairs) {
    const auto& al = A.quiver().arrows[l];
    const auto& ar = A.quiver().arrows[r];
    out.push_back(A.normalize(al.head, ar.tail, {l, r}, {0, 0, 0}, A.F(1)));
  }
  for (const auto& q : cr.quadratics) {
    Element s = A.arrow(q.loop);
    Element sq = A.mul(s, s);
    const int k = A.quiver().arrows[q.loop].head;
    out.push_back(sub(sq, scale(A.e(k, q.exp), q.coef)));
  }
  return out;
}

std::vector<std::string> validate(const PathAlgebra& A, const Representation& M, const std::vector<Element>& relations) {
  std::vector<std::string> out;
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  if (M.dims.size() != Q.vertices.size() || M.field.size() != Q.vertices.size() || M.arrows.size() != Q.arrows.size()) {
    out.push_back("shape: vertex or arrow count does not match the quiver");
    return out;
  }
  bool shapes_ok = true;
  for (size_t k = 0; k < Q.vertices.size(); ++k) {
    const auto& G = M.field[k];
    const std::string& nm = Q.vertices[k].name;
    if (G.rows() != M.dims[k] || G.cols() != M.dims[k]) {
      out.push_back("shape: field action at vertex " + nm + " has wrong size");
      shapes_ok = false;
      continue;
    }
    const int w = A.weight(static_cast<int>(k));
    if (M.dims[k] % w != 0) out.push_back("dimension: vertex " + nm + " has F-dimension not divisible by " + std::to_string(w));
    Matrix lhs = G.pow(static_cast<unsigned>(w));
    if (lhs != Matrix::scalar(M.dims[k], A.datum().c, p))
      out.push_back("field: minimal polynomial x^" + std::to_string(w) + " - c fails at vertex " + nm);
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    const auto& X = M.arrows[a];
    if (X.rows() != M.dims[ar.head] || X.cols() != M.dims[ar.tail]) {
      out.push_back("shape: arrow " + ar.name + " has wrong size");
      shapes_ok = false;
    }
  }
  if (!shapes_ok) return out;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    const int s = A.degree() / A.arrow_weight(static_cast<int>(a));
    Matrix lhs = M.arrows[a] * decoration_operator(A, M, ar.tail, s);
    Matrix rhs = decoration_operator(A, M, ar.head, s).scaled(A.datum().zeta_pow(static_cast<long long>(ar.gexp) * s)) * M.arrows[a];
    if (lhs != rhs) out.push_back("semilinearity: arrow " + ar.name + " does not intertwine the field actions");
  }
  for (size_t i = 0; i < relations.size(); ++i) {
    if (!element_operator(A, M, relations[i]).is_zero()) out.push_back("relation: " + A.str(relations[i]) + " does not act as zero");
  }
  return out;
}

std::vector<std::string> validate(const QuotientAlgebra& Q, const Representation& M) {
  return validate(Q.algebra(), M, defining_relations(Q));
}

// ---------- homomorphisms ----------

bool is_homomorphism(const PathAlgebra& A, const Representation& M, const Representation& N, const Morphism& f) {
  const auto& Q = A.quiver();
  if (f.size() != Q.vertices.size()) return false;
  for (size_t k = 0; k < f.size(); ++k) {
    if (f[k].rows() != N.dims[k] || f[k].cols() != M.dims[k]) return false;
    if (f[k] * M.field[k] != N.field[k] * f[k]) return false;
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    if (f[ar.head] * M.arrows[a] != N.arrows[a] * f[ar.tail]) return false;
  }
  return true;
}

HomSpace hom(const PathAlgebra& A, const Representation& M, const Representation& N) {
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  const size_t nv = Q.vertices.size();
  if (M.dims.size() != nv || N.dims.size() != nv) fail(ErrorKind::AlgebraMismatch, "representations of different quivers");
  // Per vertex: maps commuting with the field action.
  std::vector<Matrix> vbasis(nv);
  std::vector<size_t> uoff(nv + 1, 0);
  for (size_t k = 0; k < nv; ++k) {
    const size_t r = N.dims[k], c = M.dims[k];
    uoff[k + 1] = uoff[k] + r * c;
    Matrix E(r * c, r * c, p);
    const Matrix& G = M.field[k];
    const Matrix& H = N.field[k];
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) {
        const size_t row = i * c + j;
        for (size_t l = 0; l < c; ++l) E.at(row, i * c + l) += G.at(l, j);
        for (size_t l = 0; l < r; ++l) E.at(row, l * c + j) -= H.at(i, l);
      }
    vbasis[k] = E.nullspace();
  }
  std::vector<Morphism> cand;
  for (size_t k = 0; k < nv; ++k)
    for (size_t b = 0; b < vbasis[k].cols(); ++b) {
      Morphism f;
      for (size_t j = 0; j < nv; ++j) f.emplace_back(N.dims[j], M.dims[j], p);
      for (size_t i = 0; i < N.dims[k]; ++i)
        for (size_t j = 0; j < M.dims[k]; ++j) f[k].at(i, j) = vbasis[k].at(i * M.dims[k] + j, b);
      cand.push_back(std::move(f));
    }
  HomSpace H;
  if (cand.empty()) return H;
  // Arrow equations on the candidate coordinates.
  size_t rows = 0;
  for (const auto& ar : Q.arrows) rows += N.dims[ar.head] * M.dims[ar.tail];
  if (rows == 0) {
    H.basis = std::move(cand);
    return H;
  }
  Matrix R(rows, cand.size(), p);
  for (size_t b = 0; b < cand.size(); ++b) {
    size_t r0 = 0;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
      const auto& ar = Q.arrows[a];
      const size_t hr = N.dims[ar.head], tc = M.dims[ar.tail];
      if (hr && tc) {
        Matrix d = cand[b][ar.head] * M.arrows[a] - N.arrows[a] * cand[b][ar.tail];
        for (size_t i = 0; i < hr; ++i)
          for (size_t j = 0; j < tc; ++j) R.at(r0 + i * tc + j, b) = d.at(i, j);
      }
      r0 += hr * tc;
    }
  }
  Matrix K = R.nullspace();
  for (size_t s = 0; s < K.cols(); ++s) {
    Morphism f;
    for (size_t j = 0; j < nv; ++j) f.emplace_back(N.dims[j], M.dims[j], p);
    for (size_t b = 0; b < cand.size(); ++b) {
      const Scalar& x = K.at(b, s);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < nv; ++j)
        if (f[j].rows() && f[j].cols()) f[j] = f[j] + cand[b][j].scaled(x);
    }
    H.basis.push_back(std::move(f));
  }
  return H;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  for (size_t k = 0; k < f.size(); ++k) h.push_back(g[k] * f[k]);
  return h;
}

Morphism identity_morphism(const PathAlgebra& A, const Representation& M) {
  Morphism f;
  for (size_t k = 0; k < M.dims.size(); ++k) f.push_back(Matrix::identity(M.dims[k], A.p()));
  return f;
}

bool is_invertible(const Morphism& f) {
  for (const auto& m : f) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() && m.rank() != m.rows()) return false;
  }
  return true;
}

Matrix total_matrix(const Morphism& f) {
  size_t r = 0, c = 0;
  uint32_t p = 0;
  for (const auto& m : f) {
    r += m.rows();
    c += m.cols();
    if (m.field()) p = m.field();
  }
  Matrix out(r, c, p);
  size_t r0 = 0, c0 = 0;
  for (const auto& m : f) {
    out.set_block(r0, c0, m);
    r0 += m.rows();
    c0 += m.cols();
  }
  return out;
}

// ---------- constructions ----------

Representation direct_sum(const Representation& M, const Representation& N) {
  Representation S;
  for (size_t k = 0; k < M.dims.size(); ++k) {
    S.dims.push_back(M.dims[k] + N.dims[k]);
    S.field.push_back(Matrix::direct_sum(M.field[k], N.field[k]));
  }
  for (size_t a = 0; a < M.arrows.size(); ++a) S.arrows.push_back(Matrix::direct_sum(M.arrows[a], N.arrows[a]));
  return S;
}

Representation subrepresentation(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& basis) {
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  Representation S;
  for (size_t k = 0; k < M.dims.size(); ++k) {
    const Matrix& B = basis[k];
    S.dims.push_back(B.cols());
    Matrix X(B.cols(), B.cols(), p);
    if (B.cols() && !B.solve(M.field[k] * B, X)) fail(ErrorKind::ValidationFailed, "subspace not invariant under the field action");
    S.field.push_back(X);
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    const Matrix& Bh = basis[ar.head];
    const Matrix& Bt = basis[ar.tail];
    Matrix Y(Bh.cols(), Bt.cols(), p);
    if (Bh.cols() && Bt.cols() && !Bh.solve(M.arrows[a] * Bt, Y))
      fail(ErrorKind::ValidationFailed, "subspace not invariant under arrow " + ar.name);
    S.arrows.push_back(Y);
  }
  return S;
}

Representation quotient(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& basis) {
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  std::vector<Matrix> comp(M.dims.size()), inv(M.dims.size());
  std::vector<size_t> r(M.dims.size());
  for (size_t k = 0; k < M.dims.size(); ++k) {
    const size_t n = M.dims[k];
    const Matrix& B = basis[k];
    Matrix full = Matrix::hstack({B, Matrix::identity(n, p)}, n, p);
    Matrix cb = column_basis(full);
    r[k] = B.cols();
    comp[k] = cb.block(0, r[k], n, n - r[k]);
    inv[k] = cb.inverse();
  }
  Representation S;
  for (size_t k = 0; k < M.dims.size(); ++k) {
    const size_t n = M.dims[k], q = n - r[k];
    S.dims.push_back(q);
    S.field.push_back((inv[k] * M.field[k] * comp[k]).block(r[k], 0, q, q));
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    const size_t h = ar.head, t = ar.tail;
    Matrix Y = inv[h] * M.arrows[a] * comp[t];
    S.arrows.push_back(Y.block(r[h], 0, S.dims[h], S.dims[t]));
  }
  return S;
}

std::vector<Matrix> generated_subspace(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& vectors) {
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  const size_t nv = M.dims.size();
  std::vector<RowSpan> span(nv);
  std::vector<std::pair<int, Vec>> queue;
  auto push = [&](int k, const Matrix& col) {
    Vec v;
    for (size_t i = 0; i < col.rows(); ++i) v.push_back(col.at(i, 0));
    if (span[k].add(v)) queue.emplace_back(k, v);
  };
  for (size_t k = 0; k < nv; ++k)
    for (size_t j = 0; j < vectors[k].cols(); ++j) push(static_cast<int>(k), vectors[k].col(j));
  while (!queue.empty()) {
    auto [k, v] = queue.back();
    queue.pop_back();
    Matrix col = unflatten(v, v.size(), 1, p);
    push(k, M.field[k] * col);
    for (size_t a = 0; a < Q.arrows.size(); ++a)
      if (Q.arrows[a].tail == k && M.dims[Q.arrows[a].head]) push(Q.arrows[a].head, M.arrows[a] * col);
  }
  std::vector<Matrix> out;
  for (size_t k = 0; k < nv; ++k) {
    Matrix B(M.dims[k], span[k].dim(), p);
    for (size_t j = 0; j < span[k].dim(); ++j)
      for (size_t i = 0; i < M.dims[k]; ++i) B.at(i, j) = span[k].rows[j][i];
    out.push_back(B);
  }
  return out;
}

std::vector<Representation> projectives(const QuotientAlgebra& Q) {
  const PathAlgebra& A = Q.algebra();
  const auto& qv = A.quiver();
  const uint32_t p = A.p();
  const auto& B = Q.basis();
  std::vector<Representation> out;
  for (size_t k = 0; k < qv.vertices.size(); ++k) {
    std::vector<std::vector<size_t>> at(qv.vertices.size());
    std::vector<int> local(B.size(), -1);
    for (size_t i = 0; i < B.size(); ++i)
      if (B[i].tail == static_cast<int>(k)) {
        local[i] = static_cast<int>(at[B[i].head].size());
        at[B[i].head].push_back(i);
      }
    Representation P;
    for (size_t j = 0; j < qv.vertices.size(); ++j) P.dims.push_back(at[j].size());
    auto element_of = [&](size_t i) {
      Element x;
      add_term(x, B[i], A.F(1));
      return x;
    };
    for (size_t j = 0; j < qv.vertices.size(); ++j) {
      Matrix G(P.dims[j], P.dims[j], p);
      Element y = A.e(static_cast<int>(j), A.step(static_cast<int>(j)));
      for (size_t c = 0; c < at[j].size(); ++c) {
        auto co = Q.coords(A.mul(y, element_of(at[j][c])));
        for (size_t i = 0; i < co.size(); ++i)
          if (!co[i].is_zero()) G.at(local[i], c) = co[i];
      }
      P.field.push_back(G);
    }
    for (size_t a = 0; a < qv.arrows.size(); ++a) {
      const auto& ar = qv.arrows[a];
      Matrix X(P.dims[ar.head], P.dims[ar.tail], p);
      Element y = A.arrow(static_cast<int>(a));
      for (size_t c = 0; c < at[ar.tail].size(); ++c) {
        auto co = Q.coords(A.mul(y, element_of(at[ar.tail][c])));
        for (size_t i = 0; i < co.size(); ++i)
          if (!co[i].is_zero()) X.at(local[i], c) = co[i];
      }
      P.arrows.push_back(X);
    }
    out.push_back(std::move(P));
  }
  return out;
}

std::vector<Representation> simples(const QuotientAlgebra& Q) {
  const PathAlgebra& A = Q.algebra();
  const auto& qv = A.quiver();
  auto P = projectives(Q);
  std::vector<Representation> out;
  for (size_t k = 0; k < qv.vertices.size(); ++k) {
    std::vector<Matrix> imgs;
    for (size_t j = 0; j < qv.vertices.size(); ++j) imgs.emplace_back(P[k].dims[j], 0, A.p());
    for (size_t a = 0; a < qv.arrows.size(); ++a) {
      const auto& ar = qv.arrows[a];
      if (ar.special) continue;
      imgs[ar.head] = Matrix::hstack({imgs[ar.head], P[k].arrows[a]}, P[k].dims[ar.head], A.p());
    }
    Representation top = quotient(A, P[k], generated_subspace(A, P[k], imgs));
    auto parts = decompose(A, top);
    out.push_back(parts.front());
  }
  return out;
}

// ---------- local endomorphism rings, decomposition, isomorphism ----------

const char* iso_name(Iso r) {
  switch (r) {
    case Iso::Yes: return "yes";
    case Iso::No: return "no";
    case Iso::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Matrix random_element(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  const uint32_t p = basis.front().field();
  Matrix r(basis.front().rows(), basis.front().cols(), p);
  for (const auto& b : basis) {
    long long x = p ? static_cast<long long>(rng() % p) : static_cast<long long>(rng() % 7) - 3;
    if (x) r = r + b.scaled(Scalar(x).in_field(p));
  }
  return r;
}

// Fitting splitter f(y)^n from an element whose minimal polynomial has two coprime factors.
std::optional<Matrix> try_split(const Matrix& y, const std::vector<Matrix>& J, std::mt19937_64& rng) {
  Poly m = minpoly_mod(y, J);
  Poly g = radical(m, y.field());
  auto f = split_factor(g, y.field(), rng);
  if (!f) return std::nullopt;
  return power(peval(*f, y), y.rows());
}

}  // namespace

LocalTest local_test(const PathAlgebra& A, const Representation& M, uint64_t seed) {
  const uint32_t p = A.p();
  const size_t n = M.total();
  LocalTest out;
  if (n == 0) fail(ErrorKind::ValidationFailed, "locality test on the zero module");
  HomSpace E = hom(A, M, M);
  for (const auto& f : E.basis) out.end_basis.push_back(total_matrix(f));
  const auto& basis = out.end_basis;
  out.end_dim = basis.size();
  std::mt19937_64 rng(seed);

  // trace-form kernel
  const size_t m = basis.size();
  Matrix T(m, m, p);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j) {
      Matrix pr = basis[i] * basis[j];
      Scalar t = zero_of(p);
      for (size_t r = 0; r < n; ++r) t += pr.at(r, r);
      T.at(i, j) = t;
      T.at(j, i) = t;
    }
  Matrix K = T.nullspace();
  std::vector<Matrix> J0;
  for (size_t c = 0; c < K.cols(); ++c) {
    Matrix z(n, n, p);
    for (size_t i = 0; i < m; ++i)
      if (!K.at(i, c).is_zero()) z = z + basis[i].scaled(K.at(i, c));
    J0.push_back(z);
  }
  RowSpan J;
  if (p == 0 || p > n || ideal_nilpotent(J0, n, p))
    for (const auto& z : J0) J.add(flatten(z));

  const size_t budget = 8 * m + 32;
  for (int restarts = 0; restarts <= static_cast<int>(m) + 1; ++restarts) {
    std::vector<Matrix> Jm = span_matrices(J, n, p);
    const size_t dimQ = m - J.dim();
    if (dimQ == 1) {
      out.local = true;
      out.rad_basis = Jm;
      out.rad_dim = Jm.size();
      return out;
    }
    bool grew = false, full = false;
    for (size_t it = 0; it < budget && !grew; ++it) {
      Matrix y = it < m ? basis[it] : random_element(basis, rng);
      if (J.contains(flatten(y))) continue;
      Poly mq = minpoly_mod(y, Jm);
      Poly g = radical(mq, p);
      auto f = split_factor(g, p, rng);
      if (f) {
        out.local = false;
        out.splitter = power(peval(*f, y), n);
        return out;
      }
      if (deg(mq) > deg(g)) {
        RowSpan J2 = ideal_closure(J, peval(g, y), basis);
        if (span_contains_identity(J2, n, p) || !ideal_nilpotent(span_matrices(J2, n, p), n, p)) {
          out.local = false;
          return out;
        }
        J = std::move(J2);
        grew = true;
        break;
      }
      if (static_cast<size_t>(deg(mq)) == dimQ) full = true;
    }
    if (grew) continue;
    bool commutative = true;
    for (size_t i = 0; i < m && commutative; ++i)
      for (size_t j = i + 1; j < m && commutative; ++j)
        if (!J.contains(flatten(basis[i] * basis[j] - basis[j] * basis[i]))) commutative = false;
    if (commutative && full) {
      out.local = true;
      out.rad_basis = Jm;
      out.rad_dim = Jm.size();
      return out;
    }
    fail(ErrorKind::RadicalAlgorithmUnsupported, "could not decide locality of an endomorphism ring of dimension " + std::to_string(m));
  }
  fail(ErrorKind::RadicalAlgorithmUnsupported, "radical iteration did not stabilize");
}

bool is_indecomposable(const PathAlgebra& A, const Representation& M) {
  if (M.total() == 0) return false;
  return local_test(A, M).local;
}

std::vector<Representation> decompose(const PathAlgebra& A, const Representation& M) {
  if (M.total() == 0) return {};
  LocalTest lt = local_test(A, M);
  if (lt.local) return {M};
  std::optional<Matrix> phi = lt.splitter;
  std::mt19937_64 rng(7);
  for (size_t it = 0; !phi && it < 64 * lt.end_basis.size() + 64; ++it) {
    Matrix y = it < lt.end_basis.size() ? lt.end_basis[it] : random_element(lt.end_basis, rng);
    phi = try_split(y, {}, rng);
  }
  if (!phi) fail(ErrorKind::RadicalAlgorithmUnsupported, "no splitting endomorphism found");
  Morphism f = split_total(*phi, M);
  std::vector<Matrix> img, ker;
  for (const auto& fk : f) {
    img.push_back(column_basis(fk));
    ker.push_back(fk.nullspace());
  }
  auto a = decompose(A, subrepresentation(A, M, img));
  auto b = decompose(A, subrepresentation(A, M, ker));
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Iso is_isomorphic(const PathAlgebra& A, const Representation& M, const Representation& N, uint64_t seed, size_t budget) {
  if (M.dims != N.dims) return Iso::No;
  if (M.total() == 0) return Iso::Yes;
  HomSpace H = hom(A, M, N), H2 = hom(A, N, M);
  if (H.dim() != H2.dim()) return Iso::No;
  if (H.dim() == 0) return Iso::No;
  try {
    LocalTest lt = local_test(A, M, seed);
    if (lt.local) {
      RowSpan R;
      for (const auto& r : lt.rad_basis) R.add(flatten(r));
      for (const auto& f : H.basis)
        for (const auto& g : H2.basis)
          if (!R.contains(flatten(total_matrix(compose(g, f))))) return Iso::Yes;
      return Iso::No;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalAlgorithmUnsupported) throw;
  }
  const uint32_t p = A.p();
  const size_t h = H.dim();
  auto combo = [&](const std::vector<long long>& c) {
    Morphism f;
    for (size_t k = 0; k < M.dims.size(); ++k) f.emplace_back(N.dims[k], M.dims[k], p);
    for (size_t i = 0; i < h; ++i)
      if (c[i])
        for (size_t k = 0; k < f.size(); ++k)
          if (f[k].rows()) f[k] = f[k] + H.basis[i][k].scaled(Scalar(c[i]).in_field(p));
    return f;
  };
  double space = 1;
  for (size_t i = 0; i < h && space <= static_cast<double>(budget) + 1; ++i) space *= p ? p : 1e18;
  if (p && space <= static_cast<double>(budget)) {
    std::vector<long long> c(h, 0);
    while (true) {
      if (is_invertible(combo(c))) return Iso::Yes;
      size_t i = 0;
      while (i < h && ++c[i] == static_cast<long long>(p)) c[i++] = 0;
      if (i == h) break;
    }
    return Iso::No;
  }
  std::mt19937_64 rng(seed);
  for (size_t t = 0; t < budget; ++t) {
    std::vector<long long> c(h);
    for (auto& x : c) x = p ? static_cast<long long>(rng() % p) : static_cast<long long>(rng() % 2001) - 1000;
    if (is_invertible(combo(c))) return Iso::Yes;
  }
  return Iso::Inconclusive;
}

// ---------- random samples ----------

std::optional<Representation> random_representation(const QuotientAlgebra& Q, std::mt19937_64& rng, size_t max_vertex_dim,
                                                    int attempts) {
  const PathAlgebra& A = Q.algebra();
  const uint32_t p = A.p();
  const size_t nv = A.quiver().vertices.size();
  const auto proj = projectives(Q);
  for (int att = 0; att < attempts; ++att) {
    Representation P = proj[rng() % nv];
    if (rng() % 3 == 0) P = direct_sum(P, proj[rng() % nv]);
    const int ngen = 1 + static_cast<int>(rng() % 3);
    std::vector<Matrix> gens;
    for (size_t k = 0; k < nv; ++k) gens.emplace_back(P.dims[k], 0, p);
    for (int g = 0; g < ngen; ++g) {
      size_t k = rng() % nv;
      if (P.dims[k] == 0) continue;
      gens[k] = Matrix::hstack({gens[k], random_matrix(P.dims[k], 1, p, rng)}, P.dims[k], p);
    }
    auto U = generated_subspace(A, P, gens);
    Representation R = (rng() % 4 == 0) ? subrepresentation(A, P, U) : quotient(A, P, U);
    if (R.total() == 0) continue;
    bool ok = true;
    for (size_t d : R.dims) ok = ok && d <= max_vertex_dim;
    if (ok) return R;
  }
  return std::nullopt;
}

// ---------- JSON ----------

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (size_t j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, size_t r, size_t c, uint32_t p, const std::string& what) {
  if (!j.is_array() || j.size() != r) fail(ErrorKind::ParseError, what + ": expected " + std::to_string(r) + " rows");
  Matrix m(r, c, p);
  for (size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) fail(ErrorKind::ParseError, what + ": expected " + std::to_string(c) + " columns");
    for (size_t k = 0; k < c; ++k) {
      const json& e = j[i][k];
      std::string s = e.is_string() ? e.get<std::string>() : e.is_number_integer() ? std::to_string(e.get<long long>()) : "";
      m.at(i, k) = Scalar::parse(s, p);
    }
  }
  return m;
}

}  // namespace

std::string representation_json(const PathAlgebra& A, const Representation& M) {
  const auto& Q = A.quiver();
  json j;
  j["schema_version"] = 1;
  j["field"] = A.datum().base.name();
  j["vertices"] = json::array();
  for (size_t k = 0; k < Q.vertices.size(); ++k)
    j["vertices"].push_back({{"name", Q.vertices[k].name}, {"dim", M.dims[k]}, {"action", matrix_json(M.field[k])}});
  j["arrows"] = json::array();
  for (size_t a = 0; a < Q.arrows.size(); ++a) j["arrows"].push_back({{"name", Q.arrows[a].name}, {"matrix", matrix_json(M.arrows[a])}});
  return j.dump(2);
}

Representation representation_from_json(const PathAlgebra& A, const std::string& text) {
  const auto& Q = A.quiver();
  const uint32_t p = A.p();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("representation JSON: ") + e.what());
  }
  Representation M = zero_rep(A);
  try {
    for (const auto& v : j.at("vertices")) {
      int k = Q.vertex_index(v.at("name").get<std::string>());
      if (k < 0) fail(ErrorKind::ParseError, "unknown vertex " + v.at("name").get<std::string>());
      size_t n = v.at("dim").get<size_t>();
      M.dims[k] = n;
      if (v.contains("action")) {
        M.field[k] = matrix_from_json(v.at("action"), n, n, p, "action at " + Q.vertices[k].name);
      } else {
        // default: blocks of the companion action
        int w = A.weight(k);
        if (n % w) fail(ErrorKind::ParseError, "dimension at " + Q.vertices[k].name + " not divisible by its weight");
        Matrix G(n, n, p);
        Matrix C = field_companion(A, k);
        for (size_t b = 0; b < n / w; ++b) G.set_block(b * w, b * w, C);
        M.field[k] = G;
      }
    }
    for (size_t a = 0; a < Q.arrows.size(); ++a) M.arrows[a] = Matrix(M.dims[Q.arrows[a].head], M.dims[Q.arrows[a].tail], p);
    if (j.contains("arrows"))
      for (const auto& ar : j.at("arrows")) {
        int a = Q.arrow_index(ar.at("name").get<std::string>());
        if (a < 0) fail(ErrorKind::UnknownArrow, "no arrow named " + ar.at("name").get<std::string>());
        M.arrows[a] = matrix_from_json(ar.at("matrix"), M.dims[Q.arrows[a].head], M.dims[Q.arrows[a].tail], p,
                                       "arrow " + Q.arrows[a].name);
      }
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("representation JSON: ") + e.what());
  }
  return M;
}

}  // namespace jc
