#include "jacclan/stringband.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace jc {

namespace {

using Kind = Letter::Kind;

Letter invert(const Letter& l) {
  Letter r = l;
  if (l.kind == Kind::Direct) r.kind = Kind::Inverse;
  else if (l.kind == Kind::Inverse) r.kind = Kind::Direct;
  return r;
}

// Letter i (1-based from the right) of the word.
const Letter& from_right(const Word& w, size_t i) { return w.letters[w.letters.size() - i]; }

bool step_letter(const Quiver& Q, const Letter& l, int from, int& to) {
  const auto& ar = Q.arrows[l.arrow];
  switch (l.kind) {
    case Kind::Direct:
      if (ar.special || ar.tail != from) return false;
      to = ar.head;
      return true;
    case Kind::Inverse:
      if (ar.special || ar.head != from) return false;
      to = ar.tail;
      return true;
    case Kind::Special:
      if (!ar.special || ar.head != from) return false;
      to = from;
      return true;
  }
  return false;
}

int start_vertex(const Quiver& Q, const Letter& l) {
  const auto& ar = Q.arrows[l.arrow];
  return l.kind == Kind::Inverse ? ar.head : ar.tail;
}

bool in_zero(const ClannishPresentation& c, int left, int right) {
  for (const auto& [l, r] : c.rel.zero_pairs)
    if (l == left && r == right) return true;
  return false;
}

// Letter r sits to the right of letter l in the written word.
bool pair_ok(const ClannishPresentation& c, const Letter& l, const Letter& r, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (l.kind == Kind::Special && r.kind == Kind::Special) return bad("two adjacent special letters");
  if (l.kind != Kind::Special && r.kind != Kind::Special && l.arrow == r.arrow && l.kind != r.kind)
    return bad("a letter next to its inverse");
  if (l.kind == Kind::Direct && r.kind == Kind::Direct && in_zero(c, l.arrow, r.arrow)) return bad("direct pair lies in Z");
  if (l.kind == Kind::Inverse && r.kind == Kind::Inverse && in_zero(c, r.arrow, l.arrow)) return bad("inverse pair lies in Z");
  return true;
}

bool has_loop(const ClannishPresentation& c, int v) { return c.loop_at[v] >= 0; }

bool is_special(const Letter& l) { return l.kind == Kind::Special; }

std::string letter_str(const PathAlgebra& A, const Letter& l) {
  const std::string& n = A.quiver().arrows[l.arrow].name;
  switch (l.kind) {
    case Kind::Direct: return n;
    case Kind::Inverse: return n + "^-1";
    case Kind::Special: return n + "*";
  }
  return n;
}

size_t inverse_count(const Word& w) {
  return static_cast<size_t>(std::count_if(w.letters.begin(), w.letters.end(), [](const Letter& l) { return l.kind == Kind::Inverse; }));
}

Word rotate(const Word& w, size_t k) {
  Word r = w;
  std::rotate(r.letters.begin(), r.letters.begin() + static_cast<long>(k % w.length()), r.letters.end());
  return r;
}

bool primitive(const Word& w) {
  const size_t m = w.length();
  for (size_t p = 1; p < m; ++p)
    if (m % p == 0 && rotate(w, p) == w) return false;
  return true;
}

}  // namespace

Word inverse(const Word& w) {
  Word r;
  r.trivial_vertex = w.trivial_vertex;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(invert(*it));
  return r;
}

Word parse_word(const PathAlgebra& A, const std::string& text) {
  const auto& Q = A.quiver();
  std::istringstream is(text);
  std::string tok;
  Word w;
  std::vector<std::string> toks;
  while (is >> tok) toks.push_back(tok);
  if (toks.size() == 1 && toks[0].rfind("1_", 0) == 0) {
    int v = Q.vertex_index(toks[0].substr(2));
    if (v < 0) fail(ErrorKind::ParseError, "unknown vertex in " + toks[0]);
    w.trivial_vertex = v;
    return w;
  }
  if (toks.empty()) fail(ErrorKind::ParseError, "empty word");
  for (const auto& t : toks) {
    Letter l;
    std::string name = t;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      l.kind = Kind::Inverse;
      name = name.substr(0, name.size() - 3);
    } else if (name.size() > 1 && name.back() == '*') {
      l.kind = Kind::Special;
      name.pop_back();
    }
    int a = Q.arrow_index(name);
    if (a < 0) fail(ErrorKind::UnknownArrow, "no arrow named " + name);
    if (Q.arrows[a].special != (l.kind == Kind::Special))
      fail(ErrorKind::ParseError, "letter " + t + (Q.arrows[a].special ? " must be written with *" : " is not a special loop"));
    l.arrow = a;
    w.letters.push_back(l);
  }
  return w;
}

std::string word_str(const PathAlgebra& A, const Word& w) {
  if (w.letters.empty()) return "1_" + A.quiver().vertices[w.trivial_vertex].name;
  std::string s;
  for (size_t i = 0; i < w.letters.size(); ++i) s += (i ? " " : "") + letter_str(A, w.letters[i]);
  return s;
}

std::vector<int> word_points(const PathAlgebra& A, const Word& w) {
  const auto& Q = A.quiver();
  if (w.letters.empty()) return {w.trivial_vertex};
  std::vector<int> pts{start_vertex(Q, from_right(w, 1))};
  for (size_t i = 1; i <= w.length(); ++i) {
    int to;
    if (!step_letter(Q, from_right(w, i), pts.back(), to)) return {};
    pts.push_back(to);
  }
  return pts;
}

bool is_string(const ClannishPresentation& c, const Word& w, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (w.letters.empty()) {
    if (w.trivial_vertex < 0) return bad("trivial word without a vertex");
    if (has_loop(c, w.trivial_vertex)) return bad("trivial string at a vertex with a special loop");
    return true;
  }
  auto pts = word_points(c.A, w);
  if (pts.empty()) return bad("letters do not compose");
  const size_t m = w.length();
  for (size_t i = 1; i < m; ++i)
    if (!pair_ok(c, from_right(w, i + 1), from_right(w, i), why)) return false;
  for (size_t j = 0; j <= m; ++j) {
    if (!has_loop(c, pts[j])) continue;
    int s = 0;
    if (j >= 1 && is_special(from_right(w, j))) ++s;
    if (j + 1 <= m && is_special(from_right(w, j + 1))) ++s;
    if (s != 1) return bad("point " + std::to_string(j) + " at a special vertex is not adjacent to exactly one special letter");
  }
  return true;
}

bool is_band(const ClannishPresentation& c, const Word& w, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const size_t m = w.length();
  if (m == 0) return bad("empty band");
  auto pts = word_points(c.A, w);
  if (pts.empty() || pts.front() != pts.back()) return bad("letters do not close up");
  for (size_t i = 1; i <= m; ++i) {
    const Letter& r = from_right(w, i);
    const Letter& l = from_right(w, i == m ? 1 : i + 1);
    if (!pair_ok(c, l, r, why)) return false;
  }
  for (size_t j = 0; j < m; ++j) {
    if (!has_loop(c, pts[j])) continue;
    const Letter& right = from_right(w, j == 0 ? m : j);
    const Letter& left = from_right(w, j + 1);
    int s = (is_special(right) ? 1 : 0) + (is_special(left) ? 1 : 0);
    if (s != 1) return bad("band point at a special vertex is not adjacent to exactly one special letter");
  }
  if (!primitive(w)) return bad("band is a proper power");
  return true;
}

bool is_symmetric_string(const Word& w) { return !w.letters.empty() && inverse(w) == w; }

bool is_symmetric_band(const Word& w) {
  Word iw = inverse(w);
  for (size_t k = 0; k < w.length(); ++k)
    if (rotate(iw, k) == w) return true;
  return false;
}

std::string canonical_string_key(const PathAlgebra& A, const Word& w) {
  Word iw = inverse(w);
  auto key = [&](const Word& x) { return std::make_pair(inverse_count(x), word_str(A, x)); };
  return key(iw) < key(w) ? word_str(A, iw) : word_str(A, w);
}

namespace {

Word canonical_string(const PathAlgebra& A, const Word& w) {
  Word iw = inverse(w);
  auto key = [&](const Word& x) { return std::make_pair(inverse_count(x), word_str(A, x)); };
  return key(iw) < key(w) ? iw : w;
}

Word canonical_band(const PathAlgebra& A, const Word& w) {
  Word best = w;
  auto key = [&](const Word& x) { return std::make_pair(inverse_count(x), word_str(A, x)); };
  for (const Word& base : {w, inverse(w)})
    for (size_t k = 0; k < w.length(); ++k) {
      Word r = rotate(base, k);
      if (key(r) < key(best)) best = r;
    }
  return best;
}

// All words of exactly the given length whose letters compose and whose adjacent pairs are admissible.
void words_of_length(const ClannishPresentation& c, size_t len, const std::function<void(const Word&)>& emit) {
  const auto& Q = c.A.quiver();
  std::vector<Letter> alphabet;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    if (Q.arrows[a].special) {
      alphabet.push_back({Kind::Special, static_cast<int>(a)});
    } else {
      alphabet.push_back({Kind::Direct, static_cast<int>(a)});
      alphabet.push_back({Kind::Inverse, static_cast<int>(a)});
    }
  }
  // build right to left: rev[0] is the rightmost letter
  std::vector<Letter> rev;
  std::function<void(int)> rec = [&](int at) {
    if (rev.size() == len) {
      Word w;
      w.letters.assign(rev.rbegin(), rev.rend());
      emit(w);
      return;
    }
    for (const auto& l : alphabet) {
      int to;
      if (!rev.empty()) {
        if (!step_letter(Q, l, at, to)) continue;
        if (!pair_ok(c, l, rev.back(), nullptr)) continue;
        // a point at a special vertex sits between two letters; both special or both ordinary is excluded
        if (has_loop(c, at) && is_special(l) == is_special(rev.back())) continue;
      } else {
        if (!step_letter(Q, l, start_vertex(Q, l), to)) continue;
      }
      rev.push_back(l);
      rec(to);
      rev.pop_back();
    }
  };
  rec(-1);
}

}  // namespace

std::string canonical_band_key(const PathAlgebra& A, const Word& w) { return word_str(A, canonical_band(A, w)); }

std::vector<WordClass> enumerate_strings(const ClannishPresentation& c, size_t max_len) {
  std::vector<WordClass> out;
  const auto& Q = c.A.quiver();
  for (size_t v = 0; v < Q.vertices.size(); ++v)
    if (!has_loop(c, static_cast<int>(v))) {
      Word w;
      w.trivial_vertex = static_cast<int>(v);
      out.push_back({w, false});
    }
  std::set<std::string> seen;
  for (size_t len = 1; len <= max_len; ++len)
    words_of_length(c, len, [&](const Word& w) {
      if (!is_string(c, w)) return;
      Word cw = canonical_string(c.A, w);
      if (seen.insert(word_str(c.A, cw)).second) out.push_back({cw, is_symmetric_string(cw)});
    });
  return out;
}

std::vector<WordClass> enumerate_bands(const ClannishPresentation& c, size_t max_period) {
  std::vector<WordClass> out;
  std::set<std::string> seen;
  for (size_t len = 1; len <= max_period; ++len)
    words_of_length(c, len, [&](const Word& w) {
      if (!is_band(c, w)) return;
      Word cw = canonical_band(c.A, w);
      if (seen.insert(word_str(c.A, cw)).second) out.push_back({cw, is_symmetric_band(cw)});
    });
  return out;
}

// ---------- modules ----------

namespace {

Scalar zero_of(uint32_t p) { return Scalar(0).in_field(p); }

// sigma = rho^gexp on K^n at vertex k, in the basis y^j of each copy of K.
Matrix sigma_matrix(const PathAlgebra& A, int k, int gexp, size_t n) {
  const int w = A.weight(k), st = A.step(k);
  Matrix S(n * w, n * w, A.p());
  for (size_t b = 0; b < n; ++b)
    for (int j = 0; j < w; ++j) S.at(b * w + j, b * w + j) = A.datum().zeta_pow(static_cast<long long>(gexp) * st * j);
  return S;
}

Matrix k_action(const PathAlgebra& A, int k, size_t n) {
  const int w = A.weight(k);
  Matrix C = field_companion(A, k);
  Matrix G(n * w, n * w, A.p());
  for (size_t b = 0; b < n; ++b) G.set_block(b * w, b * w, C);
  return G;
}

const SpecialQuadratic& quadratic_of(const ClannishPresentation& c, int loop) {
  for (const auto& q : c.rel.quadratics)
    if (q.loop == loop) return q;
  fail(ErrorKind::UnknownArrow, "special loop without a quadratic");
}

// mu as a K-linear operator on K^n.
Matrix mu_matrix(const ClannishPresentation& c, int loop, size_t n) {
  const auto& A = c.A;
  const auto& q = quadratic_of(c, loop);
  const int k = A.quiver().arrows[loop].head;
  Matrix G = k_action(A, k, n);
  if (q.exp % A.step(k) != 0) fail(ErrorKind::LevelMismatch, "quadratic constant outside the vertex field");
  return G.pow(static_cast<unsigned>(q.exp / A.step(k))).scaled(q.coef);
}

struct Builder {
  const ClannishPresentation& c;
  std::vector<int> pts;    // vertex per point
  std::vector<size_t> pos; // block position inside its vertex space
  size_t n = 1;
  Representation M;

  Builder(const ClannishPresentation& cc, std::vector<int> points, size_t nn) : c(cc), pts(std::move(points)), n(nn) {
    const auto& A = c.A;
    const auto& Q = A.quiver();
    std::vector<size_t> count(Q.vertices.size(), 0);
    for (int v : pts) pos.push_back(count[v]++);
    for (size_t v = 0; v < Q.vertices.size(); ++v) {
      const size_t dim = count[v] * n * A.weight(static_cast<int>(v));
      M.dims.push_back(dim);
      M.field.push_back(k_action(A, static_cast<int>(v), count[v] * n));
    }
    for (const auto& ar : Q.arrows) M.arrows.emplace_back(M.dims[ar.head], M.dims[ar.tail], A.p());
  }
  size_t block(size_t point) const { return pos[point] * n * c.A.weight(pts[point]); }
  // Adds op to arrow a as a map from point `from` to point `to`.
  void put(int a, size_t to, size_t from, const Matrix& op) {
    Matrix& X = M.arrows[a];
    const size_t r0 = block(to), c0 = block(from);
    for (size_t i = 0; i < op.rows(); ++i)
      for (size_t j = 0; j < op.cols(); ++j) X.at(r0 + i, c0 + j) += op.at(i, j);
  }
  void letter(const Letter& l, size_t right, size_t left) {
    const auto& A = c.A;
    const auto& ar = A.quiver().arrows[l.arrow];
    Matrix S = sigma_matrix(A, ar.head, ar.gexp, n);
    switch (l.kind) {
      case Kind::Direct: put(l.arrow, left, right, S); break;
      case Kind::Inverse: put(l.arrow, right, left, S); break;
      case Kind::Special:
        put(l.arrow, left, right, S);
        put(l.arrow, right, left, mu_matrix(c, l.arrow, n) * S);
        break;
    }
  }
  void centre(int loop, size_t point, const Matrix& Aop) {
    const auto& ar = c.A.quiver().arrows[loop];
    put(loop, point, point, Aop * sigma_matrix(c.A, ar.head, ar.gexp, n));
  }
};

void check_param(const ClannishPresentation& c, int loop, const LoopParam& P) {
  const auto& A = c.A;
  const auto& ar = A.quiver().arrows[loop];
  const int k = ar.head;
  const size_t N = P.n * A.weight(k);
  if (P.A.rows() != N || P.A.cols() != N) fail(ErrorKind::QuadraticUnsatisfied, "loop parameter has the wrong size");
  Matrix G = k_action(A, k, P.n);
  if (P.A * G != G * P.A) fail(ErrorKind::QuadraticUnsatisfied, "loop parameter is not K-linear");
  Matrix X = P.A * sigma_matrix(A, k, ar.gexp, P.n);
  if (X * X != mu_matrix(c, loop, P.n)) fail(ErrorKind::QuadraticUnsatisfied, "loop parameter does not satisfy its quadratic");
}

Representation checked(const ClannishPresentation& c, Representation M) {
  std::vector<Element> rel = c.zero_paths();
  for (size_t k = 0; k < c.loop_at.size(); ++k)
    if (c.loop_at[k] >= 0) rel.push_back(c.quadratic(static_cast<int>(k)));
  auto errs = validate(c.A, M, rel);
  if (!errs.empty()) fail(ErrorKind::ValidationFailed, errs.front());
  return M;
}

}  // namespace

std::vector<LoopParam> loop_params(const ClannishPresentation& c, int loop) {
  const auto& A = c.A;
  const uint32_t p = A.p();
  const auto& ar = A.quiver().arrows[loop];
  const int k = ar.head;
  const int w = A.weight(k);
  Matrix S = sigma_matrix(A, k, ar.gexp, 1);
  Matrix mu = mu_matrix(c, loop, 1);
  Matrix G = k_action(A, k, 1);
  auto element = [&](const std::vector<Scalar>& co) {
    Matrix L(w, w, p);
    for (int j = 0; j < w; ++j)
      if (!co[j].is_zero()) L = L + G.pow(static_cast<unsigned>(j)).scaled(co[j]);
    return L;
  };
  std::vector<LoopParam> out;
  // lambda in K with lambda sigma(lambda) = mu gives a one-dimensional module
  if (p) {
    std::vector<Scalar> co(w, zero_of(p));
    std::vector<long long> idx(w, 0);
    while (true) {
      for (int j = 0; j < w; ++j) co[j] = Scalar::mod(p, idx[j]);
      Matrix L = element(co);
      if ((L * S) * (L * S) == mu) out.push_back({1, L});
      int j = 0;
      while (j < w && ++idx[j] == static_cast<long long>(p)) idx[j++] = 0;
      if (j == w) break;
    }
  } else {
    for (long long a : {1LL, -1LL}) {
      std::vector<Scalar> co(w, Scalar(0));
      co[0] = Scalar(a);
      Matrix L = element(co);
      if ((L * S) * (L * S) == mu) out.push_back({1, L});
    }
  }
  if (!out.empty()) {
    // x = lambda sigma and x = -lambda sigma are isomorphic when sigma is nontrivial
    if (ar.gexp != 0 && w > 1) out.resize(1);
    else if (out.size() > 2) out.resize(2);
    return out;
  }
  if (ar.gexp != 0 && w > 1) fail(ErrorKind::QuadraticUnsatisfied, "no norm solution for the loop quadratic");
  // K[x]/(x^2 - mu) is a field: the module is K^2 with the companion matrix
  Matrix Am(2 * w, 2 * w, p);
  Am.set_block(0, w, mu);
  Am.set_block(w, 0, Matrix::identity(w, p));
  out.push_back({2, Am});
  return out;
}

Representation string_module(const ClannishPresentation& c, const Word& w) {
  if (is_symmetric_string(w)) {
    const size_t h = (w.length() - 1) / 2;
    const Letter& mid = from_right(w, h + 1);
    return string_module(c, w, loop_params(c, mid.arrow).front());
  }
  return string_module(c, w, LoopParam{});
}

Representation string_module(const ClannishPresentation& c, const Word& w, const LoopParam& centre) {
  std::string why;
  if (!is_string(c, w, &why)) fail(ErrorKind::ValidationFailed, "not a string: " + why);
  auto pts = word_points(c.A, w);
  if (!is_symmetric_string(w)) {
    Builder B(c, pts, 1);
    for (size_t i = 1; i <= w.length(); ++i) B.letter(from_right(w, i), i - 1, i);
    return checked(c, B.M);
  }
  const size_t h = (w.length() - 1) / 2;
  const Letter& mid = from_right(w, h + 1);
  if (mid.kind != Kind::Special) fail(ErrorKind::ValidationFailed, "symmetric string without a special centre");
  check_param(c, mid.arrow, centre);
  std::vector<int> half(pts.begin(), pts.begin() + static_cast<long>(h + 1));
  Builder B(c, half, centre.n);
  for (size_t i = 1; i <= h; ++i) B.letter(from_right(w, i), i - 1, i);
  B.centre(mid.arrow, h, centre.A);
  return checked(c, B.M);
}

namespace {

// Rotation or inversion of a symmetric band written as s_a* u s_b* u^-1.
bool band_shape(const Word& w, Word& shaped, size_t& h) {
  const size_t m = w.length();
  if (m < 4 || m % 2) return false;
  h = (m - 2) / 2;
  for (const Word& base : {w, inverse(w)})
    for (size_t k = 0; k < m; ++k) {
      Word r = rotate(base, k);
      if (r.letters[0].kind != Kind::Special || r.letters[h + 1].kind != Kind::Special) continue;
      bool ok = true;
      for (size_t i = 0; i < h && ok; ++i) ok = r.letters[h + 2 + i] == invert(r.letters[h - i]);
      if (ok) {
        shaped = r;
        return true;
      }
    }
  return false;
}

}  // namespace

std::pair<int, int> band_loops(const ClannishPresentation& c, const Word& w) {
  Word r;
  size_t h;
  if (!is_band(c, w) || !band_shape(w, r, h)) fail(ErrorKind::ValidationFailed, "not a symmetric band");
  return {r.letters[0].arrow, r.letters[h + 1].arrow};
}

Representation band_module(const ClannishPresentation& c, const Word& w, const LoopParam& at_a, const LoopParam& at_b) {
  Word r;
  size_t h;
  std::string why;
  if (!is_band(c, w, &why)) fail(ErrorKind::ValidationFailed, "not a band: " + why);
  if (!band_shape(w, r, h)) fail(ErrorKind::ValidationFailed, "only symmetric bands s_a* u s_b* u^-1 are supported");
  const int sa = r.letters[0].arrow, sb = r.letters[h + 1].arrow;
  check_param(c, sa, at_a);
  check_param(c, sb, at_b);
  if (at_a.n * c.A.weight(c.A.quiver().arrows[sa].head) == 0 || at_a.n != at_b.n)
    fail(ErrorKind::QuadraticUnsatisfied, "band parameters must act on spaces of equal K-dimension");
  Word u;
  u.letters.assign(r.letters.begin() + 1, r.letters.begin() + static_cast<long>(h + 1));
  auto pts = word_points(c.A, u);
  if (pts.empty()) fail(ErrorKind::ValidationFailed, "band half-word does not compose");
  Builder B(c, pts, at_a.n);
  for (size_t i = 1; i <= h; ++i) B.letter(from_right(u, i), i - 1, i);
  B.centre(sb, 0, at_b.A);
  B.centre(sa, h, at_a.A);
  return checked(c, B.M);
}

size_t family_index(const Word& w) {
  size_t k = 0;
  for (const auto& l : w.letters) k += l.kind == Letter::Kind::Special ? 1 : 0;
  return k == 0 ? 0 : (k - 1) / 2;
}

std::vector<WordClass> enumerate_families(const ClannishPresentation& c, size_t n) {
  std::vector<WordClass> out;
  for (auto& w : enumerate_strings(c, 4 * n + 5))
    if (family_index(w.word) <= n) out.push_back(std::move(w));
  return out;
}

}  // namespace jc
