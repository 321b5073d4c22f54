#include "jacclan/pathalg.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace jc {

int Quiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].name == name) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

int Quiver::add_vertex(const std::string& name, int weight) {
  vertices.push_back({name, weight});
  return static_cast<int>(vertices.size()) - 1;
}

int Quiver::add_arrow(const std::string& name, int tail, int head, int gexp, bool special) {
  arrows.push_back({name, tail, head, special, gexp});
  return static_cast<int>(arrows.size()) - 1;
}

bool Path::operator<(const Path& o) const {
  if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
  if (head != o.head) return head < o.head;
  if (tail != o.tail) return tail < o.tail;
  if (arrows != o.arrows) return arrows < o.arrows;
  return exps < o.exps;
}

bool Path::operator==(const Path& o) const {
  return head == o.head && tail == o.tail && arrows == o.arrows && exps == o.exps;
}

Grade grade_of(const Path& p) { return {p.head, p.tail, p.length()}; }

void add_term(Element& x, const Path& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = x.find(p);
  if (it == x.end()) {
    x.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) x.erase(it);
}

Element add(const Element& x, const Element& y) {
  Element r = x;
  for (const auto& [p, c] : y) add_term(r, p, c);
  return r;
}

Element sub(const Element& x, const Element& y) {
  Element r = x;
  for (const auto& [p, c] : y) add_term(r, p, -c);
  return r;
}

Element scale(const Element& x, const Scalar& c) {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [p, v] : x) add_term(r, p, v * c);
  return r;
}

bool is_zero(const Element& x) { return x.empty(); }

PathAlgebra::PathAlgebra(DatumPtr datum, Quiver q) : datum_(std::move(datum)), q_(std::move(q)) {
  for (const auto& v : q_.vertices)
    if (!datum_->is_subfield_degree(v.weight))
      fail(ErrorKind::LatticeViolation, "vertex weight " + std::to_string(v.weight) + " does not divide the datum degree");
  for (const auto& a : q_.arrows) {
    if (a.tail < 0 || a.head < 0 || a.tail >= static_cast<int>(q_.vertices.size()) || a.head >= static_cast<int>(q_.vertices.size()))
      fail(ErrorKind::UnknownArrow, "arrow " + a.name + " has an unknown endpoint");
    if (a.special && a.tail != a.head) fail(ErrorKind::ClannishConditionViolation, "special arrow " + a.name + " is not a loop");
  }
}

int PathAlgebra::arrow_weight(int a) const {
  const auto& ar = q_.arrows[a];
  return std::gcd(weight(ar.head), weight(ar.tail));
}

void PathAlgebra::check_slot(int v, int e) const {
  if (((e % step(v)) + step(v)) % step(v) != 0)
    fail(ErrorKind::LevelMismatch, "decoration v^" + std::to_string(e) + " does not lie in the field at vertex " + q_.vertices[v].name);
}

Element PathAlgebra::normalize(int head, int tail, std::vector<int> arrows, std::vector<int> exps, Scalar coef) const {
  const int d = degree();
  const size_t n = arrows.size();
  if (exps.size() != n + 1) fail(ErrorKind::NotComposable, "decoration count does not match path length");
  if (n == 0 && head != tail) fail(ErrorKind::NotComposable, "trivial path with distinct ends");
  if (n > 0) {
    if (q_.arrows[arrows[0]].head != head || q_.arrows[arrows[n - 1]].tail != tail)
      fail(ErrorKind::NotComposable, "path ends do not match its arrows");
    for (size_t r = 0; r + 1 < n; ++r)
      if (q_.arrows[arrows[r + 1]].head != q_.arrows[arrows[r]].tail)
        fail(ErrorKind::NotComposable, "arrows " + q_.arrows[arrows[r]].name + " and " + q_.arrows[arrows[r + 1]].name + " do not compose");
  }
  check_slot(head, exps[0]);
  for (size_t r = 1; r <= n; ++r) check_slot(q_.arrows[arrows[r - 1]].tail, exps[r]);
  coef = coef.in_field(p());
  auto fold = [&](int& e) {
    int q = e >= 0 ? e / d : -((-e + d - 1) / d);
    e -= q * d;
    if (q != 0) coef = coef * datum_->c.pow(q);
  };
  for (size_t r = n; r >= 1; --r) {
    fold(exps[r]);
    const int a = arrows[r - 1];
    const int s = d / arrow_weight(a);
    const int big = (exps[r] / s) * s;
    exps[r] -= big;
    if (big > 0) {
      coef = coef * datum_->zeta_pow(static_cast<long long>(q_.arrows[a].gexp) * big);
      exps[r - 1] += big;
    }
  }
  fold(exps[0]);
  Element out;
  Path pth{head, tail, std::move(arrows), std::move(exps)};
  add_term(out, pth, coef);
  return out;
}

Element PathAlgebra::normalize(const Path& raw, const Scalar& coef) const {
  return normalize(raw.head, raw.tail, raw.arrows, raw.exps, coef);
}

Element PathAlgebra::mul(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [P, a] : x)
    for (const auto& [Q, b] : y) {
      if (P.tail != Q.head) continue;
      std::vector<int> arrows = P.arrows;
      arrows.insert(arrows.end(), Q.arrows.begin(), Q.arrows.end());
      std::vector<int> exps(P.exps.begin(), P.exps.end() - 1);
      exps.push_back(P.exps.back() + Q.exps.front());
      exps.insert(exps.end(), Q.exps.begin() + 1, Q.exps.end());
      Element t = normalize(P.head, Q.tail, std::move(arrows), std::move(exps), a * b);
      for (const auto& [R, c] : t) add_term(out, R, c);
    }
  return out;
}

Element PathAlgebra::e(int v, int exp) const { return normalize(v, v, {}, {exp}, F(1)); }

Element PathAlgebra::arrow(int a) const {
  const auto& ar = q_.arrows[a];
  return normalize(ar.head, ar.tail, {a}, {0, 0}, F(1));
}

Element PathAlgebra::arrow(const std::string& name) const {
  int a = q_.arrow_index(name);
  if (a < 0) fail(ErrorKind::UnknownArrow, "no arrow named " + name);
  return arrow(a);
}

Element PathAlgebra::conj(const Element& x, int l, int r) const {
  Element out;
  for (const auto& [P, c] : x) {
    std::vector<int> exps = P.exps;
    exps.front() += l;
    exps.back() += r;
    Element t = normalize(P.head, P.tail, P.arrows, std::move(exps), c);
    for (const auto& [R, k] : t) add_term(out, R, k);
  }
  return out;
}

Grade PathAlgebra::grade(const Element& x) const {
  if (x.empty()) fail(ErrorKind::GradeMismatch, "zero element has no grade");
  Grade g = grade_of(x.begin()->first);
  for (const auto& [P, c] : x)
    if (!(grade_of(P) == g)) fail(ErrorKind::GradeMismatch, "element is not homogeneous");
  return g;
}

Element PathAlgebra::semilinear_part(const Element& x, int rho_exp) const {
  if (x.empty()) return x;
  Grade g = grade(x);
  const int dij = std::gcd(weight(g.head), weight(g.tail));
  if (p() && dij % static_cast<int>(p()) == 0) fail(ErrorKind::CharacteristicClash, "characteristic divides the projector normalization");
  const int s = degree() / dij;
  Element out;
  for (int k = 0; k < dij; ++k) {
    Scalar f = datum_->zeta_pow(-static_cast<long long>(rho_exp) * k * s);
    out = add(out, scale(conj(x, -k * s, k * s), f));
  }
  return scale(out, F(dij).inv());
}

Element PathAlgebra::naive_derivative(const Element& w, int a) const {
  if (a < 0 || a >= static_cast<int>(q_.arrows.size())) fail(ErrorKind::UnknownArrow, "arrow index out of range");
  Element out;
  for (const auto& [P, c] : w) {
    const size_t n = P.length();
    if (P.head != P.tail) fail(ErrorKind::GradeMismatch, "potential term is not cyclic");
    for (size_t r = 1; r <= n; ++r) {
      if (P.arrows[r - 1] != a) continue;
      std::vector<int> arrows;
      std::vector<int> exps;
      for (size_t k = r + 1; k <= n; ++k) arrows.push_back(P.arrows[k - 1]);
      for (size_t k = 1; k < r; ++k) arrows.push_back(P.arrows[k - 1]);
      for (size_t k = r; k < n; ++k) exps.push_back(P.exps[k]);
      exps.push_back(P.exps[n] + P.exps[0]);
      for (size_t k = 1; k < r; ++k) exps.push_back(P.exps[k]);
      const auto& ar = q_.arrows[a];
      Element t = normalize(ar.tail, ar.head, std::move(arrows), std::move(exps), c);
      out = add(out, t);
    }
  }
  return out;
}

Element PathAlgebra::cyclic_derivative(const Element& w, int a) const {
  Element naive = naive_derivative(w, a);
  const int da = arrow_weight(a);
  if (p() && da % static_cast<int>(p()) == 0) fail(ErrorKind::CharacteristicClash, "characteristic divides d_a");
  const int s = degree() / da;
  const long long n = q_.arrows[a].gexp;
  Element out;
  for (int m = 0; m < da; ++m) {
    Scalar f = datum_->zeta_pow(n * m * s);
    out = add(out, scale(conj(naive, -m * s, m * s), f));
  }
  return scale(out, F(da).inv());
}

std::vector<Path> PathAlgebra::layer(size_t len) const {
  std::vector<Path> out;
  const int d = degree();
  if (len == 0) {
    for (size_t v = 0; v < q_.vertices.size(); ++v)
      for (int e = 0; e < d; e += step(static_cast<int>(v))) out.push_back({static_cast<int>(v), static_cast<int>(v), {}, {e}});
    return out;
  }
  std::vector<std::vector<int>> seqs;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == len) {
      seqs.push_back(cur);
      return;
    }
    for (size_t a = 0; a < q_.arrows.size(); ++a) {
      if (!cur.empty() && q_.arrows[a].head != q_.arrows[cur.back()].tail) continue;
      cur.push_back(static_cast<int>(a));
      rec();
      cur.pop_back();
    }
  };
  rec();
  for (const auto& sq : seqs) {
    const int head = q_.arrows[sq.front()].head, tail = q_.arrows[sq.back()].tail;
    std::vector<int> exps(len + 1, 0);
    std::function<void(size_t)> fill = [&](size_t slot) {
      if (slot > len) {
        out.push_back({head, tail, sq, exps});
        return;
      }
      int st, lim;
      if (slot == 0) {
        st = step(head);
        lim = d;
      } else {
        st = step(q_.arrows[sq[slot - 1]].tail);
        lim = d / arrow_weight(sq[slot - 1]);
      }
      for (int e = 0; e < lim; e += st) {
        exps[slot] = e;
        fill(slot + 1);
      }
    };
    fill(0);
  }
  return out;
}

std::vector<Path> PathAlgebra::grade_basis(const Grade& g) const {
  std::vector<Path> out;
  for (auto& p : layer(g.length))
    if (p.head == g.head && p.tail == g.tail) out.push_back(std::move(p));
  return out;
}

size_t PathAlgebra::sequence_dim(const std::vector<int>& arrows) const {
  if (arrows.empty()) return 0;
  size_t dim = weight(q_.arrows[arrows.front()].head);
  for (int a : arrows) dim *= weight(q_.arrows[a].tail) / arrow_weight(a);
  return dim;
}

std::string PathAlgebra::dec_str(int e) const {
  const int d = degree();
  if (e == 0) return "";
  if (d == 4) {
    if (e == 1) return "v";
    if (e == 2) return "u";
    return "v^" + std::to_string(e);
  }
  if (d == 2 && e == 1) return "u";
  return "v^" + std::to_string(e);
}

std::string PathAlgebra::path_str(const Path& P) const {
  std::vector<std::string> toks;
  if (P.length() == 0) {
    if (P.exps[0]) toks.push_back(dec_str(P.exps[0]));
    toks.push_back("e" + q_.vertices[P.head].name);
  } else {
    if (P.exps[0]) toks.push_back(dec_str(P.exps[0]));
    for (size_t r = 1; r <= P.length(); ++r) {
      toks.push_back(q_.arrows[P.arrows[r - 1]].name);
      if (P.exps[r]) toks.push_back(dec_str(P.exps[r]));
    }
  }
  std::string s;
  for (size_t i = 0; i < toks.size(); ++i) s += (i ? "." : "") + toks[i];
  return s;
}

std::string PathAlgebra::str(const Element& x) const {
  if (x.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [P, c] : x) {
    Scalar k = c;
    bool neg = false;
    if (p() == 0 && c.to_mpq() < 0) {
      neg = true;
      k = -c;
    }
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (!k.is_one()) s += k.str() + "*";
    s += path_str(P);
  }
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Element PathAlgebra::parse(const std::string& text) const {
  std::istringstream is(text);
  std::vector<std::string> words;
  std::string w;
  while (is >> w) words.push_back(w);
  if (words.empty()) fail(ErrorKind::ParseError, "empty element");
  if (words.size() == 1 && words[0] == "0") return {};
  Element out;
  int sign = 1;
  bool expect_term = true;
  const int d = degree();
  auto parse_dec = [&](const std::string& tok, int& exp) -> bool {
    if (tok.empty() || (tok[0] != 'u' && tok[0] != 'v')) return false;
    int base;
    if (tok[0] == 'u') {
      if (d < 2) fail(ErrorKind::LevelMismatch, "u is not defined for a degree-1 datum");
      base = d / 2;
    } else {
      base = 1;
    }
    if (tok.size() == 1) {
      exp = base;
      return true;
    }
    if (tok[1] != '^') return false;
    try {
      size_t pos;
      int k = std::stoi(tok.substr(2), &pos);
      if (pos + 2 != tok.size()) return false;
      exp = base * k;
      return true;
    } catch (...) {
      return false;
    }
  };
  for (const auto& word : words) {
    if (word == "+" || word == "-") {
      if (expect_term && word == "-") sign = -sign;
      else if (!expect_term) {
        sign = word == "-" ? -1 : 1;
        expect_term = true;
      }
      continue;
    }
    if (!expect_term) fail(ErrorKind::ParseError, "missing operator before '" + word + "'");
    expect_term = false;
    std::string body = word;
    Scalar coef = F(sign);
    sign = 1;
    if (!body.empty() && body[0] == '-') {
      coef = -coef;
      body = body.substr(1);
    }
    size_t star = body.find('*');
    size_t dot = body.find('.');
    if (star != std::string::npos && (dot == std::string::npos || star < dot)) {
      coef = coef * Scalar::parse(body.substr(0, star), p());
      body = body.substr(star + 1);
    }
    std::vector<int> arrows;
    std::vector<int> exps{0};
    int vertex_hint = -1;
    bool zero = false;
    for (const auto& tok : split(body, '.')) {
      if (tok.empty()) fail(ErrorKind::ParseError, "empty token in '" + word + "'");
      int ex;
      if (parse_dec(tok, ex)) {
        exps.back() += ex;
        continue;
      }
      int a = q_.arrow_index(tok);
      if (a >= 0) {
        if (!arrows.empty() && q_.arrows[arrows.back()].tail != q_.arrows[a].head)
          fail(ErrorKind::NotComposable, "arrows do not compose in '" + word + "'");
        if (arrows.empty() && vertex_hint >= 0 && vertex_hint != q_.arrows[a].head) zero = true;
        arrows.push_back(a);
        exps.push_back(0);
        vertex_hint = q_.arrows[a].tail;
        continue;
      }
      if (tok[0] == 'e') {
        int v = q_.vertex_index(tok.substr(1));
        if (v >= 0) {
          if (vertex_hint >= 0 && vertex_hint != v) zero = true;
          vertex_hint = v;
          continue;
        }
      }
      fail(ErrorKind::UnknownArrow, "unknown token '" + tok + "'");
    }
    if (zero) continue;
    int head, tail;
    if (arrows.empty()) {
      if (vertex_hint < 0) fail(ErrorKind::ParseError, "trivial path without vertex in '" + word + "'");
      head = tail = vertex_hint;
    } else {
      head = q_.arrows[arrows.front()].head;
      tail = q_.arrows[arrows.back()].tail;
    }
    out = add(out, normalize(head, tail, arrows, exps, coef));
  }
  if (expect_term) fail(ErrorKind::ParseError, "dangling operator");
  return out;
}

}  // namespace jc
