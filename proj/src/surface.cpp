#include "jacclan/surface.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace jc {

using json = nlohmann::json;

int Triangulation::arc_index(const std::string& id) const {
  for (size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].id == id) return static_cast<int>(i);
  return -1;
}

bool Triangulation::is_boundary(const std::string& id) const {
  return std::find(boundary.begin(), boundary.end(), id) != boundary.end();
}

void Triangulation::set_weights(const std::vector<int>& w) {
  size_t j = 0;
  for (auto& a : arcs)
    if (a.pending) {
      if (j >= w.size()) fail(ErrorKind::ParseError, "too few weights for the pending arcs");
      a.weight = w[j++];
    }
  if (j != w.size()) fail(ErrorKind::ParseError, "too many weights for the pending arcs");
  validate();
}

void Triangulation::validate() {
  if (arcs.empty()) fail(ErrorKind::ExcludedSurface, "triangulation has no arcs");
  if (triangles.empty()) fail(ErrorKind::ExcludedSurface, "triangulation has no triangles");
  std::set<std::string> ids;
  for (const auto& a : arcs) {
    if (a.id.empty() || a.id == "u" || a.id == "v" || a.id.find_first_of(" .*^") != std::string::npos)
      fail(ErrorKind::ParseError, "invalid arc id '" + a.id + "'");
    if (!ids.insert(a.id).second) fail(ErrorKind::EdgeIncidenceViolation, "duplicate arc id " + a.id);
    if (a.pending && a.weight != 1 && a.weight != 4)
      fail(ErrorKind::ParseError, "pending arc " + a.id + " needs weight 1 or 4");
  }
  for (const auto& b : boundary)
    if (!ids.insert(b).second) fail(ErrorKind::EdgeIncidenceViolation, "duplicate edge id " + b);
  std::map<std::string, int> count;
  size_t pending_total = 0;
  for (const auto& a : arcs) pending_total += a.pending;
  for (auto& t : triangles) {
    int pend = 0;
    bool interior = true;
    for (int i = 0; i < 3; ++i) {
      const auto& e = t.edges[i];
      for (int j = 0; j < i; ++j)
        if (t.edges[j] == e) fail(ErrorKind::EdgeIncidenceViolation, "edge " + e + " repeated in one triangle");
      int ai = arc_index(e);
      if (ai < 0 && !is_boundary(e)) fail(ErrorKind::EdgeIncidenceViolation, "unknown edge " + e);
      if (ai < 0) interior = false;
      if (ai >= 0 && arcs[ai].pending) ++pend;
      ++count[e];
    }
    if (pend > 2) fail(ErrorKind::ThreeOrbifoldTriangle, "triangle with three pending arcs");
    t.interior = interior;
  }
  for (const auto& a : arcs) {
    int c = count[a.id];
    if (a.pending && c > 1) fail(ErrorKind::PendingArcInTwoTriangles, "pending arc " + a.id + " lies in " + std::to_string(c) + " triangles");
    if (c < 1 || c > 2) fail(ErrorKind::EdgeIncidenceViolation, "arc " + a.id + " lies in " + std::to_string(c) + " triangles");
  }
  for (const auto& b : boundary)
    if (count[b] != 1) fail(ErrorKind::EdgeIncidenceViolation, "boundary segment " + b + " lies in " + std::to_string(count[b]) + " triangles");
  if (boundary.empty() && pending_total < 4 && arcs.size() + 3 == 2 * pending_total)
    fail(ErrorKind::ExcludedSurface, "once-punctured sphere with fewer than four orbifold points");
}

Triangulation parse_triangulation(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  Triangulation t;
  try {
    for (const auto& a : j.at("arcs")) {
      Arc arc;
      if (a.is_string()) {
        arc.id = a.get<std::string>();
      } else {
        arc.id = a.at("id").get<std::string>();
        arc.pending = a.value("pending", false);
        arc.weight = a.value("weight", arc.pending ? 1 : 0);
      }
      t.arcs.push_back(arc);
    }
    if (j.contains("boundary"))
      for (const auto& b : j.at("boundary")) t.boundary.push_back(b.get<std::string>());
    for (const auto& tr : j.at("triangles")) {
      Triangle T;
      const json& e = tr.is_array() ? tr : tr.at("edges");
      if (e.size() != 3) fail(ErrorKind::EdgeIncidenceViolation, "triangle needs three edges");
      for (int i = 0; i < 3; ++i) T.edges[i] = e[i].get<std::string>();
      t.triangles.push_back(T);
      if (tr.is_object() && tr.contains("interior")) t.triangles.back().interior = tr.at("interior").get<bool>();
    }
    if (j.contains("cocycle"))
      for (auto it = j.at("cocycle").begin(); it != j.at("cocycle").end(); ++it) t.cocycle[it.key()] = it.value().get<int>() & 1;
    std::string mode = j.value("mode", std::string("arbitrary"));
    if (mode == "arbitrary") t.mode = SurfaceMode::Arbitrary;
    else if (mode == "constant4" || mode == "constant") t.mode = SurfaceMode::Constant;
    else fail(ErrorKind::ParseError, "unknown mode " + mode);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed triangulation: ") + e.what());
  }
  std::vector<bool> declared;
  for (const auto& T : t.triangles) declared.push_back(T.interior);
  std::vector<bool> has_flag;
  for (const auto& tr : j.at("triangles")) has_flag.push_back(tr.is_object() && tr.contains("interior"));
  t.validate();
  for (size_t i = 0; i < t.triangles.size(); ++i)
    if (has_flag[i] && declared[i] != t.triangles[i].interior)
      fail(ErrorKind::EdgeIncidenceViolation, "interior flag of triangle " + std::to_string(i) + " contradicts its edges");
  std::set<std::string> names;
  for (const auto& b : quiver_bar(t)) names.insert(b.name);
  for (const auto& [k, v] : t.cocycle)
    if (!names.count(k)) fail(ErrorKind::ParseError, "cocycle refers to unknown arrow " + k);
  return t;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

std::string triangulation_json(const Triangulation& t) {
  json j;
  j["arcs"] = json::array();
  for (const auto& a : t.arcs) {
    json x{{"id", a.id}, {"pending", a.pending}};
    if (a.pending) x["weight"] = a.weight;
    j["arcs"].push_back(x);
  }
  j["boundary"] = t.boundary;
  j["triangles"] = json::array();
  for (const auto& T : t.triangles) j["triangles"].push_back({{"edges", T.edges}, {"interior", T.interior}});
  j["cocycle"] = t.cocycle;
  j["mode"] = t.mode == SurfaceMode::Arbitrary ? "arbitrary" : "constant4";
  return j.dump(2);
}

std::vector<BarArrow> quiver_bar(const Triangulation& t) {
  std::vector<BarArrow> out;
  std::map<std::string, int> seen;
  for (size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& T = t.triangles[ti];
    for (int i = 0; i < 3; ++i) {
      int x = t.arc_index(T.edges[i]), y = t.arc_index(T.edges[(i + 1) % 3]);
      if (x < 0 || y < 0) continue;
      std::string name = t.arcs[x].id + "->" + t.arcs[y].id;
      int n = ++seen[name];
      if (n > 1) name += "#" + std::to_string(n);
      out.push_back({name, x, y, static_cast<int>(ti)});
    }
  }
  return out;
}

ChainComplex chain_complex(const Triangulation& t) {
  auto bar = quiver_bar(t);
  ChainComplex cc;
  for (size_t i = 0; i < t.triangles.size(); ++i)
    if (t.triangles[i].interior) cc.interior.push_back(static_cast<int>(i));
  cc.d1 = Matrix(t.arcs.size(), bar.size(), 2);
  for (size_t a = 0; a < bar.size(); ++a) {
    cc.d1.at(bar[a].head, a) += Scalar::mod(2, 1);
    cc.d1.at(bar[a].tail, a) += Scalar::mod(2, 1);
  }
  cc.d2 = Matrix(bar.size(), cc.interior.size(), 2);
  for (size_t k = 0; k < cc.interior.size(); ++k)
    for (size_t a = 0; a < bar.size(); ++a)
      if (bar[a].triangle == cc.interior[k]) cc.d2.at(a, k) = Scalar::mod(2, 1);
  return cc;
}

std::vector<int> cocycle_vector(const Triangulation& t, const std::map<std::string, int>& xi) {
  auto bar = quiver_bar(t);
  std::vector<int> v(bar.size(), 0);
  std::set<std::string> used;
  for (size_t a = 0; a < bar.size(); ++a) {
    auto it = xi.find(bar[a].name);
    if (it != xi.end()) {
      v[a] = it->second & 1;
      used.insert(it->first);
    }
  }
  for (const auto& [k, val] : xi)
    if (!used.count(k)) fail(ErrorKind::ParseError, "cocycle refers to unknown arrow " + k);
  return v;
}

namespace {

Matrix column(const std::vector<int>& v) {
  Matrix m(v.size(), 1, 2);
  for (size_t i = 0; i < v.size(); ++i) m.at(i, 0) = Scalar::mod(2, v[i]);
  return m;
}

}  // namespace

bool is_cocycle(const Triangulation& t, const std::vector<int>& xi) {
  auto cc = chain_complex(t);
  return (cc.d2.transpose() * column(xi)).is_zero();
}

Matrix cocycle_basis(const Triangulation& t) {
  auto cc = chain_complex(t);
  return cc.d2.transpose().nullspace();
}

H1Info h1(const Triangulation& t) {
  auto cc = chain_complex(t);
  H1Info h;
  h.dim_c1 = cc.d1.cols();
  h.dim_z1 = h.dim_c1 - cc.d2.rank();
  h.dim_b1 = cc.d1.rank();
  h.dim_h1 = h.dim_z1 - h.dim_b1;
  h.boundary_squared_zero = (cc.d1 * cc.d2).is_zero();
  return h;
}

bool cohomologous(const Triangulation& t, const std::vector<int>& xi1, const std::vector<int>& xi2) {
  if (!is_cocycle(t, xi1) || !is_cocycle(t, xi2)) fail(ErrorKind::CocycleViolation, "cohomology class of a non-cocycle");
  auto cc = chain_complex(t);
  std::vector<int> diff(xi1.size());
  for (size_t i = 0; i < diff.size(); ++i) diff[i] = (xi1[i] + xi2[i]) & 1;
  Matrix bt = cc.d1.transpose();
  Matrix aug = Matrix::hstack({bt, column(diff)}, bt.rows(), 2);
  return aug.rank() == bt.rank();
}

namespace {

VertexKind kind_of(const Arc& a) {
  if (!a.pending) return VertexKind::NonPending;
  return a.weight == 1 ? VertexKind::Pending1 : VertexKind::Pending4;
}

// Vertex weight of an arc in the species.
int species_weight(const Triangulation& t, const Arc& a) {
  if (t.mode == SurfaceMode::Constant) return a.pending ? 2 : 1;
  return a.pending ? a.weight : 2;
}

void check_mode(const Triangulation& t, const GaloisDatum& d) {
  if (t.mode == SurfaceMode::Constant) {
    for (const auto& a : t.arcs)
      if (a.pending && a.weight != 4) fail(ErrorKind::ModeMismatch, "constant-weight mode needs every orbifold weight equal to 4");
    bool any_pending = std::any_of(t.arcs.begin(), t.arcs.end(), [](const Arc& a) { return a.pending; });
    if (d.degree != 2 && !(d.degree == 1 && !any_pending))
      fail(ErrorKind::ModeMismatch, "constant-weight mode needs a degree-2 datum");
    return;
  }
  for (const auto& a : t.arcs) {
    int w = species_weight(t, a);
    if (d.degree % w != 0) fail(ErrorKind::ModeMismatch, "vertex weight " + std::to_string(w) + " needs a larger datum");
  }
}

// Per-triangle bar arrow lookup: arrow from edge i to edge i+1, or -1.
std::map<int, std::array<int, 3>> triangle_arrows(const Triangulation& t, const std::vector<BarArrow>& bar) {
  std::map<int, std::array<int, 3>> out;
  for (size_t ti = 0; ti < t.triangles.size(); ++ti) out[static_cast<int>(ti)] = {-1, -1, -1};
  for (size_t a = 0; a < bar.size(); ++a) {
    const auto& T = t.triangles[bar[a].triangle];
    for (int i = 0; i < 3; ++i)
      if (t.arc_index(T.edges[i]) == bar[a].tail && t.arc_index(T.edges[(i + 1) % 3]) == bar[a].head && out[bar[a].triangle][i] < 0) {
        out[bar[a].triangle][i] = static_cast<int>(a);
        break;
      }
  }
  return out;
}

}  // namespace

Species build_species(const Triangulation& t, DatumPtr datum) {
  check_mode(t, *datum);
  auto bar = quiver_bar(t);
  std::vector<int> xi = cocycle_vector(t, t.cocycle);
  if (!is_cocycle(t, xi)) fail(ErrorKind::CocycleViolation, "the arrow colouring is not a 1-cocycle");
  const bool constant = t.mode == SurfaceMode::Constant;
  Quiver Q;
  std::vector<VertexKind> kinds;
  for (const auto& a : t.arcs) {
    Q.add_vertex(a.id, species_weight(t, a));
    kinds.push_back(kind_of(a));
  }
  std::vector<ArrowOrigin> origin;
  std::vector<int> bar_to_arrow(bar.size(), -1), extra_of_bar(bar.size(), -1);
  for (size_t b = 0; b < bar.size(); ++b) {
    const Arc& at = t.arcs[bar[b].tail];
    const Arc& ah = t.arcs[bar[b].head];
    const int wt = species_weight(t, at), wh = species_weight(t, ah);
    const bool dbl = at.pending && ah.pending && at.weight == ah.weight;
    int g0 = 0, g1 = 0;
    if (constant) {
      g0 = 0;
      g1 = 1;
    } else if (std::min(wt, wh) == 1) {
      g0 = g1 = 0;
    } else if (wt * wh < 16) {
      g0 = xi[b];
    } else {
      g0 = xi[b];
      g1 = xi[b] + 2;
    }
    int a0 = Q.add_arrow(bar[b].name, bar[b].tail, bar[b].head, g0);
    origin.push_back({static_cast<int>(b), false, bar[b].triangle, -1});
    bar_to_arrow[b] = a0;
    if (dbl) {
      int a1 = Q.add_arrow(bar[b].name + "'", bar[b].tail, bar[b].head, g1);
      origin.push_back({static_cast<int>(b), true, bar[b].triangle, a0});
      origin[a0].partner = a1;
      extra_of_bar[b] = a1;
    }
  }
  PathAlgebra A(datum, Q);
  Element W;
  const int d = A.degree();
  auto tri = triangle_arrows(t, bar);
  for (size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& T = t.triangles[ti];
    if (!T.interior) continue;
    const auto& ar = tri[static_cast<int>(ti)];
    std::array<int, 3> arc{t.arc_index(T.edges[0]), t.arc_index(T.edges[1]), t.arc_index(T.edges[2])};
    int dbl_pos = -1;
    for (int i = 0; i < 3; ++i)
      if (extra_of_bar[ar[i]] >= 0) dbl_pos = i;
    if (dbl_pos < 0) {
      // Cycle e0 -> e1 -> e2 -> e0 read right to left.
      std::vector<int> arrows{bar_to_arrow[ar[0]], bar_to_arrow[ar[2]], bar_to_arrow[ar[1]]};
      W = add(W, A.normalize(arc[1], arc[1], arrows, {0, 0, 0, 0}, A.F(1)));
      continue;
    }
    // delta: k1 -> k2, beta: base -> k1, gamma: k2 -> base.
    const int delta0 = bar_to_arrow[ar[dbl_pos]], delta1 = extra_of_bar[ar[dbl_pos]];
    const int gamma = bar_to_arrow[ar[(dbl_pos + 1) % 3]];
    const int beta = bar_to_arrow[ar[(dbl_pos + 2) % 3]];
    const int k2 = arc[(dbl_pos + 1) % 3];
    const bool weight_one = !constant && t.arcs[arc[dbl_pos]].weight == 1;
    W = add(W, A.normalize(k2, k2, {delta0, beta, gamma}, {0, 0, 0, 0}, A.F(1)));
    W = add(W, A.normalize(k2, k2, {delta1, beta, gamma}, {0, 0, weight_one ? d / 2 : 0, 0}, A.F(1)));
  }
  std::vector<int> xis(bar.size());
  for (size_t b = 0; b < bar.size(); ++b) xis[b] = xi[b];
  return Species{std::move(A), std::move(W), std::move(origin), std::move(kinds), std::move(xis), t.mode};
}

std::vector<Element> Species::derivatives() const {
  std::vector<Element> out;
  for (size_t a = 0; a < A.quiver().arrows.size(); ++a) out.push_back(A.cyclic_derivative(W, static_cast<int>(a)));
  return out;
}

QuotientAlgebra Species::jacobian(int lmax) const { return QuotientAlgebra::jacobian(A, derivatives(), lmax); }

ClannishPresentation build_clannish(const Triangulation& t, DatumPtr datum, bool enforce_cocycle) {
  check_mode(t, *datum);
  auto bar = quiver_bar(t);
  std::vector<int> xi = cocycle_vector(t, t.cocycle);
  if (enforce_cocycle && !is_cocycle(t, xi)) fail(ErrorKind::CocycleViolation, "the arrow colouring is not a 1-cocycle");
  const bool constant = t.mode == SurfaceMode::Constant;
  const int K = constant ? 1 : 2;
  if (datum->degree % K != 0) fail(ErrorKind::ModeMismatch, "datum too small for the clannish field");
  Quiver Q;
  std::vector<VertexKind> kinds;
  for (const auto& a : t.arcs) {
    Q.add_vertex(a.id, K);
    kinds.push_back(kind_of(a));
  }
  std::vector<ArrowOrigin> origin;
  for (size_t b = 0; b < bar.size(); ++b) {
    Q.add_arrow(bar[b].name, bar[b].tail, bar[b].head, constant ? 0 : xi[b]);
    origin.push_back({static_cast<int>(b), false, bar[b].triangle, -1});
  }
  ClannishRelations rel;
  std::vector<int> loop_at(t.arcs.size(), -1);
  const int d = datum->degree;
  for (size_t k = 0; k < t.arcs.size(); ++k) {
    const Arc& a = t.arcs[k];
    if (!a.pending) continue;
    int gexp = (!constant && a.weight == 1) ? 1 : 0;
    int s = Q.add_arrow("s" + a.id, static_cast<int>(k), static_cast<int>(k), gexp, true);
    origin.push_back({-1, false, -1, -1});
    loop_at[k] = s;
    if (constant) rel.quadratics.push_back({s, datum->c, 0});
    else if (a.weight == 1) rel.quadratics.push_back({s, datum->F(1), 0});
    else rel.quadratics.push_back({s, datum->F(1), d / 2});
  }
  auto tri = triangle_arrows(t, bar);
  for (size_t ti = 0; ti < t.triangles.size(); ++ti) {
    if (!t.triangles[ti].interior) continue;
    const auto& ar = tri[static_cast<int>(ti)];
    rel.zero_pairs.push_back({ar[0], ar[2]});
    rel.zero_pairs.push_back({ar[2], ar[1]});
    rel.zero_pairs.push_back({ar[1], ar[0]});
  }
  PathAlgebra A(datum, Q);
  return ClannishPresentation{std::move(A), std::move(rel), std::move(origin), std::move(kinds), std::move(loop_at), std::move(xi), t.mode};
}

QuotientAlgebra ClannishPresentation::algebra(int lmax) const { return QuotientAlgebra::clannish(A, rel, lmax); }

Element ClannishPresentation::quadratic(int k) const {
  const int s = loop_at.at(k);
  if (s < 0) fail(ErrorKind::UnknownArrow, "no special loop at vertex " + A.quiver().vertices[k].name);
  for (const auto& q : rel.quadratics)
    if (q.loop == s) {
      Element x = A.mul(A.arrow(s), A.arrow(s));
      return sub(x, scale(A.e(k, q.exp), q.coef));
    }
  fail(ErrorKind::UnknownArrow, "loop without quadratic");
}

std::vector<Element> ClannishPresentation::zero_paths() const {
  std::vector<Element> out;
  for (const auto& [l, r] : rel.zero_pairs) out.push_back(A.mul(A.arrow(l), A.arrow(r)));
  return out;
}

namespace {

FieldElement mu_element(const GaloisDatum& d, const Scalar& coef, int exp) {
  auto dp = std::make_shared<const GaloisDatum>(d);
  return FieldElement::monomial(dp, exp, coef);
}

}  // namespace

bool normality_check(const GaloisDatum& d, int level, int sigma_exp, const Scalar& mu_coef, int mu_exp) {
  auto dp = std::make_shared<const GaloisDatum>(d);
  FieldElement mu = mu_element(d, mu_coef, mu_exp);
  if (!mu.in_level(level)) fail(ErrorKind::LevelMismatch, "quadratic constant outside the loop field");
  GaloisElement s{level, ((sigma_exp % level) + level) % level};
  if (!(apply_galois(s, mu) == mu)) return false;
  GaloisElement s2 = s.compose(s);
  for (const auto& lam : eigenbasis(dp, level, 1))
    if (!(apply_galois(s2, lam) * mu == mu * lam)) return false;
  return true;
}

bool semisimple_type(const GaloisDatum& d, int level, int sigma_exp, const Scalar& mu_coef, int mu_exp) {
  FieldElement mu = mu_element(d, mu_coef, mu_exp);
  if (mu.is_zero()) return false;
  const int e = ((sigma_exp % level) + level) % level;
  if (e == 0) return true;
  if ((2 * e) % level != 0) return false;
  return apply_galois(GaloisElement{level, e}, mu) == mu;
}

std::vector<std::string> check_clannish_conditions(const ClannishPresentation& c) {
  std::vector<std::string> bad;
  const auto& Q = c.A.quiver();
  const size_t n = Q.vertices.size();
  std::vector<int> in(n, 0), out(n, 0), loops(n, 0);
  for (const auto& a : Q.arrows) {
    ++in[a.head];
    ++out[a.tail];
    if (a.special) ++loops[a.tail];
  }
  for (size_t k = 0; k < n; ++k) {
    if (in[k] > 2 || out[k] > 2) bad.push_back("(Q) vertex " + Q.vertices[k].name + " has more than two arrows on one side");
    if (loops[k] > 1) bad.push_back("(Q) vertex " + Q.vertices[k].name + " carries two special loops");
  }
  auto zero = [&](int l, int r) {
    for (const auto& z : c.rel.zero_pairs)
      if (z.first == l && z.second == r) return true;
    return false;
  };
  for (size_t b = 0; b < Q.arrows.size(); ++b) {
    if (Q.arrows[b].special) continue;
    int left = 0, right = 0;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
      if (Q.arrows[a].tail == Q.arrows[b].head && !zero(static_cast<int>(a), static_cast<int>(b))) ++left;
      if (Q.arrows[a].head == Q.arrows[b].tail && !zero(static_cast<int>(b), static_cast<int>(a))) ++right;
    }
    if (left > 1 || right > 1) bad.push_back("(Z) arrow " + Q.arrows[b].name + " admits two non-zero continuations");
  }
  for (const auto& [l, r] : c.rel.zero_pairs)
    if (Q.arrows[l].special || Q.arrows[r].special) bad.push_back("(Z) zero relation through a special loop");
  for (size_t k = 0; k < n; ++k) {
    if (c.loop_at[k] < 0) continue;
    const int s = c.loop_at[k];
    const SpecialQuadratic* q = nullptr;
    for (const auto& x : c.rel.quadratics)
      if (x.loop == s) q = &x;
    if (!q) {
      bad.push_back("(S) loop " + Q.arrows[s].name + " without quadratic");
      continue;
    }
    const int level = Q.vertices[k].weight;
    if (!normality_check(c.A.datum(), level, Q.arrows[s].gexp, q->coef, q->exp)) bad.push_back("(S) quadratic at " + Q.arrows[s].name + " is not normal");
    if (!semisimple_type(c.A.datum(), level, Q.arrows[s].gexp, q->coef, q->exp)) bad.push_back("(S) quadratic at " + Q.arrows[s].name + " is not of semisimple type");
  }
  return bad;
}

Decomposition block_decompose(const Triangulation& t) {
  Decomposition dec;
  const bool constant = t.mode == SurfaceMode::Constant;
  std::map<int, std::vector<std::pair<int, int>>> at_arc;
  for (size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& T = t.triangles[ti];
    std::array<int, 3> arc{t.arc_index(T.edges[0]), t.arc_index(T.edges[1]), t.arc_index(T.edges[2])};
    auto pend = [&](int i) { return arc[i] >= 0 && t.arcs[arc[i]].pending; };
    int np = pend(0) + pend(1) + pend(2);
    int base = 0;  // edge position that becomes block vertex 1
    int k = 0;
    if (np == 0) {
      k = constant ? 8 : 1;
      base = 1;
    } else if (np == 1) {
      for (int i = 0; i < 3; ++i)
        if (pend(i)) base = i;
      k = constant ? 9 : (t.arcs[arc[base]].weight == 1 ? 2 : 3);
    } else {
      for (int i = 0; i < 3; ++i)
        if (!pend(i)) base = i;
      const int k2 = arc[(base + 2) % 3], k1 = arc[(base + 1) % 3];
      const int w1 = t.arcs[k1].weight, w2 = t.arcs[k2].weight;
      if (constant) k = 10;
      else if (w1 == 1 && w2 == 1) k = 4;
      else if (w1 == 4 && w2 == 4) k = 5;
      else if (w1 == 1) k = 6;
      else k = 7;
    }
    // Block edge order is (2, 1, 3): position base-1 -> vertex 2, base -> vertex 1, base+1 -> vertex 3.
    BlockPiece piece;
    piece.block = k;
    piece.triangle = static_cast<int>(ti);
    piece.vertex_arc[0] = arc[base];
    piece.vertex_arc[1] = arc[(base + 2) % 3];
    piece.vertex_arc[2] = arc[(base + 1) % 3];
    const int pi = static_cast<int>(dec.pieces.size());
    dec.pieces.push_back(piece);
    for (int v = 0; v < 3; ++v)
      if (piece.vertex_arc[v] >= 0) at_arc[piece.vertex_arc[v]].push_back({pi, v + 1});
  }
  for (const auto& [arc, uses] : at_arc)
    if (uses.size() == 2) dec.matching.push_back({uses[0], uses[1]});
  return dec;
}

std::vector<std::array<int, 3>> block_cocycles(int k) {
  switch (k) {
    case 1:
    case 3:
    case 5:
      return {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    case 2:
      return {{0, 0, 0}, {1, 1, 0}};
    case 6:
    case 7:
      return {{0, 0, 0}, {1, 0, 1}};
    default:
      return {{0, 0, 0}};
  }
}

Triangulation block_triangulation(int k, std::array<int, 3> xi) {
  if (k < 1 || k > 10) fail(ErrorKind::ParseError, "block number must be between 1 and 10");
  Triangulation t;
  t.arcs = {{"1", false, 0}, {"2", false, 0}, {"3", false, 0}};
  auto pend = [&](int v, int w) {
    t.arcs[v - 1].pending = true;
    t.arcs[v - 1].weight = w;
  };
  switch (k) {
    case 2: pend(1, 1); break;
    case 3: pend(1, 4); break;
    case 4: pend(2, 1), pend(3, 1); break;
    case 5: pend(2, 4), pend(3, 4); break;
    case 6: pend(2, 4), pend(3, 1); break;
    case 7: pend(2, 1), pend(3, 4); break;
    case 9: pend(1, 4); break;
    case 10: pend(2, 4), pend(3, 4); break;
    default: break;
  }
  t.triangles = {Triangle{{"2", "1", "3"}, true}};
  t.mode = k >= 8 ? SurfaceMode::Constant : SurfaceMode::Arbitrary;
  t.cocycle = {{"2->1", xi[0] & 1}, {"3->2", xi[1] & 1}, {"1->3", xi[2] & 1}};
  t.validate();
  return t;
}

namespace {

std::string block_arrow_name(int k, const std::string& bar_name) {
  const bool dbl = k == 4 || k == 5 || k == 10;
  if (bar_name == "2->1") return "a";
  if (bar_name == "1->3") return "g";
  if (bar_name == "3->2") return dbl ? "b0" : "b";
  if (bar_name == "3->2'") return "b1";
  return bar_name;
}

PathAlgebra renamed(const PathAlgebra& A, int k) {
  Quiver Q = A.quiver();
  for (auto& a : Q.arrows)
    if (!a.special) a.name = block_arrow_name(k, a.name);
  return PathAlgebra(A.datum_ptr(), Q);
}

}  // namespace

Block make_block(int k, DatumPtr deg4, DatumPtr deg2, std::array<int, 3> xi) {
  Triangulation t = block_triangulation(k, xi);
  DatumPtr d = k >= 8 ? deg2 : deg4;
  Species s = build_species(t, d);
  ClannishPresentation c = build_clannish(t, d);
  Species s2{renamed(s.A, k), s.W, s.origin, s.kinds, s.xi, s.mode};
  ClannishPresentation c2{renamed(c.A, k), c.rel, c.origin, c.kinds, c.loop_at, c.xi, c.mode};
  return Block{k, std::move(t), std::move(s2), std::move(c2)};
}

Species glue_blocks(const Triangulation& t, const Decomposition& dec, DatumPtr datum) {
  check_mode(t, *datum);
  auto bar = quiver_bar(t);
  std::vector<int> xi = cocycle_vector(t, t.cocycle);
  Quiver Q;
  std::vector<VertexKind> kinds;
  for (const auto& a : t.arcs) {
    Q.add_vertex(a.id, species_weight(t, a));
    kinds.push_back(kind_of(a));
  }
  std::vector<ArrowOrigin> origin;
  std::vector<Species> block_species;
  block_species.reserve(dec.pieces.size());
  std::vector<std::vector<int>> arrow_maps;
  for (const auto& piece : dec.pieces) {
    // Cocycle of the triangle transported to the block frame.
    auto arrow_xi = [&](int from, int to) {
      for (size_t b = 0; b < bar.size(); ++b)
        if (bar[b].triangle == piece.triangle && bar[b].tail == from && bar[b].head == to) return xi[b];
      return 0;
    };
    const auto& va = piece.vertex_arc;
    std::array<int, 3> bxi{0, 0, 0};
    if (va[1] >= 0 && va[0] >= 0) bxi[0] = arrow_xi(va[1], va[0]);
    if (va[2] >= 0 && va[1] >= 0) bxi[1] = arrow_xi(va[2], va[1]);
    if (va[0] >= 0 && va[2] >= 0) bxi[2] = arrow_xi(va[0], va[2]);
    // Arrows through a deleted vertex carry whatever value closes the cocycle.
    if ((bxi[0] + bxi[1] + bxi[2]) & 1) {
      if (va[0] < 0 || va[1] < 0) bxi[0] ^= 1;
      else if (va[1] < 0 || va[2] < 0) bxi[1] ^= 1;
      else bxi[2] ^= 1;
    }
    Triangulation bt = block_triangulation(piece.block, bxi);
    for (int v = 0; v < 3; ++v)
      if (va[v] >= 0 && t.arcs[va[v]].pending) bt.arcs[v].weight = t.arcs[va[v]].weight;
    bool interior = t.triangles[piece.triangle].interior;
    Species bs = build_species(bt, datum);
    std::vector<int> amap(bs.A.quiver().arrows.size(), -1);
    for (size_t a = 0; a < bs.A.quiver().arrows.size(); ++a) {
      const auto& ar = bs.A.quiver().arrows[a];
      const int tail = va[ar.tail], head = va[ar.head];
      if (tail < 0 || head < 0) continue;
      amap[a] = Q.add_arrow(ar.name, tail, head, ar.gexp, ar.special);
      origin.push_back({-1, bs.origin[a].extra, piece.triangle, -1});
    }
    for (size_t a = 0; a < amap.size(); ++a)
      if (amap[a] >= 0 && bs.origin[a].partner >= 0 && amap[bs.origin[a].partner] >= 0) origin[amap[a]].partner = amap[bs.origin[a].partner];
    if (!interior) bs.W.clear();
    block_species.push_back(std::move(bs));
    arrow_maps.push_back(std::move(amap));
  }
  PathAlgebra A(datum, Q);
  Element W;
  for (size_t i = 0; i < block_species.size(); ++i)
    for (const auto& [P, c] : block_species[i].W) {
      Path R = P;
      for (auto& a : R.arrows) a = arrow_maps[i][a];
      R.head = dec.pieces[i].vertex_arc[P.head];
      R.tail = dec.pieces[i].vertex_arc[P.tail];
      W = add(W, A.normalize(R, c));
    }
  for (size_t a = 0; a < origin.size(); ++a) {
    const auto& ar = Q.arrows[a];
    for (size_t b = 0; b < bar.size(); ++b)
      if (bar[b].triangle == origin[a].triangle && bar[b].tail == ar.tail && bar[b].head == ar.head) origin[a].bar = static_cast<int>(b);
  }
  return Species{std::move(A), std::move(W), std::move(origin), std::move(kinds), xi, t.mode};
}

bool same_species(const Species& x, const Species& y, std::string* why) {
  auto say = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const auto& QX = x.A.quiver();
  const auto& QY = y.A.quiver();
  if (QX.vertices.size() != QY.vertices.size()) return say("vertex count differs");
  for (size_t v = 0; v < QX.vertices.size(); ++v)
    if (QX.vertices[v].name != QY.vertices[v].name || QX.vertices[v].weight != QY.vertices[v].weight) return say("vertex " + QX.vertices[v].name + " differs");
  if (QX.arrows.size() != QY.arrows.size()) return say("arrow count differs");
  using Key = std::tuple<int, int, int, bool, int>;
  auto key = [](const Species& s, int a) {
    const auto& ar = s.A.quiver().arrows[a];
    int g = ar.gexp % std::max(1, s.A.arrow_weight(a));
    return Key{s.origin[a].triangle, ar.tail, ar.head, s.origin[a].extra, g};
  };
  std::map<Key, int> ky;
  for (size_t a = 0; a < QY.arrows.size(); ++a) ky[key(y, static_cast<int>(a))] = static_cast<int>(a);
  std::vector<int> to_y(QX.arrows.size(), -1);
  for (size_t a = 0; a < QX.arrows.size(); ++a) {
    auto it = ky.find(key(x, static_cast<int>(a)));
    if (it == ky.end()) return say("arrow " + QX.arrows[a].name + " has no counterpart");
    to_y[a] = it->second;
  }
  Element mapped;
  for (const auto& [P, c] : x.W) {
    Path R = P;
    for (auto& a : R.arrows) a = to_y[a];
    add_term(mapped, R, c);
  }
  // potentials are compared up to cyclic equivalence
  for (size_t a = 0; a < QY.arrows.size(); ++a) {
    Element diff = sub(y.A.cyclic_derivative(mapped, static_cast<int>(a)), y.A.cyclic_derivative(y.W, static_cast<int>(a)));
    if (!is_zero(diff)) return say("cyclic derivatives at " + QY.arrows[a].name + " differ by " + y.A.str(diff));
  }
  return true;
}

namespace {

std::string dot_of(const PathAlgebra& A, const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << title << "\" {\n";
  for (const auto& v : A.quiver().vertices) os << "  \"" << v.name << "\" [label=\"" << v.name << " (" << v.weight << ")\"];\n";
  for (const auto& a : A.quiver().arrows) {
    os << "  \"" << A.quiver().vertices[a.tail].name << "\" -> \"" << A.quiver().vertices[a.head].name << "\" [label=\"" << a.name;
    if (a.gexp) os << " rho^" << a.gexp;
    os << "\"" << (a.special ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string species_dot(const Species& s) { return dot_of(s.A, "species"); }
std::string clannish_dot(const ClannishPresentation& c) { return dot_of(c.A, "clannish"); }

}  // namespace jc
