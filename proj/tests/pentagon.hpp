#pragma once

// Species and clannish tables of the pentagon with two orbifold points, for the two
// triangulations tau and sigma, checked against the published example tables.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "jacclan/surface.hpp"

namespace pentagon {

using namespace jc;

// Greek letters of the tables in the arc naming of the data files.
inline const std::map<std::string, std::string>& tau_names() {
  static const std::map<std::string, std::string> m = {{"alpha", "y->z"}, {"beta", "x->y"}, {"gamma", "z->x"},
                                                       {"eps", "x->p1"},  {"eta", "p2->x"}, {"nu", "y->w"}};
  return m;
}
inline const std::map<std::string, std::string>& sigma_names() {
  static const std::map<std::string, std::string> m = {{"alpha", "a->p1"}, {"gamma", "p1->b"}, {"beta", "b->a"},
                                                       {"delta", "b->p2"}, {"eta", "p2->c"},   {"eps", "c->b"},
                                                       {"nu", "c->d"}};
  return m;
}

struct Expect {
  std::map<std::string, std::string> plain;
  // arrow -> (x, s, y) meaning 1/2 (x + s c^-1 y)
  std::map<std::string, std::tuple<std::string, Scalar, std::string>> avg;
};

inline void compare_derivatives(const Species& sp, const Expect& ex, const std::string& tag, std::vector<std::string>& bad) {
  const PathAlgebra& A = sp.A;
  const Scalar half = A.F(1) / A.F(2);
  const Scalar cinv = A.datum().c.inv();
  auto ds = sp.derivatives();
  const auto& Q = A.quiver();
  if (ds.size() != ex.plain.size() + ex.avg.size()) {
    bad.push_back(tag + ": arrow count " + std::to_string(ds.size()));
    return;
  }
  for (size_t a = 0; a < ds.size(); ++a) {
    const auto& name = Q.arrows[a].name;
    Element want;
    if (auto it = ex.plain.find(name); it != ex.plain.end()) {
      if (it->second != "0") want = A.parse(it->second);
    } else if (auto jt = ex.avg.find(name); jt != ex.avg.end()) {
      const auto& [x, s, y] = jt->second;
      want = scale(add(A.parse(x), scale(A.parse(y), s * cinv)), half);
    } else {
      bad.push_back(tag + ": unexpected arrow " + name);
      continue;
    }
    if (!(ds[a] == want)) bad.push_back(tag + ": d_" + name + " W = " + A.str(ds[a]) + ", expected " + A.str(want));
  }
}

inline std::set<std::string> zero_pair_names(const ClannishPresentation& c) {
  std::set<std::string> out;
  const auto& Q = c.A.quiver();
  for (const auto& [l, r] : c.rel.zero_pairs) out.insert(Q.arrows[l].name + "." + Q.arrows[r].name);
  return out;
}

inline std::set<std::string> triangle_pairs(const std::string& x, const std::string& y, const std::string& z) {
  return {x + "." + y, y + "." + z, z + "." + x};
}

// Clannish zero relations and loops; mu_is_u selects s^2 = u e, otherwise s^2 = e (or s^2 = u^2 e when squared).
inline void compare_clannish(const ClannishPresentation& cl, bool tau, const std::vector<int>& w, bool constant,
                             const std::string& tag, std::vector<std::string>& bad) {
  const auto& M = tau ? tau_names() : sigma_names();
  std::set<std::string> want = triangle_pairs(M.at("alpha"), M.at("beta"), M.at("gamma"));
  for (const auto& s : tau ? triangle_pairs("p1->p2", M.at("eps"), M.at("eta"))
                           : triangle_pairs(M.at("delta"), M.at("eps"), M.at("eta")))
    want.insert(s);
  if (zero_pair_names(cl) != want) bad.push_back(tag + ": zero relations differ");
  const auto& Q = cl.A.quiver();
  for (int i = 0; i < 2; ++i) {
    const std::string p = i == 0 ? "p1" : "p2";
    const int k = Q.vertex_index(p);
    const int s = k >= 0 ? cl.loop_at[k] : -1;
    if (s < 0) {
      bad.push_back(tag + ": no special loop at " + p);
      continue;
    }
    const std::string sq = Q.arrows[s].name + "." + Q.arrows[s].name;
    int twist = 0;
    std::string rel;
    if (constant) {
      rel = sq + " - u.u.e" + p;
    } else if (w[i] == 1) {
      twist = 1;
      rel = sq + " - e" + p;
    } else {
      rel = sq + " - u.e" + p;
    }
    if (Q.arrows[s].gexp != twist) bad.push_back(tag + ": loop twist at " + p);
    if (!(cl.quadratic(k) == cl.A.parse(rel))) bad.push_back(tag + ": quadratic at " + p + " is " + cl.A.str(cl.quadratic(k)));
  }
  auto cond = check_clannish_conditions(cl);
  for (const auto& c : cond) bad.push_back(tag + ": " + c);
}

inline size_t term_count(const Element& x) { return x.size(); }

// Tables for arbitrary weights over a degree-4 datum.
inline std::vector<std::string> check_arbitrary(Triangulation tau, Triangulation sigma, const std::vector<int>& w, DatumPtr d4) {
  std::vector<std::string> bad;
  const std::string tag = "weights " + std::to_string(w[0]) + "," + std::to_string(w[1]);
  tau.set_weights(w);
  sigma.set_weights(w);
  auto sp_t = build_species(tau, d4);
  auto sp_s = build_species(sigma, d4);
  const auto& D = *d4;
  const Scalar one = D.F(1);
  const auto& T = tau_names();
  const auto& S = sigma_names();

  // shapes
  auto wt = [](const Species& sp, const std::string& v) { return sp.A.weight(sp.A.quiver().vertex_index(v)); };
  for (int i = 0; i < 2; ++i) {
    const std::string p = i == 0 ? "p1" : "p2";
    if (wt(sp_t, p) != w[i] || wt(sp_s, p) != w[i]) bad.push_back(tag + ": weight of " + p);
  }
  for (const char* v : {"x", "y", "z", "w"})
    if (wt(sp_t, v) != 2) bad.push_back(tag + ": tau weight of " + v);
  for (const char* v : {"a", "b", "c", "d"})
    if (wt(sp_s, v) != 2) bad.push_back(tag + ": sigma weight of " + v);
  const bool doubled = w[0] == w[1];
  if (sp_t.A.quiver().arrows.size() != (doubled ? 8u : 7u)) bad.push_back(tag + ": tau arrow count");
  if (sp_s.A.quiver().arrows.size() != 7u) bad.push_back(tag + ": sigma arrow count");
  if (doubled) {
    const auto& Q = sp_t.A.quiver();
    const int g0 = Q.arrows[Q.arrow_index("p1->p2")].gexp, g1 = Q.arrows[Q.arrow_index("p1->p2'")].gexp;
    // over F the two arrows are untwisted; over E they differ by rho^2
    if (w[0] == 1 && (g0 != 0 || g1 != 0)) bad.push_back(tag + ": twists of the double arrow");
    if (w[0] == 4 && ((g1 - g0) % 4 + 4) % 4 != 2) bad.push_back(tag + ": twists of the double arrow");
  }
  if (term_count(sp_t.W) != (doubled ? 3u : 2u)) bad.push_back(tag + ": tau potential has " + std::to_string(term_count(sp_t.W)) + " terms");
  if (term_count(sp_s.W) != 2u) bad.push_back(tag + ": sigma potential terms");

  Expect et;
  et.plain[T.at("alpha")] = T.at("beta") + "." + T.at("gamma");
  et.plain[T.at("beta")] = T.at("gamma") + "." + T.at("alpha");
  et.plain[T.at("gamma")] = T.at("alpha") + "." + T.at("beta");
  et.plain[T.at("nu")] = "0";
  const std::string en = T.at("eps") + "." + T.at("eta");
  if (w[0] == 1 && w[1] == 1) {
    et.plain["p1->p2"] = en;
    et.plain["p1->p2'"] = T.at("eps") + ".u." + T.at("eta");
    et.plain[T.at("eps")] = T.at("eta") + ".p1->p2 + u." + T.at("eta") + ".p1->p2'";
    et.plain[T.at("eta")] = "p1->p2." + T.at("eps") + " + p1->p2'." + T.at("eps") + ".u";
  } else if (w[0] == 4 && w[1] == 4) {
    const int l = sp_t.A.quiver().arrows[sp_t.A.quiver().arrow_index("p1->p2")].gexp;
    et.avg["p1->p2"] = {en, D.zeta_pow(l), "v^3." + en + ".v"};
    et.avg["p1->p2'"] = {en, D.zeta_pow(l + 2), "v^3." + en + ".v"};
    et.plain[T.at("eps")] = T.at("eta") + ".p1->p2 + " + T.at("eta") + ".p1->p2'";
    et.plain[T.at("eta")] = "p1->p2." + T.at("eps") + " + p1->p2'." + T.at("eps");
  } else {
    et.plain["p1->p2"] = en;
    const std::string de = "p1->p2." + T.at("eps"), ed = T.at("eta") + ".p1->p2";
    if (w[1] == 4) {
      et.plain[T.at("eps")] = ed;
      et.avg[T.at("eta")] = {de, one, "u." + de + ".u"};
    } else {
      et.plain[T.at("eta")] = de;
      et.avg[T.at("eps")] = {ed, one, "u." + ed + ".u"};
    }
  }
  compare_derivatives(sp_t, et, tag + " tau", bad);

  Expect es;
  es.plain[S.at("alpha")] = S.at("beta") + "." + S.at("gamma");
  es.plain[S.at("gamma")] = S.at("alpha") + "." + S.at("beta");
  es.plain[S.at("delta")] = S.at("eps") + "." + S.at("eta");
  es.plain[S.at("eta")] = S.at("delta") + "." + S.at("eps");
  es.plain[S.at("nu")] = "0";
  const std::string ga = S.at("gamma") + "." + S.at("alpha"), hd = S.at("eta") + "." + S.at("delta");
  if (w[0] == 1) es.avg[S.at("beta")] = {ga, one, "u." + ga + ".u"};
  else es.plain[S.at("beta")] = ga;
  if (w[1] == 1) es.avg[S.at("eps")] = {hd, one, "u." + hd + ".u"};
  else es.plain[S.at("eps")] = hd;
  compare_derivatives(sp_s, es, tag + " sigma", bad);

  compare_clannish(build_clannish(tau, d4), true, w, false, tag + " tau clannish", bad);
  compare_clannish(build_clannish(sigma, d4), false, w, false, tag + " sigma clannish", bad);
  return bad;
}

// Constant weight four over a degree-2 datum with u^2 = c.
inline std::vector<std::string> check_constant(Triangulation tau, Triangulation sigma, DatumPtr d2) {
  std::vector<std::string> bad;
  for (auto* t : {&tau, &sigma}) {
    t->set_weights({4, 4});
    t->mode = SurfaceMode::Constant;
  }
  const auto& T = tau_names();
  const auto& S = sigma_names();
  auto sp_t = build_species(tau, d2);
  auto sp_s = build_species(sigma, d2);
  const auto& A = sp_t.A;
  for (const char* p : {"p1", "p2"})
    if (A.weight(A.quiver().vertex_index(p)) != 2) bad.push_back(std::string("constant: weight of ") + p);
  for (const char* v : {"x", "y", "z", "w"})
    if (A.weight(A.quiver().vertex_index(v)) != 1) bad.push_back(std::string("constant: weight of ") + v);
  // over the degree-2 field the double arrow differs by the conjugation
  const auto& Q = A.quiver();
  if (Q.arrows.size() != 8u) bad.push_back("constant: tau arrow count");
  else if (((Q.arrows[Q.arrow_index("p1->p2'")].gexp - Q.arrows[Q.arrow_index("p1->p2")].gexp) % 2 + 2) % 2 != 1)
    bad.push_back("constant: twists of the double arrow");

  Expect et;
  et.plain[T.at("alpha")] = T.at("beta") + "." + T.at("gamma");
  et.plain[T.at("beta")] = T.at("gamma") + "." + T.at("alpha");
  et.plain[T.at("gamma")] = T.at("alpha") + "." + T.at("beta");
  et.plain[T.at("nu")] = "0";
  const std::string en = T.at("eps") + "." + T.at("eta");
  // 1/2 (eps eta -+ i eps eta i) with i^-1 = c^-1 i
  const Scalar c = sp_t.A.datum().c;
  et.avg["p1->p2"] = {en, -c, "u." + en + ".u"};
  et.avg["p1->p2'"] = {en, c, "u." + en + ".u"};
  et.plain[T.at("eps")] = T.at("eta") + ".p1->p2 + " + T.at("eta") + ".p1->p2'";
  et.plain[T.at("eta")] = "p1->p2." + T.at("eps") + " + p1->p2'." + T.at("eps");
  compare_derivatives(sp_t, et, "constant tau", bad);

  Expect es;
  es.plain[S.at("alpha")] = S.at("beta") + "." + S.at("gamma");
  es.plain[S.at("beta")] = S.at("gamma") + "." + S.at("alpha");
  es.plain[S.at("gamma")] = S.at("alpha") + "." + S.at("beta");
  es.plain[S.at("delta")] = S.at("eps") + "." + S.at("eta");
  es.plain[S.at("eps")] = S.at("eta") + "." + S.at("delta");
  es.plain[S.at("eta")] = S.at("delta") + "." + S.at("eps");
  es.plain[S.at("nu")] = "0";
  compare_derivatives(sp_s, es, "constant sigma", bad);

  compare_clannish(build_clannish(tau, d2), true, {4, 4}, true, "constant tau clannish", bad);
  compare_clannish(build_clannish(sigma, d2), false, {4, 4}, true, "constant sigma clannish", bad);
  return bad;
}

}  // namespace pentagon
