#include "jacclan/morita.hpp"

#include <chrono>
#include <sstream>

#include "jacclan/stringband.hpp"
#include "json.hpp"

namespace jc {

using json = nlohmann::json;

namespace {

Scalar half(uint32_t p) { return Scalar(1).in_field(p) / Scalar(2).in_field(p); }

// Coordinates of the columns of V in the basis K.
Matrix coords(const Matrix& K, const Matrix& V) {
  Matrix X;
  if (V.cols() == 0) return Matrix(K.cols(), 0, K.field() ? K.field() : V.field());
  if (K.cols() == 0) {
    if (!V.is_zero()) fail(ErrorKind::VerificationFailed, "map does not land in the target subspace");
    return Matrix(0, V.cols(), V.field());
  }
  if (!K.solve(V, X)) fail(ErrorKind::VerificationFailed, "map does not land in the target subspace");
  return X;
}

bool is_p1(MoritaVertex v) { return v == MoritaVertex::InduceL; }

}  // namespace

// ---------- algebra maps ----------

Element AlgebraMap::apply(const Element& x) const {
  const PathAlgebra& S = *src;
  const PathAlgebra& T = *dst;
  Element out;
  auto dec_pow = [&](int k, int e) {
    const int st = S.step(k);
    Element r = T.e(k);
    for (int i = 0; i < e / st; ++i) r = T.mul(r, dec[k]);
    return r;
  };
  for (const auto& [P, c] : x) {
    Element t = dec_pow(P.head, P.exps[0]);
    for (size_t r = 0; r < P.arrows.size(); ++r) {
      t = T.mul(t, arrows[P.arrows[r]]);
      t = T.mul(t, dec_pow(S.quiver().arrows[P.arrows[r]].tail, P.exps[r + 1]));
    }
    out = add(out, scale(t, c));
  }
  return out;
}

Representation pullback(const AlgebraMap& m, const Representation& N) {
  const PathAlgebra& S = *m.src;
  const PathAlgebra& T = *m.dst;
  const auto& Q = S.quiver();
  Representation M;
  M.dims = N.dims;
  for (size_t k = 0; k < Q.vertices.size(); ++k) {
    Matrix op = element_operator(T, N, m.dec[k]);
    M.field.push_back(op.block(N.offset(static_cast<int>(k)), N.offset(static_cast<int>(k)), N.dims[k], N.dims[k]));
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    Matrix op = element_operator(T, N, m.arrows[a]);
    M.arrows.push_back(op.block(N.offset(ar.head), N.offset(ar.tail), N.dims[ar.head], N.dims[ar.tail]));
  }
  return M;
}

namespace {

std::vector<int> clannish_arrow_of_bar(const ClannishPresentation& cl, size_t nbar) {
  std::vector<int> out(nbar, -1);
  for (size_t a = 0; a < cl.origin.size(); ++a)
    if (cl.origin[a].bar >= 0) out[cl.origin[a].bar] = static_cast<int>(a);
  return out;
}

std::vector<std::vector<int>> jacobian_arrows_of_bar(const Species& sp, size_t nbar) {
  std::vector<std::vector<int>> out(nbar);
  for (size_t a = 0; a < sp.origin.size(); ++a)
    if (!sp.origin[a].extra) out[sp.origin[a].bar].insert(out[sp.origin[a].bar].begin(), static_cast<int>(a));
    else out[sp.origin[a].bar].push_back(static_cast<int>(a));
  return out;
}

size_t bar_count(const Species& sp) {
  int m = -1;
  for (const auto& o : sp.origin) m = std::max(m, o.bar);
  return static_cast<size_t>(m + 1);
}

}  // namespace

BlockIsoResult block_iso(const Species& sp, const ClannishPresentation& cl) {
  const PathAlgebra& J = sp.A;
  const PathAlgebra& C = cl.A;
  const uint32_t p = J.p();
  const int d = J.degree();
  const auto& JQ = J.quiver();
  const auto& CQ = C.quiver();
  BlockIsoResult r;
  for (auto k : sp.kinds)
    if (k == VertexKind::Pending1 && sp.mode == SurfaceMode::Arbitrary)
      fail(ErrorKind::AlgebraMismatch, "weight-one pending vertices admit only a Morita equivalence");
  const size_t nbar = bar_count(sp);
  auto bc = clannish_arrow_of_bar(cl, nbar);
  auto bj = jacobian_arrows_of_bar(sp, nbar);
  r.phi.src = &J;
  r.phi.dst = &C;
  r.psi.src = &C;
  r.psi.dst = &J;
  const size_t nv = JQ.vertices.size();
  r.phi.dec.resize(nv);
  r.psi.dec.resize(nv);
  for (size_t k = 0; k < nv; ++k) {
    const int kk = static_cast<int>(k);
    const int s = cl.loop_at[k];
    if (s >= 0) {
      // v e_k corresponds to the special loop
      if (J.step(kk) != 1 && J.step(kk) * 2 != C.step(kk))
        fail(ErrorKind::AlgebraMismatch, "pending vertex field does not match the special loop");
      r.phi.dec[k] = C.arrow(s);
      for (int i = 1; i < J.step(kk); ++i) r.phi.dec[k] = C.mul(r.phi.dec[k], C.arrow(s));
      r.psi.dec[k] = J.e(kk, C.step(kk));
    } else {
      if (J.step(kk) != C.step(kk)) fail(ErrorKind::AlgebraMismatch, "vertex fields differ at a non-pending vertex");
      r.phi.dec[k] = C.e(kk, C.step(kk));
      r.psi.dec[k] = J.e(kk, J.step(kk));
    }
  }
  r.phi.arrows.resize(JQ.arrows.size());
  r.psi.arrows.resize(CQ.arrows.size());
  for (size_t b = 0; b < nbar; ++b) {
    const int ca = bc[b];
    const auto& js = bj[b];
    if (js.size() == 1) {
      r.phi.arrows[js[0]] = C.arrow(ca);
      r.psi.arrows[ca] = J.arrow(js[0]);
      continue;
    }
    const auto& car = CQ.arrows[ca];
    const int sh = cl.loop_at[car.head], st = cl.loop_at[car.tail];
    if (sh < 0 || st < 0) fail(ErrorKind::AlgebraMismatch, "double arrow between vertices without special loops");
    Element conj = C.normalize(car.head, car.tail, {sh, ca, st}, {d - 2, 0, 0, 0}, J.datum().c.inv());
    for (int j : js) {
      Scalar coef = J.datum().zeta_pow(-static_cast<long long>(JQ.arrows[j].gexp));
      r.phi.arrows[j] = scale(add(C.arrow(ca), scale(conj, coef)), half(p));
    }
    r.psi.arrows[ca] = add(J.arrow(js[0]), J.arrow(js[1]));
  }
  for (size_t k = 0; k < nv; ++k)
    if (cl.loop_at[k] >= 0) r.psi.arrows[cl.loop_at[k]] = J.e(static_cast<int>(k), 1);

  QuotientAlgebra QJ = sp.jacobian();
  QuotientAlgebra QC = cl.algebra();
  auto report = [&](const std::string& what, const Element& x, const QuotientAlgebra& Q) {
    if (!is_zero(Q.reduce(x))) r.failures.push_back(what);
  };
  for (const auto& g : QC.generators()) report("phi(psi(" + C.str(g) + ")) differs", sub(r.phi.apply(r.psi.apply(g)), g), QC);
  for (const auto& g : QJ.generators()) report("psi(phi(" + J.str(g) + ")) differs", sub(r.psi.apply(r.phi.apply(g)), g), QJ);
  for (const auto& x : sp.derivatives()) report("phi(" + J.str(x) + ") is not zero", r.phi.apply(x), QC);
  for (const auto& x : defining_relations(QC)) report("psi(" + C.str(x) + ") is not zero", r.psi.apply(x), QJ);
  // bimodule compatibility and the field relation on the image
  for (size_t a = 0; a < JQ.arrows.size(); ++a) {
    const auto& ar = JQ.arrows[a];
    const int s = d / J.arrow_weight(static_cast<int>(a));
    Element lhs = r.phi.apply(J.normalize(ar.head, ar.tail, {static_cast<int>(a)}, {0, s}, J.F(1)));
    Element rhs = C.mul(r.phi.arrows[a], r.phi.apply(J.e(ar.tail, s)));
    report("phi breaks the bimodule structure of " + ar.name, sub(lhs, rhs), QC);
  }
  for (size_t k = 0; k < nv; ++k) {
    const int kk = static_cast<int>(k);
    Element pw = C.e(kk);
    for (int i = 0; i < J.weight(kk); ++i) pw = C.mul(pw, r.phi.dec[k]);
    report("phi(v^step e) fails its minimal polynomial at " + JQ.vertices[k].name, sub(pw, scale(C.e(kk), J.datum().c)), QC);
  }
  return r;
}

// ---------- vertexwise functors ----------

Morita::Morita(const Species& sp, const ClannishPresentation& cl)
    : sp_(sp), cl_(cl), jac_(sp.jacobian()), cla_(cl.algebra()) {
  jac_rel_ = defining_relations(jac_);
  cla_rel_ = defining_relations(cla_);
  const size_t nv = sp.kinds.size();
  for (size_t k = 0; k < nv; ++k) {
    if (sp.kinds[k] == VertexKind::NonPending) vk_.push_back(MoritaVertex::Identity);
    else if (sp.kinds[k] == VertexKind::Pending1 && sp.mode == SurfaceMode::Arbitrary) vk_.push_back(MoritaVertex::InduceL);
    else vk_.push_back(MoritaVertex::Restrict);
  }
  const size_t nbar = bar_count(sp);
  bar_cla_ = clannish_arrow_of_bar(cl, nbar);
  bar_jac_ = jacobian_arrows_of_bar(sp, nbar);
}

Scalar Morita::theta_scalar(int gexp) const {
  return cl_.A.datum().zeta_pow(static_cast<long long>(gexp) * cl_.A.step(0));
}

Matrix Morita::kernel_basis(const Representation& N, int k) const {
  const int s = cl_.loop_at[k];
  const uint32_t p = cl_.A.p();
  return (N.arrows[s] - Matrix::identity(N.dims[k], p)).nullspace();
}

Representation Morita::psi(const Representation& M) const {
  const PathAlgebra& J = sp_.A;
  const PathAlgebra& C = cl_.A;
  const uint32_t p = J.p();
  const Scalar c = J.datum().c;
  const size_t nv = vk_.size();
  Representation N;
  N.arrows.resize(C.quiver().arrows.size());
  for (size_t k = 0; k < nv; ++k) {
    const int kk = static_cast<int>(k);
    const size_t n = M.dims[k];
    if (is_p1(vk_[k])) {
      N.dims.push_back(2 * n);
      Matrix G(2 * n, 2 * n, p);
      G.set_block(0, n, Matrix::scalar(n, c, p));
      G.set_block(n, 0, Matrix::identity(n, p));
      N.field.push_back(G);
      Matrix S = Matrix::direct_sum(Matrix::identity(n, p), Matrix::scalar(n, theta_scalar(1), p));
      N.arrows[cl_.loop_at[k]] = S;
    } else {
      N.dims.push_back(n);
      const int ratio = C.step(kk) / J.step(kk);
      N.field.push_back(M.field[k].pow(static_cast<unsigned>(ratio)));
      if (vk_[k] == MoritaVertex::Restrict) N.arrows[cl_.loop_at[k]] = M.field[k];
    }
  }
  for (size_t b = 0; b < bar_cla_.size(); ++b) {
    const int ca = bar_cla_[b];
    const auto& car = C.quiver().arrows[ca];
    const int t = car.tail, h = car.head;
    const Scalar th = theta_scalar(car.gexp);
    const auto& js = bar_jac_[b];
    const bool pt = is_p1(vk_[t]), ph = is_p1(vk_[h]);
    if (js.size() == 1) {
      const Matrix& X = M.arrows[js[0]];
      if (!pt && !ph) {
        N.arrows[ca] = X;
      } else if (!pt && ph) {
        Matrix Y(N.dims[h], N.dims[t], p);
        Y.set_block(0, 0, X);
        Y.set_block(M.dims[h], 0, (X * N.field[t]).scaled(c.inv() / th));
        N.arrows[ca] = Y;
      } else if (pt && !ph) {
        N.arrows[ca] = Matrix::hstack({X, (N.field[h] * X).scaled(th)}, N.dims[h], p);
      } else {
        fail(ErrorKind::AlgebraMismatch, "single arrow between two weight-one pending vertices");
      }
    } else {
      const Matrix& X0 = M.arrows[js[0]];
      const Matrix& X1 = M.arrows[js[1]];
      if (pt && ph) {
        const size_t rh = M.dims[h], ct = M.dims[t];
        Matrix Y(2 * rh, 2 * ct, p);
        Y.set_block(0, 0, X0);
        Y.set_block(rh, 0, X1);
        Y.set_block(0, ct, X1.scaled(th * c));
        Y.set_block(rh, ct, X0.scaled(th));
        N.arrows[ca] = Y;
      } else if (!pt && !ph) {
        N.arrows[ca] = X0 + X1;
      } else {
        fail(ErrorKind::AlgebraMismatch, "double arrow between pending vertices of different types");
      }
    }
  }
  auto errs = validate(C, N, cla_rel_);
  if (!errs.empty()) fail(ErrorKind::ValidationFailed, "psi image: " + errs.front());
  return N;
}

Representation Morita::phi(const Representation& N) const {
  const PathAlgebra& J = sp_.A;
  const PathAlgebra& C = cl_.A;
  const uint32_t p = J.p();
  const Scalar c = J.datum().c;
  const size_t nv = vk_.size();
  std::vector<Matrix> K(nv);
  Representation M;
  M.arrows.resize(J.quiver().arrows.size());
  for (size_t k = 0; k < nv; ++k) {
    const int kk = static_cast<int>(k);
    if (is_p1(vk_[k])) {
      K[k] = kernel_basis(N, kk);
      M.dims.push_back(K[k].cols());
      M.field.push_back(Matrix::scalar(K[k].cols(), c, p));
    } else if (vk_[k] == MoritaVertex::Restrict) {
      M.dims.push_back(N.dims[k]);
      M.field.push_back(N.arrows[cl_.loop_at[k]]);
    } else {
      if (C.step(kk) != J.step(kk)) fail(ErrorKind::AlgebraMismatch, "vertex fields differ at a non-pending vertex");
      M.dims.push_back(N.dims[k]);
      M.field.push_back(N.field[k]);
    }
  }
  for (size_t b = 0; b < bar_cla_.size(); ++b) {
    const int ca = bar_cla_[b];
    const auto& car = C.quiver().arrows[ca];
    const int t = car.tail, h = car.head;
    const Matrix& Y = N.arrows[ca];
    const auto& js = bar_jac_[b];
    const bool pt = is_p1(vk_[t]), ph = is_p1(vk_[h]);
    if (js.size() == 1) {
      if (!pt && !ph) {
        M.arrows[js[0]] = Y;
      } else if (!pt && ph) {
        Matrix P = (Matrix::identity(N.dims[h], p) + N.arrows[cl_.loop_at[h]]).scaled(half(p));
        M.arrows[js[0]] = coords(K[h], P * Y);
      } else if (pt && !ph) {
        M.arrows[js[0]] = Y * K[t];
      } else {
        fail(ErrorKind::AlgebraMismatch, "single arrow between two weight-one pending vertices");
      }
    } else {
      const Matrix& Sh = N.arrows[cl_.loop_at[h]];
      const Matrix& St = N.arrows[cl_.loop_at[t]];
      const Matrix I = Matrix::identity(N.dims[h], p);
      if (pt && ph) {
        Matrix B0 = ((Sh + I).scaled(half(p)) * Y) * K[t];
        Matrix B1 = (N.field[h].inverse() * (Sh - I) * Y * K[t]).scaled(-half(p));
        M.arrows[js[0]] = coords(K[h], B0);
        M.arrows[js[1]] = coords(K[h], B1);
      } else if (!pt && !ph) {
        Matrix conj = N.field[h].inverse() * Sh * Y * St;
        for (int j : js) {
          Scalar z = J.datum().zeta_pow(-static_cast<long long>(J.quiver().arrows[j].gexp) * J.step(h));
          M.arrows[j] = (Y + conj.scaled(z)).scaled(half(p));
        }
      } else {
        fail(ErrorKind::AlgebraMismatch, "double arrow between pending vertices of different types");
      }
    }
  }
  auto errs = validate(J, M, jac_rel_);
  if (!errs.empty()) fail(ErrorKind::ValidationFailed, "phi image: " + errs.front());
  return M;
}

Morphism Morita::psi(const Morphism& f) const {
  Morphism g;
  for (size_t k = 0; k < f.size(); ++k) g.push_back(is_p1(vk_[k]) ? Matrix::direct_sum(f[k], f[k]) : f[k]);
  return g;
}

Morphism Morita::phi(const Morphism& g, const Representation& N, const Representation& N2) const {
  Morphism f;
  for (size_t k = 0; k < g.size(); ++k) {
    if (!is_p1(vk_[k])) {
      f.push_back(g[k]);
      continue;
    }
    const int kk = static_cast<int>(k);
    f.push_back(coords(kernel_basis(N2, kk), g[k] * kernel_basis(N, kk)));
  }
  return f;
}

Morphism Morita::epsilon(const Representation& M) const {
  const uint32_t p = sp_.A.p();
  Representation N = psi(M);
  Morphism e;
  for (size_t k = 0; k < vk_.size(); ++k) {
    const size_t n = M.dims[k];
    if (!is_p1(vk_[k])) {
      e.push_back(Matrix::identity(n, p));
      continue;
    }
    Matrix incl(2 * n, n, p);
    incl.set_block(0, 0, Matrix::identity(n, p));
    e.push_back(coords(kernel_basis(N, static_cast<int>(k)), incl));
  }
  return e;
}

Morphism Morita::eta(const Representation& N) const {
  const uint32_t p = cl_.A.p();
  const Scalar c = cl_.A.datum().c;
  Morphism e;
  for (size_t k = 0; k < vk_.size(); ++k) {
    const size_t n = N.dims[k];
    if (!is_p1(vk_[k])) {
      e.push_back(Matrix::identity(n, p));
      continue;
    }
    Matrix K = kernel_basis(N, static_cast<int>(k));
    Matrix P = (Matrix::identity(n, p) + N.arrows[cl_.loop_at[k]]).scaled(half(p));
    Matrix top = coords(K, P);
    Matrix bot = coords(K, P * N.field[k]).scaled(c.inv());
    e.push_back(Matrix::vstack({top, bot}, n, p));
  }
  return e;
}

bool Morita::roundtrip_jacobian(const Representation& M, std::string* why) const {
  try {
    Representation back = phi(psi(M));
    Morphism e = epsilon(M);
    if (!is_homomorphism(sp_.A, M, back, e)) {
      if (why) *why = "epsilon is not a homomorphism";
      return false;
    }
    if (!is_invertible(e)) {
      if (why) *why = "epsilon is not invertible";
      return false;
    }
    return true;
  } catch (const Error& err) {
    if (why) *why = err.what();
    return false;
  }
}

bool Morita::roundtrip_clannish(const Representation& N, std::string* why) const {
  try {
    Representation back = psi(phi(N));
    Morphism e = eta(N);
    if (!is_homomorphism(cl_.A, N, back, e)) {
      if (why) *why = "eta is not a homomorphism";
      return false;
    }
    if (!is_invertible(e)) {
      if (why) *why = "eta is not invertible";
      return false;
    }
    return true;
  } catch (const Error& err) {
    if (why) *why = err.what();
    return false;
  }
}

// ---------- verification ----------

size_t MoritaReport::roundtrip_failures() const {
  size_t n = 0;
  for (const auto& s : samples) n += (!s.valid || !s.roundtrip) ? 1 : 0;
  return n;
}

size_t MoritaReport::hom_failures() const {
  size_t n = 0;
  for (const auto& h : homs) n += h.dim != h.image_dim ? 1 : 0;
  return n;
}

size_t MoritaReport::indecomposability_failures() const {
  size_t n = 0;
  for (const auto& s : samples) n += s.indecomposability_preserved() ? 0 : 1;
  return n;
}

bool MoritaReport::ok() const {
  return roundtrip_failures() == 0 && hom_failures() == 0 && indecomposability_failures() == 0 &&
         jacobian_center == clannish_center && simples_jacobian == simples_clannish;
}

std::string MoritaReport::json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["seed"] = seed;
  j["ok"] = ok();
  j["algebra_dims"] = {{"jacobian", jacobian_dim}, {"clannish", clannish_dim}};
  j["center_dims"] = {{"jacobian", jacobian_center}, {"clannish", clannish_center}};
  j["simple_counts"] = {{"jacobian", simples_jacobian}, {"clannish", simples_clannish}};
  j["failures"] = {{"roundtrip", roundtrip_failures()}, {"hom", hom_failures()}, {"indecomposability", indecomposability_failures()}};
  j["samples"] = nlohmann::json::array();
  for (const auto& s : samples)
    j["samples"].push_back({{"side", s.side},
                            {"description", s.description},
                            {"dims", s.dims},
                            {"image_dims", s.image_dims},
                            {"valid", s.valid},
                            {"roundtrip", s.roundtrip},
                            {"indecomposable", s.indecomposable},
                            {"image_indecomposable", s.image_indecomposable},
                            {"error", s.error}});
  j["homs"] = nlohmann::json::array();
  for (const auto& h : homs)
    j["homs"].push_back({{"side", h.side}, {"first", h.first}, {"second", h.second}, {"dim", h.dim}, {"image_dim", h.image_dim}});
  return j.dump(2);
}

std::string MoritaReport::table() const {
  std::ostringstream os;
  size_t nj = 0, nc = 0;
  for (const auto& s : samples) (s.side == "jacobian" ? nj : nc)++;
  os << "algebra dims        jacobian " << jacobian_dim << "  clannish " << clannish_dim << "\n";
  os << "center dims         jacobian " << jacobian_center << "  clannish " << clannish_center << "\n";
  os << "simple modules      jacobian " << simples_jacobian << "  clannish " << simples_clannish << "\n";
  os << "samples             jacobian " << nj << "  clannish " << nc << "  seed " << seed << "\n";
  os << "round-trip failures " << roundtrip_failures() << "\n";
  os << "hom-dim mismatches  " << hom_failures() << " of " << homs.size() << "\n";
  os << "indecomposability   " << indecomposability_failures() << " mismatches\n";
  for (const auto& s : samples)
    if (!s.valid || !s.roundtrip || !s.indecomposability_preserved())
      os << "  FAIL " << s.side << " " << s.description << ": " << s.error << "\n";
  os << (ok() ? "PASS" : "FAIL") << " (" << seconds << " s)\n";
  return os.str();
}

namespace {

int indec_flag(const PathAlgebra& A, const Representation& M) {
  if (M.total() == 0) return 0;
  try {
    return is_indecomposable(A, M) ? 1 : 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalAlgorithmUnsupported) throw;
    return -1;
  }
}

}  // namespace

MoritaReport verify_equivalence(const Species& sp, const ClannishPresentation& cl, const SamplePlan& plan) {
  auto t0 = std::chrono::steady_clock::now();
  Morita F(sp, cl);
  const auto& QJ = F.jacobian();
  const auto& QC = F.clannish();
  MoritaReport rep;
  rep.seed = plan.seed;
  rep.jacobian_dim = QJ.dim();
  rep.clannish_dim = QC.dim();
  rep.jacobian_center = QJ.center_dim();
  rep.clannish_center = QC.center_dim();

  struct Item {
    std::string desc;
    Representation M;
  };
  std::vector<Item> jac, cla;
  auto sj = simples(QJ), sc = simples(QC);
  rep.simples_jacobian = sj.size();
  rep.simples_clannish = sc.size();
  const auto& JQ = sp.A.quiver();
  const auto& CQ = cl.A.quiver();
  for (size_t k = 0; k < sj.size(); ++k) jac.push_back({"simple " + JQ.vertices[k].name, sj[k]});
  auto pj = projectives(QJ);
  for (size_t k = 0; k < pj.size(); ++k) jac.push_back({"projective " + JQ.vertices[k].name, pj[k]});
  for (size_t k = 0; k < sc.size(); ++k) cla.push_back({"simple " + CQ.vertices[k].name, sc[k]});
  auto pc = projectives(QC);
  for (size_t k = 0; k < pc.size(); ++k) cla.push_back({"projective " + CQ.vertices[k].name, pc[k]});
  if (plan.strings)
    for (const auto& w : enumerate_strings(cl, plan.string_len)) {
      try {
        cla.push_back({"string " + word_str(cl.A, w.word), string_module(cl, w.word)});
      } catch (const Error&) {
      }
    }
  std::mt19937_64 rng(plan.seed);
  for (size_t i = 0; i < plan.random; ++i) {
    if (auto R = random_representation(QJ, rng, plan.max_dim)) jac.push_back({"random jacobian #" + std::to_string(i), *R});
    if (auto R = random_representation(QC, rng, plan.max_dim)) cla.push_back({"random clannish #" + std::to_string(i), *R});
  }

  std::vector<Representation> jimg(jac.size()), cimg(cla.size());
  std::vector<bool> jok(jac.size(), false), cok(cla.size(), false);
  for (size_t i = 0; i < jac.size(); ++i) {
    SampleResult s;
    s.side = "jacobian";
    s.description = jac[i].desc;
    s.dims = jac[i].M.dims;
    s.valid = validate(QJ, jac[i].M).empty();
    try {
      jimg[i] = F.psi(jac[i].M);
      s.image_dims = jimg[i].dims;
      s.roundtrip = F.roundtrip_jacobian(jac[i].M, &s.error);
      s.indecomposable = indec_flag(sp.A, jac[i].M);
      s.image_indecomposable = indec_flag(cl.A, jimg[i]);
      jok[i] = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
    rep.samples.push_back(s);
  }
  for (size_t i = 0; i < cla.size(); ++i) {
    SampleResult s;
    s.side = "clannish";
    s.description = cla[i].desc;
    s.dims = cla[i].M.dims;
    s.valid = validate(QC, cla[i].M).empty();
    try {
      cimg[i] = F.phi(cla[i].M);
      s.image_dims = cimg[i].dims;
      s.roundtrip = F.roundtrip_clannish(cla[i].M, &s.error);
      s.indecomposable = indec_flag(cl.A, cla[i].M);
      s.image_indecomposable = indec_flag(sp.A, cimg[i]);
      cok[i] = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
    rep.samples.push_back(s);
  }
  auto pairs = [&](const std::vector<Item>& src, const std::vector<Representation>& img, const std::vector<bool>& ok,
                   const PathAlgebra& A, const PathAlgebra& B, const std::string& side) {
    size_t count = 0;
    for (size_t i = 0; i < src.size() && count < plan.hom_pairs; ++i)
      for (size_t j = 0; j < src.size() && count < plan.hom_pairs; ++j) {
        if (!ok[i] || !ok[j] || (i + j) % 3 != 0) continue;
        HomCheck h{side, src[i].desc, src[j].desc, hom(A, src[i].M, src[j].M).dim(), hom(B, img[i], img[j]).dim()};
        rep.homs.push_back(h);
        ++count;
      }
  };
  pairs(jac, jimg, jok, sp.A, cl.A, "jacobian");
  pairs(cla, cimg, cok, cl.A, sp.A, "clannish");
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace jc
