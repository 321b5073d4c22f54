// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "common.hpp"
#include "oracle.hpp"
#include "pentagon.hpp"
#include "strings_table.hpp"
#include "tables.hpp"

using namespace jc;

namespace {

// Time limits in seconds, and sample sizes.
constexpr double kC1Seconds = 1.0;
constexpr double kC2Seconds = 5.0;
constexpr double kC4Seconds = 60.0;
constexpr double kC9Seconds = 300.0;
constexpr size_t kC4Random = 20;
constexpr size_t kC4MaxDim = 6;
constexpr size_t kC10Samples = 100;
constexpr size_t kC10MaxLength = 2;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<std::string> kSurfaces = {"digon_two_orbifold.json", "pentagon_tau.json", "pentagon_sigma.json",
                                            "hexagon_one_orbifold.json"};

std::vector<std::vector<int>> weight_choices(const Triangulation& t) {
  size_t n = 0;
  for (const auto& a : t.arcs) n += a.pending ? 1 : 0;
  std::vector<std::vector<int>> out;
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    std::vector<int> w;
    for (size_t i = 0; i < n; ++i) w.push_back((mask >> i) & 1 ? 4 : 1);
    out.push_back(w);
  }
  return out;
}

std::string dims_str(const std::vector<size_t>& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

Outcome c1_derivative_tables() {
  Outcome o;
  auto t0 = Clock::now();
  for (int k = 1; k <= 10; ++k)
    for (const auto& xi : block_cocycles(k)) {
      auto b = fx::block(k, xi);
      auto want = tables::block_derivatives(k, xi, b.species);
      auto ds = b.species.derivatives();
      o.require(ds.size() == want.size(), "block " + std::to_string(k) + ": arrow count");
      for (size_t a = 0; a < ds.size() && a < want.size(); ++a) {
        const auto& name = b.species.A.quiver().arrows[a].name;
        o.require(want.count(name) && ds[a] == want.at(name), "block " + std::to_string(k) + ": d_" + name);
      }
    }
  const double s = since(t0);
  o.require(s < kC1Seconds, "took " + std::to_string(s) + " s");
  o.notes.push_back(std::to_string(s) + " s");
  return o;
}

Outcome c2_dimension_oracles() {
  Outcome o;
  auto t0 = Clock::now();
  std::ostringstream dims;
  for (int k = 1; k <= 10; ++k) {
    auto b = fx::block(k);
    const size_t jd = b.species.jacobian().dim(), cd = b.clannish.algebra().dim();
    const size_t jo = oracle::jacobian_dim(b.species.A, b.species.derivatives()), co = oracle::clannish_dim(b.clannish);
    const std::string tag = "block " + std::to_string(k);
    o.require(jd == jo, tag + " jacobian " + std::to_string(jd) + " vs oracle " + std::to_string(jo));
    o.require(cd == co, tag + " clannish " + std::to_string(cd) + " vs oracle " + std::to_string(co));
    if (k == 1 || k == 3 || k == 5 || k == 8 || k == 9 || k == 10) o.require(jd == cd, tag + ": dims differ");
    if (k == 8) o.require(jd == 6 && cd == 6, "block 8 dims");
    if (k == 9) o.require(jd == 10 && cd == 10, "block 9 dims");
    dims << k << ":" << jd << "/" << cd << " ";
  }
  const double s = since(t0);
  o.require(s < kC2Seconds, "took " + std::to_string(s) + " s");
  o.notes.push_back(dims.str() + std::to_string(s) + " s");
  return o;
}

Outcome c3_block_isomorphisms() {
  Outcome o;
  for (int k : {1, 3, 5, 8, 9, 10})
    for (const auto& xi : block_cocycles(k)) {
      auto b = fx::block(k, xi);
      auto r = block_iso(b.species, b.clannish);
      for (const auto& f : r.failures) o.require(false, "block " + std::to_string(k) + ": " + f);
    }
  return o;
}

Outcome c4_block_morita() {
  Outcome o;
  auto t0 = Clock::now();
  SamplePlan plan;
  plan.random = kC4Random;
  plan.max_dim = kC4MaxDim;
  size_t samples = 0, homs = 0;
  for (int k : {2, 4, 6, 7})
    for (const auto& xi : block_cocycles(k)) {
      auto b = fx::block(k, xi);
      auto r = verify_equivalence(b.species, b.clannish, plan);
      const std::string tag = "block " + std::to_string(k);
      size_t rj = 0, rc = 0, simples_seen = 0, proj_seen = 0;
      for (const auto& s : r.samples) {
        if (s.description.rfind("random jacobian", 0) == 0) ++rj;
        if (s.description.rfind("random clannish", 0) == 0) ++rc;
        if (s.description.rfind("simple", 0) == 0) ++simples_seen;
        if (s.description.rfind("projective", 0) == 0) ++proj_seen;
        if (s.description.rfind("random", 0) == 0)
          for (size_t d : s.dims) o.require(d <= kC4MaxDim, tag + ": " + s.description + " exceeds the dimension bound");
        o.require(s.valid, tag + ": invalid sample " + s.description);
        o.require(s.roundtrip, tag + ": round trip fails on " + s.side + " " + s.description + " " + s.error);
      }
      o.require(rj >= kC4Random && rc >= kC4Random, tag + ": only " + std::to_string(rj) + "/" + std::to_string(rc) + " random samples");
      o.require(simples_seen == r.simples_jacobian + r.simples_clannish, tag + ": simples missing");
      o.require(proj_seen > 0, tag + ": projectives missing");
      o.require(r.hom_failures() == 0, tag + ": hom dimension changes");
      samples += r.samples.size();
      homs += r.homs.size();
    }
  const double s = since(t0);
  o.require(s < kC4Seconds, "took " + std::to_string(s) + " s");
  o.notes.push_back(std::to_string(samples) + " samples, " + std::to_string(homs) + " hom pairs, " + std::to_string(s) + " s");
  return o;
}

Outcome c5_string_census() {
  Outcome o;
  auto b = fx::block(6);
  const auto& c = b.clannish;
  const auto& A = c.A;
  auto Q = c.algebra();
  auto want = strings_table::table_strings(6, c, 2);
  auto census = enumerate_families(c, 2);
  std::set<std::string> got_keys, want_keys;
  for (const auto& wc : census) got_keys.insert(canonical_string_key(A, wc.word));
  for (const auto* list : {&want.asym, &want.sym})
    for (const auto& s : *list) want_keys.insert(canonical_string_key(A, parse_word(A, s)));
  o.require(got_keys == want_keys, "enumerated strings differ from the table");
  std::vector<Representation> mods;
  for (const auto& wc : census) {
    const std::string w = word_str(A, wc.word);
    auto M = string_module(c, wc.word);
    o.require(validate(Q, M).empty(), "string " + w + " does not validate");
    o.require(is_indecomposable(A, M), "string " + w + " decomposes");
    mods.push_back(std::move(M));
  }
  for (size_t i = 0; i < mods.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (mods[i].dims == mods[j].dims)
        o.require(is_isomorphic(A, mods[i], mods[j]) == Iso::No,
                  word_str(A, census[i].word) + " and " + word_str(A, census[j].word) + " not separated");

  auto N = string_module(c, parse_word(A, "g^-1 s3* b^-1 s2* b s3* g"));
  const int v3 = A.quiver().vertex_index("3");
  o.require(N.field_dims(A) == std::vector<size_t>{2, 2, 4}, "example L-dimension vector " + dims_str(N.field_dims(A)));
  o.require(element_operator(A, N, A.parse("s2.s2")) == element_operator(A, N, A.parse("u.e2")), "s2 squared is not u");
  o.require(element_operator(A, N, A.parse("s3.s3")) == element_operator(A, N, A.parse("e3")), "s3 squared is not 1");
  Morita m(b.species, b.clannish);
  auto M = m.phi(N);
  const auto& J = b.species.A;
  Matrix S3 = N.arrows[A.quiver().arrow_index("s3")];
  const size_t ker = N.dims[v3] - (S3 - Matrix::identity(N.dims[v3], A.p())).rank();
  o.require(M.dims[J.quiver().vertex_index("3")] == ker, "image at 3 is not ker(s3 - 1)");
  o.require(M.field_dims(J)[J.quiver().vertex_index("2")] == 1, "image at 2 is not an E-line");
  o.require(is_indecomposable(J, M), "image decomposes");
  o.notes.push_back(std::to_string(census.size()) + " strings, example image " + dims_str(M.dims));
  return o;
}

Outcome c6_bands() {
  Outcome o;
  for (int k = 1; k <= 10; ++k) {
    auto b = fx::block(k);
    const auto& c = b.clannish;
    auto bands = enumerate_bands(c, 12);
    const std::string tag = "block " + std::to_string(k);
    if (k == 1 || k == 2 || k == 3 || k == 8 || k == 9) {
      o.require(bands.empty(), tag + ": unexpected bands");
      continue;
    }
    o.require(bands.size() == 1, tag + ": " + std::to_string(bands.size()) + " band classes");
    if (bands.size() != 1) continue;
    o.require(bands[0].symmetric, tag + ": band is not symmetric");
    const std::string B = strings_table::beta_name(c);
    o.require(canonical_band_key(c.A, bands[0].word) == canonical_band_key(c.A, parse_word(c.A, B + " s3* " + B + "^-1 s2*")),
              tag + ": band " + word_str(c.A, bands[0].word));
  }
  return o;
}

Outcome c7_pentagon() {
  Outcome o;
  auto tau = load_triangulation(fx::data("pentagon_tau.json"));
  auto sigma = load_triangulation(fx::data("pentagon_sigma.json"));
  for (const auto& w : std::vector<std::vector<int>>{{1, 1}, {1, 4}, {4, 1}, {4, 4}})
    for (const auto& f : pentagon::check_arbitrary(tau, sigma, w, fx::deg4())) o.require(false, f);
  Scalar cq(-1);
  auto gauss = make_datum_ptr(BaseField::rationals(), 2, &cq, nullptr);
  for (const auto& f : pentagon::check_constant(tau, sigma, gauss)) o.require(false, f);
  return o;
}

Outcome c8_cohomology() {
  Outcome o;
  size_t pairs = 0;
  std::vector<Triangulation> ts;
  for (const auto& f : kSurfaces) ts.push_back(load_triangulation(fx::data(f)));
  for (int k = 1; k <= 10; ++k) ts.push_back(block_triangulation(k));
  for (const auto& t : ts) {
    auto cc = chain_complex(t);
    if (cc.d2.cols() > 0) o.require((cc.d1 * cc.d2).is_zero(), "d1 d2 is not zero");
  }
  for (const auto& f : kSurfaces) {
    auto t = load_triangulation(fx::data(f));
    for (const auto& w : weight_choices(t)) {
      t.set_weights(w);
      t.cocycle.clear();
      auto base = build_species(t, fx::deg4()).jacobian();
      const auto bar = quiver_bar(t);
      for (size_t v = 0; v < t.arcs.size(); ++v) {
        std::map<std::string, int> xi;
        for (const auto& b : bar) xi[b.name] = ((b.head == static_cast<int>(v)) + (b.tail == static_cast<int>(v))) & 1;
        Triangulation t2 = t;
        t2.cocycle = xi;
        o.require(cohomologous(t, std::vector<int>(bar.size(), 0), cocycle_vector(t, xi)), f + ": coboundary not cohomologous to zero");
        auto J = build_species(t2, fx::deg4()).jacobian();
        o.require(J.dim() == base.dim() && J.grade_dims() == base.grade_dims(), f + ": dims differ for vertex " + t.arcs[v].id);
        ++pairs;
      }
    }
  }
  o.notes.push_back(std::to_string(pairs) + " cohomologous pairs");
  return o;
}

Outcome c9_global_morita() {
  Outcome o;
  auto t0 = Clock::now();
  SamplePlan plan;
  size_t runs = 0, samples = 0;
  for (const char* f : {"hexagon_one_orbifold.json", "pentagon_tau.json", "pentagon_sigma.json"}) {
    auto t = load_triangulation(fx::data(f));
    for (const auto& w : weight_choices(t)) {
      t.set_weights(w);
      auto sp = build_species(t, fx::deg4());
      auto cl = build_clannish(t, fx::deg4());
      auto r = verify_equivalence(sp, cl, plan);
      std::string tag = std::string(f) + " weights";
      for (int x : w) tag += " " + std::to_string(x);
      o.require(r.roundtrip_failures() == 0, tag + ": " + std::to_string(r.roundtrip_failures()) + " round-trip failures");
      o.require(r.hom_failures() == 0, tag + ": hom dimension changes");
      o.require(r.indecomposability_failures() == 0, tag + ": indecomposability changes");
      for (const auto& s : r.samples) o.require(s.indecomposable >= 0 && s.image_indecomposable >= 0, tag + ": undecided " + s.description);
      ++runs;
      samples += r.samples.size();
    }
  }
  const double s = since(t0);
  o.require(s < kC9Seconds, "took " + std::to_string(s) + " s");
  o.notes.push_back(std::to_string(runs) + " surfaces, " + std::to_string(samples) + " samples, " + std::to_string(s) + " s");
  return o;
}

Outcome c10_projectors() {
  Outcome o;
  std::mt19937_64 rng(2024);
  size_t grades = 0;
  for (int k = 1; k <= 10; ++k) {
    auto b = fx::block(k);
    const auto& A = b.species.A;
    const size_t n = A.quiver().vertices.size();
    for (size_t len = 0; len <= kC10MaxLength; ++len)
      for (size_t h = 0; h < n; ++h)
        for (size_t t = 0; t < n; ++t) {
          Grade g{static_cast<int>(h), static_cast<int>(t), len};
          if (A.grade_basis(g).empty()) continue;
          ++grades;
          const int m = std::gcd(A.weight(g.head), A.weight(g.tail));
          for (size_t s = 0; s < kC10Samples; ++s) {
            Element x = fx::random_in_grade(A, g, rng);
            Element sum;
            for (int e = 0; e < m; ++e) {
              Element pe = A.semilinear_part(x, e);
              sum = add(sum, pe);
              if (!(A.semilinear_part(pe, e) == pe)) o.require(false, "block " + std::to_string(k) + ": projector not idempotent");
              for (int f = 0; f < m; ++f)
                if (f != e && !is_zero(A.semilinear_part(pe, f))) o.require(false, "block " + std::to_string(k) + ": projectors not orthogonal");
            }
            if (!is_zero(sub(sum, x))) o.require(false, "block " + std::to_string(k) + ": projectors do not sum to the identity");
          }
        }
    for (const auto& xi : block_cocycles(k)) {
      auto bx = fx::block(k, xi);
      const auto& B = bx.species.A;
      auto ds = bx.species.derivatives();
      for (size_t a = 0; a < ds.size(); ++a)
        o.require(B.semilinear_part(ds[a], -B.quiver().arrows[a].gexp) == ds[a],
                  "block " + std::to_string(k) + ": derivative of " + B.quiver().arrows[a].name + " is not semilinear");
    }
  }
  o.notes.push_back(std::to_string(grades) + " grades x " + std::to_string(kC10Samples) + " samples");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 derivative tables of blocks 1-10", c1_derivative_tables},
      {"C2 dimension oracles for the 20 block algebras", c2_dimension_oracles},
      {"C3 explicit block isomorphisms", c3_block_isomorphisms},
      {"C4 block Morita round trips", c4_block_morita},
      {"C5 block 6 string census", c5_string_census},
      {"C6 bands of the blocks", c6_bands},
      {"C7 pentagon tables", c7_pentagon},
      {"C8 cocycles and cohomology", c8_cohomology},
      {"C9 global Morita on glued surfaces", c9_global_morita},
      {"C10 projector suite", c10_projectors},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::string detail;
    for (size_t i = 0; i < o.notes.size() && i < 5; ++i) detail += (i ? "; " : "") + o.notes[i];
    if (o.notes.size() > 5) detail += "; +" + std::to_string(o.notes.size() - 5) + " more";
    std::printf("[%s] %s%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), detail.empty() ? "" : " :: ", detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
