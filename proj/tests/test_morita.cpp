#include "common.hpp"
#include "doctest.h"

using namespace jc;

namespace {

std::vector<Representation> sample_modules(const QuotientAlgebra& Q, uint64_t seed, size_t count) {
  std::vector<Representation> out = projectives(Q);
  for (auto& S : simples(Q)) out.push_back(S);
  std::mt19937_64 rng(seed);
  for (size_t t = 0; t < count; ++t)
    if (auto M = random_representation(Q, rng, 4)) out.push_back(*M);
  return out;
}

bool same_morphism(const Morphism& f, const Morphism& g) {
  if (f.size() != g.size()) return false;
  for (size_t k = 0; k < f.size(); ++k)
    if (!(f[k] == g[k])) return false;
  return true;
}

}  // namespace

TEST_CASE("vertex rules and dimension bookkeeping of the equivalence") {
  for (int k : {2, 3, 4, 5, 6, 7}) {
    auto b = fx::block(k);
    Morita m(b.species, b.clannish);
    const auto& J = b.species.A;
    for (const auto& M : sample_modules(m.jacobian(), 100 + k, 4)) {
      auto N = m.psi(M);
      for (size_t v = 0; v < M.dims.size(); ++v) {
        INFO("block " << k << " vertex " << v);
        switch (m.vertex_rule(static_cast<int>(v))) {
          case MoritaVertex::Identity:
          case MoritaVertex::Restrict:
            CHECK(N.dims[v] == M.dims[v]);
            break;
          case MoritaVertex::InduceL:
            CHECK(N.dims[v] == 2 * M.dims[v]);
            CHECK(J.weight(static_cast<int>(v)) == 1);
            break;
        }
      }
    }
  }
}

TEST_CASE("the functors respect identities and composition") {
  for (int k : {2, 4, 6, 7}) {
    auto b = fx::block(k);
    Morita m(b.species, b.clannish);
    const auto& J = b.species.A;
    const auto& C = b.clannish.A;
    auto mods = sample_modules(m.jacobian(), 200 + k, 3);
    for (const auto& M : mods) {
      CHECK(same_morphism(m.psi(identity_morphism(J, M)), identity_morphism(C, m.psi(M))));
      auto E = hom(J, M, M);
      for (size_t t = 0; t + 1 < E.dim() && t < 3; ++t) {
        const auto& f = E.basis[t];
        const auto& g = E.basis[t + 1];
        CHECK(same_morphism(m.psi(compose(f, g)), compose(m.psi(f), m.psi(g))));
      }
    }
    auto cmods = sample_modules(m.clannish(), 300 + k, 3);
    for (const auto& N : cmods) {
      CHECK(same_morphism(m.phi(identity_morphism(C, N), N, N), identity_morphism(J, m.phi(N))));
      auto E = hom(C, N, N);
      for (size_t t = 0; t + 1 < E.dim() && t < 3; ++t) {
        const auto& f = E.basis[t];
        const auto& g = E.basis[t + 1];
        CHECK(same_morphism(m.phi(compose(f, g), N, N), compose(m.phi(f, N, N), m.phi(g, N, N))));
      }
    }
  }
}

TEST_CASE("unit and counit are natural isomorphisms") {
  for (int k : {2, 4, 6, 7}) {
    auto b = fx::block(k);
    Morita m(b.species, b.clannish);
    const auto& J = b.species.A;
    auto mods = sample_modules(m.jacobian(), 400 + k, 2);
    for (size_t i = 0; i < mods.size() && i < 6; ++i)
      for (size_t j = 0; j < mods.size() && j < 6; ++j) {
        const auto& M = mods[i];
        const auto& M2 = mods[j];
        auto e1 = m.epsilon(M), e2 = m.epsilon(M2);
        CHECK(is_invertible(e1));
        CHECK(is_homomorphism(J, M, m.phi(m.psi(M)), e1));
        auto H = hom(J, M, M2);
        for (size_t t = 0; t < H.dim() && t < 2; ++t) {
          const auto& f = H.basis[t];
          auto ff = m.phi(m.psi(f), m.psi(M), m.psi(M2));
          CHECK(same_morphism(compose(e2, f), compose(ff, e1)));
        }
      }
    for (const auto& N : sample_modules(m.clannish(), 500 + k, 2)) {
      auto h = m.eta(N);
      CHECK(is_invertible(h));
      CHECK(is_homomorphism(b.clannish.A, N, m.psi(m.phi(N)), h));
    }
  }
}

TEST_CASE("block isomorphisms: pulling back along both maps is the identity") {
  for (int k : {1, 3, 5, 8, 9, 10}) {
    auto b = fx::block(k);
    auto iso = block_iso(b.species, b.clannish);
    INFO("block " << k);
    REQUIRE(iso.ok());
    auto J = b.species.jacobian();
    auto C = b.clannish.algebra();
    for (const auto& M : sample_modules(J, 600 + k, 4)) {
      auto N = pullback(iso.psi, M);
      CHECK(validate(C, N).empty());
      auto back = pullback(iso.phi, N);
      for (size_t a = 0; a < M.arrows.size(); ++a) CHECK(back.arrows[a] == M.arrows[a]);
      for (size_t v = 0; v < M.field.size(); ++v) CHECK(back.field[v] == M.field[v]);
    }
    for (const auto& N : sample_modules(C, 700 + k, 4)) {
      auto M = pullback(iso.phi, N);
      CHECK(validate(J, M).empty());
      auto back = pullback(iso.psi, M);
      for (size_t a = 0; a < N.arrows.size(); ++a) CHECK(back.arrows[a] == N.arrows[a]);
    }
  }
  auto b2 = fx::block(2);
  CHECK_THROWS_WITH_AS(block_iso(b2.species, b2.clannish), doctest::Contains("AlgebraMismatch"), Error);
}

TEST_CASE("Morita invariants agree on both sides") {
  for (int k = 1; k <= 10; ++k) {
    auto b = fx::block(k);
    auto J = b.species.jacobian();
    auto C = b.clannish.algebra();
    INFO("block " << k);
    CHECK(simples(J).size() == simples(C).size());
    CHECK(J.center_dim() == C.center_dim());
  }
}

TEST_CASE("verify_equivalence on a small plan") {
  SamplePlan plan;
  plan.random = 4;
  plan.max_dim = 4;
  plan.hom_pairs = 10;
  plan.string_len = 3;
  for (int k : {2, 7}) {
    auto b = fx::block(k);
    auto r = verify_equivalence(b.species, b.clannish, plan);
    INFO("block " << k << "\n" << r.table());
    CHECK(r.ok());
    CHECK(r.roundtrip_failures() == 0);
    CHECK(r.hom_failures() == 0);
    CHECK(r.indecomposability_failures() == 0);
    CHECK(r.samples.size() >= plan.random);
    CHECK(r.json() == verify_equivalence(b.species, b.clannish, plan).json());
  }
}

TEST_CASE("psi rejects modules that violate the Jacobian relations") {
  auto b = fx::block(6);
  Morita m(b.species, b.clannish);
  auto P = projectives(m.jacobian());
  Representation M = P[0];
  for (auto& X : M.arrows)
    for (size_t i = 0; i < X.rows(); ++i)
      for (size_t j = 0; j < X.cols(); ++j) X.at(i, j) = X.at(i, j) + b.species.A.F(1);
  REQUIRE_FALSE(validate(m.jacobian(), M).empty());
  CHECK_THROWS_WITH_AS(m.psi(M), doctest::Contains("ValidationFailed"), Error);
}
