#include "common.hpp"
#include "doctest.h"

using namespace jc;

namespace {

// Random automorphism of a vertex space commuting with its field action.
Matrix random_centralizer_unit(const Matrix& F, std::mt19937_64& rng) {
  const size_t n = F.rows();
  const uint32_t p = F.field();
  // unknown X as a vector of n*n entries; equations X F - F X = 0
  Matrix E(n * n, n * n, p);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) {
        E.at(i * n + j, i * n + l) = E.at(i * n + j, i * n + l) + F.at(l, j);
        E.at(i * n + j, l * n + j) = E.at(i * n + j, l * n + j) - F.at(i, l);
      }
  Matrix K = E.nullspace();
  for (;;) {
    Matrix x(n * n, 1, p);
    for (size_t c = 0; c < K.cols(); ++c) x = x + K.col(c).scaled(Scalar::mod(p, static_cast<long long>(rng() % p)));
    Matrix G(n, n, p);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) G.at(i, j) = x.at(i * n + j, 0);
    if (G.rank() == n) return G;
  }
}

Representation twist(const PathAlgebra& A, const Representation& M, std::mt19937_64& rng) {
  const auto& Q = A.quiver();
  std::vector<Matrix> g;
  for (size_t k = 0; k < Q.vertices.size(); ++k) g.push_back(random_centralizer_unit(M.field[k], rng));
  Representation N = M;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    N.arrows[a] = g[ar.head] * M.arrows[a] * g[ar.tail].inverse();
  }
  return N;
}

}  // namespace

TEST_CASE("projectives: dimensions add up to the algebra and are valid modules") {
  for (int k = 1; k <= 10; ++k) {
    auto b = fx::block(k);
    for (int side = 0; side < 2; ++side) {
      QuotientAlgebra Q = side ? b.clannish.algebra() : b.species.jacobian();
      INFO("block " << k << " side " << side);
      auto P = projectives(Q);
      size_t total = 0;
      for (const auto& M : P) {
        total += M.total();
        CHECK(validate(Q, M).empty());
      }
      CHECK(total == Q.dim());
    }
  }
}

TEST_CASE("simples: one per vertex, of dimension the vertex weight, indecomposable and pairwise distinct") {
  for (int k : {1, 2, 4, 5, 9, 10}) {
    auto b = fx::block(k);
    for (int side = 0; side < 2; ++side) {
      QuotientAlgebra Q = side ? b.clannish.algebra() : b.species.jacobian();
      const auto& A = Q.algebra();
      auto S = simples(Q);
      REQUIRE(S.size() == A.quiver().vertices.size());
      for (size_t v = 0; v < S.size(); ++v) {
        INFO("block " << k << " vertex " << v);
        CHECK(validate(Q, S[v]).empty());
        CHECK(is_indecomposable(A, S[v]));
        for (size_t u = 0; u < S.size(); ++u) CHECK((S[v].dims[u] > 0) == (u == v));
        for (size_t u = 0; u < v; ++u) CHECK(is_isomorphic(A, S[u], S[v]) == Iso::No);
      }
    }
  }
}

TEST_CASE("validation flags broken relations") {
  auto b = fx::block(1);
  auto J = b.species.jacobian();
  auto P = projectives(J);
  Representation M = P[0];
  bool changed = false;
  for (auto& X : M.arrows)
    if (X.rows() && X.cols()) {
      for (size_t i = 0; i < X.rows(); ++i)
        for (size_t j = 0; j < X.cols(); ++j) X.at(i, j) = X.at(i, j) + J.algebra().F(1);
      changed = true;
      break;
    }
  REQUIRE(changed);
  CHECK_FALSE(validate(J, M).empty());
}

TEST_CASE("element operators form a ring map and kill the Jacobian relations") {
  std::mt19937_64 rng(31);
  for (int k : {2, 4, 5, 6, 7, 10}) {
    auto b = fx::block(k);
    auto J = b.species.jacobian();
    const auto& A = J.algebra();
    for (int t = 0; t < 3; ++t) {
      auto M = random_representation(J, rng, 4);
      if (!M) continue;
      for (const auto& d : b.species.derivatives()) CHECK(element_operator(A, *M, d).is_zero());
      const auto& Q = A.quiver();
      for (size_t a = 0; a < Q.arrows.size(); ++a)
        for (size_t c = 0; c < Q.arrows.size(); ++c) {
          if (Q.arrows[a].tail != Q.arrows[c].head) continue;
          Element x = A.mul(A.arrow(static_cast<int>(a)), A.e(Q.arrows[a].tail, A.step(Q.arrows[a].tail)));
          Element y = A.arrow(static_cast<int>(c));
          CHECK(element_operator(A, *M, A.mul(x, y)) == element_operator(A, *M, x) * element_operator(A, *M, y));
        }
    }
  }
}

TEST_CASE("hom is additive in the first argument and composition preserves homomorphisms") {
  std::mt19937_64 rng(41);
  for (int k : {1, 3, 5, 9}) {
    auto b = fx::block(k);
    auto Q = b.clannish.algebra();
    const auto& A = Q.algebra();
    auto P = projectives(Q);
    auto S = simples(Q);
    for (size_t i = 0; i < P.size(); ++i)
      for (size_t j = 0; j < P.size(); ++j) {
        Representation sum = direct_sum(P[i], P[j]);
        CHECK(validate(Q, sum).empty());
        for (const auto& N : S) CHECK(hom(A, sum, N).dim() == hom(A, P[i], N).dim() + hom(A, P[j], N).dim());
      }
    // Hom(Lambda e_k, S) is e_k S
    for (size_t i = 0; i < P.size(); ++i)
      for (size_t j = 0; j < S.size(); ++j) CHECK(hom(A, P[i], S[j]).dim() == S[j].dims[i]);
    for (size_t i = 0; i < P.size(); ++i) {
      auto H1 = hom(A, P[i], P[i]);
      for (size_t t = 0; t + 1 < H1.dim() && t < 4; ++t) CHECK(is_homomorphism(A, P[i], P[i], compose(H1.basis[t], H1.basis[t + 1])));
      CHECK(is_homomorphism(A, P[i], P[i], identity_morphism(A, P[i])));
    }
  }
}

TEST_CASE("decomposition recovers the summands of a direct sum") {
  for (int k : {1, 2, 5, 10}) {
    auto b = fx::block(k);
    auto Q = b.species.jacobian();
    const auto& A = Q.algebra();
    auto P = projectives(Q);
    for (size_t i = 0; i < P.size(); ++i) {
      const size_t j = (i + 1) % P.size();
      auto parts = decompose(A, direct_sum(P[i], P[j]));
      INFO("block " << k << " pair " << i << "," << j);
      REQUIRE(parts.size() == 2);
      bool ok = (is_isomorphic(A, parts[0], P[i]) == Iso::Yes && is_isomorphic(A, parts[1], P[j]) == Iso::Yes) ||
                (is_isomorphic(A, parts[0], P[j]) == Iso::Yes && is_isomorphic(A, parts[1], P[i]) == Iso::Yes);
      CHECK(ok);
    }
  }
}

TEST_CASE("isomorphism test detects base changes") {
  std::mt19937_64 rng(53);
  for (int k : {2, 4, 6}) {
    auto b = fx::block(k);
    auto Q = b.species.jacobian();
    const auto& A = Q.algebra();
    for (const auto& M : projectives(Q)) {
      Representation N = twist(A, M, rng);
      CHECK(validate(Q, N).empty());
      CHECK(is_isomorphic(A, M, N) == Iso::Yes);
      CHECK(hom(A, M, M).dim() == hom(A, N, N).dim());
    }
  }
}

TEST_CASE("representation JSON round trip") {
  std::mt19937_64 rng(61);
  for (int k : {1, 5, 8, 10}) {
    auto b = fx::block(k);
    auto Q = b.clannish.algebra();
    const auto& A = Q.algebra();
    for (int t = 0; t < 3; ++t) {
      auto M = random_representation(Q, rng, 4);
      if (!M) continue;
      Representation N = representation_from_json(A, representation_json(A, *M));
      CHECK(N.dims == M->dims);
      for (size_t a = 0; a < M->arrows.size(); ++a) CHECK(N.arrows[a] == M->arrows[a]);
      CHECK(validate(Q, N).empty());
    }
  }
  auto b = fx::block(1);
  CHECK_THROWS_AS(representation_from_json(b.species.A, "{\"dims\": [1]}"), Error);
}
