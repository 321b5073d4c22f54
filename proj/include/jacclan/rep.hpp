#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jacclan/matrix.hpp"
#include "jacclan/pathalg.hpp"
#include "jacclan/quotient.hpp"

namespace jc {

// Representation over F: vertex spaces with the action of the vertex field generator
// v^step, and F-linear arrow maps that are semilinear for the modulating function.
struct Representation {
  std::vector<size_t> dims;    // F-dimension per vertex
  std::vector<Matrix> field;   // action of v^step(k) on vertex k
  std::vector<Matrix> arrows;  // dims[head] x dims[tail]

  size_t total() const;
  size_t offset(int v) const;
  std::vector<size_t> field_dims(const PathAlgebra& A) const;  // dims[k] / weight(k)
};

Representation zero_rep(const PathAlgebra& A);
// Companion action of v^step on F_k with basis 1, y, ..., y^(w-1).
Matrix field_companion(const PathAlgebra& A, int k);

// Operator of a path from the tail space to the head space.
Matrix path_operator(const PathAlgebra& A, const Representation& M, const Path& p);
// Operator of an element on the whole space.
Matrix element_operator(const PathAlgebra& A, const Representation& M, const Element& x);
// Operator of v^e at vertex k.
Matrix decoration_operator(const PathAlgebra& A, const Representation& M, int k, int e);

// Defining relations of a quotient, as elements of the tensor algebra.
std::vector<Element> defining_relations(const QuotientAlgebra& Q);
// Itemized failures; empty when valid.
std::vector<std::string> validate(const PathAlgebra& A, const Representation& M, const std::vector<Element>& relations);
std::vector<std::string> validate(const QuotientAlgebra& Q, const Representation& M);

using Morphism = std::vector<Matrix>;  // one map per vertex, dims'[k] x dims[k]

struct HomSpace {
  std::vector<Morphism> basis;
  size_t dim() const { return basis.size(); }
};

bool is_homomorphism(const PathAlgebra& A, const Representation& M, const Representation& N, const Morphism& f);
HomSpace hom(const PathAlgebra& A, const Representation& M, const Representation& N);
Morphism compose(const Morphism& g, const Morphism& f);
Morphism identity_morphism(const PathAlgebra& A, const Representation& M);
bool is_invertible(const Morphism& f);
Matrix total_matrix(const Morphism& f);

Representation direct_sum(const Representation& M, const Representation& N);
// Subrepresentation on the column spans of the given per-vertex bases (assumed invariant).
Representation subrepresentation(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& basis);
Representation quotient(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& basis);
// Smallest subrepresentation containing the given per-vertex vectors (columns).
std::vector<Matrix> generated_subspace(const PathAlgebra& A, const Representation& M, const std::vector<Matrix>& vectors);

// One simple per vertex: an indecomposable summand of the top of Lambda e_k.
std::vector<Representation> simples(const QuotientAlgebra& Q);
// Left modules Lambda e_k on the surviving-path basis.
std::vector<Representation> projectives(const QuotientAlgebra& Q);

enum class Iso { Yes, No, Inconclusive };
const char* iso_name(Iso r);

struct LocalTest {
  bool local = false;
  size_t end_dim = 0;
  size_t rad_dim = 0;            // valid when local
  std::vector<Matrix> end_basis; // total-space matrices
  std::vector<Matrix> rad_basis; // valid when local
  std::optional<Matrix> splitter;  // endomorphism whose power splits M when not local
};
// Decides whether End(M) is local; throws RadicalAlgorithmUnsupported when undecided.
LocalTest local_test(const PathAlgebra& A, const Representation& M, uint64_t seed = 1);
bool is_indecomposable(const PathAlgebra& A, const Representation& M);
std::vector<Representation> decompose(const PathAlgebra& A, const Representation& M);
Iso is_isomorphic(const PathAlgebra& A, const Representation& M, const Representation& N, uint64_t seed = 1, size_t budget = 4096);

// Seeded random valid module: quotient or submodule of a small sum of projectives.
std::optional<Representation> random_representation(const QuotientAlgebra& Q, std::mt19937_64& rng, size_t max_vertex_dim,
                                                    int attempts = 64);

std::string representation_json(const PathAlgebra& A, const Representation& M);
Representation representation_from_json(const PathAlgebra& A, const std::string& text);

}  // namespace jc
