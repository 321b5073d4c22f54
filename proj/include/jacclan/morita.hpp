#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jacclan/rep.hpp"
#include "jacclan/surface.hpp"

namespace jc {

// Ring homomorphism between tensor algebras given on generators: v^step e_k and the arrows.
struct AlgebraMap {
  const PathAlgebra* src = nullptr;
  const PathAlgebra* dst = nullptr;
  std::vector<Element> dec;     // image of v^step(k) e_k per vertex
  std::vector<Element> arrows;  // image of each arrow
  Element apply(const Element& x) const;
};

// Module over the source algebra obtained by restricting a target module along the map.
Representation pullback(const AlgebraMap& m, const Representation& N);

struct BlockIsoResult {
  AlgebraMap phi;  // Jacobian -> clannish
  AlgebraMap psi;  // clannish -> Jacobian
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Explicit isomorphism for presentations without weight-one pending vertices, checked mechanically.
BlockIsoResult block_iso(const Species& sp, const ClannishPresentation& cl);

enum class MoritaVertex { Identity, InduceL, Restrict };

class Morita {
 public:
  Morita(const Species& sp, const ClannishPresentation& cl);

  const QuotientAlgebra& jacobian() const { return jac_; }
  const QuotientAlgebra& clannish() const { return cla_; }
  MoritaVertex vertex_rule(int k) const { return vk_[k]; }

  Representation psi(const Representation& M) const;  // Jacobian -> clannish, validated
  Representation phi(const Representation& N) const;  // clannish -> Jacobian, validated
  Morphism psi(const Morphism& f) const;
  Morphism phi(const Morphism& g, const Representation& N, const Representation& N2) const;  // g: N -> N2
  Morphism epsilon(const Representation& M) const;  // M -> phi(psi(M))
  Morphism eta(const Representation& N) const;      // N -> psi(phi(N))
  bool roundtrip_jacobian(const Representation& M, std::string* why = nullptr) const;
  bool roundtrip_clannish(const Representation& N, std::string* why = nullptr) const;

 private:
  Matrix kernel_basis(const Representation& N, int k) const;
  Scalar theta_scalar(int gexp) const;  // image of u under rho^gexp, divided by u

  const Species& sp_;
  const ClannishPresentation& cl_;
  QuotientAlgebra jac_, cla_;
  std::vector<Element> jac_rel_, cla_rel_;
  std::vector<MoritaVertex> vk_;
  std::vector<int> bar_cla_;                   // clannish arrow per bar arrow
  std::vector<std::vector<int>> bar_jac_;      // Jacobian arrows per bar arrow, plain one first
};

struct SamplePlan {
  size_t random = 20;
  size_t max_dim = 6;
  uint64_t seed = 1;
  size_t string_len = 5;
  size_t hom_pairs = 60;
  bool strings = true;
};

struct SampleResult {
  std::string side;  // "jacobian" or "clannish"
  std::string description;
  std::vector<size_t> dims, image_dims;
  bool valid = false;
  bool roundtrip = false;
  int indecomposable = -1;        // -1 when undecided
  int image_indecomposable = -1;
  std::string error;
  bool indecomposability_preserved() const { return indecomposable == image_indecomposable; }
};

struct HomCheck {
  std::string side, first, second;
  size_t dim = 0, image_dim = 0;
};

struct MoritaReport {
  uint64_t seed = 0;
  std::vector<SampleResult> samples;
  std::vector<HomCheck> homs;
  size_t jacobian_dim = 0, clannish_dim = 0;
  size_t jacobian_center = 0, clannish_center = 0;
  size_t simples_jacobian = 0, simples_clannish = 0;
  double seconds = 0;
  size_t roundtrip_failures() const;
  size_t hom_failures() const;
  size_t indecomposability_failures() const;
  bool ok() const;
  std::string json() const;
  std::string table() const;
};

MoritaReport verify_equivalence(const Species& sp, const ClannishPresentation& cl, const SamplePlan& plan);

}  // namespace jc
