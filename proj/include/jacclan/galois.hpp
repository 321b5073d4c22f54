#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jacclan/scalar.hpp"

namespace jc {

struct BaseField {
  uint32_t p = 0;  // 0 means Q
  static BaseField rationals() { return {0}; }
  static BaseField prime(uint32_t p) { return {p}; }
  static BaseField parse(const std::string& name);
  std::string name() const { return p ? "F" + std::to_string(p) : "Q"; }
  Scalar operator()(long long n) const { return Scalar(n).in_field(p); }
};

// E = F[v]/(v^degree - c) with rho(v) = zeta v.
// Subfields are indexed by their degree over F: F(v^(degree/k)) has degree k.
struct GaloisDatum {
  BaseField base;
  int degree = 1;
  Scalar c;
  Scalar zeta;

  uint32_t p() const { return base.p; }
  Scalar F(long long n) const { return base(n); }
  Scalar zeta_pow(long long k) const;
  bool is_subfield_degree(int k) const { return k >= 1 && degree % k == 0; }
  std::string str() const;
};

using DatumPtr = std::shared_ptr<const GaloisDatum>;

// Validated construction; c and zeta may be left empty for the deterministic search.
GaloisDatum make_datum(BaseField base, int degree, const Scalar* c = nullptr, const Scalar* zeta = nullptr);
DatumPtr make_datum_ptr(BaseField base, int degree, const Scalar* c = nullptr, const Scalar* zeta = nullptr);
// Datum from "field:degree[:c[:zeta]]", e.g. "F5:4:2:2" or "Q:2:-1".
DatumPtr parse_datum(const std::string& text);

struct FieldElement {
  DatumPtr datum;
  std::vector<Scalar> coords;  // coefficient of v^k

  static FieldElement zero(DatumPtr d);
  static FieldElement one(DatumPtr d);
  static FieldElement monomial(DatumPtr d, int k, Scalar coef = Scalar(1));
  int level() const;  // degree over F of the smallest subfield containing this element
  bool in_level(int k) const;
  bool is_zero() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inv() const;
  bool operator==(const FieldElement& o) const;
  std::string str() const;
};

// rho^exponent restricted to the subfield of the given degree.
struct GaloisElement {
  int level = 1;
  int exponent = 0;
  GaloisElement compose(const GaloisElement& o) const;
  GaloisElement inverse() const;
};

FieldElement apply_galois(const GaloisElement& g, const FieldElement& x);

// Eigenbasis of the degree-k1 subfield over the degree-k2 subfield: v^((degree/k1) j), j < k1/k2.
std::vector<FieldElement> eigenbasis(DatumPtr d, int k1, int k2);
std::vector<int> eigenbasis_exponents(const GaloisDatum& d, int k1, int k2);

}  // namespace jc
