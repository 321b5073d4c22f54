#pragma once

#include <random>
#include <string>

#include "jacclan/morita.hpp"
#include "jacclan/stringband.hpp"

namespace fx {

using namespace jc;

inline DatumPtr deg4() {
  static Scalar c = Scalar::mod(5, 2), z = Scalar::mod(5, 2);
  static DatumPtr d = make_datum_ptr(BaseField::prime(5), 4, &c, &z);
  return d;
}

inline DatumPtr deg2() {
  static Scalar c = Scalar::mod(5, 2);
  static DatumPtr d = make_datum_ptr(BaseField::prime(5), 2, &c, nullptr);
  return d;
}

inline Block block(int k, std::array<int, 3> xi = {0, 0, 0}) { return make_block(k, deg4(), deg2(), xi); }

inline std::string data(const std::string& name) { return std::string(JACCLAN_DATA_DIR) + "/" + name; }

// Random element of the tensor algebra in a fixed grade.
inline Element random_in_grade(const PathAlgebra& A, const Grade& g, std::mt19937_64& rng) {
  Element x;
  const uint32_t p = A.p();
  for (const auto& P : A.grade_basis(g)) {
    long long c = static_cast<long long>(rng() % (p ? p : 7)) - (p ? 0 : 3);
    if (c) add_term(x, P, A.F(c));
  }
  return x;
}

}  // namespace fx
