#include "jacclan/galois.hpp"

#include <numeric>
#include <optional>
#include <sstream>

#include "jacclan/matrix.hpp"

namespace jc {

BaseField BaseField::parse(const std::string& name) {
  if (name == "Q") return rationals();
  if (name.size() >= 2 && name[0] == 'F') {
    try {
      unsigned long p = std::stoul(name.substr(1));
      return prime(static_cast<uint32_t>(p));
    } catch (...) {
    }
  }
  fail(ErrorKind::ParseError, "unknown base field '" + name + "'");
}

Scalar GaloisDatum::zeta_pow(long long k) const {
  long long m = ((k % degree) + degree) % degree;
  return zeta.pow(m);
}

std::string GaloisDatum::str() const {
  std::string s = base.name() + "[v]/(v^" + std::to_string(degree) + " - " + c.str() + ")";
  if (degree == 4) s += ", zeta = " + zeta.str();
  return s;
}

namespace {

bool is_square_mod(const Scalar& x, uint32_t p) {
  if (x.is_zero()) return true;
  return x.pow((p - 1) / 2).is_one();
}

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  return mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
}

bool is_rational_fourth_power(const mpq_class& q) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  return mpz_root(n.get_mpz_t(), n.get_mpz_t(), 4) != 0 && mpz_root(d.get_mpz_t(), d.get_mpz_t(), 4) != 0;
}

// Exhaustive test that x^4 - c has neither a root nor a monic quadratic factor over F_p.
bool quartic_irreducible_mod(const Scalar& c, uint32_t p) {
  for (uint32_t a = 0; a < p; ++a) {
    Scalar x = Scalar::mod(p, a);
    if (x.pow(4) == c) return false;
  }
  for (uint32_t a = 0; a < p; ++a)
    for (uint32_t b = 0; b < p; ++b) {
      // Remainder of x^4 - c modulo x^2 + a x + b.
      Scalar A = Scalar::mod(p, a), B = Scalar::mod(p, b);
      // x^2 = -a x - b; track x^k = r1 x + r0.
      Scalar r1 = Scalar::mod(p, 1), r0 = Scalar::mod(p, 0);
      for (int k = 1; k < 4; ++k) {
        Scalar n1 = r0 - r1 * A;
        Scalar n0 = -(r1 * B);
        r1 = n1;
        r0 = n0;
      }
      if (r1.is_zero() && (r0 - c).is_zero()) return false;
    }
  return true;
}

bool irreducible(const BaseField& base, int degree, const Scalar& c) {
  if (degree == 1) return true;
  if (c.is_zero()) return false;
  if (base.p) {
    if (degree == 2) return !is_square_mod(c, base.p);
    return quartic_irreducible_mod(c, base.p);
  }
  mpq_class q = c.to_mpq();
  if (degree == 2) return !is_rational_square(q);
  // Capelli: x^4 - c is reducible iff c is a square or c = -4 b^4.
  if (is_rational_square(q)) return false;
  mpq_class m = -q / 4;
  return !is_rational_fourth_power(m);
}

}  // namespace

GaloisDatum make_datum(BaseField base, int degree, const Scalar* c, const Scalar* zeta) {
  if (degree != 1 && degree != 2 && degree != 4) fail(ErrorKind::LatticeViolation, "degree must be 1, 2 or 4");
  if (base.p == 2) fail(ErrorKind::CharacteristicClash, "characteristic divides 2*degree");
  if (base.p && !is_prime(base.p)) fail(ErrorKind::ParseError, "base field order is not prime");
  if (base.p && (2 * degree) % base.p == 0) fail(ErrorKind::CharacteristicClash, "characteristic divides 2*degree");
  GaloisDatum d;
  d.base = base;
  d.degree = degree;
  if (degree == 1) {
    d.c = base(1);
    d.zeta = base(1);
    return d;
  }
  if (degree == 2) {
    d.zeta = base(-1);
  } else {
    if (base.p == 0 || base.p % 4 != 1) fail(ErrorKind::NoFourthRoot, "no primitive 4th root of unity in " + base.name());
    if (zeta) {
      Scalar z = zeta->in_field(base.p);
      if (z * z != base(-1)) fail(ErrorKind::NoFourthRoot, "zeta^2 != -1");
      d.zeta = z;
    } else {
      for (uint32_t a = 2; a < base.p; ++a) {
        Scalar z = Scalar::mod(base.p, a);
        if (z * z == base(-1)) {
          d.zeta = z;
          break;
        }
      }
    }
  }
  if (c) {
    Scalar cc = c->in_field(base.p);
    if (!irreducible(base, degree, cc)) fail(ErrorKind::IrreducibilityFailure, "x^" + std::to_string(degree) + " - " + cc.str() + " is reducible over " + base.name());
    d.c = cc;
    return d;
  }
  if (base.p) {
    for (uint32_t a = 0; a < base.p; ++a) {
      Scalar cc = Scalar::mod(base.p, a);
      if (irreducible(base, degree, cc)) {
        d.c = cc;
        return d;
      }
    }
  } else {
    for (long long a : {-1LL}) {
      if (irreducible(base, degree, Scalar(a))) {
        d.c = Scalar(a);
        return d;
      }
    }
    for (long long a = 2; a < 1000; ++a)
      if (irreducible(base, degree, Scalar(a))) {
        d.c = Scalar(a);
        return d;
      }
  }
  fail(ErrorKind::IrreducibilityFailure, "no valid binomial constant found");
}

DatumPtr make_datum_ptr(BaseField base, int degree, const Scalar* c, const Scalar* zeta) {
  return std::make_shared<const GaloisDatum>(make_datum(base, degree, c, zeta));
}

FieldElement FieldElement::zero(DatumPtr d) {
  FieldElement x;
  x.coords.assign(d->degree, d->F(0));
  x.datum = std::move(d);
  return x;
}

FieldElement FieldElement::one(DatumPtr d) { return monomial(std::move(d), 0); }

FieldElement FieldElement::monomial(DatumPtr d, int k, Scalar coef) {
  FieldElement x = zero(d);
  int n = d->degree;
  Scalar f = coef.in_field(d->p());
  while (k < 0) {
    k += n;
    f = f / d->c;
  }
  while (k >= n) {
    k -= n;
    f = f * d->c;
  }
  x.coords[k] = f;
  return x;
}

bool FieldElement::in_level(int k) const {
  int step = datum->degree / k;
  for (int i = 0; i < datum->degree; ++i)
    if (i % step != 0 && !coords[i].is_zero()) return false;
  return true;
}

int FieldElement::level() const {
  for (int k = 1; k <= datum->degree; k *= 2)
    if (datum->degree % k == 0 && in_level(k)) return k;
  return datum->degree;
}

bool FieldElement::is_zero() const {
  for (const auto& x : coords)
    if (!x.is_zero()) return false;
  return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (datum.get() != o.datum.get() && datum->str() != o.datum->str()) fail(ErrorKind::DatumMismatch, "field elements from different data");
  FieldElement r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  FieldElement n = o;
  for (auto& x : n.coords) x = -x;
  return *this + n;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (datum.get() != o.datum.get() && datum->str() != o.datum->str()) fail(ErrorKind::DatumMismatch, "field elements from different data");
  int n = datum->degree;
  FieldElement r = zero(datum);
  for (int i = 0; i < n; ++i) {
    if (coords[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      Scalar t = coords[i] * o.coords[j];
      int k = i + j;
      if (k >= n) {
        k -= n;
        t = t * datum->c;
      }
      r.coords[k] += t;
    }
  }
  return r;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero field element");
  int n = datum->degree;
  Matrix m(n, n, datum->p());
  for (int j = 0; j < n; ++j) {
    FieldElement col = *this * monomial(datum, j);
    for (int i = 0; i < n; ++i) m.at(i, j) = col.coords[i];
  }
  Matrix rhs(n, 1, datum->p());
  rhs.at(0, 0) = datum->F(1);
  Matrix sol;
  if (!m.solve(rhs, sol)) fail(ErrorKind::DivisionByZero, "non-invertible field element");
  FieldElement r = zero(datum);
  for (int i = 0; i < n; ++i) r.coords[i] = sol.at(i, 0);
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != o.coords[i]) return false;
  return true;
}

std::string FieldElement::str() const {
  std::string s;
  for (int i = 0; i < datum->degree; ++i) {
    if (coords[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += coords[i].str();
    if (i == 1) s += "*v";
    if (i > 1) s += "*v^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

GaloisElement GaloisElement::compose(const GaloisElement& o) const {
  if (level != o.level) fail(ErrorKind::LevelMismatch, "composing Galois elements of different levels");
  return {level, (exponent + o.exponent) % level};
}

GaloisElement GaloisElement::inverse() const { return {level, (level - exponent % level) % level}; }

FieldElement apply_galois(const GaloisElement& g, const FieldElement& x) {
  if (!x.in_level(g.level)) fail(ErrorKind::LevelMismatch, "element outside the acting subfield");
  FieldElement r = x;
  for (int k = 0; k < x.datum->degree; ++k)
    if (!r.coords[k].is_zero()) r.coords[k] = r.coords[k] * x.datum->zeta_pow(static_cast<long long>(g.exponent) * k);
  return r;
}

std::vector<int> eigenbasis_exponents(const GaloisDatum& d, int k1, int k2) {
  if (!d.is_subfield_degree(k1) || !d.is_subfield_degree(k2) || k1 % k2 != 0)
    fail(ErrorKind::LatticeViolation, "subfield " + std::to_string(k2) + " not contained in " + std::to_string(k1));
  std::vector<int> e;
  for (int j = 0; j < k1 / k2; ++j) e.push_back((d.degree / k1) * j);
  return e;
}

std::vector<FieldElement> eigenbasis(DatumPtr d, int k1, int k2) {
  std::vector<FieldElement> out;
  for (int e : eigenbasis_exponents(*d, k1, k2)) out.push_back(FieldElement::monomial(d, e));
  return out;
}

DatumPtr parse_datum(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 4) fail(ErrorKind::ParseError, "datum needs field:degree[:c[:zeta]]");
  BaseField base = BaseField::parse(parts[0]);
  int degree = 0;
  try {
    size_t pos = 0;
    degree = std::stoi(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "datum degree is not an integer: " + parts[1]);
  }
  std::optional<Scalar> c, z;
  if (parts.size() > 2) c = Scalar::parse(parts[2], base.p);
  if (parts.size() > 3) z = Scalar::parse(parts[3], base.p);
  return make_datum_ptr(base, degree, c ? &*c : nullptr, z ? &*z : nullptr);
}

}  // namespace jc
