#include "jacclan/scalar.hpp"

#include <limits>

namespace jc {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::IrreducibilityFailure: return "IrreducibilityFailure";
    case ErrorKind::NoFourthRoot: return "NoFourthRoot";
    case ErrorKind::CharacteristicClash: return "CharacteristicClash";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::LatticeViolation: return "LatticeViolation";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::DatumMismatch: return "DatumMismatch";
    case ErrorKind::GradeMismatch: return "GradeMismatch";
    case ErrorKind::UnknownArrow: return "UnknownArrow";
    case ErrorKind::SaturationBoundExceeded: return "SaturationBoundExceeded";
    case ErrorKind::EdgeIncidenceViolation: return "EdgeIncidenceViolation";
    case ErrorKind::PendingArcInTwoTriangles: return "PendingArcInTwoTriangles";
    case ErrorKind::ExcludedSurface: return "ExcludedSurface";
    case ErrorKind::ThreeOrbifoldTriangle: return "ThreeOrbifoldTriangle";
    case ErrorKind::CocycleViolation: return "CocycleViolation";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::ClannishConditionViolation: return "ClannishConditionViolation";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::RadicalAlgorithmUnsupported: return "RadicalAlgorithmUnsupported";
    case ErrorKind::QuadraticUnsatisfied: return "QuadraticUnsatisfied";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotIso: return "NotIso";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

int64_t inv_mod(int64_t a, int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
  int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

static int64_t reduce_mod(const mpz_class& z, uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_si();
}

Scalar Scalar::mod(uint32_t p, long long n) {
  Scalar s;
  s.p_ = p;
  int64_t r = n % static_cast<int64_t>(p);
  if (r < 0) r += p;
  s.v_ = r;
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    s.v_ = q.get_num().get_si();
  } else {
    s.q_ = std::make_shared<const mpq_class>(q);
  }
  return s;
}

Scalar Scalar::rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return from_mpq(c);
}

Scalar Scalar::parse(const std::string& s, uint32_t p) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "bad scalar '" + s + "'");
  q.canonicalize();
  return rational(q).in_field(p);
}

mpq_class Scalar::to_mpq() const {
  if (q_) return *q_;
  return mpq_class(static_cast<long>(v_));
}

Scalar Scalar::in_field(uint32_t p) const {
  if (p == p_) return *this;
  if (p_ != 0) fail(ErrorKind::DatumMismatch, "cannot move F_" + std::to_string(p_) + " value to another field");
  if (p == 0) return *this;
  mpq_class q = to_mpq();
  int64_t num = reduce_mod(q.get_num(), p);
  int64_t den = reduce_mod(q.get_den(), p);
  if (den == 0) fail(ErrorKind::DivisionByZero, "denominator divisible by p");
  return mod(p, num * inv_mod(den, p));
}

void Scalar::unify(Scalar& a, Scalar& b) {
  if (a.p_ == b.p_) return;
  if (a.p_ == 0) {
    a = a.in_field(b.p_);
  } else if (b.p_ == 0) {
    b = b.in_field(a.p_);
  } else {
    fail(ErrorKind::DatumMismatch, "mixing F_" + std::to_string(a.p_) + " and F_" + std::to_string(b.p_));
  }
}

bool Scalar::is_zero() const { return !q_ && v_ == 0; }
bool Scalar::is_one() const { return !q_ && v_ == 1; }

std::string Scalar::str() const {
  if (q_) return q_->get_str();
  return std::to_string(v_);
}

Scalar Scalar::operator-() const {
  if (p_) return mod(p_, v_ == 0 ? 0 : p_ - v_);
  if (!q_ && v_ != std::numeric_limits<int64_t>::min()) return Scalar(static_cast<long long>(-v_));
  return from_mpq(-to_mpq());
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (p_) return mod(p_, inv_mod(v_, p_));
  mpq_class r = 1 / to_mpq();
  r.canonicalize();
  return from_mpq(r);
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r = p_ ? mod(p_, 1) : Scalar(1);
  Scalar b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  Scalar a = x, b = y;
  Scalar::unify(a, b);
  if (a.p_) return Scalar::mod(a.p_, a.v_ + b.v_);
  if (!a.q_ && !b.q_) {
    long long r;
    if (!__builtin_add_overflow(a.v_, b.v_, &r)) return Scalar(r);
  }
  return Scalar::from_mpq(a.to_mpq() + b.to_mpq());
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  Scalar a = x, b = y;
  Scalar::unify(a, b);
  if (a.p_) return Scalar::mod(a.p_, (a.v_ * b.v_) % a.p_);
  if (!a.q_ && !b.q_) {
    long long r;
    if (!__builtin_mul_overflow(a.v_, b.v_, &r)) return Scalar(r);
  }
  mpq_class r = a.to_mpq() * b.to_mpq();
  r.canonicalize();
  return Scalar::from_mpq(r);
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

bool operator==(const Scalar& x, const Scalar& y) {
  Scalar a = x, b = y;
  Scalar::unify(a, b);
  if (a.p_) return a.v_ == b.v_;
  if (!a.q_ && !b.q_) return a.v_ == b.v_;
  return a.to_mpq() == b.to_mpq();
}

}  // namespace jc
