#include "uqf/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uqf/errors.hpp"

namespace uqf {

Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw DomainError("division by zero");
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_rat(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

Int ceil_rat(const Rat& r) { return -floor_div(-r.get_num(), r.get_den()); }

Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return false;
    }
  }
  return true;
}

FieldCtx make_field(std::int64_t d) {
  if (d <= 1) throw InvalidField("d must be greater than 1, got " + std::to_string(d));
  if (!is_squarefree(d)) throw InvalidField("d must be squarefree, got " + std::to_string(d));
  FieldCtx f;
  f.d = d;
  if (d % 4 == 1) {
    f.branch = Branch::OneMod4;
    f.delta = d;
  } else {
    f.branch = Branch::TwoThreeMod4;
    f.delta = 4 * d;
  }
  return f;
}

// ---------------------------------------------------------------- QElem

QElem::QElem(const Rat& r) : p_(r.get_num()), q_(0), den_(r.get_den()), d_(0) {
  if (den_ == 0) throw DomainError("zero denominator");
  canonicalize();
}

QElem::QElem(Int p, Int q, Int den, std::int64_t d)
    : p_(std::move(p)), q_(std::move(q)), den_(std::move(den)), d_(d) {
  if (den_ == 0) throw DomainError("zero denominator");
  if (q_ != 0 && d_ <= 1) throw DomainError("irrational element needs a radicand > 1");
  canonicalize();
}

void QElem::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    p_ = -p_;
    q_ = -q_;
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    p_ /= g;
    q_ /= g;
    den_ /= g;
  }
}

std::int64_t QElem::combined_radicand(const QElem& o) const {
  if (q_ != 0 && o.q_ != 0 && d_ != o.d_) {
    throw DomainError("mixing elements of different quadratic fields");
  }
  if (q_ != 0) return d_;
  if (o.q_ != 0) return o.d_;
  return d_ != 0 ? d_ : o.d_;
}

Rat QElem::norm() const {
  return make_rat(p_ * p_ - q_ * q_ * d_, den_ * den_);
}

int QElem::sign() const {
  const int sp = sgn(p_);
  const int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger of p^2 and q^2 d wins (they never tie).
  const int c = cmp(p_ * p_, q_ * q_ * d_);
  return c > 0 ? sp : sq;
}

Int QElem::floor() const {
  Int n = p_;
  if (q_ > 0) {
    n += isqrt(q_ * q_ * d_);
  } else if (q_ < 0) {
    n -= isqrt(q_ * q_ * d_) + 1;
  }
  return floor_div(n, den_);
}

Int QElem::ceil() const { return -(-*this).floor(); }

QElem& QElem::operator+=(const QElem& o) {
  const std::int64_t d = combined_radicand(o);
  if (den_ == o.den_) {
    *this = QElem(p_ + o.p_, q_ + o.q_, den_, d);
  } else {
    *this = QElem(p_ * o.den_ + o.p_ * den_, q_ * o.den_ + o.q_ * den_, den_ * o.den_, d);
  }
  return *this;
}

QElem& QElem::operator-=(const QElem& o) { return *this += -o; }

QElem& QElem::operator*=(const QElem& o) {
  const std::int64_t d = combined_radicand(o);
  Int p = p_ * o.p_;
  if (q_ != 0 && o.q_ != 0) p += q_ * o.q_ * d;
  Int q = p_ * o.q_ + q_ * o.p_;
  *this = QElem(std::move(p), std::move(q), den_ * o.den_, d);
  return *this;
}

QElem QElem::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(sqrt d)");
  const Int n = p_ * p_ - q_ * q_ * d_;
  return QElem(den_ * p_, -den_ * q_, n, d_);
}

QElem& QElem::operator/=(const QElem& o) {
  combined_radicand(o);
  return *this *= o.inverse();
}

double QElem::approx() const {
  const double s = d_ > 0 ? std::sqrt(static_cast<double>(d_)) : 0.0;
  return (p_.get_d() + q_.get_d() * s) / den_.get_d();
}

std::string QElem::str() const {
  std::ostringstream os;
  if (q_ == 0) {
    os << p_;
  } else {
    os << "(" << p_ << (q_ < 0 ? "-" : "+") << abs(q_) << "*sqrt(" << d_ << "))";
  }
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

int compare(const QElem& a, const QElem& b) { return (a - b).sign(); }

std::ostream& operator<<(std::ostream& os, const QElem& x) { return os << x.str(); }

// ---------------------------------------------------------------- OInt

void OInt::check_field(const OInt& o) const {
  if (!(field_ == o.field_)) throw DomainError("mixing integers of different fields");
}

OInt OInt::conj() const {
  if (field_.branch == Branch::OneMod4) return OInt(field_, a_ + b_, -b_);
  return OInt(field_, a_, -b_);
}

Int OInt::norm() const {
  // (a + b w)(a + b w') = a^2 + ab tr(w) + b^2 N(w)
  return a_ * a_ + a_ * b_ * field_.omega_trace() + b_ * b_ * field_.omega_norm();
}

bool OInt::is_totally_positive() const { return to_qelem().is_totally_positive(); }

QElem OInt::to_qelem() const {
  if (field_.branch == Branch::OneMod4) return QElem(2 * a_ + b_, b_, 2, field_.d);
  return QElem(a_, b_, 1, field_.d);
}

std::optional<OInt> OInt::from_qelem(const FieldCtx& field, const QElem& x) {
  if (x.q() != 0 && x.radicand() != field.d) {
    throw DomainError("element belongs to a different field");
  }
  if (field.branch == Branch::TwoThreeMod4) {
    if (x.den() != 1) return std::nullopt;
    return OInt(field, x.p(), x.q());
  }
  // (p + q sqrt d)/den = a + b (1 + sqrt d)/2 with b = 2q/den, a = (p - q)/den.
  const Int two_q = 2 * x.q();
  if (!mpz_divisible_p(two_q.get_mpz_t(), x.den().get_mpz_t())) return std::nullopt;
  const Int diff = x.p() - x.q();
  if (!mpz_divisible_p(diff.get_mpz_t(), x.den().get_mpz_t())) return std::nullopt;
  return OInt(field, diff / x.den(), two_q / x.den());
}

OInt& OInt::operator+=(const OInt& o) {
  check_field(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

OInt& OInt::operator-=(const OInt& o) {
  check_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

OInt& OInt::operator*=(const OInt& o) {
  check_field(o);
  // w^2 = tr(w) w - N(w)
  const Int bd = b_ * o.b_;
  Int a = a_ * o.a_ - bd * field_.omega_norm();
  Int b = a_ * o.b_ + b_ * o.a_ + bd * field_.omega_trace();
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string OInt::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
  } else if (a_ == 0) {
    os << b_ << "*w";
  } else {
    os << a_ << (b_ < 0 ? "-" : "+") << abs(b_) << "*w";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const OInt& x) { return os << x.str(); }

// ---------------------------------------------------------------- helpers

Int omega_floor(const Int& k, const FieldCtx& field) {
  if (k < 1) throw DomainError("omega_floor needs k >= 1");
  // conj(omega) = -sqrt d, or (1 - sqrt d)/2; k^2 d is never a square.
  const Int ceil_ksqrt = isqrt(k * k * field.d) + 1;
  if (field.branch == Branch::TwoThreeMod4) return ceil_ksqrt;
  // floor((k - k sqrt d)/2) = floor(floor(k - k sqrt d)/2)
  return -floor_div(k - ceil_ksqrt, 2);
}

OInt kth_target(const Int& k, const FieldCtx& field) {
  return OInt(field, omega_floor(k, field), k);
}

QElem sqrt_discriminant(const FieldCtx& field) {
  if (field.branch == Branch::OneMod4) return QElem::sqrt_of(field.d);
  return QElem(0, 2, 1, field.d);
}

std::vector<OInt> enumerate_totally_positive(const FieldCtx& field, const Int& tr_max) {
  std::vector<OInt> out;
  const bool one_mod4 = field.branch == Branch::OneMod4;
  for (Int t = 1; t <= tr_max; ++t) {
    if (!one_mod4 && t % 2 != 0) continue;  // trace is 2a on this branch
    // Both embeddings positive forces |b| sqrt(Delta) < t.
    const Int bmax = isqrt(t * t / field.delta) + 1;
    for (Int b = -bmax; b <= bmax; ++b) {
      const Int twice_a = t - b * field.omega_trace();
      if (twice_a % 2 != 0) continue;
      OInt x(field, twice_a / 2, b);
      if (x.is_totally_positive()) out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace uqf
