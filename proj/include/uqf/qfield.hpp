#pragma once

// Exact arithmetic in a real quadratic field F = Q(sqrt d) and its ring of
// integers O_F = Z[omega].

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace uqf {

using Int = mpz_class;
using Rat = mpq_class;

/// n / d in lowest terms; d != 0.
inline Rat make_rat(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
/// floor(a / b) for b != 0.
Int floor_div(const Int& a, const Int& b);
/// floor and ceil of a rational.
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);
/// Exact factorial n!.
Int factorial(unsigned long n);

bool is_squarefree(std::int64_t d);

/// Congruence branch of d: omega = (1 + sqrt d)/2 or omega = sqrt d.
enum class Branch { OneMod4, TwoThreeMod4 };

/// A real quadratic field Q(sqrt d), d squarefree and > 1.
struct FieldCtx {
  std::int64_t d = 0;
  std::int64_t delta = 0;
  Branch branch = Branch::TwoThreeMod4;

  /// tr(omega): 1 on the 1 mod 4 branch, 0 otherwise.
  std::int64_t omega_trace() const { return branch == Branch::OneMod4 ? 1 : 0; }
  /// N(omega) = omega * conj(omega).
  std::int64_t omega_norm() const { return branch == Branch::OneMod4 ? (1 - d) / 4 : -d; }

  bool operator==(const FieldCtx&) const = default;
};

/// Throws InvalidField unless d > 1 is squarefree.
FieldCtx make_field(std::int64_t d);

/// An element (p + q sqrt d) / den of Q(sqrt d), kept in canonical form:
/// den > 0 and gcd(p, q, den) = 1.
///
/// Elements with q = 0 are rationals and combine with elements of any field.
/// Mixing two irrational elements over different radicands throws DomainError.
class QElem {
 public:
  QElem() : p_(0), q_(0), den_(1), d_(0) {}
  QElem(long v) : p_(v), q_(0), den_(1), d_(0) {}  // NOLINT(google-explicit-constructor)
  QElem(const Int& v) : p_(v), q_(0), den_(1), d_(0) {}  // NOLINT
  QElem(const Rat& r);  // NOLINT
  QElem(Int p, Int q, Int den, std::int64_t d);

  /// sqrt(d) itself.
  static QElem sqrt_of(std::int64_t d) { return QElem(0, 1, 1, d); }

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& den() const { return den_; }
  std::int64_t radicand() const { return d_; }

  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_rational() const { return q_ == 0; }
  /// Only meaningful when is_rational().
  Rat rational_value() const { return make_rat(p_, den_); }
  Rat rational_part() const { return make_rat(p_, den_); }
  Rat sqrt_coefficient() const { return make_rat(q_, den_); }

  QElem conj() const { return QElem(p_, -q_, den_, d_); }
  Rat trace() const { return make_rat(2 * p_, den_); }
  Rat norm() const;

  /// Sign under the identity embedding (sqrt d > 0); exact.
  int sign() const;
  /// Sign under the conjugate embedding.
  int conj_sign() const { return conj().sign(); }
  bool is_totally_positive() const { return sign() > 0 && conj_sign() > 0; }
  bool is_totally_nonnegative() const { return sign() >= 0 && conj_sign() >= 0; }

  /// Floor of the identity embedding.
  Int floor() const;
  Int ceil() const;

  QElem operator-() const { return QElem(-p_, -q_, den_, d_); }
  QElem& operator+=(const QElem& o);
  QElem& operator-=(const QElem& o);
  QElem& operator*=(const QElem& o);
  QElem& operator/=(const QElem& o);
  QElem inverse() const;

  friend QElem operator+(QElem a, const QElem& b) { return a += b; }
  friend QElem operator-(QElem a, const QElem& b) { return a -= b; }
  friend QElem operator*(QElem a, const QElem& b) { return a *= b; }
  friend QElem operator/(QElem a, const QElem& b) { return a /= b; }

  /// Canonical-form equality. The radicand only matters for irrational values.
  friend bool operator==(const QElem& a, const QElem& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.den_ == b.den_ && (a.q_ == 0 || a.d_ == b.d_);
  }

  double approx() const;
  std::string str() const;

 private:
  void canonicalize();
  std::int64_t combined_radicand(const QElem& o) const;

  Int p_, q_, den_;
  std::int64_t d_;
};

/// Sign of a - b under the identity embedding.
int compare(const QElem& a, const QElem& b);
inline QElem abs_first(const QElem& x) { return x.sign() < 0 ? -x : x; }

std::ostream& operator<<(std::ostream& os, const QElem& x);

/// An algebraic integer a + b*omega of a fixed field.
class OInt {
 public:
  OInt() = default;
  explicit OInt(const FieldCtx& field, Int a = 0, Int b = 0)
      : field_(field), a_(std::move(a)), b_(std::move(b)) {}

  static OInt omega(const FieldCtx& field) { return OInt(field, 0, 1); }

  const FieldCtx& field() const { return field_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  OInt conj() const;
  Int trace() const { return 2 * a_ + b_ * field_.omega_trace(); }
  Int norm() const;
  bool is_totally_positive() const;

  QElem to_qelem() const;
  /// The element as an integer, if it lies in O_F.
  static std::optional<OInt> from_qelem(const FieldCtx& field, const QElem& x);

  OInt operator-() const { return OInt(field_, -a_, -b_); }
  OInt& operator+=(const OInt& o);
  OInt& operator-=(const OInt& o);
  OInt& operator*=(const OInt& o);
  friend OInt operator+(OInt x, const OInt& y) { return x += y; }
  friend OInt operator-(OInt x, const OInt& y) { return x -= y; }
  friend OInt operator*(OInt x, const OInt& y) { return x *= y; }

  friend bool operator==(const OInt& x, const OInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.field_ == y.field_;
  }

  std::string str() const;

 private:
  void check_field(const OInt& o) const;

  FieldCtx field_;
  Int a_ = 0;
  Int b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const OInt& x);

inline OInt conj(const OInt& x) { return x.conj(); }
inline Int trace(const OInt& x) { return x.trace(); }
inline Int norm(const OInt& x) { return x.norm(); }
inline bool is_totally_positive(const OInt& x) { return x.is_totally_positive(); }

/// m_k = -floor(k * conj(omega)). The element m_k + k*omega is totally
/// positive and its conjugate lies in [0, 1). Requires k >= 1.
Int omega_floor(const Int& k, const FieldCtx& field);

/// m_k + k*omega.
OInt kth_target(const Int& k, const FieldCtx& field);

/// sqrt(Delta_d) as an element of F.
QElem sqrt_discriminant(const FieldCtx& field);

/// All totally positive x in O_F with tr(x) <= tr_max, sorted by (trace, b).
std::vector<OInt> enumerate_totally_positive(const FieldCtx& field, const Int& tr_max);

}  // namespace uqf
