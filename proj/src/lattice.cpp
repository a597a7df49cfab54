#include "uqf/lattice.hpp"

#include "uqf/errors.hpp"

namespace uqf {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "gram[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void check_dims(const LatticeDesc& lat, const VectorOF& x) {
  if (x.size() != lat.rank()) {
    throw DimensionMismatch("vector of length " + std::to_string(x.size()) +
                            " for a lattice of rank " + std::to_string(lat.rank()));
  }
}

}  // namespace

LatticeDesc make_lattice(const FieldCtx& field, const QMatrix& gram, bool classic) {
  if (!gram.is_square() || gram.rows() == 0) {
    throw DimensionMismatch("gram matrix must be square with rank >= 1");
  }
  if (!gram.is_symmetric()) throw NotSymmetric("gram matrix is not symmetric");
  const std::size_t n = gram.rows();

  LatticeDesc lat;
  lat.field_ = field;
  lat.gram_ = gram;
  lat.classic_ = classic;
  lat.twice_ = Matrix<OInt>(n, n, OInt(field));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const QElem& g = gram(i, j);
      if (!g.is_rational() && g.radicand() != field.d) {
        throw DomainError(entry_name(i, j) + " lies outside Q(sqrt " + std::to_string(field.d) + ")");
      }
      const auto whole = OInt::from_qelem(field, g);
      if (classic || i == j) {
        if (!whole) {
          throw ClassicalityViolation(entry_name(i, j) + " = " + g.str() + " is not in O_F");
        }
        lat.twice_(i, j) = *whole + *whole;
        if (i == j) lat.diag_.push_back(*whole);
      } else {
        const auto twice = OInt::from_qelem(field, g + g);
        if (!twice) {
          throw ClassicalityViolation(entry_name(i, j) + " = " + g.str() + " is not in (1/2) O_F");
        }
        lat.twice_(i, j) = *twice;
      }
    }
  }
  if (!is_pd_exact(gram)) throw NotPositiveDefinite("gram matrix is not totally positive definite");
  return lat;
}

LatticeDesc diagonal_lattice(const FieldCtx& field, std::span<const OInt> diag) {
  QMatrix g(diag.size(), diag.size(), QElem(0));
  for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = diag[i].to_qelem();
  return make_lattice(field, g, true);
}

LatticeDesc identity_lattice(const FieldCtx& field, std::size_t n) {
  return make_lattice(field, QMatrix::identity(n), true);
}

OInt quad_value(const LatticeDesc& lat, const VectorOF& x) {
  check_dims(lat, x);
  const std::size_t n = lat.rank();
  OInt q(lat.field());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    q += lat.diagonal()[i] * x[i] * x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[j].is_zero() || lat.twice_gram()(i, j).is_zero()) continue;
      q += lat.twice_gram()(i, j) * x[i] * x[j];
    }
  }
  return q;
}

QElem bilinear(const LatticeDesc& lat, const VectorOF& x, const VectorOF& y) {
  check_dims(lat, x);
  check_dims(lat, y);
  OInt twice(lat.field());
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < lat.rank(); ++j) {
      if (y[j].is_zero()) continue;
      twice += lat.twice_gram()(i, j) * x[i] * y[j];
    }
  }
  return twice.to_qelem() / QElem(2);
}

QMatrix gram_of_vectors(const LatticeDesc& lat, std::span<const VectorOF> vs) {
  QMatrix g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i; j < vs.size(); ++j) {
      g(i, j) = bilinear(lat, vs[i], vs[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

RatMatrix trace_form(const LatticeDesc& lat) { return trace_form(lat, OInt(lat.field(), 1)); }

RatMatrix trace_form(const LatticeDesc& lat, const OInt& twist) {
  const std::size_t n = lat.rank();
  const QElem lambda = twist.to_qelem();
  const QElem omega = OInt::omega(lat.field()).to_qelem();
  // Z-basis of O_F^n: e_i and omega e_i.
  const QElem basis[2] = {QElem(1), omega};
  RatMatrix t(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const QElem g = lambda * lat.gram()(i, j);
      for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u) t(2 * i + s, 2 * j + u) = (g * basis[s] * basis[u]).trace();
    }
  }
  return t;
}

std::vector<Int> coordinates(const VectorOF& x) {
  std::vector<Int> y;
  y.reserve(2 * x.size());
  for (const OInt& c : x) {
    y.push_back(c.a());
    y.push_back(c.b());
  }
  return y;
}

VectorOF from_coordinates(const FieldCtx& field, std::span<const Int> y) {
  if (y.size() % 2 != 0) throw DimensionMismatch("odd number of coordinates");
  VectorOF x;
  x.reserve(y.size() / 2);
  for (std::size_t i = 0; i < y.size(); i += 2) x.emplace_back(field, y[i], y[i + 1]);
  return x;
}

VectorOF unit_vector(const FieldCtx& field, std::size_t n, std::size_t i) {
  VectorOF v(n, OInt(field));
  v.at(i) = OInt(field, 1);
  return v;
}

SpanCheck integral_span_check(const LatticeDesc& lat, std::span<const VectorOF> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const OInt q = quad_value(lat, vs[i]);
    if (!q.is_rational()) {
      throw NonIntegralNorm("vector " + std::to_string(i) + " has norm " + q.str() +
                            ", not a rational integer");
    }
  }
  SpanCheck out;
  out.gram = IntMatrix(vs.size(), vs.size(), Int(0));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i; j < vs.size(); ++j) {
      const QElem b = bilinear(lat, vs[i], vs[j]);
      if (!b.is_rational() || b.den() != 1) {
        if (out.integral) {
          out.integral = false;
          out.counterexample = {i, j};
          out.counterexample_value = b;
        }
        continue;
      }
      out.gram(i, j) = b.p();
      out.gram(j, i) = b.p();
    }
  }
  if (!out.integral) out.gram = IntMatrix();
  return out;
}

}  // namespace uqf
