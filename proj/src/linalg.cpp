#include "pilp/linalg.hpp"

#include <algorithm>

namespace pilp {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> rref(RatMatrix& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Rational inv = Rational(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Replaces columns (p, q) of w and u by (a*p + b*q, c*p + d*q).
void combine_columns(IntMatrix& w, IntMatrix& u, Eigen::Index p, Eigen::Index q, const Integer& a,
                     const Integer& b, const Integer& c, const Integer& d) {
  for (IntMatrix* m : {&w, &u}) {
    for (Eigen::Index r = 0; r < m->rows(); ++r) {
      const Integer x = (*m)(r, p);
      const Integer y = (*m)(r, q);
      (*m)(r, p) = a * x + b * y;
      (*m)(r, q) = c * x + d * y;
    }
  }
}

// Folds column k into pivot column p for row r so that w(r, k) becomes zero.
void eliminate_into(IntMatrix& w, IntMatrix& u, Eigen::Index r, Eigen::Index p, Eigen::Index k) {
  if (w(r, k).is_zero()) return;
  const Integer a = w(r, p);
  const Integer b = w(r, k);
  const GcdExt e = gcd_ext(a, b);
  combine_columns(w, u, p, k, e.u, e.v, -exact_div(b, e.g), exact_div(a, e.g));
}

void negate_column(IntMatrix& w, IntMatrix& u, Eigen::Index p) {
  w.col(p) = (-w.col(p)).eval();
  u.col(p) = (-u.col(p)).eval();
}

}  // namespace

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Integer(m(i, j));
  return out;
}

Integer denominator_lcm(const RatMatrix& m) {
  Integer l(1);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
  return l;
}

Integer content(const IntMatrix& m) {
  Integer g(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

IntRowVector primitive(const RatRowVector& v) {
  const Rational scale(denominator_lcm(v));
  IntRowVector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) out(j) = Integer(v(j) * scale);
  const Integer g = content(out);
  if (g.is_zero()) throw std::domain_error("primitive of the zero vector");
  for (Eigen::Index j = 0; j < v.size(); ++j) out(j) = exact_div(out(j), g);
  return out;
}

Eigen::Index rank(const RatMatrix& m) {
  RatMatrix w = m;
  return static_cast<Eigen::Index>(rref(w).size());
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = RatMatrix::Identity(n, n);
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[n - 1] >= n)) {
    throw std::domain_error("singular matrix");
  }
  return aug.rightCols(n);
}

RatMatrix kernel(const RatMatrix& m) {
  RatMatrix w = m;
  const auto pivots = rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  const Eigen::Index dim = m.cols() - static_cast<Eigen::Index>(pivots.size());
  RatMatrix basis = RatMatrix::Zero(m.cols(), dim);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -w(r, free);
    ++k;
  }
  return basis;
}

std::vector<Eigen::Index> independent_rows(const RatMatrix& m) {
  RatMatrix t = m.transpose();
  return rref(t);
}

GcdExt gcd_ext(const Integer& a, const Integer& b) {
  if (a.is_zero() && b.is_zero()) return {Integer(0), Integer(0), Integer(0)};
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return {Integer(g), Integer(s), Integer(t)};
}

UnimodularMatrix::UnimodularMatrix(IntMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("unimodular matrix must be square");
  if (abs(determinant(m_)) != Integer(1)) throw std::domain_error("matrix is not unimodular");
}

UnimodularMatrix UnimodularMatrix::identity(Eigen::Index n) {
  return UnimodularMatrix(IntMatrix::Identity(n, n));
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  return UnimodularMatrix(to_integer(pilp::inverse(rational())));
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m > n) throw std::domain_error("not full row rank");
  IntMatrix w = a;
  IntMatrix u = IntMatrix::Identity(n, n);
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    for (Eigen::Index k = 0; k < i; ++k) eliminate_into(w, u, i, i, k);
    for (Eigen::Index k = m; k < n; ++k) eliminate_into(w, u, i, i, k);
    if (w(i, i).is_zero()) throw std::domain_error("not full row rank");
    if (w(i, i).sign() < 0) negate_column(w, u, i);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const Integer q = floor_div(w(i, j), w(i, i));
      if (q.is_zero()) continue;
      w.col(j) = (w.col(j) - w.col(i) * q).eval();
      u.col(j) = (u.col(j) - u.col(i) * q).eval();
    }
  }
  return {w.leftCols(m), UnimodularMatrix(u)};
}

HermiteForm hermite_normal_form(const RatMatrix& a) {
  if (!is_integral(a)) throw std::domain_error("matrix is not integral");
  return hermite_normal_form(to_integer(a));
}

DirectionReduction unimodular_for_direction(const IntRowVector& c) {
  if (is_zero(c)) throw std::domain_error("zero direction");
  HermiteForm f = hermite_normal_form(IntMatrix(c));
  return {f.h(0, 0), std::move(f.u)};
}

ColumnReduction normalize_full_column_rank(const RatMatrix& a) {
  const Eigen::Index n = a.cols();
  const Eigen::Index r = rank(a);
  if (r == n) return {a, UnimodularMatrix::identity(n), 0};
  const Rational scale(denominator_lcm(a));
  IntMatrix w = to_integer(RatMatrix(a * scale));
  IntMatrix u = IntMatrix::Identity(n, n);
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < a.rows() && pivot < n; ++i) {
    for (Eigen::Index k = pivot + 1; k < n; ++k) eliminate_into(w, u, i, pivot, k);
    if (!w(i, pivot).is_zero()) ++pivot;
  }
  RatMatrix reduced = (to_rational(w.leftCols(pivot)) / scale).eval();
  return {reduced, UnimodularMatrix(u), n - pivot};
}

Rational rational_reconstruct(const Rational& x, const Integer& max_den) {
  if (max_den < Integer(1)) throw std::invalid_argument("denominator bound must be positive");
  if (x.den() <= max_den) return x;
  const Integer whole = x.floor();
  const Rational f = x - Rational(whole);
  // Stern–Brocot descent with runs collapsed; lo < f < hi stay Farey neighbours.
  Integer lp(0), lq(1), hp(1), hq(1);
  while (true) {
    const Integer mq = lq + hq;
    if (mq > max_den) break;
    const Rational med(lp + hp, mq);
    if (med == f) return Rational(whole) + med;
    if (med < f) {
      // lo <- lo + k*hi with lo + k*hi < f and lq + k*hq <= max_den.
      const Rational lim = (f * Rational(lq) - Rational(lp)) / (Rational(hp) - f * Rational(hq));
      Integer k = lim.floor();
      if (Rational(k) == lim) k -= 1;
      k = std::min(k, floor_div(max_den - lq, hq));
      lp += k * hp;
      lq += k * hq;
    } else {
      const Rational lim = (Rational(hp) - f * Rational(hq)) / (f * Rational(lq) - Rational(lp));
      Integer k = lim.floor();
      if (Rational(k) == lim) k -= 1;
      k = std::min(k, floor_div(max_den - hq, lq));
      hp += k * lp;
      hq += k * lq;
    }
  }
  const Rational lo(lp, lq);
  const Rational hi(hp, hq);
  const Rational dlo = f - lo;
  const Rational dhi = hi - f;
  bool take_lo = dlo < dhi;
  if (dlo == dhi) take_lo = lq <= hq;
  return Rational(whole) + (take_lo ? lo : hi);
}

long size_of(const RatVector& v) {
  long s = static_cast<long>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i).size();
  return s;
}

long size_of(const RatMatrix& m) {
  long s = static_cast<long>(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j).size();
  return s;
}

long max_column_size(const RatMatrix& m) {
  long best = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, size_of(RatVector(m.col(j))));
  return best;
}

}  // namespace pilp
