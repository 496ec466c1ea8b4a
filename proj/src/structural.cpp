#include "pilp/structural.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pilp/errors.hpp"
#include "pilp/lattice.hpp"
#include "pilp/milp.hpp"
#include "pilp/paramwidth.hpp"

namespace pilp {

AffineMap AffineMap::padded(Eigen::Index inputs) const {
  if (inputs < linear.cols()) throw std::invalid_argument("affine map cannot shrink");
  AffineMap out{RatMatrix::Zero(linear.rows(), inputs), offset};
  out.linear.leftCols(linear.cols()) = linear;
  return out;
}

IntVector Candidate::evaluate(const RatVector& bz) const {
  const RatVector v = t(RatVector(bz.head(t.inputs())));
  IntVector up(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) up(j) = v(j).ceil();
  return u.matrix() * up;
}

std::optional<IntVector> CandidateScheme::projection_witness(const RatVector& b, const Config& config) const {
  if (b.size() != m) throw InputError("b", "length must equal the number of rows of A");
  if (l == 0) return sprime.contains(b) ? std::optional<IntVector>(IntVector(0)) : std::nullopt;
  if (sprime.trivially_empty()) return std::nullopt;
  Polyhedron fixed(l);
  for (const auto& row : sprime.constraints()) {
    const Rational lhs = (row.a.head(m) * b)(0);
    fixed.add(RatRowVector(row.a.tail(l)), row.beta - lhs, row.strict);
  }
  const FeasibilityResult r = integer_feasible(fixed, config);
  if (!r.feasible()) return std::nullopt;
  return to_integer(r.witness);
}

namespace {

Polyhedron widen(const Polyhedron& p, Eigen::Index dim) {
  if (p.trivially_empty()) return Polyhedron::empty(dim);
  Polyhedron out(dim);
  for (const auto& row : p.constraints()) {
    RatRowVector a = RatRowVector::Zero(dim);
    a.head(p.dim()) = row.a;
    out.add(a, row.beta, row.strict);
  }
  return out;
}

AffineMap row_of(const AffineMap& f, Eigen::Index i) {
  return {RatMatrix(f.linear.row(i)), RatVector::Constant(1, f.offset(i))};
}

AffineMap scaled(const AffineMap& f, const Rational& s) { return {RatMatrix(f.linear * s), RatVector(f.offset * s)}; }

AffineMap minus(const AffineMap& f, const AffineMap& g) {
  const Eigen::Index in = std::max(f.inputs(), g.inputs());
  const AffineMap a = f.padded(in), b = g.padded(in);
  return {RatMatrix(a.linear - b.linear), RatVector(a.offset - b.offset)};
}

// The row f(v) <= 0 (or < 0) of a one-output map, in dimension `dim`.
void add_sign_row(Polyhedron& s, const AffineMap& f, bool strict) {
  const AffineMap g = f.padded(s.dim());
  s.add(RatRowVector(g.linear.row(0)), -g.offset(0), strict);
}

struct State {
  Polyhedron s;
  std::vector<AffineMap> rounding;
  std::vector<Candidate> candidates;
  RatVector point;  // (b, z) at the located parameter
};

// Subproblem {w : m w <= r(b, z)} in the last d coordinates of the full vector.
struct Sub {
  RatMatrix m;
  AffineMap r;
  IntMatrix u;                    // x = u * (prefix values, w)
  std::vector<AffineMap> prefix;  // one-output maps with integral values on S'
};

using Cont = std::function<void(State&)>;

class Builder {
 public:
  Builder(const RatMatrix& a, const Config& config, const RatVector* point)
      : a_(a), config_(config), point_(point), n_(a.cols()), m_(a.rows()) {}

  void run(const Polyhedron& q, const Cont& done) {
    State st{q, {}, {}, point_ ? *point_ : RatVector(0)};
    if (point_ && !q.contains(*point_)) throw InputError("b", "not in Q");
    if (!admit(st)) return;
    Sub top{a_, {RatMatrix::Identity(m_, m_), RatVector::Zero(m_)}, IntMatrix::Identity(n_, n_), {}};
    solve(st, top, true, done);
  }

 private:
  bool admit(const State& st) const {
    if (st.s.trivially_empty()) return false;
    return point_ ? st.s.contains(st.point) : is_feasible(st.s);
  }

  void solve(const State& st, const Sub& sub, bool top, const Cont& k) {
    const Eigen::Index d = sub.m.cols();
    if (d == 0) {
      State out = st;
      emit(out, sub, {}, false);
      k(out);
      return;
    }
    if (d == 1 && !top) {
      lowest_point(st, sub, k);
      return;
    }
    if (!top && !finite_width_test(sub.m)) {
      basic_points(st, sub, k);
      return;
    }
    slabs(st, sub, top, k);
  }

  const WidthPartition& partition(const RatMatrix& m) {
    std::ostringstream key;
    key << m;
    auto it = partitions_.find(key.str());
    if (it == partitions_.end()) it = partitions_.emplace(key.str(), width_partition(m, Polyhedron(m_), config_)).first;
    return it->second;
  }

  // Slabs of the width direction of the region containing r(b, z).
  void slabs(const State& st, const Sub& sub, bool top, const Cont& k) {
    const Eigen::Index d = sub.m.cols();
    const auto triples = flat_direction_triples(sub.m, config_);
    std::vector<std::size_t> choices;
    if (point_) {
      choices.push_back(best_triple(*triples, sub.r.padded(st.s.dim())(st.point)));
    } else {
      for (const auto& region : partition(sub.m).regions) choices.push_back(region.triple);
    }
    for (std::size_t i : choices) {
      State s1 = st;
      const AffineMap r = sub.r.padded(s1.s.dim());
      s1.s.append(preimage(width_region(*triples, i, Polyhedron(m_)), r.linear, r.offset));
      if (!admit(s1)) continue;
      const WidthTriple& tr = (*triples)[i];
      const RatRowVector cg = to_rational(tr.c) * tr.g;
      const Eigen::Index z = add_rounding(s1, {RatMatrix(cg * r.linear), RatVector::Constant(1, (cg * r.offset)(0))});

      IntMatrix ur = unimodular_for_direction(tr.c).u.matrix();
      for (Eigen::Index col = 1; col < d; ++col) {
        Eigen::Index lead = 0;
        while (ur(lead, col).is_zero()) ++lead;
        if (ur(lead, col) < Integer(0)) ur.col(col) *= Integer(-1);
      }
      const RatMatrix mu = sub.m * to_rational(ur);
      IntMatrix block = IntMatrix::Identity(n_, n_);
      block.bottomRightCorner(d, d) = ur;
      const IntMatrix u = sub.u * block;
      const long last = top && d == 1 ? 0 : config_.flatness.slabs(static_cast<int>(d));

      std::function<void(State&, long)> slab = [&](State& cur, long j) {
        if (j > last) {
          k(cur);
          return;
        }
        const Eigen::Index dim = cur.s.dim();
        // First coordinate fixed to z + j.
        AffineMap fixed{RatMatrix::Zero(1, dim), RatVector::Constant(1, Rational(j))};
        fixed.linear(0, z) = 1;
        AffineMap rest = sub.r.padded(dim);
        rest.linear.col(z) -= mu.col(0);
        rest.offset -= mu.col(0) * Rational(j);
        Sub next{RatMatrix(mu.rightCols(d - 1)), rest, u, sub.prefix};
        next.prefix.push_back(fixed);
        solve(cur, next, false, [&](State& after) { slab(after, j + 1); });
      };
      slab(s1, 0);
    }
  }

  // Last coordinate: the highest lower bound (or, failing that, the lowest upper bound).
  void lowest_point(const State& st, const Sub& sub, const Cont& k) {
    std::vector<Eigen::Index> up, down;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const int s = sub.m(i, 0).sign();
      if (s < 0) up.push_back(i);
      if (s > 0) down.push_back(i);
    }
    if (up.empty() && down.empty()) {
      State out = st;
      emit(out, sub, AffineMap{RatMatrix::Zero(1, st.s.dim()), RatVector::Zero(1)}, false);
      k(out);
      return;
    }
    const bool lower = !up.empty();
    const std::vector<Eigen::Index>& rows = lower ? up : down;
    const auto bound = [&](Eigen::Index i, Eigen::Index dim) { return scaled(row_of(sub.r.padded(dim), i), Rational(1) / sub.m(i, 0)); };
    for (std::size_t c = 0; c < rows.size(); ++c) {
      State s1 = st;
      const Eigen::Index dim = s1.s.dim();
      const AffineMap chosen = bound(rows[c], dim);
      for (std::size_t o = 0; o < rows.size(); ++o) {
        if (o == c) continue;
        const AffineMap other = bound(rows[o], dim);
        add_sign_row(s1.s, lower ? minus(other, chosen) : minus(chosen, other), o < c);
      }
      if (!admit(s1)) continue;
      emit(s1, sub, lower ? chosen : scaled(chosen, -1), !lower);
      k(s1);
    }
  }

  // Infinite-width section: every basic solution pushed deep into the recession cone.
  void basic_points(const State& st, const Sub& sub, const Cont& k) {
    const Eigen::Index d = sub.m.cols();
    // Zero rows only constrain the parameters.
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (!is_zero(sub.m.row(i))) live.push_back(i);
    const RatMatrix ml = select_rows(sub.m, live);
    const auto dir = find_point(ml, RatVector::Constant(ml.rows(), Rational(-1)));
    if (!dir) throw std::logic_error("infinite-width section without interior recession direction");
    Rational t(0);
    for (Eigen::Index i : live) {
      Rational l1(0);
      for (Eigen::Index j = 0; j < d; ++j) l1 += abs(sub.m(i, j));
      const Rational need = l1 / (Rational(2) * -(sub.m.row(i) * *dir)(0));
      if (need > t) t = need;
    }
    const RatVector shift = *dir * t - RatVector::Constant(d, Rational(1, 2));
    State out = st;
    const AffineMap r = sub.r.padded(st.s.dim());
    for (const auto& basis : enumerate_bases(sub.m)) {
      const RatMatrix inv = inverse(select_rows(sub.m, basis));
      RatMatrix lin(d, r.inputs());
      for (std::size_t s = 0; s < basis.size(); ++s) lin.row(static_cast<Eigen::Index>(s)) = r.linear.row(basis[s]);
      const AffineMap point{RatMatrix(inv * lin), RatVector(inv * select_rows(r.offset, basis) + shift)};
      emit(out, sub, point, false);
    }
    k(out);
  }

  // Appends the candidate u * ceil(prefix, tail); `flip` negates the last coordinate.
  void emit(State& st, const Sub& sub, const std::optional<AffineMap>& tail, bool flip) {
    const Eigen::Index dim = st.s.dim();
    AffineMap t{RatMatrix::Zero(n_, dim), RatVector::Zero(n_)};
    Eigen::Index row = 0;
    for (const AffineMap& p : sub.prefix) {
      const AffineMap q = p.padded(dim);
      t.linear.row(row) = q.linear.row(0);
      t.offset(row++) = q.offset(0);
    }
    if (tail) {
      const AffineMap q = tail->padded(dim);
      t.linear.bottomRows(q.outputs()) = q.linear;
      t.offset.tail(q.outputs()) = q.offset;
    }
    IntMatrix u = sub.u;
    if (flip) u.col(n_ - 1) *= Integer(-1);
    st.candidates.push_back({UnimodularMatrix(u), t});
  }

  // New projected coordinate z = ceil(rho(b, z_prev)); returns its index in (b, z).
  Eigen::Index add_rounding(State& st, const AffineMap& rho) {
    const Eigen::Index dim = st.s.dim();
    st.s = widen(st.s, dim + 1);
    RatRowVector lo(dim + 1), hi(dim + 1);
    lo << rho.linear.row(0), Rational(-1);
    hi << RatRowVector(-rho.linear.row(0)), Rational(1);
    st.s.add(lo, -rho.offset(0));
    st.s.add(hi, rho.offset(0) + Rational(1), true);
    st.rounding.push_back(rho);
    if (point_) {
      RatVector p(dim + 1);
      p << st.point, Rational(rho(st.point)(0).ceil());
      st.point = p;
    }
    return dim;
  }

  const RatMatrix& a_;
  const Config& config_;
  const RatVector* point_;
  Eigen::Index n_, m_;
  std::map<std::string, WidthPartition> partitions_;
};

void check_input(const RatMatrix& a, const Polyhedron& q, const Config& config) {
  if (q.dim() != a.rows()) throw InputError("Q", "dimension must equal the number of rows of A");
  if (a.cols() == 0 || rank(a) != a.cols()) throw InputError("A", "not full column rank");
  if (a.cols() > config.max_structural_dim) {
    throw LimitError("structural partition supports n <= " + std::to_string(config.max_structural_dim));
  }
  if (!finite_width_test(a)) throw InfiniteWidthError();
}

CandidateScheme finish(const State& st, Eigen::Index m) {
  CandidateScheme out;
  out.sprime = st.s;
  out.m = m;
  out.l = st.s.dim() - m;
  out.rounding = st.rounding;
  for (const Candidate& c : st.candidates) out.candidates.push_back({c.u, c.t.padded(st.s.dim())});
  return out;
}

// log2 of the bounds on l_i and k_i with omega-bar(n) = omega(n)^n.
void check_bounds(const CandidateScheme& s, Eigen::Index n, const Config& config) {
  const double omega = config.flatness.omega(static_cast<int>(n)).to_double();
  const double bar = std::pow(omega, static_cast<double>(n));
  const double k_bound = std::pow(2.0, static_cast<double>(n * n) / 2.0) * bar;
  if (static_cast<double>(s.l) > bar || static_cast<double>(s.candidates.size()) > k_bound) {
    throw std::logic_error("candidate scheme exceeds the structural bounds");
  }
}

}  // namespace

StructuralPartition structural_partition(const RatMatrix& a, const Polyhedron& q, const Config& config) {
  check_input(a, q, config);
  if (a.cols() > config.max_partition_dim) {
    throw LimitError("full structural partition supports n <= " + std::to_string(config.max_partition_dim) +
                     "; locate_scheme covers single parameters");
  }
  StructuralPartition out{a.rows(), a.cols(), {}};
  Builder builder(a, config, nullptr);
  builder.run(q, [&](State& st) {
    if (out.schemes.size() >= config.max_schemes) {
      throw LimitError("structural partition exceeds " + std::to_string(config.max_schemes) + " schemes");
    }
    out.schemes.push_back(finish(st, a.rows()));
    check_bounds(out.schemes.back(), a.cols(), config);
  });
  // t <= (m^(2n) phi^(n-1))^(n omega-bar(n)), compared in log2.
  const double n = static_cast<double>(a.cols());
  const double bar = std::pow(config.flatness.omega(static_cast<int>(a.cols())).to_double(), n);
  const double log_t = n * bar *
                       (2 * n * std::log2(static_cast<double>(a.rows())) +
                        (n - 1) * std::log2(static_cast<double>(std::max(2L, max_column_size(a)))));
  if (std::log2(static_cast<double>(std::max<std::size_t>(out.schemes.size(), 1))) > log_t) {
    throw std::logic_error("scheme count exceeds the structural bound");
  }
  return out;
}

CandidateScheme locate_scheme(const RatMatrix& a, const Polyhedron& q, const RatVector& b, const Config& config) {
  check_input(a, q, config);
  if (b.size() != a.rows()) throw InputError("b", "length must equal the number of rows of A");
  std::optional<CandidateScheme> found;
  Builder builder(a, config, &b);
  builder.run(q, [&](State& st) {
    if (found) throw std::logic_error("located parameter lies in two schemes");
    found = finish(st, a.rows());
  });
  if (!found) throw std::logic_error("located parameter lies in no scheme");
  check_bounds(*found, a.cols(), config);
  return *found;
}

std::vector<IntVector> evaluate_candidates(const CandidateScheme& scheme, const RatVector& b, const Config& config) {
  const auto z = scheme.projection_witness(b, config);
  if (!z) throw InputError("b", "not in the region of this scheme");
  RatVector bz(scheme.m + scheme.l);
  bz << b, to_rational(*z);
  std::vector<IntVector> out;
  for (const Candidate& c : scheme.candidates) out.push_back(c.evaluate(bz));
  return out;
}

std::vector<Candidate> parameter_only(const CandidateScheme& scheme) {
  const Eigen::Index m = scheme.m;
  if (scheme.l == 0) {
    std::vector<Candidate> out;
    for (const Candidate& c : scheme.candidates) out.push_back({c.u, AffineMap{RatMatrix(c.t.linear.leftCols(m)), c.t.offset}});
    return out;
  }
  if (scheme.l != 1) throw LimitError("parameter-only form needs a single projected coordinate");
  const AffineMap& rho = scheme.rounding[0];
  std::vector<Candidate> out;
  for (const Candidate& c : scheme.candidates) {
    const Eigen::Index n = c.t.outputs();
    // Carrier row: exactly z + j, whose ceiling is ceil(rho b + j).
    std::optional<Eigen::Index> carrier;
    for (Eigen::Index r = 0; r < n && !carrier; ++r) {
      if (is_zero(c.t.linear.row(r).head(m)) && c.t.linear(r, m) == Rational(1) && c.t.offset(r).is_integer()) carrier = r;
    }
    const bool uses_z = !is_zero(c.t.linear.col(m));
    if (!uses_z) {
      out.push_back({c.u, AffineMap{RatMatrix(c.t.linear.leftCols(m)), c.t.offset}});
      continue;
    }
    if (!carrier) throw LimitError("candidate has no carrier row for the projected coordinate");
    const Integer j = c.t.offset(*carrier).floor();
    IntMatrix split = IntMatrix::Identity(n, n);
    AffineMap base{RatMatrix(n, m), RatVector(n)};
    std::vector<Eigen::Index> doubled;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == *carrier) {
        base.linear.row(r) = rho.linear.row(0);
        base.offset(r) = rho.offset(0) + Rational(j);
        continue;
      }
      const Rational psi = -c.t.linear(r, m);
      const Integer fl = psi.floor();
      const Rational fr = psi.frac();
      split(r, *carrier) = -fl;
      base.linear.row(r) = RatRowVector(c.t.linear.row(r).head(m)) - rho.linear.row(0) * fr;
      base.offset(r) = c.t.offset(r) - rho.offset(0) * fr + Rational(fl) * Rational(j);
      if (!fr.is_zero()) doubled.push_back(r);
    }
    const UnimodularMatrix u = c.u * UnimodularMatrix(split);
    const std::size_t cases = std::size_t{1} << doubled.size();
    for (std::size_t mask = 0; mask < cases; ++mask) {
      AffineMap t = base;
      for (std::size_t s = 0; s < doubled.size(); ++s)
        if (mask >> s & 1U) t.offset(doubled[s]) -= Rational(1);
      out.push_back({u, t});
    }
  }
  return out;
}

}  // namespace pilp
