#include "pilp/decide.hpp"

#include <functional>
#include <stdexcept>

#include "pilp/errors.hpp"
#include "pilp/lattice.hpp"
#include "pilp/milp.hpp"
#include "pilp/structural.hpp"

namespace pilp {

namespace {

void check(const ForAllExistsInstance& inst) {
  if (inst.p < 0) throw InputError("p", "must be non-negative");
  if (inst.q.dim() != inst.a.rows() + inst.p) throw InputError("Q", "dimension must equal m + p");
}

// v -> (first `count` coordinates of v at `at`), as a selection matrix.
RatMatrix selector(Eigen::Index rows, Eigen::Index cols, const std::vector<Eigen::Index>& at) {
  RatMatrix e = RatMatrix::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) e(r, at[static_cast<std::size_t>(r)]) = 1;
  return e;
}

std::vector<Eigen::Index> range(Eigen::Index from, Eigen::Index count) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < count; ++i) out.push_back(from + i);
  return out;
}

// {b : A x <= b has a real solution}.
Polyhedron fractional_region(const RatMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Polyhedron lifted(m + n);
  for (Eigen::Index i = 0; i < m; ++i) {
    RatRowVector row = RatRowVector::Zero(m + n);
    row(i) = -1;
    row.tail(n) = a.row(i);
    lifted.add(row, 0);
  }
  return fm_project(lifted, m);
}

std::set<Eigen::Index> integral_block(Eigen::Index from, Eigen::Index to) {
  std::set<Eigen::Index> out;
  for (Eigen::Index i = from; i < to; ++i) out.insert(i);
  return out;
}

Counterexample certificate(const RatVector& w, Eigen::Index m, Eigen::Index p) {
  return {RatVector(w.head(m)), to_integer(RatMatrix(w.segment(m, p)))};
}

// Linear form over the MILP variables plus a constant.
struct Form {
  RatRowVector lin;
  Rational c;
};

// MILPs over v = (b, y, z, w): y the projected coordinates of Q, z those of
// S', w the ceilings used by candidate coordinates that are not already integral.
class SchemeSearch {
 public:
  SchemeSearch(const RatMatrix& a, const ForAllExistsInstance& inst, const CandidateScheme& scheme, const Config& config)
      : a_(a), config_(config), m_(a.rows()), p_(inst.p), l_(scheme.l) {
    std::vector<std::vector<Form>> points;
    for (const Candidate& c : scheme.candidates) points.push_back(candidate_forms(c));
    total_ = m_ + p_ + l_ + static_cast<Eigen::Index>(ceilings_.size());
    base_ = Polyhedron(total_);
    std::vector<Eigen::Index> bq = range(0, m_ + p_);
    base_.append(preimage(inst.q, selector(m_ + p_, total_, bq), RatVector::Zero(m_ + p_)));
    std::vector<Eigen::Index> bz = range(0, m_);
    for (Eigen::Index s = 0; s < l_; ++s) bz.push_back(m_ + p_ + s);
    base_.append(preimage(scheme.sprime, selector(m_ + l_, total_, bz), RatVector::Zero(m_ + l_)));
    for (std::size_t k = 0; k < ceilings_.size(); ++k) {
      const Form f = widen(ceilings_[k]);
      RatRowVector row = f.lin;
      row(m_ + p_ + l_ + static_cast<Eigen::Index>(k)) -= 1;
      base_.add(row, -f.c);                          // f <= w
      base_.add(RatRowVector(-row), f.c + Rational(1), true);  // w < f + 1
    }
    // Violation rows a_i x_j > b_i for every distinct candidate point.
    for (const auto& pt : points) {
      std::vector<LinearConstraint> rows;
      for (Eigen::Index i = 0; i < m_; ++i) {
        RatRowVector lin = RatRowVector::Zero(total_);
        Rational c(0);
        for (Eigen::Index r = 0; r < a_.cols(); ++r) {
          if (a_(i, r).is_zero()) continue;
          const Form e = widen(pt[static_cast<std::size_t>(r)]);
          lin += a_(i, r) * e.lin;
          c += a_(i, r) * e.c;
        }
        lin(i) -= 1;
        rows.push_back({RatRowVector(-lin), c, true});  // b_i - a_i x < 0
      }
      bool repeat = false;
      for (const auto& v : violations_) repeat = repeat || v == rows;
      if (!repeat) violations_.push_back(rows);
    }
  }

  std::optional<RatVector> run() {
    if (!is_feasible(base_)) return std::nullopt;
    if (!mixed_integer_feasible(problem(base_), config_).feasible()) return std::nullopt;
    return extend(base_, 0);
  }

 private:
  MipProblem problem(const Polyhedron& p) const { return {p, integral_block(m_, total_)}; }

  // Lexicographic tuples; partial tuples are pruned by their LP relaxation.
  std::optional<RatVector> extend(const Polyhedron& p, std::size_t j) {
    if (j == violations_.size()) {
      const FeasibilityResult r = mixed_integer_feasible(problem(p), config_);
      if (r.feasible()) return r.witness;
      return std::nullopt;
    }
    for (const LinearConstraint& row : violations_[j]) {
      Polyhedron next = p;
      next.add(row);
      if (!is_feasible(next)) continue;
      if (auto w = extend(next, j + 1)) return w;
    }
    return std::nullopt;
  }

  Form widen(const Form& f) const {
    RatRowVector lin = RatRowVector::Zero(total_);
    lin.head(f.lin.size()) = f.lin;
    return {lin, f.c};
  }

  // Coordinates of u * ceil(t(b, z)) as forms over (b, y, z, w...).
  std::vector<Form> candidate_forms(const Candidate& cand) {
    const Eigen::Index n = cand.t.outputs();
    const Eigen::Index prefix = m_ + p_ + l_;
    std::vector<Form> up;
    for (Eigen::Index r = 0; r < n; ++r) {
      const RatRowVector alpha = cand.t.linear.row(r);
      const Rational kappa = cand.t.offset(r);
      RatRowVector lin = RatRowVector::Zero(prefix);
      const bool integral = is_zero(RatRowVector(alpha.head(m_))) && is_integral(RatRowVector(alpha.tail(l_))) &&
                            kappa.is_integer();
      if (integral) {
        lin.tail(l_) = alpha.tail(l_);
        up.push_back({lin, kappa});
        continue;
      }
      // ceil(alpha v + kappa) = ceil(alpha v + {kappa}) + floor(kappa).
      Form key{RatRowVector::Zero(prefix), kappa.frac()};
      key.lin.head(m_) = alpha.head(m_);
      key.lin.tail(l_) = alpha.tail(l_);
      std::size_t k = 0;
      while (k < ceilings_.size() && !(ceilings_[k].lin == key.lin && ceilings_[k].c == key.c)) ++k;
      if (k == ceilings_.size()) ceilings_.push_back(key);
      RatRowVector pick = RatRowVector::Zero(prefix + static_cast<Eigen::Index>(k) + 1);
      pick(prefix + static_cast<Eigen::Index>(k)) = 1;
      up.push_back({pick, Rational(kappa.floor())});
    }
    const RatMatrix u = cand.u.rational();
    std::vector<Form> out;
    for (Eigen::Index r = 0; r < n; ++r) {
      Eigen::Index width = 0;
      for (const Form& f : up) width = std::max(width, f.lin.size());
      Form x{RatRowVector::Zero(width), Rational(0)};
      for (Eigen::Index s = 0; s < n; ++s) {
        if (u(r, s).is_zero()) continue;
        const Form& f = up[static_cast<std::size_t>(s)];
        x.lin.head(f.lin.size()) += u(r, s) * f.lin;
        x.c += u(r, s) * f.c;
      }
      out.push_back(x);
    }
    return out;
  }

  const RatMatrix& a_;
  const Config& config_;
  Eigen::Index m_, p_, l_;
  Eigen::Index total_ = 0;
  std::vector<Form> ceilings_;
  std::vector<std::vector<LinearConstraint>> violations_;
  Polyhedron base_;
};

DecisionResult fails(const ForAllExistsInstance& inst, const Counterexample& cex, const Config& config) {
  verify_counterexample(inst, cex, config);
  return {Verdict::Fails, cex};
}

}  // namespace

void verify_counterexample(const ForAllExistsInstance& inst, const Counterexample& cex, const Config& config) {
  RatVector bz(inst.a.rows() + inst.p);
  bz << cex.b, to_rational(cex.z);
  if (!inst.q.contains(bz)) throw std::logic_error("counterexample is not in Q");
  if (integer_feasible(Polyhedron::from_system(inst.a, cex.b), config).feasible()) {
    throw std::logic_error("counterexample has an integral solution");
  }
}

DecisionResult decide_forall_exists(const ForAllExistsInstance& inst, const Config& config) {
  check(inst);
  const Eigen::Index m = inst.a.rows(), p = inst.p;
  DecisionResult holds;
  if (m == 0) return holds;
  if (!mixed_integer_feasible({inst.q, integral_block(m, m + p)}, config).feasible()) return holds;

  const RatMatrix a = normalize_full_column_rank(inst.a).reduced;
  // (1) Parameters without a fractional solution.
  const Polyhedron qprime = fractional_region(a);
  for (const auto& row : qprime.constraints()) {
    Polyhedron outside = inst.q;
    RatRowVector neg = RatRowVector::Zero(m + p);
    neg.head(m) = -row.a;
    outside.add(neg, -row.beta, !row.strict);
    const FeasibilityResult r = mixed_integer_feasible({outside, integral_block(m, m + p)}, config);
    if (r.feasible()) return fails(inst, certificate(r.witness, m, p), config);
  }
  if (qprime.trivially_empty()) return holds;
  // Every non-empty P_b has integral points.
  if (a.cols() == 0 || !finite_width_test(a)) return holds;

  // (2) and (3): candidates of every scheme.
  const StructuralPartition part = structural_partition(a, qprime, config);
  for (const CandidateScheme& scheme : part.schemes) {
    SchemeSearch search(a, inst, scheme, config);
    if (const auto w = search.run()) return fails(inst, certificate(*w, m, p), config);
  }
  return holds;
}

DecisionResult bell_scarf_decide(const ForAllExistsInstance& inst, const Config& config) {
  check(inst);
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols(), p = inst.p;
  DecisionResult holds;
  if (m == 0) return holds;
  const Eigen::Index size = n >= 30 ? m : std::min<Eigen::Index>(m, Eigen::Index{1} << n);
  std::vector<Eigen::Index> rows = range(0, size);
  while (true) {
    // Coordinates u = (b_S, y, b_rest) with (b, y) = E u.
    std::vector<Eigen::Index> rest;
    for (Eigen::Index i = 0, s = 0; i < m; ++i) {
      if (s < size && rows[static_cast<std::size_t>(s)] == i) {
        ++s;
      } else {
        rest.push_back(i);
      }
    }
    std::vector<Eigen::Index> order = rows;
    for (Eigen::Index j = 0; j < p; ++j) order.push_back(m + j);
    order.insert(order.end(), rest.begin(), rest.end());
    RatMatrix e = RatMatrix::Zero(m + p, m + p);
    for (Eigen::Index t = 0; t < m + p; ++t) e(order[static_cast<std::size_t>(t)], t) = 1;
    const Polyhedron qu = preimage(inst.q, e, RatVector::Zero(m + p));
    const ForAllExistsInstance sub{select_rows(inst.a, rows), fm_project(qu, size + p), p};
    const DecisionResult r = decide_forall_exists(sub, config);
    if (!r.holds()) {
      Polyhedron fixed = qu;
      for (Eigen::Index t = 0; t < size; ++t) fixed.add_equality(RatRowVector::Unit(m + p, t), r.counterexample->b(t));
      for (Eigen::Index j = 0; j < p; ++j) {
        fixed.add_equality(RatRowVector::Unit(m + p, size + j), Rational(r.counterexample->z(j)));
      }
      const auto u = feasible_point(fixed);
      if (!u) throw std::logic_error("subsystem certificate does not lift");
      const RatVector bz = e * *u;
      return fails(inst, certificate(bz, m, p), config);
    }
    // Next subset in lexicographic order.
    Eigen::Index k = size - 1;
    while (k >= 0 && rows[static_cast<std::size_t>(k)] == m - size + k) --k;
    if (k < 0) break;
    ++rows[static_cast<std::size_t>(k)];
    for (Eigen::Index t = k + 1; t < size; ++t) rows[static_cast<std::size_t>(t)] = rows[static_cast<std::size_t>(t - 1)] + 1;
  }
  return holds;
}

}  // namespace pilp
