#include "pilp/paramwidth.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "pilp/errors.hpp"
#include "pilp/lattice.hpp"
#include "pilp/lattice_detail.hpp"

namespace pilp {

RatRowVector WidthTriple::functional() const { return to_rational(c) * (f - g); }

namespace {

std::string matrix_key(const RatMatrix& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) key += m(i, j).str() + ",";
  return key;
}

// n x m matrix sending b to A_N^{-1} b_N.
RatMatrix basis_map(const RatMatrix& inv, const std::vector<Eigen::Index>& basis, Eigen::Index m) {
  RatMatrix f = RatMatrix::Zero(inv.rows(), m);
  for (std::size_t k = 0; k < basis.size(); ++k) f.col(basis[k]) = inv.col(static_cast<Eigen::Index>(k));
  return f;
}

// Sum of the n largest values.
Rational top_sum(std::vector<Rational> values, Eigen::Index n) {
  std::sort(values.begin(), values.end(), [](const Rational& x, const Rational& y) { return y < x; });
  Rational total(0);
  for (std::size_t i = 0; i < values.size() && i < static_cast<std::size_t>(n); ++i) total += values[i];
  return total;
}

TripleList compute_triples(const RatMatrix& a, const Config& config) {
  const Eigen::Index n = a.cols();
  const Eigen::Index m = a.rows();
  if (rank(a) != n) throw InputError("A", "not full column rank");
  const auto bases = enumerate_bases(a);
  std::vector<RatMatrix> inverses;
  for (const auto& basis : bases) inverses.push_back(inverse(select_rows(a, basis)));
  TripleList out;
  std::set<std::string> seen;
  bool any_pair = false;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      Polyhedron region = detail::pair_cone_cut(inverses[i], inverses[j]);
      if (!is_feasible(region)) continue;
      any_pair = true;
      const RatMatrix g = detail::pair_cone(inverses[i], inverses[j]);
      const RatRowVector height = -g.topRows(n).colwise().sum();
      // Every hull vertex is a ray generator or lies in the half-open
      // parallelepiped of at most n of them.
      std::vector<Rational> norms, heights;
      for (const IntVector& r : extreme_rays(g)) {
        Integer norm(0);
        for (Eigen::Index k = 0; k < n; ++k) norm = std::max(norm, abs(r(k)));
        norms.emplace_back(norm);
        heights.push_back((height * to_rational(r))(0));
      }
      const Integer bound = top_sum(norms, n).ceil();
      if (bound > config.hull_bound) {
        throw LimitError("integer hull enumeration bound " + bound.str() + " exceeds configured limit " +
                         config.hull_bound.str());
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        RatRowVector e = RatRowVector::Zero(n);
        e(k) = 1;
        region.add(e, Rational(bound));
        region.add(RatRowVector(-e), Rational(bound));
      }
      region.add(height, top_sum(heights, n));
      const RatMatrix f = basis_map(inverses[i], bases[i], m);
      const RatMatrix gmap = basis_map(inverses[j], bases[j], m);
      for (const IntVector& v : detail::hull_candidates(region, g, true)) {
        const IntRowVector c = v.transpose();
        if (content(c) != Integer(1)) throw std::logic_error("flat direction is not primitive");
        std::string key;
        for (Eigen::Index k = 0; k < n; ++k) key += c(k).str() + ",";
        key += "|" + matrix_key(f) + "|" + matrix_key(gmap);
        if (!seen.insert(key).second) continue;
        out.push_back({f, gmap, c, bases[i], bases[j]});
      }
    }
  }
  if (!any_pair) throw InfiniteWidthError();
  if (Integer(static_cast<long>(out.size())) > triple_count_bound(a)) {
    throw std::logic_error("triple count exceeds the theoretical bound");
  }
  return out;
}

}  // namespace

Integer triple_count_bound(const RatMatrix& a) {
  const long n = a.cols();
  const long m = a.rows();
  const long phi = max_column_size(a);
  Integer total(2);
  for (long k = 0; k < 2 * n; ++k) total = total * Integer(m);
  for (long k = 0; k < n; ++k) total = total * Integer(2 * n + 1);
  const Integer base = Integer(24) * Integer(n * n * n * n * n) * Integer(phi);
  for (long k = 0; k + 1 < n; ++k) total = total * base;
  return total;
}

std::shared_ptr<const TripleList> flat_direction_triples(const RatMatrix& a, const Config& config) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const TripleList>> cache;
  const std::string key = matrix_key(a) + "#" + config.hull_bound.str();
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) {
      if (!it->second) throw InfiniteWidthError();
      return it->second;
    }
  }
  std::shared_ptr<const TripleList> result;
  try {
    result = std::make_shared<const TripleList>(compute_triples(a, config));
  } catch (const InfiniteWidthError&) {
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, nullptr);
    throw;
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, result).first->second;
}

std::size_t best_triple(const TripleList& triples, const RatVector& b) {
  if (triples.empty()) throw std::invalid_argument("empty triple list");
  std::size_t best = 0;
  Rational best_width = triples[0].width(b);
  for (std::size_t i = 1; i < triples.size(); ++i) {
    const Rational w = triples[i].width(b);
    if (w < best_width) {
      best = i;
      best_width = w;
    }
  }
  return best;
}

std::optional<std::size_t> WidthPartition::locate(const RatVector& b) const {
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i].region.contains(b)) return i;
  return std::nullopt;
}

namespace {

// Triples whose functional is not a repeat of an earlier one; a repeated
// form can never be a strict first minimiser.
std::vector<std::size_t> distinct_forms(const std::vector<RatRowVector>& forms) {
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    bool repeat = false;
    for (std::size_t j : distinct) repeat = repeat || forms[j] == forms[i];
    if (!repeat) distinct.push_back(i);
  }
  return distinct;
}

Polyhedron region_of(const std::vector<RatRowVector>& forms, const std::vector<std::size_t>& distinct,
                     std::size_t i, const Polyhedron& q) {
  Polyhedron region = q;
  for (std::size_t j : distinct) {
    if (j == i) continue;
    region.add(RatRowVector(forms[i] - forms[j]), 0, j < i);
  }
  return canonicalize(region);
}

std::vector<RatRowVector> functionals(const TripleList& triples) {
  std::vector<RatRowVector> forms;
  for (const auto& t : triples) forms.push_back(t.functional());
  return forms;
}

}  // namespace

Polyhedron width_region(const TripleList& triples, std::size_t i, const Polyhedron& q) {
  const std::vector<RatRowVector> forms = functionals(triples);
  const std::vector<std::size_t> distinct = distinct_forms(forms);
  if (std::find(distinct.begin(), distinct.end(), i) == distinct.end()) return Polyhedron::empty(q.dim());
  return region_of(forms, distinct, i, q);
}

WidthPartition width_partition(const RatMatrix& a, const Polyhedron& q, const Config& config) {
  if (q.dim() != a.rows()) throw InputError("Q", "dimension must equal the number of rows of A");
  WidthPartition out;
  out.triples = flat_direction_triples(a, config);
  const std::vector<RatRowVector> forms = functionals(*out.triples);
  const std::vector<std::size_t> distinct = distinct_forms(forms);
  for (std::size_t i : distinct) {
    Polyhedron region = region_of(forms, distinct, i, q);
    if (is_feasible(region)) out.regions.push_back({region, i});
  }
  return out;
}

}  // namespace pilp
