// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// (rational arithmetic, tolerance zero); the determinism check compares bytes.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hpp"
#include "properties.hpp"
#include "pilp/decide.hpp"
#include "pilp/gap.hpp"
#include "pilp/json_io.hpp"
#include "pilp/paramwidth.hpp"

using namespace pilp;
using namespace pilp::testing;

namespace {

struct Tally {
  long cases = 0;
  long failures = 0;
  std::string first_failure;

  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
  void fail(const std::string& what) { check(false, [&] { return what; }); }
};

std::string show(const RatMatrix& m) {
  std::ostringstream os;
  os << io::to_json(m).dump();
  return os.str();
}
std::string show(const RatVector& v) { return io::to_json(v).dump(); }

Integer cofactor_determinant(const IntMatrix& m) {
  if (m.rows() == 0) return 1;
  if (m.rows() == 1) return m(0, 0);
  Integer total(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    IntMatrix minor(m.rows() - 1, m.cols() - 1);
    for (Eigen::Index r = 1; r < m.rows(); ++r)
      for (Eigen::Index c = 0, k = 0; c < m.cols(); ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const Integer term = m(0, j) * cofactor_determinant(minor);
    total = (j % 2 == 0) ? total + term : total - term;
  }
  return total;
}

// ---------------------------------------------------------------------------

Tally hermite() {
  Tally t;
  std::mt19937 rng(1001);
  while (t.cases < 200) {
    const long m = uniform(rng, 1, 4);
    const long n = uniform(rng, m, 5);
    IntMatrix a(m, n);
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < n; ++j) a(i, j) = Integer(uniform(rng, -9, 9));
    if (rank(to_rational(a)) < m) continue;
    const HermiteForm f = hermite_normal_form(a);
    IntMatrix expected = IntMatrix::Zero(m, n);
    expected.leftCols(m) = f.h;
    bool ok = IntMatrix(a * f.u.matrix()) == expected && abs(cofactor_determinant(f.u.matrix())) == Integer(1);
    for (long i = 0; i < m && ok; ++i) {
      ok = f.h(i, i) > Integer(0);
      for (long j = 0; j < m && ok; ++j) {
        if (j < i) ok = f.h(i, j) == Integer(0);
        if (j > i) ok = f.h(i, j) >= Integer(0) && f.h(i, i) > f.h(i, j);
      }
    }
    t.check(ok, [&] { return "A = " + show(to_rational(a)); });
  }
  return t;
}

Tally fourier_motzkin() {
  Tally t;
  std::mt19937 rng(1002);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = uniform(rng, 1, 4);
    Polyhedron p(n);
    const long rows = uniform(rng, 1, 8);
    for (long i = 0; i < rows; ++i)
      p.add(random_row(rng, n, 5), Rational(uniform(rng, -5, 15), 2), uniform(rng, 0, 2) == 0);
    const Eigen::Index drop = uniform(rng, 0, n - 1);
    const Polyhedron q = fm_eliminate(p, drop, {k % 2 == 0});
    bool ok = true;
    RatVector bad;
    for (int s = 0; s < 40 && ok; ++s) {
      RatVector y(n - 1);
      for (Eigen::Index j = 0; j < n - 1; ++j) y(j) = Rational(uniform(rng, -8, 8), 2);
      ok = q.contains(y) == liftable(p, drop, y);
      if (!ok) bad = y;
    }
    t.check(ok, [&] { return "P = " + io::to_json(p).dump() + " at " + show(bad); });
  }
  return t;
}

// Integral point of the bounded P found by scanning L-infinity shells around its box centre.
std::optional<IntVector> shell_search(const Polyhedron& p, const oracle::Box& box) {
  const Eigen::Index n = p.dim();
  IntVector centre(n);
  Integer radius(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    centre(j) = floor_div(box.lower(j) + box.upper(j), Integer(2));
    radius = std::max({radius, centre(j) - box.lower(j), box.upper(j) - centre(j)});
  }
  for (long r = 0; r <= radius.to_long(); ++r) {
    oracle::Box shell{IntVector(n), IntVector(n)};
    for (Eigen::Index j = 0; j < n; ++j) {
      shell.lower(j) = std::max(box.lower(j), centre(j) - Integer(r));
      shell.upper(j) = std::min(box.upper(j), centre(j) + Integer(r));
    }
    for (const IntVector& x : oracle::brute_int_points(p, shell)) {
      Integer d(0);
      for (Eigen::Index j = 0; j < n; ++j) d = std::max(d, abs(x(j) - centre(j)));
      if (d == Integer(r)) return x;
    }
  }
  return std::nullopt;
}

Tally flatness() {
  Tally t;
  std::mt19937 rng(1003);
  const Config& config = default_config();
  // The triple pipeline and the direct search must agree for n <= 2; in
  // dimension three the direct search alone keeps the run short.
  const auto width = [&](const Polyhedron& p) {
    const WidthResult direct = lattice_width_direct(p);
    if (p.dim() <= 2) {
      const WidthResult piped = lattice_width(p, config);
      if (piped.width != direct.width) throw std::logic_error("width pipelines disagree on " + io::to_json(p).dump());
    }
    return direct;
  };
  while (t.cases < 500) {
    const Eigen::Index n = t.cases < 200 ? 1 + t.cases % 2 : 1 + t.cases % 3;
    Polyhedron p = box(n, -2, 2);
    const long extra = uniform(rng, 1, 3);
    for (long i = 0; i < extra; ++i) p.add(random_row(rng, n, 4), Rational(uniform(rng, 0, 12), 3));
    if (!is_feasible(p)) continue;
    const WidthResult w0 = width(p);
    if (w0.infinite() || w0.width->is_zero()) continue;
    const Rational omega = config.flatness.omega(static_cast<int>(n));
    // Scale to width omega(n) (or a little more), then shift off the lattice.
    const Rational factor = omega / *w0.width * Rational(uniform(rng, 4, 6), 4);
    RatVector shift(n);
    for (Eigen::Index j = 0; j < n; ++j) shift(j) = Rational(uniform(rng, -20, 20), 7);
    const Polyhedron wide = translate(scale(p, factor), shift);
    const WidthResult w = width(wide);
    if (w.infinite() || *w.width < omega) {
      t.fail("scaled polytope below omega(n): " + io::to_json(wide).dump());
      continue;
    }
    const auto bb = bounding_box(wide);
    const auto x = bb ? shell_search(wide, *bb) : std::nullopt;
    t.check(x && wide.contains(to_rational(*x)), [&] { return "no integral point in " + io::to_json(wide).dump(); });
  }
  return t;
}

Tally width_partitions() {
  Tally t;
  std::mt19937 rng(1004);
  for (int family = 0; family < 50; ++family) {
    const Eigen::Index n = family < 5 ? 1 : (family < 40 ? 2 : 3);
    const RatMatrix a = random_finite_width(rng, n, n + uniform(rng, 1, n == 3 ? 1 : 2), 3);
    const WidthPartition part = width_partition(a, Polyhedron(a.rows()));
    const TripleList& triples = *part.triples;
    t.check(Integer(static_cast<long>(triples.size())) <= triple_count_bound(a),
            [&] { return "triple count above bound for A = " + show(a); });
    for (int s = 0; s < 200; ++s) {
      const RatVector b = random_rhs(rng, a, 2);
      int hits = 0;
      std::size_t region = 0;
      for (std::size_t r = 0; r < part.regions.size(); ++r) {
        if (part.regions[r].region.contains(b)) {
          ++hits;
          region = r;
        }
      }
      if (hits != 1) {
        t.fail(std::to_string(hits) + " regions contain b = " + show(b) + " for A = " + show(a));
        continue;
      }
      const WidthTriple& tr = triples[part.regions[region].triple];
      const Rational formula = tr.width(b);
      long bound = n == 3 ? 2 : 4;
      for (Eigen::Index j = 0; j < n; ++j) bound = std::max(bound, abs(tr.c(j)).to_long());
      const WidthResult brute = oracle::brute_lattice_width(Polyhedron::from_system(a, b), bound);
      t.check(brute.width && *brute.width == formula, [&] {
        return "width formula " + formula.str() + " vs brute " + (brute.width ? brute.width->str() : "inf") +
               " at b = " + show(b) + " for A = " + show(a);
      });
    }
  }
  return t;
}

Tally lenstra() {
  Tally t;
  std::mt19937 rng(1005);
  while (t.cases < 500) {
    const Eigen::Index n = uniform(rng, 1, 3);
    Polyhedron p(n);
    const bool boxed = uniform(rng, 0, 1) == 0;
    if (boxed) p = box(n, Rational(uniform(rng, -12, 0), 3), Rational(uniform(rng, 0, 12), 3));
    const long rows = uniform(rng, boxed ? 1 : n + 1, n + 3);
    for (long i = 0; i < rows; ++i)
      p.add(random_row(rng, n, 6), Rational(uniform(rng, -6, 18), uniform(rng, 1, 5)), uniform(rng, 0, 3) == 0);
    const auto bb = is_feasible(p) ? bounding_box(p) : std::optional<oracle::Box>();
    if (is_feasible(p) && !bb) continue;  // unbounded
    const bool expected = bb && !oracle::brute_int_points(p, *bb).empty();
    const FeasibilityResult r = integer_feasible(p);
    bool ok = r.feasible() == expected;
    if (ok && r.feasible()) ok = is_integral(r.witness) && p.contains(r.witness);
    t.check(ok, [&] { return "P = " + io::to_json(p).dump(); });
  }
  return t;
}

Tally structural_property() {
  Tally t;
  std::mt19937 rng(1006);
  for (int family = 0; family < 30; ++family) {
    const Eigen::Index n = family < 6 ? 1 : 2;
    const RatMatrix a = random_finite_width(rng, n, n + uniform(rng, 1, 2), 3);
    const StructuralPartition part = structural_partition(a, nonempty_region(a));
    for (int s = 0; s < 10; ++s) {
      const RatVector b = random_rhs(rng, a, 2);
      const Polyhedron pb = Polyhedron::from_system(a, b);
      const bool expected = has_integer_point(pb);
      int hits = 0;
      bool ok = true;
      for (const CandidateScheme& sc : part.schemes) {
        if (!sc.projection_witness(b)) continue;
        ++hits;
        ok = ok && some_candidate_inside(evaluate_candidates(sc, b), pb) == expected;
        ok = ok && some_candidate_inside(evaluate(parameter_only(sc), b), pb) == expected;
      }
      t.check(ok && hits == 1, [&] { return "A = " + show(a) + ", b = " + show(b); });
    }
  }
  for (int s = 0; s < 20; ++s) {
    const RatMatrix a = random_finite_width(rng, 3, uniform(rng, 4, 5), 2);
    const RatVector b = random_rhs(rng, a, 1);
    const CandidateScheme sc = locate_scheme(a, Polyhedron(a.rows()), b);
    const Polyhedron pb = Polyhedron::from_system(a, b);
    t.check(sc.projection_witness(b) &&
                some_candidate_inside(evaluate_candidates(sc, b), pb) == has_integer_point(pb),
            [&] { return "n = 3: A = " + show(a) + ", b = " + show(b); });
  }
  return t;
}

std::vector<std::filesystem::path> curated(const std::string& prefix) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(PILP_DATA))
    if (e.path().filename().string().rfind(prefix, 0) == 0) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

io::Json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  return io::Json::parse(in);
}

bool certified(const ForAllExistsInstance& inst, const DecisionResult& r) {
  if (r.holds()) return true;
  if (!r.counterexample) return false;
  try {
    verify_counterexample(inst, *r.counterexample);
    // Round trip through the JSON form.
    verify_counterexample(inst, io::counterexample_from(io::Json::parse(io::to_json(r).dump())["certificate"]));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

Tally decider() {
  Tally t;
  const auto files = curated("decide_");
  if (files.size() != 20) t.fail("expected 20 curated instances, found " + std::to_string(files.size()));
  for (const auto& f : files) {
    const io::Json doc = load(f);
    const ForAllExistsInstance inst = io::forall_from(doc);
    const DecisionResult r = decide_forall_exists(inst);
    const bool want = doc["expected"] == "Holds";
    t.check(r.holds() == want && certified(inst, r), [&] { return f.filename().string(); });
  }
  std::mt19937 rng(1007);
  for (int k = 0; k < 100; ++k) {
    const ForAllExistsInstance inst = random_forall_instance(rng, 2, 6, 1);
    const DecisionResult r = decide_forall_exists(inst);
    const DecisionResult bs = bell_scarf_decide(inst);
    bool ok = r.holds() == bs.holds() && certified(inst, r) && certified(inst, bs);
    if (const auto grid = bounding_grid(inst, Rational(1, 2), 400)) {
      if (oracle::brute_forall_exists(inst, *grid)) ok = ok && !r.holds();
    }
    t.check(ok, [&] { return "A = " + show(inst.a) + ", Q = " + io::to_json(inst.q).dump(); });
  }
  return t;
}

bool monotone(const GapResult& r) {
  for (const GapStep& s1 : r.trace)
    for (const GapStep& s2 : r.trace)
      if (s1.gamma < s2.gamma && s2.exceeds && !s1.exceeds) return false;
  return true;
}

Tally gap() {
  Tally t;
  const auto value = [&](const GapInstance& inst, const Rational& want, const std::string& name) {
    const GapResult r = max_gap(inst);
    t.check(r.value == want && monotone(r), [&] { return name + ": got " + r.value.str(); });
    return r.value;
  };
  const GapInstance interval{rat_matrix({{1}, {-1}}), rat_row({1})};
  const GapInstance doubled{rat_matrix({{1}, {-1}}), rat_row({2})};
  const GapInstance square{box_matrix(), rat_row({1, 1})};
  value(interval, 1, "interval");
  value(doubled, 2, "interval with c = 2");
  value(square, 2, "box");
  for (const auto& f : curated("gap_")) {
    const io::Json doc = load(f);
    value(io::gap_from(doc), io::rational_from(doc["expected_max"], "expected_max"), f.filename().string());
  }
  const GapInstance triangle{rat_matrix({{2, 1}, {-1, 0}, {0, -1}}), rat_row({1, 1})};
  for (const GapInstance& inst : {interval, square, triangle}) {
    const Rational g = max_gap(inst).value;
    for (const Rational& lambda : {Rational(2), Rational(1, 3)}) {
      const GapInstance scaled{inst.a, inst.c * lambda};
      const GapResult r = max_gap(scaled);
      t.check(r.value == lambda * g && monotone(r), [&] {
        return "scaling by " + lambda.str() + " of A = " + show(inst.a) + ": " + r.value.str() + " vs " + g.str();
      });
    }
  }
  return t;
}

struct Output {
  int code;
  std::string text;
};

Output cli(const std::string& args) {
  const std::string cmd = std::string(PILP_CLI) + " --deterministic " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (const std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Tally determinism() {
  Tally t;
  std::vector<std::string> runs;
  for (const auto& f : curated("decide_")) {
    runs.push_back("decide " + f.string());
    runs.push_back("decide --bell-scarf " + f.string());
    runs.push_back("partition " + f.string());
  }
  for (const auto& f : curated("gap_")) {
    runs.push_back("gap --max " + f.string());
    runs.push_back("gap --gamma 1/2 " + f.string());
  }
  for (const std::string& args : runs) {
    const Output first = cli(args);
    const Output second = cli(args);
    t.check(first.code == second.code && first.text == second.text && (first.code > 1 || !first.text.empty()),
            [&] { return args + " (exit " + std::to_string(first.code) + ")"; });
  }
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Tally()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 hermite normal form (200 matrices, exact)", hermite},
      {"2 fourier-motzkin soundness (200 polyhedra, exact)", fourier_motzkin},
      {"3 flatness pipeline (500 polytopes of width >= omega(n), exact)", flatness},
      {"4 width partition and triple bound (50 matrices x 200 b, exact)", width_partitions},
      {"5 integer feasibility vs enumeration (500 instances, exact)", lenstra},
      {"6 structural candidates (300 samples n <= 2, 20 located n = 3, exact)", structural_property},
      {"7 forall-exists decider (20 curated + 100 random, exact)", decider},
      {"8 integer programming gap (values, monotonicity, scaling, exact)", gap},
      {"9 deterministic CLI output (curated suite, byte-identical)", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = t.failures == 0 && t.cases > 0;
    if (!pass) ++failed;
    std::printf("%s criterion %s: %ld/%ld cases [%.1fs]\n", pass ? "PASS" : "FAIL", c.name, t.cases - t.failures,
                t.cases, secs);
    if (!pass) std::printf("     first failure: %s\n", t.first_failure.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
