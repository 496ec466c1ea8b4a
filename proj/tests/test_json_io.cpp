#include <gtest/gtest.h>

#include "generators.hpp"
#include "helpers.hpp"
#include "pilp/errors.hpp"
#include "pilp/json_io.hpp"

using namespace pilp;
using namespace pilp::testing;
using io::Json;

namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(JsonIo, RationalsRoundTrip) {
  for (const Rational& r : {Rational(0), Rational(-7, 3), Rational(Integer::parse("123456789012345678901234567890"), 7)}) {
    EXPECT_EQ(io::rational_from(Json::parse(io::to_json(r).dump()), "x"), r);
  }
  EXPECT_EQ(io::rational_from(Json(5), "x"), Rational(5));
  EXPECT_EQ(io::rational_from(Json("4/6"), "x"), Rational(2, 3));
}

TEST(JsonIo, PolyhedronRoundTrip) {
  Polyhedron p(2);
  p.add(rat_row({1, Rational(-1, 2)}), 3);
  p.add(rat_row({0, 1}), Rational(5, 4), true);
  const Polyhedron back = io::polyhedron_from(Json::parse(io::to_json(p).dump()), "P", 2);
  EXPECT_EQ(back, p);
}

TEST(JsonIo, ErrorsNameTheField) {
  EXPECT_EQ(field_of([] { io::parse_document("{\"A\": ["); }), "document");
  EXPECT_EQ(field_of([] { io::rational_from(Json(1.5), "c[0]"); }), "c[0]");
  EXPECT_EQ(field_of([] { io::matrix_from(Json::parse(R"([["1","2"],["3","x"]])"), "A"); }), "A[1][1]");
  EXPECT_EQ(field_of([] { io::matrix_from(Json::parse(R"([["1","2"],["3"]])"), "A"); }), "A[1]");
  EXPECT_EQ(field_of([] { io::forall_from(Json::parse(R"({"A":[["1"]],"Q":{"arity":3,"constraints":[]}})")); }),
            "Q.arity");
  EXPECT_EQ(field_of([] {
              io::forall_from(Json::parse(R"({"A":[["1"]],"Q":{"p":1,"constraints":[{"a":["1"],"beta":"0"}]}})"));
            }),
            "Q.constraints[0].a");
  EXPECT_EQ(field_of([] { io::gap_from(Json::parse(R"({"A":[["1","0"]],"c":["1"]})")); }), "c");
  EXPECT_EQ(field_of([] { io::gap_from(Json::parse(R"({"A":[["1"]]})")); }), "c");
  EXPECT_EQ(field_of([] { io::rational_from(Json("1/0"), "beta"); }), "beta");
  EXPECT_EQ(field_of([] { io::mip_from(Json::parse(R"({"P":{"arity":1,"constraints":[]},"integral":[2]})")); }),
            "integral[0]");
  EXPECT_EQ(field_of([] { io::config_from(Json::parse(R"({"flatness":{"2":"1","3":"1/2"}})"), Config{}); }),
            "config.flatness.3");
}

TEST(JsonIo, ConfigKeys) {
  const Config c = io::config_from(
      Json::parse(R"({"flatness":{"1":"1","2":"5/2"},"hull_bound":"100","denominator_bound":"6","gap_cap":"64",
                     "max_structural_dim":2,"max_schemes":10})"),
      Config{});
  EXPECT_EQ(c.flatness.omega(2), Rational(5, 2));
  EXPECT_FALSE(c.flatness.has(3));
  EXPECT_EQ(c.hull_bound, Integer(100));
  EXPECT_EQ(*c.denominator_bound, Integer(6));
  EXPECT_EQ(c.gap_cap, Rational(64));
  EXPECT_EQ(c.max_structural_dim, 2);
  EXPECT_EQ(c.max_schemes, 10u);
}

TEST(JsonIo, CertificatesReparseAndVerify) {
  std::mt19937 rng(5);
  int fails = 0;
  for (int t = 0; t < 12; ++t) {
    const ForAllExistsInstance inst = random_forall_instance(rng, 2, 4, 1);
    const Json doc{{"A", io::to_json(inst.a)},
                   {"Q", Json{{"arity", inst.q.dim()}, {"p", inst.p}, {"constraints", io::to_json(inst.q)["constraints"]}}}};
    const ForAllExistsInstance back = io::forall_from(Json::parse(doc.dump()));
    EXPECT_EQ(back.a, inst.a);
    EXPECT_EQ(back.q, inst.q);
    const DecisionResult r = decide_forall_exists(back);
    const Json out = Json::parse(io::to_json(r).dump());
    EXPECT_EQ(out["verdict"], r.holds() ? "Holds" : "Fails");
    if (r.holds()) continue;
    ++fails;
    EXPECT_NO_THROW(verify_counterexample(inst, io::counterexample_from(out["certificate"])));
  }
  EXPECT_GT(fails, 0);
}

TEST(JsonIo, GapCertificateReparses) {
  const GapInstance inst = io::gap_from(Json::parse(R"({"A":[["1"],["-1"]],"c":["1"]})"));
  const GapTest t = gap_exceeds(inst, Rational(1, 2));
  const Json out = Json::parse(io::to_json(t).dump());
  ASSERT_TRUE(out["exceeds"].get<bool>());
  const RatVector b = io::vector_from(out["certificate"]["b"], "b");
  // LP(b) - IP(b) = b1 - floor(b1) over a non-empty integral interval.
  EXPECT_GE(b(0) + b(1), Rational(0));
  EXPECT_GT(b(0) - Rational(b(0).floor()), Rational(1, 2));
  EXPECT_GE(Rational(b(0).floor()), -b(1));
}
