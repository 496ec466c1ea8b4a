#include "pilp/json_io.hpp"

#include "pilp/errors.hpp"

namespace pilp::io {

namespace {

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& field, const char* name) { return field.empty() ? name : field + "." + name; }

const Json& require(const Json& j, const char* name, const std::string& field) {
  if (!j.is_object()) throw InputError(field.empty() ? "document" : field, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) throw InputError(key(field, name), "missing");
  return *it;
}

const Json& array(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array");
  return j;
}

long small_int(const Json& j, const std::string& field, long lo) {
  if (!j.is_number_integer()) throw InputError(field, "expected an integer");
  const long v = j.get<long>();
  if (v < lo) throw InputError(field, "must be at least " + std::to_string(lo));
  return v;
}

}  // namespace

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("document", std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError(field, "expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(field, e.what());
  }
}

Integer integer_from(const Json& j, const std::string& field) {
  const Rational r = rational_from(j, field);
  if (!r.is_integer()) throw InputError(field, "expected an integer");
  return r.num();
}

RatVector vector_from(const Json& j, const std::string& field) {
  array(j, field);
  RatVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from(j[i], at(field, i));
  return v;
}

IntVector int_vector_from(const Json& j, const std::string& field) {
  array(j, field);
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from(j[i], at(field, i));
  return v;
}

RatMatrix matrix_from(const Json& j, const std::string& field) {
  array(j, field);
  if (j.empty()) return RatMatrix(0, 0);
  const std::size_t cols = array(j[0], at(field, 0)).size();
  RatMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const RatVector row = vector_from(j[r], at(field, r));
    if (static_cast<std::size_t>(row.size()) != cols) throw InputError(at(field, r), "rows differ in length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Polyhedron polyhedron_from(const Json& j, const std::string& field, Eigen::Index arity) {
  const Json& rows = array(require(j, "constraints", field), key(field, "constraints"));
  Eigen::Index dim = arity;
  if (j.contains("arity")) {
    const Eigen::Index declared = small_int(j["arity"], key(field, "arity"), 0);
    if (arity >= 0 && declared != arity)
      throw InputError(key(field, "arity"), "is " + std::to_string(declared) + ", expected " + std::to_string(arity));
    dim = declared;
  }
  if (dim < 0) {
    if (rows.empty()) throw InputError(key(field, "arity"), "missing");
    dim = static_cast<Eigen::Index>(array(require(rows[0], "a", at(key(field, "constraints"), 0)), "a").size());
  }
  Polyhedron p(dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string f = at(key(field, "constraints"), i);
    const RatVector a = vector_from(require(rows[i], "a", f), key(f, "a"));
    if (a.size() != dim) throw InputError(key(f, "a"), "length must equal the arity " + std::to_string(dim));
    const Rational beta = rational_from(require(rows[i], "beta", f), key(f, "beta"));
    bool strict = false;
    if (rows[i].contains("strict")) {
      if (!rows[i]["strict"].is_boolean()) throw InputError(key(f, "strict"), "expected a boolean");
      strict = rows[i]["strict"].get<bool>();
    }
    p.add(RatRowVector(a.transpose()), beta, strict);
  }
  return p;
}

Json to_json(const Rational& r) { return r.str(); }
Json to_json(const Integer& z) { return z.str(); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}
Json to_json(const RatRowVector& v) { return to_json(RatVector(v.transpose())); }

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}
Json to_json(const IntRowVector& v) { return to_json(IntVector(v.transpose())); }

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(RatRowVector(m.row(r))));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(IntRowVector(m.row(r))));
  return out;
}

Json to_json(const Polyhedron& p) {
  Json rows = Json::array();
  for (const LinearConstraint& c : p.constraints())
    rows.push_back(Json{{"a", to_json(c.a)}, {"beta", to_json(c.beta)}, {"strict", c.strict}});
  Json out{{"arity", p.dim()}, {"constraints", rows}};
  if (p.trivially_empty()) out["empty"] = true;
  return out;
}

Json to_json(const AffineMap& t) { return Json{{"linear", to_json(t.linear)}, {"offset", to_json(t.offset)}}; }

Config config_from(const Json& j, Config base) {
  if (!j.is_object()) throw InputError("config", "expected an object");
  if (j.contains("flatness")) {
    const Json& f = j["flatness"];
    if (!f.is_object()) throw InputError("config.flatness", "expected an object keyed by dimension");
    base.flatness.clear();
    for (const auto& [k, v] : f.items()) {
      const std::string field = "config.flatness." + k;
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        throw InputError(field, "dimension must be an integer");
      }
      try {
        base.flatness.set(n, rational_from(v, field));
      } catch (const InputError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw InputError(field, e.what());
      }
    }
  }
  if (j.contains("hull_bound")) base.hull_bound = integer_from(j["hull_bound"], "config.hull_bound");
  if (j.contains("denominator_bound")) {
    if (j["denominator_bound"].is_null()) {
      base.denominator_bound.reset();
    } else {
      base.denominator_bound = integer_from(j["denominator_bound"], "config.denominator_bound");
      if (*base.denominator_bound < Integer(1)) throw InputError("config.denominator_bound", "must be at least 1");
    }
  }
  if (j.contains("gap_cap")) base.gap_cap = rational_from(j["gap_cap"], "config.gap_cap");
  if (j.contains("max_structural_dim"))
    base.max_structural_dim = static_cast<int>(small_int(j["max_structural_dim"], "config.max_structural_dim", 0));
  if (j.contains("max_partition_dim"))
    base.max_partition_dim = static_cast<int>(small_int(j["max_partition_dim"], "config.max_partition_dim", 0));
  if (j.contains("max_schemes"))
    base.max_schemes = static_cast<std::size_t>(small_int(j["max_schemes"], "config.max_schemes", 1));
  return base;
}

ForAllExistsInstance forall_from(const Json& doc) {
  ForAllExistsInstance inst;
  inst.a = matrix_from(require(doc, "A", ""), "A");
  const Json& q = require(doc, "Q", "");
  inst.p = q.contains("p") ? small_int(q["p"], "Q.p", 0) : 0;
  inst.q = polyhedron_from(q, "Q", inst.a.rows() + inst.p);
  return inst;
}

GapInstance gap_from(const Json& doc) {
  GapInstance inst;
  inst.a = matrix_from(require(doc, "A", ""), "A");
  const RatVector c = vector_from(require(doc, "c", ""), "c");
  if (c.size() != inst.a.cols())
    throw InputError("c", "length " + std::to_string(c.size()) + " must equal the number of columns of A (" +
                              std::to_string(inst.a.cols()) + ")");
  inst.c = c.transpose();
  return inst;
}

MipProblem mip_from(const Json& doc) {
  MipProblem out{polyhedron_from(require(doc, "P", ""), "P"), {}};
  if (!doc.contains("integral")) {
    for (Eigen::Index i = 0; i < out.p.dim(); ++i) out.integral.insert(i);
    return out;
  }
  const Json& idx = array(doc["integral"], "integral");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const long k = small_int(idx[i], at("integral", i), 0);
    if (k >= out.p.dim()) throw InputError(at("integral", i), "index beyond the arity of P");
    out.integral.insert(k);
  }
  return out;
}

Json to_json(const DecisionResult& r) {
  Json out{{"verdict", r.holds() ? "Holds" : "Fails"}};
  if (r.counterexample)
    out["certificate"] = Json{{"b", to_json(r.counterexample->b)}, {"z", to_json(r.counterexample->z)}};
  return out;
}

Counterexample counterexample_from(const Json& j) {
  return {vector_from(require(j, "b", "certificate"), "certificate.b"),
          int_vector_from(require(j, "z", "certificate"), "certificate.z")};
}

Json to_json(const GapTest& t) {
  Json out{{"exceeds", t.exceeds}};
  if (t.b) out["certificate"] = Json{{"b", to_json(*t.b)}, {"beta", to_json(*t.beta)}};
  return out;
}

Json to_json(const GapResult& r) {
  Json trace = Json::array();
  for (const GapStep& s : r.trace) trace.push_back(Json{{"gamma", to_json(s.gamma)}, {"exceeds", s.exceeds}});
  Json out{{"value", to_json(r.value)}, {"attained", r.attained == Attainment::Attained}};
  out["certificate"] = r.witness ? Json{{"b", to_json(*r.witness)}} : Json(nullptr);
  out["trace"] = trace;
  return out;
}

Json to_json(const WidthResult& w) {
  if (w.infinite()) return Json{{"width", nullptr}, {"direction", Json::array()}, {"infinite", true}};
  return Json{{"width", to_json(*w.width)}, {"direction", to_json(w.direction)}, {"infinite", false}};
}

Json to_json(const FeasibilityResult& f) {
  Json out{{"feasible", f.feasible()}};
  if (f.feasible()) out["witness"] = to_json(f.witness);
  return out;
}

Json to_json(const WidthPartition& p) {
  Json triples = Json::array();
  for (const WidthTriple& t : *p.triples) {
    triples.push_back(Json{{"c", to_json(t.c)},
                           {"F", to_json(t.f)},
                           {"G", to_json(t.g)},
                           {"N1", t.n1},
                           {"N2", t.n2},
                           {"width_form", to_json(t.functional())}});
  }
  Json regions = Json::array();
  for (const WidthRegion& r : p.regions) regions.push_back(Json{{"triple", r.triple}, {"region", to_json(r.region)}});
  return Json{{"triples", triples}, {"regions", regions}};
}

Json to_json(const CandidateScheme& s) {
  const auto candidates = [](const std::vector<Candidate>& cs) {
    Json out = Json::array();
    for (const Candidate& c : cs) out.push_back(Json{{"U", to_json(c.u.matrix())}, {"T", to_json(c.t)}});
    return out;
  };
  Json rounding = Json::array();
  for (const AffineMap& r : s.rounding) rounding.push_back(to_json(r));
  Json out{{"m", s.m}, {"l", s.l}, {"sprime", to_json(s.sprime)}, {"rounding", rounding},
           {"candidates", candidates(s.candidates)}};
  if (s.l <= 1) out["parameter_only"] = candidates(parameter_only(s));
  return out;
}

}  // namespace pilp::io
