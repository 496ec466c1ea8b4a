#pragma once

#include <string>

#include <json.hpp>

#include "pilp/config.hpp"
#include "pilp/decide.hpp"
#include "pilp/gap.hpp"
#include "pilp/lattice.hpp"
#include "pilp/milp.hpp"
#include "pilp/paramwidth.hpp"
#include "pilp/structural.hpp"

/// JSON forms of the library types. Every number is a rational string "p/q"
/// (plain JSON integers are accepted on input); matrices are arrays of rows;
/// constraint systems are {"arity": d, "constraints": [{"a", "beta", "strict"}]}.
/// Parse failures throw InputError naming the offending field, e.g. "A[1][0]".
namespace pilp::io {

using Json = nlohmann::ordered_json;

Json parse_document(const std::string& text);

Rational rational_from(const Json& j, const std::string& field);
Integer integer_from(const Json& j, const std::string& field);
RatVector vector_from(const Json& j, const std::string& field);
IntVector int_vector_from(const Json& j, const std::string& field);
RatMatrix matrix_from(const Json& j, const std::string& field);
/// `arity` is checked against the document's "arity" key and the row lengths when non-negative.
Polyhedron polyhedron_from(const Json& j, const std::string& field, Eigen::Index arity = -1);

Json to_json(const Rational& r);
Json to_json(const Integer& z);
Json to_json(const RatVector& v);
Json to_json(const RatRowVector& v);
Json to_json(const IntVector& v);
Json to_json(const IntRowVector& v);
Json to_json(const RatMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const Polyhedron& p);
Json to_json(const AffineMap& t);

/// Applies the keys of a "config" object on top of `base`:
/// flatness {"n": "omega"}, hull_bound, denominator_bound, gap_cap,
/// max_structural_dim, max_partition_dim, max_schemes.
Config config_from(const Json& j, Config base);

/// {A, Q: {arity = m + p, p, constraints}}.
ForAllExistsInstance forall_from(const Json& doc);
/// {A, c} with len(c) = n.
GapInstance gap_from(const Json& doc);
/// {P: constraint system, integral: [indices]}; every variable is integral when the key is absent.
MipProblem mip_from(const Json& doc);

Json to_json(const DecisionResult& r);
/// The "certificate" object of a Fails verdict.
Counterexample counterexample_from(const Json& j);
Json to_json(const GapTest& t);
Json to_json(const GapResult& r);
Json to_json(const WidthResult& w);
Json to_json(const FeasibilityResult& f);
Json to_json(const WidthPartition& p);
Json to_json(const CandidateScheme& s);

}  // namespace pilp::io
