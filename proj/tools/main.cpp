#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pilp/errors.hpp"
#include "pilp/json_io.hpp"
#include "pilp/oracle.hpp"

using namespace pilp;
using io::Json;

namespace {

enum Exit { Ok = 0, Negative = 1, BadInput = 2, OverLimit = 3, Internal = 4 };

struct Options {
  std::string input = "-";
  std::string config_file;
  bool deterministic = false;
  bool bell_scarf = false;
  std::string gamma;
  bool max = false;
  std::string denom;
  std::string kind = "points";
};

std::string read_all(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("input", "cannot open '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

Polyhedron family_member(const Json& doc) {
  if (doc.contains("P")) return io::polyhedron_from(doc["P"], "P");
  if (!doc.contains("A")) throw InputError("A", "missing (or give P)");
  const RatMatrix a = io::matrix_from(doc["A"], "A");
  if (!doc.contains("b")) throw InputError("b", "missing");
  const RatVector b = io::vector_from(doc["b"], "b");
  if (b.size() != a.rows()) throw InputError("b", "length must equal the number of rows of A");
  return Polyhedron::from_system(a, b);
}

Polyhedron parameter_region(const Json& doc, Eigen::Index m) {
  if (!doc.contains("Q")) return Polyhedron(m);
  if (doc["Q"].contains("p") && doc["Q"]["p"] != 0) throw InputError("Q.p", "must be 0 here");
  return io::polyhedron_from(doc["Q"], "Q", m);
}

oracle::Box box_from(const Json& j, const std::string& field, Eigen::Index dim) {
  oracle::Box box{io::int_vector_from(j.at("lower"), field + ".lower"),
                  io::int_vector_from(j.at("upper"), field + ".upper")};
  if (box.lower.size() != dim || box.upper.size() != dim)
    throw InputError(field, "bounds must have length " + std::to_string(dim));
  return box;
}

oracle::Grid grid_from(const Json& j, const std::string& field, Eigen::Index dim) {
  oracle::Grid g{io::rational_from(j.at("step"), field + ".step"), io::vector_from(j.at("lower"), field + ".lower"),
                 io::vector_from(j.at("upper"), field + ".upper")};
  if (g.step.sign() <= 0) throw InputError(field + ".step", "must be positive");
  if (g.lower.size() != dim || g.upper.size() != dim)
    throw InputError(field, "bounds must have length " + std::to_string(dim));
  return g;
}

const Json& oracle_section(const Json& doc, const char* name) {
  if (!doc.contains("oracle") || !doc["oracle"].contains(name))
    throw InputError(std::string("oracle.") + name, "missing");
  return doc["oracle"][name];
}

int run_oracle(const Json& doc, const Options& opt, Json& out) {
  if (opt.kind == "points") {
    const Polyhedron p = family_member(doc);
    const auto pts = oracle::brute_int_points(p, box_from(oracle_section(doc, "x"), "oracle.x", p.dim()));
    Json list = Json::array();
    for (const IntVector& x : pts) list.push_back(io::to_json(x));
    out["points"] = list;
    return pts.empty() ? Negative : Ok;
  }
  if (opt.kind == "width") {
    const Polyhedron p = family_member(doc);
    if (!is_feasible(p)) {
      out["feasible"] = false;
      return Negative;
    }
    const long bound = io::integer_from(oracle_section(doc, "bound"), "oracle.bound").to_long();
    out = io::to_json(oracle::brute_lattice_width(p, bound));
    return Ok;
  }
  if (opt.kind == "forall") {
    const ForAllExistsInstance inst = io::forall_from(doc);
    const oracle::ForAllExistsGrid grid{grid_from(oracle_section(doc, "b"), "oracle.b", inst.a.rows()),
                                        inst.p > 0 ? box_from(oracle_section(doc, "z"), "oracle.z", inst.p)
                                                   : oracle::Box{IntVector(0), IntVector(0)},
                                        box_from(oracle_section(doc, "x"), "oracle.x", inst.a.cols())};
    const auto b = oracle::brute_forall_exists(inst, grid);
    out["counterexample"] = b ? Json{{"b", io::to_json(*b)}} : Json(nullptr);
    return b ? Negative : Ok;
  }
  if (opt.kind == "gap") {
    const GapInstance inst = io::gap_from(doc);
    const oracle::GapGrid grid{grid_from(oracle_section(doc, "b"), "oracle.b", inst.a.rows()),
                               box_from(oracle_section(doc, "x"), "oracle.x", inst.a.cols())};
    try {
      out["value"] = io::to_json(oracle::brute_gap(inst, grid));
    } catch (const std::domain_error& e) {
      throw InputError("oracle", e.what());
    }
    return Ok;
  }
  throw InputError("--kind", "unknown oracle '" + opt.kind + "'");
}

int dispatch(const std::string& command, const Options& opt, Json& out) {
  const Json doc = io::parse_document(read_all(opt.input));
  if (!doc.is_object()) throw InputError("document", "expected an object");
  Config config = default_config();
  if (doc.contains("config")) config = io::config_from(doc["config"], config);
  if (!opt.config_file.empty()) {
    const Json file = io::parse_document(read_all(opt.config_file));
    config = io::config_from(file.contains("config") ? file["config"] : file, config);
  }

  if (command == "width") {
    const Polyhedron p = family_member(doc);
    if (!is_feasible(p)) {
      out["feasible"] = false;
      return Negative;
    }
    out = io::to_json(lattice_width(p, config));
    return Ok;
  }
  if (command == "partition") {
    const RatMatrix a = io::matrix_from(doc.at("A"), "A");
    try {
      out = io::to_json(width_partition(a, parameter_region(doc, a.rows()), config));
    } catch (const InfiniteWidthError&) {
      out["infinite_width"] = true;
    }
    return Ok;
  }
  if (command == "structure") {
    const RatMatrix a = io::matrix_from(doc.at("A"), "A");
    const Polyhedron q = parameter_region(doc, a.rows());
    try {
      if (doc.contains("b")) {
        const RatVector b = io::vector_from(doc["b"], "b");
        if (b.size() != a.rows()) throw InputError("b", "length must equal the number of rows of A");
        if (!q.contains(b)) throw InputError("b", "not in Q");
        const CandidateScheme s = locate_scheme(a, q, b, config);
        out["scheme"] = io::to_json(s);
        Json pts = Json::array();
        for (const IntVector& x : evaluate_candidates(s, b, config)) pts.push_back(io::to_json(x));
        out["points"] = pts;
      } else {
        const StructuralPartition part = structural_partition(a, q, config);
        Json schemes = Json::array();
        for (const CandidateScheme& s : part.schemes) schemes.push_back(io::to_json(s));
        out["m"] = part.m;
        out["n"] = part.n;
        out["schemes"] = schemes;
      }
    } catch (const InfiniteWidthError&) {
      out = Json{{"infinite_width", true}};
    }
    return Ok;
  }
  if (command == "feasible") {
    const FeasibilityResult r = mixed_integer_feasible(io::mip_from(doc), config);
    out = io::to_json(r);
    return r.feasible() ? Ok : Negative;
  }
  if (command == "decide") {
    const ForAllExistsInstance inst = io::forall_from(doc);
    const DecisionResult r = opt.bell_scarf ? bell_scarf_decide(inst, config) : decide_forall_exists(inst, config);
    out = io::to_json(r);
    return r.holds() ? Ok : Negative;
  }
  if (command == "gap") {
    const GapInstance inst = io::gap_from(doc);
    if (opt.max == !opt.gamma.empty()) throw InputError("gap", "give exactly one of --gamma and --max");
    if (!opt.gamma.empty()) {
      const GapTest t = gap_exceeds(inst, io::rational_from(Json(opt.gamma), "--gamma"), config);
      out = io::to_json(t);
      return t.exceeds ? Negative : Ok;
    }
    std::optional<Integer> d;
    if (!opt.denom.empty()) d = io::integer_from(Json(opt.denom), "--denom");
    out = io::to_json(max_gap(inst, d, config));
    return Ok;
  }
  if (command == "oracle") return run_oracle(doc, opt, out);
  throw InputError("command", "unknown subcommand '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric integer programming in fixed dimension"};
  Options opt;
  app.add_option("--config", opt.config_file, "JSON file with flatness constants and bounds");
  app.add_flag("--deterministic", opt.deterministic, "Omit timing statistics from the output");
  app.require_subcommand(1);
  app.fallthrough();

  const auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "Instance file (default: standard input)");
    return sub;
  };
  with_input(app.add_subcommand("width", "Lattice width of {x : A x <= b}"));
  with_input(app.add_subcommand("partition", "Flat-direction triples and the width partition of Q"));
  with_input(app.add_subcommand("structure", "Candidate schemes covering Q (or the one containing b)"));
  with_input(app.add_subcommand("feasible", "Mixed-integer feasibility of P"));
  CLI::App* decide = with_input(app.add_subcommand("decide", "Decide: for all b in Q/Z^p, A x <= b has an integral point"));
  decide->add_flag("--bell-scarf", opt.bell_scarf, "Decide through row subsystems instead");
  CLI::App* gap = with_input(app.add_subcommand("gap", "Integer programming gap of {A, c}"));
  gap->add_option("--gamma", opt.gamma, "Test whether the gap exceeds this rational");
  gap->add_flag("--max", opt.max, "Compute the maximum gap");
  gap->add_option("--denom", opt.denom, "Denominator bound for --max");
  CLI::App* orc = with_input(app.add_subcommand("oracle", "Brute-force reference computations"));
  orc->add_option("--kind", opt.kind, "points | width | forall | gap")->check(CLI::IsMember({"points", "width", "forall", "gap"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : BadInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Json out = Json::object();
  int code = Ok;
  try {
    code = dispatch(command, opt, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return BadInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return BadInput;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return OverLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
  if (!opt.deterministic) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out["stats"] = Json{{"elapsed_ms", ms.count()}};
  }
  std::cout << out.dump(2) << "\n";
  return code;
}
