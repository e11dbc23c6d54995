#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hornred/canonical.hpp"
#include "hornred/cli.hpp"
#include "hornred/clause_graph.hpp"
#include "hornred/fragment.hpp"
#include "hornred/reduction.hpp"
#include "hornred/resolution.hpp"
#include "hornred/serialize.hpp"
#include "hornred/text.hpp"

namespace py = pybind11;
using namespace hornred;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
std::vector<Clause> parse_all(const std::vector<std::string>& lines) {
  std::vector<Clause> out;
  for (const auto& l : lines) out.push_back(parse_clause(l));
  return out;
}

std::vector<std::string> print_all(const std::vector<Clause>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(to_string(c));
  return out;
}

Mode mode_of(const std::string& m) {
  auto mode = parse_mode(m);
  if (!mode) throw std::invalid_argument("unknown mode: " + m);
  return *mode;
}

FragmentSpec spec(int arity, int body, bool connected, bool two_connected, bool most_general,
                  bool distinct_predvars) {
  FragmentSpec f;
  f.max_arity = arity;
  f.max_body = body;
  f.two_connected = two_connected;
  f.connected = connected || two_connected;
  f.most_general = most_general;
  f.distinct_predvars = distinct_predvars;
  return f;
}

ClosureBounds bounds(int max_depth, std::size_t max_body, std::size_t max_clauses) {
  ClosureBounds b;
  b.max_depth = max_depth;
  b.max_body = max_body;
  b.max_clauses = max_clauses;
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Derivation reduction for second-order Horn clauses";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def("canonical", [](const std::string& c) { return to_string(canonical_form(parse_clause(c)).clause); },
        py::arg("clause"));
  m.def("alpha_equivalent",
        [](const std::string& a, const std::string& b) { return alpha_equivalent(parse_clause(a), parse_clause(b)); },
        py::arg("a"), py::arg("b"));
  m.def("is_instance",
        [](const std::string& specific, const std::string& general) {
          return is_instance(parse_clause(specific), parse_clause(general)).has_value();
        },
        py::arg("specific"), py::arg("general"));

  m.def("is_connected", [](const std::string& c) { return is_connected(parse_clause(c)); }, py::arg("clause"));
  m.def("is_two_connected", [](const std::string& c) { return is_two_connected(parse_clause(c)); },
        py::arg("clause"));
  m.def("pending_variables",
        [](const std::string& c) {
          std::vector<std::string> out;
          for (TermVar t : pending_variables(parse_clause(c))) out.push_back(to_string(t));
          return out;
        },
        py::arg("clause"));
  m.def("to_dot", [](const std::string& c) { return to_dot(encode(parse_clause(c))); }, py::arg("clause"));

  m.def("enumerate",
        [](int arity, int body, bool connected, bool two_connected, bool most_general, bool distinct_predvars) {
          return print_all(enumerate(spec(arity, body, connected, two_connected, most_general, distinct_predvars)));
        },
        py::arg("arity"), py::arg("body"), py::arg("connected") = false, py::arg("two_connected") = false,
        py::arg("most_general") = true, py::arg("distinct_predvars") = true);
  m.def("count",
        [](int arity, int body, bool connected, bool two_connected, bool most_general, bool distinct_predvars) {
          return count(spec(arity, body, connected, two_connected, most_general, distinct_predvars));
        },
        py::arg("arity"), py::arg("body"), py::arg("connected") = false, py::arg("two_connected") = false,
        py::arg("most_general") = true, py::arg("distinct_predvars") = true);

  m.def("derive_json",
        [](const std::vector<std::string>& theory, const std::string& goal, const std::string& mode, int max_depth,
           std::size_t max_body, std::size_t max_clauses) {
          DeriveResult d;
          {
            py::gil_scoped_release release;
            d = derives(Theory(parse_all(theory)), parse_clause(goal), bounds(max_depth, max_body, max_clauses),
                        mode_of(mode));
          }
          nlohmann::json j{{"found", d.proof.has_value()}, {"truncated", d.truncated}};
          if (d.proof) j["proof"] = to_json(*d.proof);
          return j.dump();
        });
  m.def("reduce_theory_json", [](const std::vector<std::string>& theory, const std::string& mode, int max_depth,
                                 std::size_t max_body, std::size_t max_clauses) {
    ReductionReport r;
    {
      py::gil_scoped_release release;
      r = reduce_theory(Theory(parse_all(theory)), mode_of(mode), bounds(max_depth, max_body, max_clauses));
    }
    return to_json(r).dump();
  });
  m.def("is_reducible_json", [](const std::string& clause, const std::string& mode, int arity_cap, bool connected,
                                bool two_connected, const std::string& method) {
    Clause c = parse_clause(clause);
    FragmentSpec f = spec(arity_cap, static_cast<int>(c.body.size()), connected, two_connected, false, true);
    ReducibilityOptions opts;
    if (method == "forward") opts.method = Method::forward;
    else if (method != "partition") throw std::invalid_argument("unknown method: " + method);
    ReducibilityResult r;
    {
      py::gil_scoped_release release;
      r = is_reducible(c, mode_of(mode), f, opts);
    }
    nlohmann::json j{{"reducible", r.witness.has_value()},
                     {"exact", r.exact},
                     {"inconclusive", r.inconclusive},
                     {"method", r.method}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j.dump();
  });

  m.def("spanning_tree_split",
        [](const std::string& c) {
          SpanningSplit s = spanning_tree_split(parse_clause(c));
          return py::make_tuple(to_string(s.c1), to_string(s.c2));
        },
        py::arg("clause"));
  m.def("nonred_extend",
        [](const std::string& c, std::size_t i, std::size_t j) { return to_string(nonred_extend(parse_clause(c), i, j)); },
        py::arg("clause"), py::arg("i"), py::arg("j"));
  m.def("c_base", [] { return to_string(c_base()); });
  m.def("triadic_counterexample", [] { return to_string(triadic_counterexample()); });
  m.def("hnr_family", [](int depth) { return print_all(hnr_family(depth)); }, py::arg("depth"));
  m.def("hnr_level", [](int depth) { return print_all(hnr_level(depth)); }, py::arg("depth"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<std::string> argv{"hornred"};
          argv.insert(argv.end(), args.begin(), args.end());
          cli::Result r;
          {
            py::gil_scoped_release release;
            r = cli::run(argv);
          }
          return py::make_tuple(r.code, r.out, r.err);
        },
        py::arg("args"));
}
