#include "hornred/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <sstream>

#include "hornred/canonical.hpp"
#include "hornred/clause_graph.hpp"
#include "hornred/fragment.hpp"
#include "hornred/reduction.hpp"
#include "hornred/resolution.hpp"
#include "hornred/serialize.hpp"
#include "hornred/text.hpp"

namespace hornred::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Shape {
  bool connected = false;
  bool two_connected = false;
  bool most_general = false;
  bool shared_predvars = false;
  bool size_only = false;
};

void add_shape_flags(CLI::App* cmd, Shape& s) {
  cmd->add_flag("--connected", s.connected, "require connected clauses");
  cmd->add_flag("--two-connected", s.two_connected, "require two-connected clauses");
  cmd->add_flag("--most-general", s.most_general, "keep most-general representatives only");
  cmd->add_flag("--shared-predvars", s.shared_predvars,
                "allow a predicate variable to occur more than once");
  cmd->add_flag("--size-only-generalization", s.size_only,
                "most-general test ignores the structural constraints");
}

FragmentSpec make_spec(int a, int b, const Shape& s) {
  FragmentSpec f;
  f.max_arity = a;
  f.max_body = b;
  f.two_connected = s.two_connected;
  f.connected = s.connected || s.two_connected;
  f.most_general = s.most_general;
  f.distinct_predvars = !s.shared_predvars;
  f.size_only_generalization = s.size_only;
  return f;
}

Mode mode_of(const std::string& m) {
  auto mode = parse_mode(m);
  if (!mode) throw UsageError("unknown mode '" + m + "' (expected sld or standard)");
  return *mode;
}

std::vector<Clause> load_theory(const std::string& path) {
  try {
    return read_theory_file(path);
  } catch (const ParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw NoInput(e.what());
  }
}

void print_proof(std::ostream& out, const Proof& p) {
  for (std::size_t i = 0; i < p.axioms.size(); ++i)
    out << "  axiom " << i << ": " << to_string(p.axioms[i]) << "\n";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const InferenceStep& s = p.steps[i];
    out << "  step " << i << " [" << to_string(s.kind) << "] from";
    for (const auto& r : s.premise_refs) out << (r.axiom ? " axiom " : " step ") << r.index;
    if (s.pivot) out << " pivot " << to_string(*s.pivot);
    if (s.kind == StepKind::factoring) out << " atoms " << *s.pivot_index << "," << *s.second_index;
    if (!s.unifier.empty()) out << " with " << to_string(s.unifier);
    out << "\n    => " << to_string(s.conclusion) << "\n";
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Result run(const std::vector<std::string>& argv) {
  std::ostringstream out, err;
  CLI::App app{"Derivation reduction for second-order Horn clauses", "hornred"};
  app.require_subcommand(1);

  // enumerate
  int en_arity = 0, en_body = 0;
  bool en_count = false, en_json = false;
  Shape en_shape;
  auto* en = app.add_subcommand("enumerate", "list the clauses of a fragment");
  en->add_option("--arity", en_arity, "maximum literal arity")->required()->check(CLI::PositiveNumber);
  en->add_option("--body", en_body, "maximum body size")->required()->check(CLI::NonNegativeNumber);
  add_shape_flags(en, en_shape);
  en->add_flag("--count", en_count, "print the number of clauses only");
  en->add_flag("--json", en_json, "JSON output");

  // reduce
  std::string rd_theory, rd_fragment, rd_mode = "sld";
  ClosureBounds rd_bounds;
  bool rd_json = false;
  Shape rd_shape;
  auto* rd = app.add_subcommand("reduce", "compute a reduction core");
  auto* rd_t = rd->add_option("--theory", rd_theory, "theory file");
  auto* rd_f = rd->add_option("--fragment", rd_fragment, "fragment as A,B (arity, body)");
  rd_t->excludes(rd_f);
  rd->add_option("--mode", rd_mode, "sld or standard");
  rd->add_option("--max-depth", rd_bounds.max_depth)->check(CLI::PositiveNumber);
  rd->add_option("--max-body", rd_bounds.max_body)->check(CLI::PositiveNumber);
  rd->add_option("--max-clauses", rd_bounds.max_clauses)->check(CLI::PositiveNumber);
  add_shape_flags(rd, rd_shape);
  rd->add_flag("--json", rd_json, "JSON report on stdout");

  // check
  std::string ck_clause, ck_mode = "sld", ck_method = "partition", ck_source = "auto";
  int ck_cap = 2;
  bool ck_json = false, ck_connected = false, ck_two = false, ck_plain = false;
  auto* ck = app.add_subcommand("check", "decide whether a clause is reducible");
  ck->add_option("--clause", ck_clause, "clause text")->required();
  ck->add_option("--mode", ck_mode, "sld or standard");
  ck->add_option("--arity-cap", ck_cap, "arity cap of the premises")->check(CLI::PositiveNumber);
  ck->add_option("--method", ck_method, "partition or forward");
  ck->add_option("--premises", ck_source, "forward premise source: auto, fragment or targeted");
  ck->add_flag("--connected", ck_connected, "premises need only be connected");
  ck->add_flag("--two-connected", ck_two, "premises must be two-connected");
  ck->add_flag("--unconstrained", ck_plain, "no structural constraint on premises");
  ck->add_flag("--json", ck_json, "JSON output");

  // derive
  std::string dv_theory, dv_goal, dv_mode = "sld";
  ClosureBounds dv_bounds;
  bool dv_json = false;
  auto* dv = app.add_subcommand("derive", "search for a derivation of a clause");
  dv->add_option("--theory", dv_theory, "theory file")->required();
  dv->add_option("--goal", dv_goal, "clause to derive")->required();
  dv->add_option("--mode", dv_mode, "sld or standard");
  dv->add_option("--max-depth", dv_bounds.max_depth)->check(CLI::PositiveNumber);
  dv->add_option("--max-body", dv_bounds.max_body)->check(CLI::PositiveNumber);
  dv->add_option("--max-clauses", dv_bounds.max_clauses)->check(CLI::PositiveNumber);
  dv->add_flag("--json", dv_json, "JSON output");

  // graph
  std::string gr_clause;
  bool gr_dot = false;
  auto* gr = app.add_subcommand("graph", "connectivity report and graph encoding");
  gr->add_option("--clause", gr_clause, "clause text")->required();
  gr->add_flag("--dot", gr_dot, "also print the graph in DOT format");

  // extend
  std::string ex_clause;
  std::vector<std::string> ex_pairs;
  int ex_depth = 0;
  auto* ex = app.add_subcommand("extend", "apply non-red preserving extensions");
  ex->add_option("--clause", ex_clause, "clause text")->required();
  ex->add_option("--pairs", ex_pairs, "body indices i,j (repeatable, applied in order)");
  ex->add_option("--depth", ex_depth, "then list everything reachable in this many extensions")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return Result{code == 0 ? 0 : kExitUsage, out.str(), err.str()};
  }

  try {
    if (en->parsed()) {
      FragmentSpec f = make_spec(en_arity, en_body, en_shape);
      auto clauses = enumerate(f);
      if (en_json) {
        json j{{"schema_version", kSchemaVersion}, {"fragment", to_json(f)}, {"count", clauses.size()}};
        if (!en_count) {
          json list = json::array();
          for (const auto& c : clauses) list.push_back(to_string(c));
          j["clauses"] = list;
        }
        out << j.dump(2) << "\n";
      } else if (en_count) {
        out << clauses.size() << "\n";
      } else {
        for (const auto& c : clauses) out << to_string(c) << "\n";
      }
      return Result{0, out.str(), err.str()};
    }

    if (rd->parsed()) {
      const Mode mode = mode_of(rd_mode);
      Theory t;
      json source;
      if (!rd_theory.empty()) {
        t = Theory(load_theory(rd_theory));
        source = json{{"theory", rd_theory}};
      } else if (!rd_fragment.empty()) {
        int a = 0, b = 0;
        char comma = 0;
        std::istringstream in(rd_fragment);
        if (!(in >> a >> comma >> b) || comma != ',' || a < 1 || b < 0 || !in.eof())
          throw UsageError("--fragment expects A,B with A >= 1 and B >= 0");
        FragmentSpec f = make_spec(a, b, rd_shape);
        t = Theory(enumerate(f));
        source = json{{"fragment", to_json(f)}};
      } else {
        throw UsageError("reduce needs --theory or --fragment");
      }
      auto t0 = std::chrono::steady_clock::now();
      ReductionReport rep = reduce_theory(t, mode, rd_bounds);
      const double secs = seconds_since(t0);
      std::ostream& summary = rd_json ? err : out;
      summary << "core: " << rep.core.size() << " clause(s)\n";
      for (const auto& c : rep.core.clauses()) summary << "  " << to_string(c) << "\n";
      summary << "removed: " << rep.removed.size() << " clause(s)\n";
      for (const auto& r : rep.removed) summary << "  " << to_string(r.clause) << "\n";
      if (rep.bounds_hit) summary << "note: search bounds were hit; the core may not be minimal\n";
      if (rd_json) {
        json j{{"schema_version", kSchemaVersion},
               {"input", source},
               {"mode", to_string(mode)},
               {"bounds", to_json(rd_bounds)},
               {"report", to_json(rep)},
               {"timing", json{{"seconds", secs}}}};
        out << j.dump(2) << "\n";
      }
      return Result{0, out.str(), err.str()};
    }

    if (ck->parsed()) {
      const Mode mode = mode_of(ck_mode);
      Clause c = parse_clause(ck_clause);
      if (ck_connected + ck_two + ck_plain > 1)
        throw UsageError("choose at most one of --connected, --two-connected, --unconstrained");
      FragmentSpec f;
      f.max_arity = ck_cap;
      f.max_body = static_cast<int>(c.body.size());
      if (ck_two) f.connected = f.two_connected = true;
      else if (ck_connected) f.connected = true;
      else if (!ck_plain) {
        // Default to the tightest constraint the clause itself satisfies.
        f.connected = is_connected(c);
        f.two_connected = is_two_connected(c);
      }
      ReducibilityOptions opts;
      if (ck_method == "partition") opts.method = Method::partition;
      else if (ck_method == "forward") opts.method = Method::forward;
      else throw UsageError("unknown method '" + ck_method + "' (expected partition or forward)");
      if (ck_source == "auto") opts.source = PremiseSource::automatic;
      else if (ck_source == "fragment") opts.source = PremiseSource::fragment;
      else if (ck_source == "targeted") opts.source = PremiseSource::targeted;
      else throw UsageError("unknown premise source '" + ck_source + "'");

      auto t0 = std::chrono::steady_clock::now();
      ReducibilityResult r = is_reducible(c, mode, f, opts);
      const double secs = seconds_since(t0);
      int code = 0;
      std::string verdict = "irreducible";
      if (r.witness) {
        verdict = "reducible";
        code = 1;
      } else if (r.inconclusive || !r.exact) {
        verdict = "inconclusive";
        code = 2;
      }
      if (ck_json) {
        json j{{"schema_version", kSchemaVersion},
               {"clause", to_string(c)},
               {"mode", to_string(mode)},
               {"fragment", to_json(f)},
               {"method", r.method},
               {"verdict", verdict},
               {"exact", r.exact},
               {"timing", json{{"seconds", secs}}}};
        if (r.witness) j["witness"] = to_json(*r.witness);
        out << j.dump(2) << "\n";
      } else {
        out << verdict << " (" << r.method << ")\n";
        if (r.witness) {
          out << "  c1: " << to_string(r.witness->c1) << "\n";
          out << "  c2: " << to_string(r.witness->c2) << "\n";
          print_proof(out, r.witness->proof);
        }
      }
      return Result{code, out.str(), err.str()};
    }

    if (dv->parsed()) {
      const Mode mode = mode_of(dv_mode);
      Theory t(load_theory(dv_theory));
      Clause goal = parse_clause(dv_goal);
      DeriveResult d = derives(t, goal, dv_bounds, mode);
      if (dv_json) {
        json j{{"schema_version", kSchemaVersion},
               {"goal", to_string(goal)},
               {"mode", to_string(mode)},
               {"bounds", to_json(dv_bounds)},
               {"found", d.proof.has_value()},
               {"truncated", d.truncated}};
        if (d.proof) j["proof"] = to_json(*d.proof);
        out << j.dump(2) << "\n";
      } else if (d.proof) {
        out << "derivable\n";
        print_proof(out, *d.proof);
      } else {
        out << (d.truncated ? "not found within bounds\n" : "not derivable (search exhausted)\n");
      }
      return Result{d.proof ? 0 : 1, out.str(), err.str()};
    }

    if (gr->parsed()) {
      Clause c = parse_clause(gr_clause);
      ClauseGraph g = encode(c);
      out << "clause: " << to_string(c) << "\n";
      out << "vertices: " << g.size() << "\n";
      out << "edges: " << g.edges.size() << "\n";
      out << "connected: " << (is_connected(g) ? "yes" : "no") << "\n";
      out << "two-connected: " << (is_two_connected(c) ? "yes" : "no") << "\n";
      out << "pending:";
      for (TermVar t : pending_variables(c)) out << " " << to_string(t);
      out << "\n";
      if (gr_dot) out << to_dot(g);
      return Result{0, out.str(), err.str()};
    }

    if (ex->parsed()) {
      Clause c = parse_clause(ex_clause);
      for (const std::string& p : ex_pairs) {
        std::size_t i = 0, j = 0;
        char comma = 0;
        std::istringstream in(p);
        if (!(in >> i >> comma >> j) || comma != ',' || !in.eof())
          throw UsageError("--pairs expects i,j");
        c = nonred_extend(c, i, j);
      }
      std::vector<Clause> level{c};
      std::vector<Clause> all{c};
      Theory seen(all);
      for (int d = 0; d < ex_depth; ++d) {
        std::vector<Clause> next;
        for (const Clause& x : level)
          for (std::size_t i = 0; i < x.body.size(); ++i)
            for (std::size_t j = 0; j < x.body.size(); ++j) {
              if (i == j) continue;
              try {
                Clause y = nonred_extend(x, i, j);
                if (seen.insert(y)) next.push_back(y);
              } catch (const PreconditionError&) {
              }
            }
        level = next;
        all.insert(all.end(), next.begin(), next.end());
      }
      for (const Clause& x : all) out << to_string(x) << "\n";
      return Result{0, out.str(), err.str()};
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return Result{kExitParse, out.str(), err.str()};
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return Result{kExitUsage, out.str(), err.str()};
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return Result{kExitUsage, out.str(), err.str()};
  } catch (const NoInput& e) {
    err << e.what() << "\n";
    return Result{kExitNoInput, out.str(), err.str()};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Result{70, out.str(), err.str()};
  }
  return Result{kExitUsage, out.str(), err.str()};
}

}  // namespace hornred::cli
