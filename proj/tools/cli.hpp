#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// in-process.
//
// Exit codes: 0 success, 1 domain error (JSON error document on stdout),
// 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spliceq/oracle.hpp"
#include "spliceq/spliceq.hpp"

namespace spliceq::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "v1:3/2,v2:1"; omitted vertices are 0. With dual_coords the numbers are
/// coefficients of E_v^* instead of E_v.
inline QCycle parse_cycle(const LatticeContext& ctx, const std::string& text, bool dual_coords) {
  std::vector<Rational> given(ctx.size(), Rational(0));
  std::string body = text;
  body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }), body.end());
  if (!body.empty() && body != "0") {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.rfind(':');
      if (colon == std::string::npos || colon == 0) throw UsageError("cycle entry '" + item + "' is not of the form id:value");
      const std::string id = item.substr(0, colon);
      std::size_t v;
      try {
        v = ctx.index_of(id);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      try {
        given[v] += Rational::parse(item.substr(colon + 1));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("in cycle entry '") + item + "': " + e.what());
      }
    }
  }
  if (!dual_coords) return ctx.from_rationals(given);
  std::vector<Rational> coords(ctx.size(), Rational(0));
  for (std::size_t v = 0; v < ctx.size(); ++v)
    for (std::size_t u = 0; u < ctx.size(); ++u) coords[u] += given[v] * ctx.dual(v).coord(u);
  return ctx.from_rationals(coords);
}

/// "1,0", "(1,0)" or "" / "()" for the trivial group.
inline HClass parse_class(const LatticeContext& ctx, std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; }),
             text.end());
  HClass h;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        const auto r = Rational::parse(item);
        if (!r.is_integer()) throw std::invalid_argument("not an integer");
        h.residues.push_back(r.num());
      } catch (const std::invalid_argument&) {
        throw UsageError("class entry '" + item + "' is not an integer");
      }
    }
  }
  try {
    ctx.check_class(h);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return h;
}

inline nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

struct Settings {
  bool json = true;
  bool verbose = false;
  bool dual_coords = false;
  unsigned threads = 1;
  std::int64_t cap = kDefaultStaircaseCap;
  std::string output;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of negative-definite plumbing trees", "spliceq"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  Settings s;
  app.add_flag("--json", s.json, "JSON output (the default and only format)");
  app.add_flag("--verbose", s.verbose, "Include certificates and per-point detail");
  app.add_flag("--dual-coords", s.dual_coords, "Read cycle literals as coefficients of the dual basis");
  app.add_option("--threads", s.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap", s.cap, "Staircase axis search cap")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", s.output, "Write the JSON document to a file instead of stdout");

  std::string graph_path;
  auto sub = [&](const std::string& name, const std::string& desc) {
    auto* c = app.add_subcommand(name, desc);
    c->add_option("graph", graph_path, "Graph file (JSON)")->required();
    return c;
  };

  std::string at, by, cycle, chern, klass, vertex;
  std::int64_t max_degree = 0;
  bool all = false;

  auto* c_validate = sub("validate", "Check the graph hypotheses");
  auto* c_lattice = sub("lattice", "Intersection lattice data");
  auto* c_coeff = sub("coeff", "Series coefficient c at a cycle");
  c_coeff->add_option("--at", at, "Cycle")->required();
  auto* c_hilbert = sub("hilbert", "Hilbert coefficient (truncated sum) at a cycle");
  c_hilbert->add_option("--at", at, "Cycle")->required();
  auto* c_h0 = sub("h0dim", "dim H^0(O(-l'))/H^0(O(-l'-l))");
  c_h0->add_option("--at", at, "Cycle l'")->required();
  c_h0->add_option("--by", by, "Integral effective cycle l")->required();
  auto* c_poincare = sub("poincare", "Equivariant vertex Poincare series");
  c_poincare->add_option("--vertex", vertex, "Vertex id")->required();
  c_poincare->add_option("--max-degree", max_degree, "Largest E_u-degree")->required()->check(CLI::NonNegativeNumber);
  c_poincare->add_option("--class", klass, "Class tuple (default: identity)");
  auto* c_sw = sub("sw", "Seiberg-Witten invariants per spin^c offset");
  auto* sw_class = c_sw->add_option("--class", klass, "Class tuple");
  c_sw->add_flag("--all", all, "Full table (default)")->excludes(sw_class);
  auto* c_h1 = sub("h1", "h^1 of the natural line bundle with the given Chern class");
  c_h1->add_option("--chern", chern, "Chern class c_1 (the bundle is O(-l') with l' = -c_1)")->required();
  auto* c_pg = sub("pg", "Geometric genus");
  auto* c_zmin = sub("zmin", "Minimal (fundamental) cycle");
  auto* c_zmax = sub("zmax", "Maximal cycle");
  auto* c_principal = sub("principal", "Principal Q-cycle test");
  c_principal->add_option("--cycle", cycle, "Anti-nef cycle")->required();
  auto* c_check = sub("check", "Monomial condition");
  auto* c_base = sub("basepoints", "Base points and Newton staircases");
  auto* c_mult = sub("mult", "Multiplicity");
  auto* c_report = sub("report", "All invariants");

  auto* c_oracle = app.add_subcommand("oracle", "Brute-force oracles")->group("");
  c_oracle->require_subcommand(1, 1);
  std::int64_t box = -1, bound = 10;
  auto osub = [&](const std::string& name, const std::string& desc) {
    auto* c = c_oracle->add_subcommand(name, desc);
    c->add_option("graph", graph_path, "Graph file (JSON)")->required();
    return c;
  };
  auto* o_string = osub("string-hilbert", "Monomial count on a string graph");
  o_string->add_option("--at", at, "Cycle")->required();
  o_string->add_option("--box", box, "Box size (default: derived)");
  auto* o_naive = osub("naive", "Unpruned truncated sum");
  o_naive->add_option("--at", at, "Cycle")->required();
  o_naive->add_option("--by", by, "Integral effective cycle (switches to the effective region)");
  auto* o_zmin = osub("zmin", "Exhaustive minimal cycle");
  o_zmin->add_option("--bound", bound, "Box bound (<= 10)");
  auto* o_principal = osub("principal", "Principal test through the cycle condition");
  o_principal->add_option("--cycle", cycle, "Anti-nef cycle")->required();

  std::vector<const char*> argv{"spliceq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (!s.output.empty()) {
    file.open(s.output);
    if (!file) {
      err << "cannot write '" << s.output << "'\n";
      return 2;
    }
  }
  std::ostream& sink = s.output.empty() ? out : file;
  auto emit = [&](const nlohmann::json& j) { sink << j.dump(2) << "\n"; };

  try {
    std::ifstream in(graph_path);
    if (!in) throw UsageError("cannot open graph file '" + graph_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const PlumbingGraph g = parse_graph(buf.str());

    if (c_validate->parsed()) {
      const auto rep = validate(g);
      nlohmann::json v = nlohmann::json::array();
      for (const auto& e : rep.violations) v.push_back({{"kind", to_string(e.kind)}, {"detail", e.detail}});
      emit({{"ok", rep.ok()}, {"violations", v}});
      return rep.ok() ? 0 : 1;
    }

    const LatticeContext ctx(g);
    auto cyc = [&](const std::string& t) { return parse_cycle(ctx, t, s.dual_coords); };

    if (c_lattice->parsed()) {
      auto j = lattice_json(ctx);
      j["classes"] = ctx.all_classes().size();
      emit(j);
    } else if (c_coeff->parsed()) {
      const auto x = cyc(at);
      emit({{"at", to_json(ctx, x)}, {"coeff", coeff_c(ctx, x)}});
    } else if (c_hilbert->parsed()) {
      const auto x = cyc(at);
      emit({{"at", to_json(ctx, x)}, {"hilbert", sum_trunc(ctx, x)}});
    } else if (c_h0->parsed()) {
      const auto x = cyc(at);
      const auto l = cyc(by);
      emit({{"at", to_json(ctx, x)}, {"by", to_json(ctx, l)}, {"h0dim", h0_quotient_dim(ctx, x, l)}});
    } else if (c_poincare->parsed()) {
      std::size_t u;
      try {
        u = ctx.index_of(vertex);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const HClass h = klass.empty() ? ctx.identity_class() : parse_class(ctx, klass);
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : vertex_poincare(ctx, u, h, max_degree))
        terms.push_back({{"exponent", t.exponent.str()}, {"coefficient", t.coefficient}});
      emit({{"vertex", vertex}, {"class", to_json(h)}, {"max_degree", max_degree}, {"terms", terms}});
    } else if (c_sw->parsed()) {
      if (!klass.empty()) {
        const auto h = parse_class(ctx, klass);
        nlohmann::json j{{"class", to_json(h)}, {"sw", to_json(sw_invariant(ctx, h))}};
        if (s.verbose) j["representative"] = to_json(ctx, ctx.artin_shift(ctx.negate(h)));
        emit(j);
      } else {
        emit({{"invariant_factors", ctx.invariant_factors()}, {"sw", to_json(sw_table(ctx, s.threads))}});
      }
    } else if (c_h1->parsed()) {
      const auto c1 = cyc(chern);
      const auto r = h1_natural(ctx, -c1);
      nlohmann::json j{{"chern", to_json(ctx, c1)}, {"l_prime", to_json(ctx, r.l_prime)}, {"h1", r.value}};
      j["summands"] = {{"truncated_sum", r.truncated_sum}, {"sw", to_json(r.sw_term)}, {"quadratic", to_json(r.quadratic)}};
      emit(j);
    } else if (c_pg->parsed()) {
      emit({{"pg", geometric_genus(ctx)}});
    } else if (c_zmin->parsed()) {
      const auto z = ctx.laufer_zmin();
      emit({{"zmin", to_json(ctx, z)}, {"zmin2", to_json(ctx.pair(z, z))}});
    } else if (c_zmax->parsed()) {
      const auto z = zmax(ctx);
      emit({{"zmax", to_json(ctx, z)}, {"zmax2", to_json(ctx.pair(z, z))}});
    } else if (c_principal->parsed()) {
      const auto x = cyc(cycle);
      const auto cert = is_principal(ctx, x);
      nlohmann::json j{{"cycle", to_json(ctx, x)}, {"principal", cert.principal}};
      if (cert.refuting_vertex) j["refuting_vertex"] = ctx.id(*cert.refuting_vertex);
      if (s.verbose) {
        nlohmann::json w = nlohmann::json::object();
        for (std::size_t v = 0; v < ctx.size(); ++v)
          w[ctx.id(v)] = cert.witnesses[v] ? to_json(ctx, *cert.witnesses[v]) : nlohmann::json(nullptr);
        j["witnesses"] = w;
      }
      emit(j);
    } else if (c_check->parsed()) {
      const auto rep = monomial_condition(ctx);
      nlohmann::json branches = nlohmann::json::array();
      for (const auto& b : rep.branches) {
        if (!s.verbose && b.witness) continue;
        nlohmann::json e{{"node", ctx.id(b.node)}, {"branch", ctx.id(b.neighbor)}, {"satisfied", b.witness.has_value()}};
        if (s.verbose) e["witness"] = b.witness ? to_json(ctx, *b.witness) : nlohmann::json(nullptr);
        branches.push_back(e);
      }
      emit({{"satisfied", rep.satisfied}, {s.verbose ? "branches" : "failing", branches}});
    } else if (c_base->parsed() || c_mult->parsed()) {
      const auto m = multiplicity(ctx, s.cap);
      nlohmann::json base = nlohmann::json::array();
      nlohmann::json all_points = nlohmann::json::array();
      for (const auto& st : m.staircases) {
        if (st.base_point) base.push_back(to_json(ctx, st));
        all_points.push_back(to_json(ctx, st));
      }
      nlohmann::json j;
      if (c_mult->parsed()) {
        j["multiplicity"] = m.total;
        j["neg_zmax_square"] = m.neg_zmax_square;
      }
      j["zmax"] = to_json(ctx, m.zmax);
      j["base_points"] = base;
      if (s.verbose) j["double_points"] = all_points;
      emit(j);
    } else if (c_report->parsed()) {
      emit(invariant_report(ctx, {s.threads, s.cap}));
    } else if (o_string->parsed()) {
      const auto x = cyc(at);
      const auto b = box >= 0 ? box : oracle::string_box_bound(ctx, x);
      emit({{"at", to_json(ctx, x)}, {"box", b}, {"count", oracle::string_hilbert_count(ctx, x, b)}});
    } else if (o_naive->parsed()) {
      const auto x = cyc(at);
      if (by.empty()) {
        emit({{"at", to_json(ctx, x)}, {"mode", "not-geq"}, {"value", oracle::naive_series_region(ctx, x, oracle::RegionMode::NotGeq)}});
      } else {
        const auto l = cyc(by);
        emit({{"at", to_json(ctx, x)},
              {"by", to_json(ctx, l)},
              {"mode", "eff-not-geq"},
              {"value", oracle::naive_series_region(ctx, x, oracle::RegionMode::EffNotGeq, l)}});
      }
    } else if (o_zmin->parsed()) {
      emit({{"zmin", to_json(ctx, oracle::brute_zmin(ctx, bound))}});
    } else if (o_principal->parsed()) {
      const auto x = cyc(cycle);
      emit({{"cycle", to_json(ctx, x)}, {"principal", oracle::principal_by_cycle_condition(ctx, x)}});
    }
    return 0;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    emit(error_json(to_string(e.kind()), e.what()));
  } catch (const InvalidGraph& e) {
    auto j = error_json("InvalidGraph", e.what());
    for (const auto& v : e.report().violations) j["error"]["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
    emit(j);
  } catch (const NotInDualLattice& e) {
    emit(error_json("NotInDualLattice", e.what()));
  } catch (const NotEffective& e) {
    emit(error_json("NotEffective", e.what()));
  } catch (const InputOutsideCone& e) {
    emit(error_json("InputOutsideCone", e.what()));
  } catch (const UnknownEnd& e) {
    emit(error_json("UnknownEnd", e.what()));
  } catch (const UnboundedStaircase& e) {
    emit(error_json("UnboundedStaircase", e.what()));
  } catch (const NonIntegralResult& e) {
    emit(error_json("NonIntegralResult", e.what()));
  } catch (const NegativeResult& e) {
    emit(error_json("NegativeResult", e.what()));
  } catch (const oracle::NotAString& e) {
    emit(error_json("NotAString", e.what()));
  } catch (const oracle::BoxTooSmall& e) {
    emit(error_json("BoxTooSmall", e.what()));
  } catch (const ArithmeticOverflow& e) {
    emit(error_json("ArithmeticOverflow", e.what()));
  } catch (const std::invalid_argument& e) {
    emit(error_json("InvalidArgument", e.what()));
  }
  return 1;
}

}  // namespace spliceq::cli
