// polytile: command-line front end for verifying linked nets, certifying
// tilings and Chow-class partitions, generating instances, and chip-firing
// and quiver utilities.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polytile/polytile.hpp"

namespace pt = polytile;
using pt::Json;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string field;
  std::string format = "json";
  std::size_t threads = 1;
  std::string dilations = "1,2,3";
  std::uint64_t seed = 0;
  std::size_t types = 2;
  std::size_t dim = 2;
  std::size_t max_vertices = 12;
  std::int64_t max_offset = 3;
  std::optional<std::uint64_t> twist_seed;
  std::string divisor;
  std::optional<std::size_t> reduced;
  bool linear_system = false;
  bool extreme = false;
  std::string vertex;
};

struct Outcome {
  Json json;
  std::string markdown;
  bool passed = true;
};

std::string yes_no(bool b) { return b ? "pass" : "FAIL"; }

std::string md_subset(pt::Mask m, const std::vector<std::string>& ids) {
  std::string s = "{";
  bool first = true;
  for (auto i : pt::mask_elements(m)) {
    s += (first ? "" : ",") + ids[i];
    first = false;
  }
  return s + "}";
}

std::string md_certificate(const pt::Certificate& c) {
  std::ostringstream out;
  out << "# " << c.kind << " report\n\n";
  out << "Overall: **" << yes_no(c.passed()) << "**\n\n";
  out << "| clause | result |\n|---|---|\n";
  for (const auto& cl : c.clauses) out << "| " << cl.name << " | " << yes_no(cl.passed) << " |\n";
  for (const auto& [k, v] : c.notes.items()) out << "\n_" << k << ": " << v.get<std::string>() << "_\n";
  for (const auto& cl : c.clauses)
    if (!cl.passed) out << "\n## " << cl.name << "\n\n```json\n" << cl.details.dump(2) << "\n```\n";
  return out.str();
}

pt::FieldSpec choose_field(const Options& opt, const pt::FieldSpec& from_file) {
  if (!opt.field.empty()) return pt::field_spec_from_string(opt.field);
  if (const char* env = std::getenv("LT_FIELD"); env && *env) return pt::field_spec_from_string(env);
  return from_file;
}

std::vector<std::int64_t> parse_dilations(const std::string& s) {
  auto d = pt::parse_int_list(s);
  for (auto t : d)
    if (t < 1) throw pt::InputError("dilations must be positive");
  return d;
}

template <pt::ExactField F>
Outcome cmd_verify(const pt::NetPresentation<F>& net) {
  auto cert = pt::verify(net);
  return {cert.to_json(), md_certificate(cert), cert.passed()};
}

template <pt::ExactField F>
Outcome cmd_analyze(const pt::NetPresentation<F>& net, std::size_t threads) {
  auto cert = pt::verify(net);
  Json out;
  out["field"] = net.field.name();
  out["arrow_types"] = net.types;
  out["dimension"] = net.dim;
  out["verify_passed"] = cert.passed();
  std::ostringstream md;
  md << "# Net analysis\n\n" << net.size() << " vertices, " << net.types << " arrow types, dimension "
     << net.dim << ", field " << net.field.name() << ". Axioms: " << yes_no(cert.passed()) << ".\n";

  std::vector<pt::ModularPair> pairs(net.size());
  pt::parallel_for(net.size(), threads, [&](std::size_t v) { pairs[v] = pt::vertex_pair(net, v); });
  Json vs = Json::array();
  md << "\n## Vertices\n";
  for (std::size_t v = 0; v < net.size(); ++v) {
    Json e = {{"id", net.ids[v]}, {"coords", net.vertices[v]}, {"mu", pairs[v].mu.values()},
              {"mu_star", pairs[v].mu_star.values()}, {"codimension", pt::codimension(pairs[v].mu)}};
    md << "\n### " << net.ids[v] << " " << pt::vertex_string(net.vertices[v]) << "\n\n";
    md << "mu = " << Json(pairs[v].mu.values()).dump() << "  \nmu* = " << Json(pairs[v].mu_star.values()).dump()
       << "  \ncodimension " << pt::codimension(pairs[v].mu) << "\n";
    if (net.size() <= pt::kMaxVertexEnumeration) {
      auto verts = pt::polytope_vertices(pairs[v]);
      e["polytope_vertices"] = verts;
      md << "\nPolytope vertices: " << Json(verts).dump() << "\n";
    }
    vs.push_back(std::move(e));
  }
  out["vertices"] = std::move(vs);

  Json extreme = Json::object();
  try {
    auto ex = pt::extreme_vertices(net.vertices);
    md << "\n## Extreme vertices\n\n";
    for (std::size_t a = 0; a < ex.size(); ++a) {
      std::string id;
      for (std::size_t i = 0; i < net.size(); ++i)
        if (net.vertices[i] == ex[a]) id = net.ids[i];
      extreme[std::to_string(a)] = id;
      md << "- type " << a << ": " << id << "\n";
    }
  } catch (const pt::Error& e) {
    extreme = Json(std::string("unavailable: ") + e.what());
    md << "\nExtreme vertices unavailable: " << e.what() << "\n";
  }
  out["extreme_vertices"] = std::move(extreme);

  auto polys = pt::polygons(net.vertices);
  Json pj = Json::array();
  md << "\n## Polygons\n\n";
  for (const auto& p : polys) {
    pj.push_back(pt::json_subset(p.mask(), net.ids));
    md << "- " << md_subset(p.mask(), net.ids) << "\n";
  }
  out["polygons"] = std::move(pj);

  if (cert.passed()) {
    auto rc = pt::reduction_complex(net);
    out["reduction_complex"] = pt::complex_json(rc, net.ids);
    md << "\n## Reduction complex\n\n";
    for (auto m : rc.simplices) md << "- " << md_subset(m, net.ids) << "\n";
    md << "\nMatches the polytope complex: " << yes_no(rc.consistent) << "\n";
    return {out, md.str(), rc.consistent};
  }
  return {out, md.str(), false};
}

template <pt::ExactField F>
Outcome cmd_tiling(const pt::NetPresentation<F>& net, const std::vector<std::int64_t>& dilations,
                   std::size_t threads) {
  auto cert = pt::tiling_certificate(net, dilations, threads);
  return {cert.to_json(), md_certificate(cert), cert.passed()};
}

template <pt::ExactField F>
Outcome cmd_chow(const pt::NetPresentation<F>& net) {
  auto cert = pt::verify(net);
  if (!cert.passed()) return {cert.to_json(), md_certificate(cert), false};
  auto c = pt::chow_class(net);
  std::ostringstream md;
  md << "# Chow class\n\n" << "Partition of Omega_" << c.r << "(Z): " << yes_no(c.is_partition()) << "\n\n";
  md << "| q | multiplicity | component | monomial |\n|---|---|---|---|\n";
  for (const auto& e : c.entries) {
    std::string comp;
    for (auto v : e.components) comp += (comp.empty() ? "" : ",") + net.ids[v];
    md << "| " << Json(e.q).dump() << " | " << e.multiplicity() << " | " << comp << " | "
       << pt::chow_monomial(c, e) << " |\n";
  }
  return {c.to_json(), md.str(), c.is_partition()};
}

template <pt::ExactField F>
Outcome with_net(const std::string& sub, const Options& opt, const F& field, const Json& j) {
  auto net = pt::net_from_json(j, field);
  if (sub == "verify") return cmd_verify(net);
  if (sub == "analyze") return cmd_analyze(net, opt.threads);
  if (sub == "tiling") return cmd_tiling(net, parse_dilations(opt.dilations), opt.threads);
  return cmd_chow(net);
}

Outcome run_net_command(const std::string& sub, const Options& opt) {
  auto j = pt::read_json_file(opt.input);
  auto spec = choose_field(opt, pt::net_field_spec(j));
  if (spec.prime) return with_net(sub, opt, pt::PrimeField(spec.p), j);
  return with_net(sub, opt, pt::RationalField{}, j);
}

template <pt::ExactField F>
Outcome net_output(const pt::NetPresentation<F>& net) {
  auto j = pt::to_json(net);
  std::ostringstream md;
  md << "# Generated net\n\n" << net.size() << " vertices, dimension " << net.dim << "\n\n";
  for (std::size_t v = 0; v < net.size(); ++v) md << "- " << net.ids[v] << " " << pt::vertex_string(net.vertices[v]) << "\n";
  return {j, md.str(), true};
}

Outcome run_generate_monomial(const Options& opt) {
  auto spec = pt::tropical_from_json(pt::read_json_file(opt.input));
  auto fs = choose_field(opt, {});
  if (fs.prime) {
    auto net = pt::generate_monomial(pt::PrimeField(fs.p), spec);
    return net_output(opt.twist_seed ? pt::twist(net, *opt.twist_seed) : net);
  }
  auto net = pt::generate_monomial(pt::RationalField{}, spec);
  return net_output(opt.twist_seed ? pt::twist(net, *opt.twist_seed) : net);
}

Outcome run_generate_random(const Options& opt) {
  pt::RandomNetOptions ro{opt.types, opt.dim, opt.max_offset, opt.max_vertices, 1000};
  auto fs = choose_field(opt, {});
  if (fs.prime) {
    auto net = pt::generate_random(pt::PrimeField(fs.p), opt.seed, ro).second;
    return net_output(opt.twist_seed ? pt::twist(net, *opt.twist_seed) : net);
  }
  auto net = pt::generate_random(pt::RationalField{}, opt.seed, ro).second;
  return net_output(opt.twist_seed ? pt::twist(net, *opt.twist_seed) : net);
}

Outcome run_chipfire(const Options& opt) {
  auto g = pt::graph_from_json(pt::read_json_file(opt.input));
  if (opt.divisor.empty()) throw pt::InputError("--divisor is required");
  auto d = pt::parse_int_list(opt.divisor);
  if (d.size() != g.vertices()) throw pt::InputError("divisor length does not match the graph");
  Json out;
  std::ostringstream md;
  bool passed = true;
  out["divisor"] = d;
  md << "# Chip-firing\n\nDivisor " << Json(d).dump() << "\n";
  if (opt.reduced) {
    bool r = pt::is_v_reduced(g, d, *opt.reduced);
    out["reduced_at"] = *opt.reduced;
    out["is_reduced"] = r;
    md << "\nReduced at vertex " << *opt.reduced << ": " << (r ? "yes" : "no") << "\n";
  }
  if (opt.linear_system || opt.extreme || !opt.reduced) {
    auto ls = pt::linear_system(g, d);
    Json members = Json::array();
    for (const auto& m : ls) members.push_back({{"divisor", m.divisor}, {"coords", m.coords}});
    out["linear_system"] = members;
    md << "\n## Linear system (" << ls.size() << " divisors)\n\n";
    for (const auto& m : ls) md << "- " << Json(m.divisor).dump() << " at " << pt::vertex_string(m.coords) << "\n";
    if (opt.extreme && !ls.empty()) {
      auto h = pt::linear_system_vertices(ls);
      auto ex = pt::extreme_vertices(h);
      Json ej = Json::array();
      md << "\n## Extreme divisors\n\n";
      for (std::size_t a = 0; a < ex.size(); ++a) {
        const pt::Divisor* div = nullptr;
        for (const auto& m : ls)
          if (m.coords == ex[a]) div = &m.divisor;
        bool reduced = pt::is_v_reduced(g, *div, a);
        std::size_t reduced_count = 0;
        for (const auto& m : ls) reduced_count += pt::is_v_reduced(g, m.divisor, a) ? 1 : 0;
        bool agrees = reduced && reduced_count == 1;
        passed = passed && agrees;
        ej.push_back({{"type", a}, {"divisor", *div}, {"coords", ex[a]}, {"is_reduced", reduced},
                      {"reduced_divisors", reduced_count}});
        md << "- type " << a << ": " << Json(*div).dump() << ", reduced " << (reduced ? "yes" : "no") << "\n";
      }
      out["extreme"] = ej;
      out["extreme_equals_reduced"] = passed;
    }
  }
  return {out, md.str(), passed};
}

Outcome run_quiver(const std::string& sub, const Options& opt) {
  auto h = pt::vertex_set_from_json(pt::read_json_file(opt.input));
  Json out;
  std::ostringstream md;
  if (sub == "hull") {
    auto p = pt::hull(h);
    out["hull"] = pt::to_json(p);
    out["convex"] = p == pt::normalize_set(h);
    md << "# Hull\n\n";
    for (const auto& v : p) md << "- " << pt::vertex_string(v) << "\n";
  } else if (sub == "shadow") {
    if (opt.vertex.empty()) throw pt::InputError("--vertex is required");
    auto u = pt::parse_int_list(opt.vertex);
    auto w = pt::shadow(u, pt::hull(h));
    out["vertex"] = pt::normalize(u);
    out["shadow"] = w;
    md << "# Shadow\n\nShadow of " << pt::vertex_string(pt::normalize(u)) << ": " << pt::vertex_string(w) << "\n";
  } else {
    auto ex = pt::extreme_vertices(pt::hull(h));
    Json e = Json::object();
    md << "# Extreme vertices\n\n";
    for (std::size_t a = 0; a < ex.size(); ++a) {
      e[std::to_string(a)] = ex[a];
      md << "- type " << a << ": " << pt::vertex_string(ex[a]) << "\n";
    }
    out["extreme_vertices"] = e;
  }
  return {out, md.str(), true};
}

void emit(const Outcome& o, const Options& opt) {
  std::string text = opt.format == "markdown" ? o.markdown : pt::dump(o.json);
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.output);
  if (!f) throw pt::InputError("cannot write '" + opt.output + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polymatroidal tilings, linked nets over Z^n-quivers, and chip-firing."};
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opt.output, "Write the report to this file");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "markdown"}));
    sub->add_option("--field", opt.field, "rational, prime or prime:<p> (overrides LT_FIELD and the input)");
    sub->add_option("-j,--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<std::string, CLI::App*>> net_cmds;
  for (auto [name, help] : {std::pair{"verify", "Check the linked-net axioms of a net"},
                            std::pair{"analyze", "Modular pairs, polytopes, extreme vertices, polygons"},
                            std::pair{"tiling", "Certify the tiling of the simplex"},
                            std::pair{"chow", "Partition of Omega_r(Z) giving the Chow class"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("net", opt.input, "net.json")->required()->check(CLI::ExistingFile);
    common(sub);
    if (std::string(name) == "tiling") sub->add_option("--dilations", opt.dilations, "Comma-separated dilations");
    net_cmds.emplace_back(name, sub);
  }

  auto* gen = app.add_subcommand("generate", "Generate nets");
  gen->require_subcommand(1);
  auto* mono = gen->add_subcommand("monomial", "Diagonal net of min-plus forms");
  mono->add_option("trop", opt.input, "trop.json")->required()->check(CLI::ExistingFile);
  mono->add_option("--twist", opt.twist_seed, "Twist the maps with this seed");
  common(mono);
  auto* rnd = gen->add_subcommand("random", "Random monomial net");
  rnd->add_option("--seed", opt.seed, "Random seed")->required();
  rnd->add_option("--types", opt.types, "Number of arrow types n+1")->check(CLI::Range(1, 4));
  rnd->add_option("--dim", opt.dim, "Dimension r+1")->check(CLI::Range(1, 8));
  rnd->add_option("--max-vertices", opt.max_vertices, "Largest accepted generating set")->check(CLI::Range(1, 20));
  rnd->add_option("--max-offset", opt.max_offset, "Offsets are drawn from [0, max]")->check(CLI::Range(0, 8));
  rnd->add_option("--twist", opt.twist_seed, "Twist the maps with this seed");
  common(rnd);

  auto* chip = app.add_subcommand("chipfire", "Chip-firing linear systems and reduced divisors");
  chip->add_option("graph", opt.input, "graph.json")->required()->check(CLI::ExistingFile);
  chip->add_option("--divisor", opt.divisor, "Comma-separated chip counts")->required();
  chip->add_option("--reduced", opt.reduced, "Test whether the divisor is reduced at this vertex");
  chip->add_flag("--linear-system", opt.linear_system, "List the complete linear system");
  chip->add_flag("--extreme", opt.extreme, "Extreme divisors and their reducedness");
  common(chip);

  auto* quiver = app.add_subcommand("quiver", "Vertex-set utilities");
  quiver->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> quiver_cmds;
  for (auto [name, help] : {std::pair{"hull", "Hull P(H)"}, std::pair{"shadow", "Shadow of a vertex in P(H)"},
                            std::pair{"extreme", "Extreme vertices of P(H)"}}) {
    auto* sub = quiver->add_subcommand(name, help);
    sub->add_option("set", opt.input, "JSON array of vertices")->required()->check(CLI::ExistingFile);
    if (std::string(name) == "shadow") sub->add_option("--vertex", opt.vertex, "Comma-separated coordinates");
    common(sub);
    quiver_cmds.emplace_back(name, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::optional<Outcome> result;
    for (auto& [name, sub] : net_cmds)
      if (sub->parsed()) result = run_net_command(name, opt);
    if (mono->parsed()) result = run_generate_monomial(opt);
    if (rnd->parsed()) result = run_generate_random(opt);
    if (chip->parsed()) result = run_chipfire(opt);
    for (auto& [name, sub] : quiver_cmds)
      if (sub->parsed()) result = run_quiver(name, opt);
    if (!result) return 2;
    emit(*result, opt);
    return result->passed ? 0 : 1;
  } catch (const pt::ContractViolation& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const pt::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const pt::LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return 2;
  } catch (const pt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
