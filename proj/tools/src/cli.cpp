#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "btcoh/arrangement.hpp"
#include "btcoh/cech.hpp"
#include "btcoh/normal_forms.hpp"
#include "btcoh/orlik_solomon.hpp"
#include "btcoh/verify.hpp"

namespace btcoh::cli {

namespace {

std::vector<RingDescriptor> parse_rings(const RunConfig& c) {
  if (c.rings.empty()) return default_rings(c.p);
  std::vector<RingDescriptor> out;
  for (const auto& name : c.rings) {
    try {
      out.push_back(RingDescriptor::parse(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError("bad ring '" + name + "': " + e.what());
    }
  }
  return out;
}

ArrangementOrder parse_order(const RunConfig& c) {
  if (c.order == "lex") return ArrangementOrder::lexicographic();
  if (c.order == "reverse") return ArrangementOrder::reverse();
  if (c.order == "shuffled") return ArrangementOrder::shuffled(c.seed);
  if (c.order == "reversed-coordinates") return ArrangementOrder::reversed_coordinates();
  throw UsageError("unknown order '" + c.order + "'");
}

GlobalParams params(const RunConfig& c) { return {c.d, c.p}; }

Json header(const RunConfig& c) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = c.command;
  j["config"] = c.to_json();
  j["orders"] = Json{{"vertices", "lexicographic on canonical representatives"},
                     {"arrangement", parse_order(c).name()}};
  return j;
}

std::string tuple_text(const VertexTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

int automatic_level(const GlobalParams& g, const BallComplex& b) {
  int level = 1;
  for (const auto& list : b.simplices)
    for (const auto& t : list) level = std::max(level, faithful_level(g, b.simplex(t)));
  return level;
}

Json ball_report(const RunConfig& c) {
  const BallComplex b = ball_complex(params(c), c.radius, c.cap, c.workers);
  Json j = header(c);
  const Json summary = ball_summary(b);
  for (const auto& [k, v] : summary.items()) j[k] = v;
  if (c.verbosity >= 2) {
    Json vs = Json::array();
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
      vs.push_back(Json{{"rep", to_json(b.vertices[i])}, {"depth", b.depth[i]}});
    j["vertex_list"] = vs;
  }
  return j;
}

Json distance_report(const RunConfig& c) {
  if (c.m0.empty() || c.m1.empty()) throw UsageError("distance needs --m0 and --m1");
  IntMatrix a, b;
  try {
    a = parse_matrix(c.m0);
    b = parse_matrix(c.m1);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.rows() != b.rows()) throw UsageError("matrices must have the same number of rows");
  if (static_cast<int>(a.rows()) != c.d + 1) throw UsageError("matrices must have d+1 rows");
  LatticeClass ca, cb;
  try {
    ca = canonicalize(a, c.p);
    cb = canonicalize(b, c.p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json j = header(c);
  j["distance"] = distance(ca, cb, c.p);
  j["m0_class"] = to_json(ca);
  j["m1_class"] = to_json(cb);
  j["relative_exponents"] = relative_exponents(ca.rep(), cb.rep(), c.p);
  return j;
}

Json arrangement_report(const RunConfig& c) {
  const GlobalParams g = params(c);
  const int level = c.level > 0 ? c.level : 1;
  const auto h = enumerate_H(g, level, c.cap);
  const auto order = parse_order(c);
  const auto ranks = order.ranks(h);
  Json j = header(c);
  j["level"] = level;
  j["size"] = h.size();
  j["projective_count"] = to_json(projective_count(g, level));
  if (c.verbosity >= 1) {
    Json elems = Json::array();
    for (std::size_t i = 0; i < h.size(); ++i) elems.push_back(Json{{"coords", to_json(h[i])}, {"rank", ranks[i]}});
    j["elements"] = elems;
  }
  const BallComplex b = ball_complex(g, c.radius, c.cap, c.workers);
  Json strat = Json::array();
  for (const auto& list : b.simplices)
    for (const auto& t : list) {
      const auto s = stratify(h, b.simplex(t));
      Json e = to_json(s);
      e["simplex"] = tuple_text(t);
      e["faithful"] = covers_all_points(s);
      strat.push_back(e);
    }
  j["stratifications"] = strat;
  return j;
}

Json os_report(const RunConfig& c) {
  const GlobalParams g = params(c);
  const BallComplex b = ball_complex(g, c.radius, c.cap, c.workers);
  const int level = c.level > 0 ? c.level : automatic_level(g, b);
  const auto h = enumerate_H(g, level, c.cap);
  const auto ranks = parse_order(c).ranks(h);
  const std::size_t top = static_cast<std::size_t>(g.d) + 1;
  Json j = header(c);
  j["level"] = level;
  j["arrangement_size"] = h.size();
  Json list = Json::array();
  for (const auto& level_list : b.simplices)
    for (const auto& t : level_list) {
      const OrlikSolomonAlgebra alg(b.simplex(t), h, ranks);
      Json e;
      e["simplex"] = tuple_text(t);
      e["type"] = alg.strata().type;
      Json sizes = Json::array();
      for (const auto& s : alg.strata().strata) sizes.push_back(s.size());
      e["strata"] = sizes;
      e["circuits"] = all_circuits(alg.strata()).size();
      std::vector<std::size_t> special, a;
      for (std::size_t k = 0; k <= top; ++k) special.push_back(alg.special_chains(k).size());
      for (std::size_t k = 0; k < top; ++k) a.push_back(alg.a_rank(k));
      e["special"] = special;
      e["a_ranks"] = a;
      const auto keep = reduced_subset(alg.strata(), ranks);
      const auto reduced = restrict_arrangement(alg.strata(), keep);
      e["oracle"] = to_json(oracle_ranks(reduced, RingDescriptor::integers(), top));
      if (c.verbosity >= 2) {
        Json words = Json::array();
        for (std::size_t k = 0; k < top; ++k)
          for (const auto& w : alg.a_basis(k)) words.push_back(w);
        e["a_basis"] = words;
      }
      list.push_back(e);
    }
  j["simplices"] = list;
  return j;
}

Json cech_report(const RunConfig& c) {
  const GlobalParams g = params(c);
  if (c.radius < 1) throw UsageError("cech needs --radius >= 1");
  const BallComplex b = ball_complex(g, c.radius, c.cap, c.workers);
  const int level = c.level > 0 ? c.level : c.radius + 1;
  const OrlikSolomonFamily family(b, enumerate_H(g, level, c.cap), parse_order(c), c.workers);
  const auto rings = parse_rings(c);
  const SimplicialComplex y = SimplicialComplex::from_ball(b);
  Json j = header(c);
  j["level"] = level;
  j["ball"] = ball_summary(b);
  Json out = Json::array();
  for (int k = 0; k <= g.d; ++k) {
    if (c.degree >= 0 && k != c.degree) continue;
    const OrlikSolomonSystem system(family, static_cast<std::size_t>(k));
    const CechComplex cz = build_cech(y, system, RingDescriptor::integers(), c.workers);
    for (const auto& ring : rings) {
      CechComplex cr = cz;
      cr.ring = ring;
      Json e = to_json(cohomology(cr));
      e["degree"] = k;
      out.push_back(e);
    }
  }
  j["reports"] = out;
  return j;
}

Json verify_report(const RunConfig& c, int& exit_code) {
  VerifyConfig v;
  v.params = params(c);
  v.radius = c.radius;
  v.rings = parse_rings(c);
  v.cap = c.cap;
  v.workers = c.workers;
  v.apartments = c.apartments;
  v.seed = c.seed;
  const VerifyReport rep = verify_suites(v);
  Json j = header(c);
  const Json body = rep.to_json();
  for (const auto& [k, val] : body.items()) j[k] = val;
  exit_code = rep.all_pass() ? kSuccess : kClauseFailure;
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw UsageError("unknown command '" + command + "'");
  if (d < 1 || d > 6) throw UsageError("--d must lie in 1..6");
  if (p < 2 || !is_prime(p)) throw UsageError("--p must be prime");
  if (radius < 0 || radius > 12) throw UsageError("--radius must lie in 0..12");
  if ((command == "verify" || command == "cech") && radius < 1) throw UsageError("--radius must be at least 1");
  if (level < 0 || level > 12) throw UsageError("--level must lie in 0..12");
  if (degree < -1 || degree > d) throw UsageError("--degree must lie in 0..d");
  if (cap == 0) throw UsageError("--cap must be positive");
  if (verbosity < 0 || verbosity > 3) throw UsageError("--verbosity must lie in 0..3");
  parse_rings(*this);
  parse_order(*this);
}

Json RunConfig::to_json() const {
  Json j;
  j["d"] = d;
  j["p"] = p;
  j["radius"] = radius;
  Json r = Json::array();
  for (const auto& ring : parse_rings(*this)) r.push_back(ring.name());
  j["rings"] = r;
  j["level"] = level;
  j["degree"] = degree;
  j["cap"] = cap;
  j["seed"] = seed;
  j["order"] = order;
  j["apartments"] = apartments;
  j["workers"] = workers;
  j["verbosity"] = verbosity;
  if (!m0.empty()) j["m0"] = m0;
  if (!m1.empty()) j["m1"] = m1;
  return j;
}

RunResult execute(const RunConfig& config) {
  config.validate();
  RunResult r;
  const auto start = std::chrono::steady_clock::now();
  if (config.command == "ball") r.report = ball_report(config);
  else if (config.command == "distance") r.report = distance_report(config);
  else if (config.command == "arrangement") r.report = arrangement_report(config);
  else if (config.command == "os") r.report = os_report(config);
  else if (config.command == "cech") r.report = cech_report(config);
  else r.report = verify_report(config, r.exit_code);
  if (config.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    r.report["timing"] = Json{{"seconds", elapsed.count()}};
  }
  return r;
}

std::optional<std::filesystem::path> report_path(const RunConfig& config) {
  const char* dir = std::getenv("BTCOH_OUTPUT_DIR");
  std::filesystem::path out = config.output;
  if (dir && *dir) {
    if (out.empty()) return std::filesystem::path(dir) / (config.command + ".json");
    if (out.is_relative()) return std::filesystem::path(dir) / out;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult r;
  try {
    r = execute(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  const auto path = report_path(config);
  if (path) {
    write_json(*path, r.report);
    if (config.verbosity >= 1) {
      out << config.command << ": wrote " << path->string();
      if (config.command == "verify")
        out << " (" << r.report["summary"]["failed"].get<std::size_t>() << " of "
            << r.report["summary"]["total"].get<std::size_t>() << " clauses failed)";
      out << "\n";
    }
  } else {
    out << dump(r.report);
  }
  return r.exit_code;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bruhat-Tits building cohomology toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--d", c.d, "Building dimension (PGL_{d+1})");
  app.add_option("--p", c.p, "Residue characteristic");
  app.add_option("--radius", c.radius, "Ball radius n for B(n)");
  app.add_option("--rings", c.rings, "Coefficient rings: Q, Z, F<l>, Z/<m>")->delimiter(',');
  app.add_option("--level", c.level, "Arrangement level (0 = automatic)");
  app.add_option("--degree", c.degree, "Coefficient degree k for cech (-1 = all)");
  app.add_option("--cap", c.cap, "Size cap for enumerations");
  app.add_option("--seed", c.seed, "Random seed for apartments, shuffles and permutations");
  app.add_option("--order", c.order, "Arrangement order: lex, reverse, shuffled, reversed-coordinates");
  app.add_option("--output", c.output, "Report path (default: standard output)");
  app.add_option("--verbosity", c.verbosity, "0..3");
  app.add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  app.add_option("--apartments", c.apartments, "Random apartments for verify");
  app.add_option("--m0", c.m0, "First lattice basis for distance, e.g. [[1,0],[0,2]]");
  app.add_option("--m1", c.m1, "Second lattice basis for distance");
  app.add_flag("--timing", c.timing, "Add wall-clock timing to the report");
  const std::vector<std::pair<std::string, std::string>> subs{
      {"ball", "Enumerate B(n) and report its size"},
      {"distance", "Combinatorial distance between two lattice classes"},
      {"arrangement", "Dump H_n and its stratifications"},
      {"os", "Orlik-Solomon algebra reports per simplex"},
      {"cech", "Cohomology of the Cech complex of A^k on B(n)"},
      {"verify", "Run every verification suite"}};
  for (const auto& [name, help] : subs) app.add_subcommand(name, help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace btcoh::cli
