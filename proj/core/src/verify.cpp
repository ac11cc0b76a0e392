#include "btcoh/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "btcoh/arrangement.hpp"
#include "btcoh/cech.hpp"
#include "btcoh/normal_forms.hpp"
#include "btcoh/orlik_solomon.hpp"
#include "btcoh/parallel.hpp"

namespace btcoh {

namespace {

constexpr std::size_t kOracleFullLimit = 12;

std::string join_id(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '/';
    out += p;
  }
  return out;
}

std::size_t rank_over(const RingDescriptor& ring, const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (ring.kind() == RingKind::PrimeField) return rank_mod(m, ring.modulus().get_si());
  return rational_rank(m);
}

IntMatrix stack(IntMatrix top, const IntMatrix& bottom) {
  if (bottom.rows() > 0) top.append_rows(bottom);
  return top;
}

bool is_power_of(Integer x, long p) {
  if (x < 1) return false;
  while (x % p == 0) x /= p;
  return x == 1;
}

Json text_list(const std::vector<std::string>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x);
  return out;
}

std::string tuple_text(const VertexTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

std::vector<VertexTuple> all_simplices(const BallComplex& b) {
  std::vector<VertexTuple> out;
  for (const auto& level : b.simplices) out.insert(out.end(), level.begin(), level.end());
  return out;
}

int common_level(const GlobalParams& g, const BallComplex& b) {
  int level = 1;
  for (const auto& t : all_simplices(b)) level = std::max(level, faithful_level(g, b.simplex(t)));
  return level;
}

/// k-subsets of {0..n-1}.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const Word&)>& f) {
  Word cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

/// A kernel vector of D^k over a field that is not a coboundary, as
/// (coordinate, value) pairs, choosing the sparsest candidate.
Json field_witness(const CechComplex& c, std::size_t k) {
  IntMatrix dk = c.differential(k);
  auto rk = rank_and_kernel(ExactMatrix(c.ring, dk));
  IntMatrix image = k == 0 ? IntMatrix(0, c.term_ranks[k]) : c.differential(k - 1).transpose();
  const std::size_t base = rank_over(c.ring, image);
  const RatVector* best = nullptr;
  std::size_t best_support = 0;
  for (const auto& v : rk.kernel) {
    IntMatrix candidate = image;
    IntVector scaled(v.size());
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, x.get_den());
    for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = Integer(Rational(v[i] * den));
    candidate.append_row(scaled);
    if (rank_over(c.ring, candidate) == base) continue;
    std::size_t support = 0;
    for (const auto& x : v) support += sgn(x) != 0;
    if (!best || support < best_support) {
      best = &v;
      best_support = support;
    }
  }
  Json out = Json::array();
  if (best)
    for (std::size_t i = 0; i < best->size(); ++i)
      if (sgn((*best)[i]) != 0) out.push_back(Json::array({i, (*best)[i].get_str()}));
  return out;
}

CechComplex with_ring(CechComplex c, const RingDescriptor& ring) {
  c.ring = ring;
  return c;
}

}  // namespace

std::vector<long> small_primes_except(long p, long bound) {
  std::vector<long> out;
  for (long q : {2L, 3L, 5L, 7L})
    if (q <= bound && q != p) out.push_back(q);
  return out;
}

std::vector<RingDescriptor> default_rings(long p) {
  const long ell = p == 2 ? 3 : 2;
  return {RingDescriptor::rationals(), RingDescriptor::prime_field(ell), RingDescriptor::residue_ring(ell * ell),
          RingDescriptor::integers()};
}

ClauseResult distance_suite(const GlobalParams& g, int radius, std::size_t cap, std::size_t workers) {
  BallComplex b = ball_complex(g, radius, cap, workers);
  const std::size_t n = b.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  if (b.simplices.size() > 1)
    for (const auto& e : b.simplices[1]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
  std::vector<std::size_t> mismatches(n, 0);
  std::vector<Json> first(n);
  parallel_for(n, workers, [&](std::size_t s) {
    std::vector<int> dist(n, -1);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (std::size_t t = s; t < n; ++t) {
      int formula = distance(b.vertices[s], b.vertices[t], g.p);
      if (formula != dist[t]) {
        if (mismatches[s]++ == 0)
          first[s] = Json{{"u", b.vertices[s].to_string()}, {"v", b.vertices[t].to_string()},
                          {"formula", formula}, {"bfs", dist[t]}};
      }
    }
  });
  ClauseResult r;
  r.id = join_id({"distance", "r=" + std::to_string(radius)});
  std::size_t bad = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (mismatches[s] && r.detail.find("witness") == r.detail.end()) r.detail["witness"] = first[s];
    bad += mismatches[s];
  }
  r.pass = bad == 0;
  r.detail["vertices"] = n;
  r.detail["pairs"] = n * (n + 1) / 2;
  r.detail["mismatches"] = bad;
  return r;
}

ClauseResult apartment_suite(const GlobalParams& g, int max_radius, std::size_t count, std::uint64_t seed,
                             int window, std::size_t cap) {
  std::vector<std::set<LatticeClass>> balls;
  for (int n = 0; n <= max_radius; ++n) {
    auto vs = ball_vertices(g, n, cap);
    balls.emplace_back(vs.begin(), vs.end());
  }
  const auto apartments = random_apartments(g, count, seed);
  std::size_t checked = 0, bad = 0;
  Json witness;
  for (std::size_t ai = 0; ai < apartments.size(); ++ai) {
    std::vector<std::int64_t> x(g.rank(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == x.size()) {
        const std::int64_t f = apartment_f_value(apartments[ai], x, g.p);
        const LatticeClass v = apartment_vertex(apartments[ai], x, g.p);
        for (int n = 0; n <= max_radius; ++n) {
          ++checked;
          const bool inside = balls[static_cast<std::size_t>(n)].count(v) > 0;
          if ((f <= n) != inside) {
            if (bad++ == 0)
              witness = Json{{"apartment", ai}, {"x", x}, {"n", n}, {"f", f}, {"in_ball", inside}};
          }
        }
        return;
      }
      for (int c = -window; c <= window; ++c) {
        x[pos] = c;
        rec(pos + 1);
      }
    };
    rec(1);
  }
  ClauseResult r;
  r.id = join_id({"apartments", "n<=" + std::to_string(max_radius)});
  r.pass = bad == 0;
  r.detail["apartments"] = apartments.size();
  r.detail["seed"] = seed;
  r.detail["window"] = window;
  r.detail["checks"] = checked;
  r.detail["mismatches"] = bad;
  if (bad) r.detail["witness"] = witness;
  return r;
}

std::vector<ClauseResult> nbc_suite(const GlobalParams& g, std::uint64_t seed, std::size_t workers) {
  const BallComplex b = ball_complex(g, 1);
  const int level = common_level(g, b);
  const auto arrangement = enumerate_H(g, level);
  const auto lex = ArrangementOrder::lexicographic().ranks(arrangement);
  const std::vector<ArrangementOrder> alternatives{ArrangementOrder::reverse(), ArrangementOrder::shuffled(seed),
                                                   ArrangementOrder::reversed_coordinates()};
  std::vector<std::vector<std::size_t>> alt_ranks;
  for (const auto& o : alternatives) alt_ranks.push_back(o.ranks(arrangement));
  const std::vector<long> fields = [&] {
    std::vector<long> out;
    for (long q : {2L, 3L, 5L})
      if (q != g.p) out.push_back(q);
    return out;
  }();
  const std::size_t top = static_cast<std::size_t>(g.d) + 1;

  struct Outcome {
    std::string simplex;
    std::vector<std::size_t> special, a_rank;
    std::vector<std::string> oracle_fail, integral_fail, order_fail, torsion_fail, additivity_fail;
  };
  const auto simplices = all_simplices(b);
  std::vector<Outcome> outcomes(simplices.size());

  parallel_for(simplices.size(), workers, [&](std::size_t si) {
    Outcome& out = outcomes[si];
    out.simplex = tuple_text(simplices[si]);
    const Simplex s = b.simplex(simplices[si]);
    const OrlikSolomonAlgebra alg(s, arrangement, lex);
    for (std::size_t k = 0; k <= top; ++k) out.special.push_back(alg.special_chains(k).size());
    for (std::size_t k = 0; k < top; ++k) out.a_rank.push_back(alg.a_rank(k));

    std::vector<std::size_t> keep;
    if (arrangement.size() <= kOracleFullLimit) {
      for (std::size_t a = 0; a < arrangement.size(); ++a) keep.push_back(a);
    } else {
      keep = reduced_subset(alg.strata(), lex);
    }
    const StratifiedArrangement small = restrict_arrangement(alg.strata(), keep);
    const auto small_ranks = select(lex, keep);

    std::vector<RingDescriptor> rings{RingDescriptor::rationals()};
    for (long q : fields) rings.push_back(RingDescriptor::prime_field(q));
    for (const auto& ring : rings) {
      const OracleRanks o = oracle_ranks(small, ring, top);
      for (std::size_t k = 0; k <= top; ++k) {
        if (o.tilde[k] != out.special[k])
          out.oracle_fail.push_back(ring.name() + " tilde degree " + std::to_string(k) + ": " +
                                    std::to_string(o.tilde[k]) + " vs " + std::to_string(out.special[k]));
        if (k < top && o.a[k] != out.a_rank[k])
          out.oracle_fail.push_back(ring.name() + " A degree " + std::to_string(k) + ": " + std::to_string(o.a[k]) +
                                    " vs " + std::to_string(out.a_rank[k]));
      }
    }
    const OracleRanks oz = oracle_ranks(small, RingDescriptor::integers(), top);
    for (std::size_t k = 0; k <= top; ++k)
      for (const Integer& t : oz.torsion[k])
        if (!is_power_of(t, g.p)) out.torsion_fail.push_back("degree " + std::to_string(k) + ": " + t.get_str());

    // Straightening on the oracle arrangement: e_w minus its special
    // expansion must lie in the ideal over Q and modulo each small prime.
    const OrlikSolomonAlgebra sub(small, small_ranks);
    const auto gens = all_circuits(small);
    for (std::size_t k = 0; k <= top; ++k) {
      if (sub.special_chains(k).size() != out.special[k])
        out.integral_fail.push_back("reduced count differs in degree " + std::to_string(k));
      IntMatrix ideal = ideal_matrix(gens, small.size(), k);
      IntMatrix diffs(0, ideal.cols());
      for (const Monomial& w : monomial_basis(small.size(), k)) {
        IntVector v = monomial_coordinates(sub, sub.straighten(w), k);
        v[monomial_index(w, small.size())] -= 1;
        diffs.append_row(v);
      }
      for (const auto& ring : rings) {
        const std::size_t base = rank_over(ring, ideal);
        if (rank_over(ring, stack(ideal, diffs)) != base)
          out.integral_fail.push_back(ring.name() + " degree " + std::to_string(k));
      }
    }

    for (std::size_t oi = 0; oi < alternatives.size(); ++oi) {
      const OrlikSolomonAlgebra alt(s, arrangement, alt_ranks[oi]);
      for (std::size_t k = 0; k <= top; ++k)
        if (alt.special_chains(k).size() != out.special[k] || (k < top && alt.a_rank(k) != out.a_rank[k]))
          out.order_fail.push_back(alternatives[oi].name() + " degree " + std::to_string(k));
    }

    // I(σ) against the sum of the vertex ideals of its chain.
    std::vector<std::vector<std::size_t>> vertex_gens;
    for (const auto& v : s.vertices) {
      auto single = normalize_simplex({v}, g.p);
      auto strata = restrict_arrangement(stratify(arrangement, *single), keep);
      for (auto& c : all_circuits(strata)) vertex_gens.push_back(std::move(c));
    }
    for (std::size_t k = 0; k <= top; ++k) {
      IntMatrix mine = ideal_matrix(gens, small.size(), k);
      IntMatrix theirs = ideal_matrix(vertex_gens, small.size(), k);
      const std::size_t r1 = rank_over(RingDescriptor::rationals(), mine);
      const std::size_t r2 = rank_over(RingDescriptor::rationals(), theirs);
      const std::size_t r12 = rank_over(RingDescriptor::rationals(), stack(mine, theirs));
      if (r1 != r2 || r1 != r12)
        out.additivity_fail.push_back("degree " + std::to_string(k) + ": " + std::to_string(r1) + "/" +
                                      std::to_string(r2) + "/" + std::to_string(r12));
    }
  });

  auto make = [&](const std::string& name, auto member) {
    ClauseResult r;
    r.id = join_id({"nbc", name});
    std::size_t bad = 0;
    for (const auto& o : outcomes)
      if (!(o.*member).empty()) {
        if (bad++ == 0) r.detail["witness"] = Json{{"simplex", o.simplex}, {"failures", text_list(o.*member)}};
      }
    r.pass = bad == 0;
    r.detail["simplices"] = outcomes.size();
    r.detail["failing_simplices"] = bad;
    return r;
  };
  std::vector<ClauseResult> out;
  ClauseResult oracle = make("oracle", &Outcome::oracle_fail);
  oracle.detail["arrangement_level"] = level;
  oracle.detail["arrangement_size"] = arrangement.size();
  std::map<std::string, std::size_t> profile;
  for (const auto& o : outcomes) {
    std::ostringstream key;
    key << "special";
    for (auto x : o.special) key << ' ' << x;
    key << " | A";
    for (auto x : o.a_rank) key << ' ' << x;
    ++profile[key.str()];
  }
  Json prof = Json::object();
  for (const auto& [k, v] : profile) prof[k] = v;
  oracle.detail["rank_profiles"] = prof;
  out.push_back(std::move(oracle));
  out.push_back(make("straightening", &Outcome::integral_fail));
  out.push_back(make("orders", &Outcome::order_fail));
  out.push_back(make("torsion", &Outcome::torsion_fail));
  out.push_back(make("additivity", &Outcome::additivity_fail));
  return out;
}

ClauseResult vertex_suite(const GlobalParams& g) {
  ClauseResult r;
  r.id = "vertex/A1";
  if (g.d != 1) {
    r.pass = true;
    r.detail["skipped"] = "d != 1";
    return r;
  }
  const BallComplex b = ball_complex(g, 1);
  std::size_t bad = 0;
  Json ranks = Json::array();
  for (const auto& v : b.vertices) {
    const Simplex s = *normalize_simplex({v}, g.p);
    const auto arrangement = enumerate_H(g, faithful_level(g, s));
    const auto lex = ArrangementOrder::lexicographic().ranks(arrangement);
    const OrlikSolomonAlgebra alg(s, arrangement, lex);
    const auto keep = reduced_subset(alg.strata(), lex);
    const OracleRanks o = oracle_ranks(restrict_arrangement(alg.strata(), keep), RingDescriptor::rationals(), 2);
    const bool ok = alg.a_rank(1) == static_cast<std::size_t>(g.p) && o.a[1] == alg.a_rank(1);
    ranks.push_back(alg.a_rank(1));
    if (!ok && bad++ == 0)
      r.detail["witness"] = Json{{"vertex", v.to_string()}, {"rank", alg.a_rank(1)}, {"oracle", o.a[1]}};
  }
  r.pass = bad == 0;
  r.detail["expected"] = g.p;
  r.detail["ranks"] = ranks;
  return r;
}

std::vector<ClauseResult> cech_suite(const VerifyConfig& config) {
  const GlobalParams& g = config.params;
  const int R = config.radius;
  const std::vector<RingDescriptor> rings = config.rings.empty() ? default_rings(g.p) : config.rings;
  const BallComplex big = ball_complex(g, R, config.cap, config.workers);
  const OrlikSolomonFamily family(big, enumerate_H(g, R + 1), ArrangementOrder::lexicographic(), config.workers);

  std::vector<BallComplex> balls;
  std::vector<ComplexMap> maps;
  for (int n = 1; n <= R; ++n) balls.push_back(n == R ? big : ball_complex(g, n, config.cap, config.workers));
  for (const auto& b : balls) maps.push_back(subball(b, big));

  const auto flat_primes = small_primes_except(g.p);
  std::vector<ClauseResult> out;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(g.d); ++k) {
    const OrlikSolomonSystem system(family, k);
    std::vector<IntMatrix> h0_bases;
    std::vector<CechComplex> integral;
    for (int n = 1; n <= R; ++n) {
      const ComplexMap& map = maps[static_cast<std::size_t>(n - 1)];
      const PulledBackSystem pulled(system, map);
      const CechComplex cz = build_cech(map.complex, pulled, RingDescriptor::integers(), config.workers);
      const CohomologyReport rz = cohomology(cz);
      const IntMatrix basis = integral_h0_basis(cz);
      const std::string tag = "n=" + std::to_string(n) + "/k=" + std::to_string(k);

      for (const auto& ring : rings) {
        const CechComplex c = with_ring(cz, ring);
        const CohomologyReport rep = ring.kind() == RingKind::Integers ? rz : cohomology(c);
        ClauseResult a;
        a.id = join_id({"acyclic", tag, ring.name()});
        a.pass = true;
        for (std::size_t i = 1; i < rep.degrees.size(); ++i)
          if (rep.degrees[i].rank != 0 || !rep.degrees[i].torsion.empty()) {
            if (a.pass) {
              Json w{{"degree", i}};
              if (ring.is_field())
                w["cocycle"] = field_witness(c, i);
              else if (rep.degrees[i].rank > 0)
                w["cocycle"] = field_witness(with_ring(cz, RingDescriptor::rationals()), i);
              w["torsion"] = to_json(rep.degrees[i].torsion);
              a.detail["witness"] = w;
            }
            a.pass = false;
          }
        if (ring.is_field() && rep.euler_characteristic_terms() != rep.euler_characteristic_ranks()) {
          a.pass = false;
          a.detail["euler_mismatch"] = true;
        }
        if (ring.kind() == RingKind::ResidueRing && !rep.routes_agree) {
          a.pass = false;
          a.detail["routes_disagree"] = true;
        }
        a.detail["report"] = to_json(rep);
        out.push_back(std::move(a));

        // H^0(Z) ⊗ Λ -> H^0(Λ): the reduced integral basis must span the
        // kernel of D^0 over Λ and stay independent.
        ClauseResult d;
        d.id = join_id({"base-change", tag, ring.name()});
        const std::size_t r = basis.cols();
        const IntMatrix d0 = cz.differential(0);
        bool ok = (d0 * basis).is_zero();
        Json det;
        det["integral_rank"] = r;
        det["rank"] = rep.degrees.empty() ? 0 : rep.degrees[0].rank;
        if (ring.kind() == RingKind::ResidueRing) {
          const Integer& m = ring.modulus();
          const Integer span = howell_span_size(howell_form(basis.transpose(), m), m);
          Integer expected = 1;
          for (std::size_t i = 0; i < r; ++i) expected *= m;
          const Integer kernel = howell_span_size(howell_form(residue_kernel(d0, m), m), m);
          ok = ok && span == expected && kernel == expected;
          det["span"] = span.get_str();
          det["kernel"] = kernel.get_str();
        } else {
          const std::size_t reduced = rank_over(ring, basis.transpose());
          ok = ok && reduced == r && rep.degrees[0].rank == r;
          det["reduced_rank"] = reduced;
        }
        d.pass = ok;
        d.detail = det;
        out.push_back(std::move(d));
      }

      ClauseResult b;
      b.id = join_id({"free", tag});
      b.pass = true;
      for (const Integer& t : rz.degrees[0].torsion)
        if (!is_power_of(t, g.p)) b.pass = false;
      b.detail["rank"] = rz.degrees[0].rank;
      b.detail["torsion"] = to_json(rz.degrees[0].torsion);
      if (!b.pass) b.detail["witness"] = to_json(rz.degrees[0].torsion);
      out.push_back(std::move(b));

      ClauseResult c;
      c.id = join_id({"flat", tag});
      c.pass = true;
      const std::size_t rq = cohomology(with_ring(cz, RingDescriptor::rationals())).degrees[0].rank;
      Json levels = Json::object();
      levels["Q"] = rq;
      levels["Z"] = rz.degrees[0].rank;
      if (rq != rz.degrees[0].rank) c.pass = false;
      for (long ell : flat_primes) {
        const auto f = cohomology(with_ring(cz, RingDescriptor::prime_field(ell)));
        levels["F" + std::to_string(ell)] = f.degrees[0].rank;
        if (f.degrees[0].rank != rq) c.pass = false;
        const auto sq = cohomology(with_ring(cz, RingDescriptor::residue_ring(ell * ell)));
        levels["Z/" + std::to_string(ell * ell)] = sq.degrees[0].rank;
        if (sq.degrees[0].rank != rq || !sq.degrees[0].torsion.empty() || !sq.routes_agree) c.pass = false;
      }
      c.detail["h0"] = levels;
      out.push_back(std::move(c));

      h0_bases.push_back(basis);
      integral.push_back(cz);
    }

    for (int n = 1; n < R; ++n) {
      // Vertex blocks of B(n) inside B(n+1) share the same algebras.
      const auto& small = balls[static_cast<std::size_t>(n - 1)];
      const auto& large = balls[static_cast<std::size_t>(n)];
      const auto& cs = integral[static_cast<std::size_t>(n - 1)];
      const auto& cl = integral[static_cast<std::size_t>(n)];
      IntMatrix restrict(cs.term_ranks[0], cl.term_ranks[0]);
      for (std::size_t v = 0; v < small.vertices.size(); ++v) {
        const std::size_t w = large.vertex_index(small.vertices[v]);
        const std::size_t len = system.rank(0, maps[static_cast<std::size_t>(n - 1)].origin[0][v]);
        for (std::size_t i = 0; i < len; ++i) restrict(cs.offsets[0][v] + i, cl.offsets[0][w] + i) = 1;
      }
      const IntMatrix image = restrict * h0_bases[static_cast<std::size_t>(n)];
      ClauseResult e;
      e.id = join_id({"restriction", "n=" + std::to_string(n) + "->" + std::to_string(n + 1),
                      "k=" + std::to_string(k)});
      e.pass = (cs.differential(0) * image).is_zero();
      e.detail["rank_source"] = h0_bases[static_cast<std::size_t>(n)].cols();
      e.detail["rank_target"] = h0_bases[static_cast<std::size_t>(n - 1)].cols();
      const std::size_t rank = rank_over(RingDescriptor::rationals(), image);
      e.detail["image_rank"] = rank;
      e.detail["surjective_over_Q"] = rank == h0_bases[static_cast<std::size_t>(n - 1)].cols();
      e.detail["image_invariants"] = to_json(elementary_divisors(image));
      out.push_back(std::move(e));
    }

    {
      // Functoriality along every chain of faces of B(1).
      const ComplexMap& map = maps[0];
      const auto& y = map.complex;
      ClauseResult f;
      f.id = join_id({"functorial", "n=1", "k=" + std::to_string(k)});
      f.pass = true;
      std::size_t chains = 0;
      auto origin = [&](const VertexTuple& t) { return map.origin[t.size() - 1][y.index(t)]; };
      for (std::size_t top_dim = 0; top_dim < y.simplices.size(); ++top_dim)
        for (const auto& upsilon : y.simplices[top_dim]) {
          const std::size_t m = upsilon.size();
          const std::size_t u = origin(upsilon);
          auto id = system.transition(top_dim, u, top_dim, u);
          if (!(*id == IntMatrix::identity(system.rank(top_dim, u)))) f.pass = false;
          for (std::size_t smask = 1; smask < (std::size_t{1} << m); ++smask)
            for (std::size_t tmask = smask; tmask > 0; tmask = (tmask - 1) & smask) {
              VertexTuple sigma, tau;
              for (std::size_t i = 0; i < m; ++i) {
                if (smask & (std::size_t{1} << i)) sigma.push_back(upsilon[i]);
                if (tmask & (std::size_t{1} << i)) tau.push_back(upsilon[i]);
              }
              const std::size_t s = origin(sigma), t = origin(tau);
              const IntMatrix ts = *system.transition(tau.size() - 1, t, sigma.size() - 1, s);
              const IntMatrix su = *system.transition(sigma.size() - 1, s, top_dim, u);
              const IntMatrix tu = *system.transition(tau.size() - 1, t, top_dim, u);
              ++chains;
              if (!(su * ts == tu) && f.pass) {
                f.pass = false;
                f.detail["witness"] = Json{{"tau", tuple_text(tau)}, {"sigma", tuple_text(sigma)},
                                           {"upsilon", tuple_text(upsilon)}};
              }
            }
        }
      f.detail["chains"] = chains;
      out.push_back(std::move(f));
    }

    {
      // A seeded permutation of the vertex order must give the same answer.
      const ComplexMap& base = maps.back();
      std::vector<std::size_t> perm(base.complex.vertex_count);
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::mt19937_64 rng(config.seed);
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
      const ComplexMap moved = relabel(base.complex, perm);
      const PulledBackSystem pulled(system, base);
      const PulledBackSystem twice(pulled, moved);
      const CechComplex cz = build_cech(moved.complex, twice, RingDescriptor::integers(), config.workers);
      const CohomologyReport permuted = cohomology(cz);
      const CohomologyReport original = cohomology(integral.back());
      ClauseResult o;
      o.id = join_id({"vertex-order", "n=" + std::to_string(R), "k=" + std::to_string(k)});
      o.pass = true;
      for (std::size_t i = 0; i < original.degrees.size(); ++i)
        if (original.degrees[i].rank != permuted.degrees[i].rank ||
            original.degrees[i].torsion != permuted.degrees[i].torsion)
          o.pass = false;
      const auto q1 = cohomology(with_ring(cz, RingDescriptor::rationals()));
      const auto q0 = cohomology(with_ring(integral.back(), RingDescriptor::rationals()));
      for (std::size_t i = 0; i < q0.degrees.size(); ++i)
        if (q0.degrees[i].rank != q1.degrees[i].rank) o.pass = false;
      o.detail["seed"] = config.seed;
      o.detail["original"] = to_json(original);
      o.detail["permuted"] = to_json(permuted);
      out.push_back(std::move(o));
    }
  }
  return out;
}

std::vector<ClauseResult> signature_suite(const GlobalParams& g, std::size_t workers) {
  const BallComplex b = ball_complex(g, 1);
  const int level = common_level(g, b);
  const auto arrangement = enumerate_H(g, level);
  const auto lex = ArrangementOrder::lexicographic().ranks(arrangement);
  const std::size_t n = arrangement.size();
  const auto simplices = all_simplices(b);

  struct Outcome {
    std::string tau;
    std::size_t contiguous = 0;
    std::size_t relations = 0;
    std::vector<std::string> vanish_fail, span_fail, eq1_fail;
  };
  std::vector<Outcome> outcomes(simplices.size());

  parallel_for(simplices.size(), workers, [&](std::size_t ti) {
    Outcome& out = outcomes[ti];
    out.tau = tuple_text(simplices[ti]);
    const Simplex tau = b.simplex(simplices[ti]);
    const std::size_t k = static_cast<std::size_t>(tau.dimension());
    const OrlikSolomonAlgebra alg(tau, arrangement, lex);

    // Vertices joinable to all of τ, then k-simplices σ with σ ∪ τ a simplex.
    std::vector<LatticeClass> pool = tau.vertices;
    {
      std::vector<LatticeClass> common = neighbours_of(tau.vertices.front(), g.p);
      for (std::size_t i = 1; i < tau.vertices.size(); ++i) {
        auto other = neighbours_of(tau.vertices[i], g.p);
        std::vector<LatticeClass> keep;
        for (const auto& v : common)
          if (std::find(other.begin(), other.end(), v) != other.end()) keep.push_back(v);
        common = std::move(keep);
      }
      for (const auto& v : common)
        if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
    }
    std::vector<Simplex> contiguous;
    for_each_subset(pool.size(), k + 1, [&](const Word& pick) {
      std::vector<LatticeClass> sigma, joined = tau.vertices;
      for (std::size_t i : pick) {
        sigma.push_back(pool[i]);
        if (std::find(joined.begin(), joined.end(), pool[i]) == joined.end()) joined.push_back(pool[i]);
      }
      if (!normalize_simplex(joined, g.p)) return;
      if (auto s = normalize_simplex(sigma, g.p)) contiguous.push_back(std::move(*s));
    });
    out.contiguous = contiguous.size();

    std::vector<std::vector<SignatureForm>> forms;  // [σ][rotation]
    for (const auto& s : contiguous) {
      auto& rot = forms.emplace_back();
      for (std::size_t r = 0; r <= k; ++r) rot.emplace_back(stratify(arrangement, s.rotated(r)));
    }

    // (i) relations of degree k+1: d(e_u) for |u| = k+2 and e_t ∧ d(e_c).
    auto eval_d = [&](const SignatureForm& l, const Word& prefix, const Word& c) {
      long total = 0;
      for (const auto& [sign, w] : differential_terms(c)) {
        Word full = prefix;
        full.insert(full.end(), w.begin(), w.end());
        total += sign * l.evaluate(full);
      }
      return total;
    };
    const auto circuits = all_circuits(alg.strata());
    for (std::size_t si = 0; si < contiguous.size(); ++si) {
      const SignatureForm& l = forms[si][0];
      bool failed = false;
      for_each_subset(n, k + 2, [&](const Word& u) {
        ++out.relations;
        if (!failed && eval_d(l, {}, u) != 0) {
          failed = true;
          out.vanish_fail.push_back("d(e_u) sigma " + std::to_string(si));
        }
      });
      for (const auto& c : circuits) {
        if (c.size() > k + 2) continue;
        for_each_subset(n, k + 2 - c.size(), [&](const Word& t) {
          ++out.relations;
          if (!failed && eval_d(l, t, c) != 0) {
            failed = true;
            out.vanish_fail.push_back("circuit relation sigma " + std::to_string(si));
          }
        });
      }
    }

    // (ii) spanning the dual of A^k(τ).
    const auto& basis = alg.a_basis(k);
    IntMatrix pairing(contiguous.size(), basis.size());
    for (std::size_t si = 0; si < contiguous.size(); ++si)
      for (std::size_t j = 0; j < basis.size(); ++j) pairing(si, j) = forms[si][0].evaluate(basis[j]);
    const std::size_t rank = rank_over(RingDescriptor::rationals(), pairing);
    if (rank != basis.size())
      out.span_fail.push_back("rank " + std::to_string(rank) + " of " + std::to_string(basis.size()));

    // (iii) triangularity against basis words ordered by their rank sequences.
    auto key = [&](const Word& w) {
      std::vector<std::size_t> r;
      for (std::size_t a : w) r.push_back(lex[a]);
      return r;
    };
    for (const Word& t : basis) {
      bool found = false;
      for (std::size_t si = 0; si < contiguous.size() && !found; ++si)
        for (const auto& l : forms[si]) {
          if (l.evaluate(t) != 1) continue;
          bool clean = true;
          for (const Word& s : basis)
            if (key(s) > key(t) && l.evaluate(s) != 0) {
              clean = false;
              break;
            }
          if (clean) {
            found = true;
            break;
          }
        }
      if (!found) {
        std::ostringstream os;
        for (std::size_t a : t) os << a << ' ';
        out.eq1_fail.push_back("no sigma for word " + os.str());
      }
    }
  });

  auto make = [&](const std::string& name, auto member) {
    ClauseResult r;
    r.id = join_id({"signature", name});
    std::size_t bad = 0, contiguous = 0, relations = 0;
    for (const auto& o : outcomes) {
      contiguous += o.contiguous;
      relations += o.relations;
      if (!(o.*member).empty() && bad++ == 0)
        r.detail["witness"] = Json{{"tau", o.tau}, {"failures", text_list(o.*member)}};
    }
    r.pass = bad == 0;
    r.detail["simplices"] = outcomes.size();
    r.detail["contiguous_pairs"] = contiguous;
    if (name == "vanishing") r.detail["relations"] = relations;
    r.detail["failing_simplices"] = bad;
    return r;
  };
  return {make("vanishing", &Outcome::vanish_fail), make("span", &Outcome::span_fail),
          make("triangular", &Outcome::eq1_fail)};
}

ClauseResult exactness_suite(std::size_t max_size) {
  ClauseResult r;
  r.id = "exactness/degree-1";
  r.pass = true;
  Json sizes = Json::array();
  const std::vector<RingDescriptor> rings{RingDescriptor::rationals(), RingDescriptor::prime_field(2),
                                          RingDescriptor::prime_field(3)};
  for (std::size_t n = 1; n <= max_size; ++n) {
    const IntMatrix d2 = differential_matrix(n, 2);
    const IntMatrix d1 = differential_matrix(n, 1);
    bool ok = (d1 * d2).is_zero();
    for (const auto& ring : rings) ok = ok && rank_over(ring, d2) + rank_over(ring, d1) == n;
    for (const Integer& x : elementary_divisors(d2))
      if (x > 1) ok = false;
    sizes.push_back(Json{{"n", n}, {"exact", ok}});
    if (!ok && r.pass) r.detail["witness"] = Json{{"n", n}};
    r.pass = r.pass && ok;
  }
  r.detail["sizes"] = sizes;
  return r;
}

bool VerifyReport::all_pass() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(clauses.begin(), clauses.end(), [](const auto& c) { return !c.pass; }));
}

Json VerifyReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : clauses) {
    Json j;
    j["id"] = c.id;
    j["status"] = c.pass ? "pass" : "fail";
    for (auto it = c.detail.begin(); it != c.detail.end(); ++it) j[it.key()] = it.value();
    list.push_back(std::move(j));
  }
  Json out;
  out["clauses"] = list;
  out["summary"] = Json{{"total", clauses.size()}, {"failed", failures()}};
  return out;
}

VerifyReport verify_suites(const VerifyConfig& config) {
  config.params.validate();
  VerifyReport rep;
  auto add = [&](ClauseResult c) { rep.clauses.push_back(std::move(c)); };
  auto add_all = [&](std::vector<ClauseResult> cs) {
    for (auto& c : cs) rep.clauses.push_back(std::move(c));
  };
  add(distance_suite(config.params, config.radius, config.cap, config.workers));
  add(apartment_suite(config.params, config.apartment_radius, config.apartments, config.seed, config.window,
                      config.cap));
  add_all(nbc_suite(config.params, config.seed, config.workers));
  add(vertex_suite(config.params));
  add_all(cech_suite(config));
  add_all(signature_suite(config.params, config.workers));
  add(exactness_suite());
  return rep;
}

}  // namespace btcoh
