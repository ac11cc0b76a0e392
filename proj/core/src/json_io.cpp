#include "btcoh/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace btcoh {

Json to_json(const Integer& x) { return x.get_str(); }

Json to_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const Integer& x : xs) out.push_back(x.get_str());
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const LatticeClass& v) { return to_json(v.rep()); }

Json to_json(const HyperplaneRep& h) { return to_json(h.coords); }

Json to_json(const StratifiedArrangement& s) {
  Json out;
  out["type"] = s.type;
  Json sizes = Json::array();
  Json points = Json::array();
  for (std::size_t i = 0; i < s.stratum_count(); ++i) {
    sizes.push_back(s.strata[i].size());
    std::vector<std::size_t> seen;
    for (std::size_t a : s.strata[i]) seen.push_back(s.point[a]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    points.push_back(seen.size());
  }
  out["stratum_sizes"] = sizes;
  out["points_hit"] = points;
  out["stratum"] = s.stratum;
  return out;
}

Json to_json(const CohomologyReport& r) {
  Json out;
  out["ring"] = r.ring;
  out["terms"] = r.term_ranks;
  Json degrees = Json::array();
  for (std::size_t k = 0; k < r.degrees.size(); ++k) {
    Json d;
    d["degree"] = k;
    d["rank"] = r.degrees[k].rank;
    d["torsion"] = to_json(r.degrees[k].torsion);
    degrees.push_back(d);
  }
  out["cohomology"] = degrees;
  out["euler_terms"] = r.euler_characteristic_terms();
  out["euler_ranks"] = r.euler_characteristic_ranks();
  if (!r.direct_invariants.empty()) {
    Json direct = Json::array(), uct = Json::array();
    for (const auto& x : r.direct_invariants) direct.push_back(to_json(x));
    for (const auto& x : r.uct_invariants) uct.push_back(to_json(x));
    out["direct_invariants"] = direct;
    out["uct_invariants"] = uct;
    out["routes_agree"] = r.routes_agree;
  }
  return out;
}

Json to_json(const OracleRanks& r) {
  Json out;
  out["ring"] = r.ring;
  out["tilde"] = r.tilde;
  out["a"] = r.a;
  Json t = Json::array();
  for (const auto& x : r.torsion) t.push_back(to_json(x));
  out["torsion"] = t;
  return out;
}

Json ball_summary(const BallComplex& b) {
  Json out;
  out["vertices"] = b.vertices.size();
  out["edges"] = b.simplices.size() > 1 ? b.simplices[1].size() : 0;
  out["simplices"] = b.counts();
  int depth = 0;
  for (int x : b.depth) depth = std::max(depth, x);
  out["max_depth"] = depth;
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw std::invalid_argument("matrix rows must be arrays");
    auto& row = rows.emplace_back();
    for (const auto& x : r) {
      if (x.is_string()) {
        Integer v;
        if (v.set_str(x.get<std::string>(), 10) != 0) throw std::invalid_argument("bad matrix entry");
        row.push_back(v);
      } else if (x.is_number_integer()) {
        row.emplace_back(x.get<long>());
      } else {
        throw std::invalid_argument("matrix entries must be integers");
      }
    }
  }
  return IntMatrix::from_rows(rows);
}

IntMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("cannot parse matrix: " + text);
  }
  return matrix_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(j);
}

}  // namespace btcoh
