#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "btcoh/arrangement.hpp"
#include "btcoh/building.hpp"
#include "btcoh/cech.hpp"
#include "btcoh/matrix.hpp"
#include "btcoh/orlik_solomon.hpp"

namespace btcoh {

/// Keys keep insertion order so that reports serialize identically every run.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "btcoh/1";

/// Integers are written as decimal strings.
Json to_json(const Integer& x);
Json to_json(const std::vector<Integer>& xs);
Json to_json(const IntMatrix& m);
Json to_json(const LatticeClass& v);
Json to_json(const HyperplaneRep& h);
Json to_json(const StratifiedArrangement& s);
Json to_json(const CohomologyReport& r);
Json to_json(const OracleRanks& r);

/// Vertex, edge and per-dimension simplex counts.
Json ball_summary(const BallComplex& b);

/// Accepts arrays of rows whose entries are decimal strings or integers.
IntMatrix matrix_from_json(const Json& j);
/// "[[1,0],[0,2]]" or the same with quoted entries.
IntMatrix parse_matrix(const std::string& text);

/// Two-space indentation with a trailing newline.
std::string dump(const Json& j);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace btcoh
