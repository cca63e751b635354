#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mdil/bitrow.hpp"
#include "mdil/errors.hpp"
#include "mdil/poset.hpp"

namespace mdil {

// Two accepted poset encodings, auto-detected: JSON {"n":…,"relations":[[u,v],…]}
// when the first non-space byte is '{', otherwise edge-list text "n m" followed
// by m lines "u v". Pairs mean u < v; the transitive closure is applied on load
// and cycles are rejected.
inline Poset parse_poset(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("poset file: empty input");

  long long n = 0;
  std::vector<std::pair<int, int>> rel;
  if (text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("poset file: bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
      throw ParseError("poset file: needs integer field \"n\"");
    n = j["n"].get<long long>();
    if (j.contains("relations")) {
      if (!j["relations"].is_array()) throw ParseError("poset file: \"relations\" must be an array");
      for (const auto& e : j["relations"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
          throw ParseError("poset file: each relation must be a pair of integers");
        rel.push_back({e[0].get<int>(), e[1].get<int>()});
      }
    }
  } else {
    std::istringstream in(text);
    long long m = 0;
    if (!(in >> n >> m)) throw ParseError("poset file: expected header \"n m\"");
    if (m < 0) throw ParseError("poset file: negative relation count");
    for (long long i = 0; i < m; ++i) {
      int u, v;
      if (!(in >> u >> v)) throw ParseError("poset file: fewer relations than announced");
      rel.push_back({u, v});
    }
    std::string tail;
    if (in >> tail) throw ParseError("poset file: trailing tokens after the last relation");
  }
  if (n < 0 || n > INT32_MAX) throw ParseError("poset file: n out of range");
  return Poset::from_relations((int)n, rel);
}

inline Poset load_poset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open poset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset(buf.str());
}

// x is covered by y: comparable with nothing strictly between
inline std::vector<std::pair<int, int>> cover_pairs(const Poset& p) {
  std::vector<std::pair<int, int>> covers;
  for (int x = 0; x < p.size(); ++x)
    p.up(x).for_each([&](int y) {
      if (BitRow::and_count(p.up(x), p.down(y)) == 0) covers.push_back({x, y});
    });
  return covers;
}

// Written as JSON with the covering pairs only; loading re-closes the order.
inline void save_poset(const Poset& p, std::ostream& out) {
  nlohmann::json j;
  j["n"] = p.size();
  j["relations"] = nlohmann::json::array();
  for (auto [u, v] : cover_pairs(p)) j["relations"].push_back({u, v});
  out << j.dump() << "\n";
}

namespace detail {

// Integer-valued magnitudes beyond 2^53 lose precision as JSON numbers, so
// they travel as decimal strings.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v) && std::fabs(v) > 9007199254740992.0) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
  }
  return v;
}

inline double number_field(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("result file: missing field \"" + key + "\"");
  const auto& v = j[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (...) {
      throw ParseError("result file: field \"" + key + "\" is not numeric");
    }
  }
  throw ParseError("result file: field \"" + key + "\" is not numeric");
}

}  // namespace detail

// On-disk outcome of a find/multi run.
struct ResultPayload {
  std::string kind;                        // "set_chain" | "incomparable"
  std::optional<std::string> direction;    // chain runs only
  std::vector<std::vector<int>> sets;
  long long l = 0;
  double gamma = 0.0;
  double lambda = 0.0;
  std::optional<double> guarantee;
  long long achieved = 0;
  std::vector<std::pair<int, std::string>> orders;  // multi runs only
};

inline nlohmann::json result_to_json(const ResultPayload& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  if (r.direction) j["direction"] = *r.direction;
  j["sets"] = r.sets;
  j["params"] = {{"l", r.l},
                 {"gamma", detail::json_number(r.gamma)},
                 {"lambda", detail::json_number(r.lambda)}};
  j["guarantee"] = r.guarantee ? detail::json_number(*r.guarantee) : nlohmann::json(nullptr);
  j["achieved"] = r.achieved;
  if (!r.orders.empty()) {
    j["orders"] = nlohmann::json::array();
    for (const auto& [idx, relation] : r.orders)
      j["orders"].push_back({{"index", idx}, {"relation", relation}});
  }
  return j;
}

inline ResultPayload result_from_json(const nlohmann::json& j) {
  ResultPayload r;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("result file: needs string field \"kind\"");
  r.kind = j["kind"].get<std::string>();
  if (r.kind != "set_chain" && r.kind != "incomparable")
    throw ParseError("result file: unknown kind \"" + r.kind + "\"");
  if (j.contains("direction")) {
    if (!j["direction"].is_string()) throw ParseError("result file: \"direction\" must be a string");
    r.direction = j["direction"].get<std::string>();
    if (*r.direction != "ascending" && *r.direction != "descending")
      throw ParseError("result file: unknown direction \"" + *r.direction + "\"");
  }
  if (!j.contains("sets") || !j["sets"].is_array())
    throw ParseError("result file: needs array field \"sets\"");
  for (const auto& s : j["sets"]) {
    if (!s.is_array()) throw ParseError("result file: each set must be an array");
    std::vector<int> ids;
    for (const auto& e : s) {
      if (!e.is_number_integer()) throw ParseError("result file: set elements must be integers");
      ids.push_back(e.get<int>());
    }
    r.sets.push_back(std::move(ids));
  }
  if (j.contains("params") && j["params"].is_object()) {
    const auto& p = j["params"];
    r.l = (long long)detail::number_field(p, "l");
    r.gamma = detail::number_field(p, "gamma");
    r.lambda = detail::number_field(p, "lambda");
  }
  if (j.contains("guarantee") && !j["guarantee"].is_null()) {
    nlohmann::json wrap{{"g", j["guarantee"]}};
    r.guarantee = detail::number_field(wrap, "g");
  }
  if (j.contains("achieved")) {
    nlohmann::json wrap{{"a", j["achieved"]}};
    r.achieved = (long long)detail::number_field(wrap, "a");
  }
  if (j.contains("orders")) {
    if (!j["orders"].is_array()) throw ParseError("result file: \"orders\" must be an array");
    for (const auto& o : j["orders"]) {
      if (!o.is_object() || !o.contains("index") || !o.contains("relation") ||
          !o["index"].is_number_integer() || !o["relation"].is_string())
        throw ParseError("result file: each order entry needs index and relation");
      r.orders.push_back({o["index"].get<int>(), o["relation"].get<std::string>()});
    }
  }
  return r;
}

inline ResultPayload parse_result(const std::string& text) {
  try {
    return result_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("result file: bad JSON: ") + e.what());
  }
}

inline ResultPayload load_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open result file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_result(buf.str());
}

// Hasse diagram: one node per element, covering pairs as edges, bottom-up.
inline std::string to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n";
  for (int x = 0; x < p.size(); ++x) out << "  " << x << ";\n";
  for (auto [u, v] : cover_pairs(p)) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace mdil
