#ifndef SEPGROWTH_PARAMS_IO_HPP_
#define SEPGROWTH_PARAMS_IO_HPP_

// Table files:
//
//   { "mode": "double-index",
//     "constants": { "epsilon": .., "c0": .., "c1": .., "c2": .., "M": .. },
//     "rows": [ { "n": 1, "r": 1, "m_n": 2, "d": [13, 71] }, ... ] }

#include <fstream>  // for ifstream, ofstream
#include <string>   // for string

#include "json.hpp"

#include "errors.hpp"
#include "params.hpp"

namespace sepgrowth {

  inline nlohmann::ordered_json to_json(ParameterTables const& t) {
    nlohmann::ordered_json j;
    auto const&            k = t.constants();
    j["mode"]                = to_string(t.mode());
    j["constants"]           = {{"epsilon", k.epsilon},
                                {"c0", k.c0},
                                {"c1", k.c1},
                                {"c2", k.c2},
                                {"M", k.M},
                                {"max_prime_ratio", k.max_prime_ratio}};
    auto& rows               = j["rows"];
    rows                     = nlohmann::ordered_json::array();
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
      auto const& row = t.row(n);
      rows.push_back({{"n", n},
                      {"r", row.r},
                      {"m_n", row.d.size()},
                      {"d", row.d}});
    }
    return j;
  }

  //! Parses and, unless revalidate is false, validates; relaxed skips the
  //! growth condition (d).
  inline ParameterTables tables_from_json(nlohmann::json const& j,
                                          bool relaxed    = false,
                                          bool revalidate = true) {
    ParameterTables t;
    try {
      auto const mode = j.at("mode").get<std::string>();
      TableMode  m;
      if (mode == "double-index") {
        m = TableMode::double_index;
      } else if (mode == "single-index") {
        m = TableMode::single_index;
      } else {
        throw ParseError("unknown table mode '" + mode + "'");
      }
      TableConstants k;
      auto const&    c = j.at("constants");
      k.epsilon        = c.value("epsilon", k.epsilon);
      k.c0             = c.value("c0", k.c0);
      k.c1             = c.value("c1", k.c1);
      k.c2             = c.value("c2", k.c2);
      k.M              = c.value("M", k.M);
      k.max_prime_ratio = c.value("max_prime_ratio", 0.0);
      std::vector<TableRow> rows;
      for (auto const& jr : j.at("rows")) {
        auto const n = jr.at("n").get<std::size_t>();
        if (n != rows.size() + 1) {
          throw ParseError("rows must be listed as n = 1, 2, ...");
        }
        TableRow row;
        row.r = jr.at("r").get<std::uint64_t>();
        row.d = jr.at("d").get<std::vector<std::uint64_t>>();
        if (jr.contains("m_n")
            && jr.at("m_n").get<std::size_t>() != row.d.size()) {
          throw ParseError("row " + std::to_string(n)
                           + ": m_n disagrees with the length of d");
        }
        rows.push_back(std::move(row));
      }
      t = ParameterTables(m, k, std::move(rows));
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed table file: ") + e.what());
    }
    if (revalidate) {
      auto const rep = validate(t, relaxed);
      if (!rep.ok()) {
        throw ValidationFailed("table fails validation: " + rep.summary());
      }
    }
    return t;
  }

  inline void save_tables(ParameterTables const& t, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw InvalidArgument("cannot write " + path);
    }
    out << to_json(t).dump(2) << '\n';
  }

  inline ParameterTables load_tables(std::string const& path,
                                     bool               relaxed    = false,
                                     bool               revalidate = true) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidArgument("cannot read " + path);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed table file: ") + e.what());
    }
    return tables_from_json(j, relaxed, revalidate);
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_PARAMS_IO_HPP_
