#ifndef SEPGROWTH_TOOLS_CLI_HPP_
#define SEPGROWTH_TOOLS_CLI_HPP_

// Command-line driver. run() takes the arguments without the program name
// and writes the report to `out` (or --out); exit codes are 0 when every
// check passes, 1 when a check fails and 2 for configuration errors.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sepgrowth/depth.hpp"
#include "sepgrowth/groups.hpp"
#include "sepgrowth/params.hpp"
#include "sepgrowth/params_io.hpp"
#include "sepgrowth/verify.hpp"

namespace sepgrowth::cli {

  enum exit_code : int { pass = 0, check_failed = 1, config_error = 2 };

  struct RunConfig {
    std::string   command;
    std::string   suite;
    std::string   tables;
    std::string   out;
    std::string   format      = "csv";
    std::string   preset      = "balanced";
    std::string   table_mode  = "double-index";
    std::string   growth_mode = "rf";
    std::string   word;
    std::string   word2;
    std::string   coord;
    std::uint64_t seed    = 20240601;
    std::size_t   n_max   = 0;  // 0: the command's default
    std::size_t   len     = 0;
    std::uint64_t trials  = 0;
    std::uint64_t samples = 4000;
    std::uint64_t k_cap   = default_k_cap;
    std::uint64_t r_max   = 31;
    std::uint64_t d_cap   = 200;
    std::size_t   witness = 0;
    bool          relaxed = false;
    // growth family for params-build without --preset
    double        c_f1   = 0;
    double        c_f2   = 0;
    double        eps    = 0.1;
    std::size_t   offset = 16;
    double        C2     = 4;
  };

  //! Collects the resolved configuration, result lines and a JSON body and
  //! renders them as text (with "# config:" header lines) or JSON.
  class Report {
   public:
    void config(std::string const& key, std::string const& value) {
      _config.emplace_back(key, value);
    }

    template <typename T>
    void config(std::string const& key, T const& value) {
      std::ostringstream s;
      s << value;
      config(key, s.str());
    }

    void line(std::string const& s) {
      _lines.push_back(s);
    }

    nlohmann::ordered_json& body() {
      return _body;
    }

    void fail() {
      _pass = false;
    }

    bool passed() const {
      return _pass;
    }

    void render(std::ostream& out, bool json, bool verdict = true) const {
      if (json) {
        nlohmann::ordered_json j;
        for (auto const& [k, v] : _config) {
          j["config"][k] = v;
        }
        for (auto it = _body.begin(); it != _body.end(); ++it) {
          j[it.key()] = it.value();
        }
        if (verdict) {
          j["result"] = _pass ? "pass" : "fail";
        }
        out << j.dump(2) << '\n';
        return;
      }
      for (auto const& [k, v] : _config) {
        out << "# config: " << k << "=" << v << '\n';
      }
      for (auto const& l : _lines) {
        out << l << '\n';
      }
      if (verdict) {
        out << "result: " << (_pass ? "PASS" : "FAIL") << '\n';
      }
    }

   private:
    std::vector<std::pair<std::string, std::string>> _config;
    std::vector<std::string>                         _lines;
    nlohmann::ordered_json _body = nlohmann::ordered_json::object();
    bool                   _pass = true;
  };

  namespace detail {
    struct ConfigError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    inline Coordinate parse_coordinate(std::string const& s) {
      auto const comma = s.find(',');
      try {
        if (comma == std::string::npos) {
          return {std::stoul(s), 1};
        }
        return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
      } catch (std::exception const&) {
        throw ConfigError("bad coordinate '" + s + "', expected n,m");
      }
    }

    inline ParameterTables tables_for(RunConfig const& cfg,
                                      Report&          rep,
                                      std::size_t      default_n_max) {
      if (!cfg.tables.empty()) {
        rep.config("tables", cfg.tables);
        rep.config("relaxed", cfg.relaxed ? "true" : "false");
        return load_tables(cfg.tables, cfg.relaxed);
      }
      auto const n = cfg.n_max != 0 ? cfg.n_max : default_n_max;
      auto const p = preset(cfg.preset);
      rep.config("tables", "preset:" + cfg.preset);
      rep.config("table_rows", n);
      return build_double_index(p.f1, p.f2, n, p.constants);
    }

    inline void suite_report(SuiteResult const& s, Report& rep) {
      rep.line("suite " + s.name + ": " + std::to_string(s.checks)
               + " checks, " + std::to_string(s.failures) + " failures");
      for (auto const& n : s.notes) {
        rep.line("note: " + n);
      }
      for (auto const& f : s.failure_details) {
        rep.line("failure: " + f);
      }
      auto& b       = rep.body();
      b["suite"]    = s.name;
      b["checks"]   = s.checks;
      b["failures"] = s.failures;
      b["notes"]    = s.notes;
      b["failure_details"] = s.failure_details;
      if (!s.passed()) {
        rep.fail();
      }
    }

    inline nlohmann::ordered_json to_json(DepthReport const& r,
                                          ParameterTables const& t) {
      nlohmann::ordered_json j;
      j["found"] = r.found();
      j["direction"] =
          r.direction == DepthReport::Direction::upper ? "upper" : "proven-lower";
      if (r.found()) {
        j["quotient"]     = to_string(r.value);
        j["kind"]         = to_string(r.value.kind());
        j["log10_order"]  = r.value.log10_order();
        if (r.coordinate) {
          j["coordinate"] = {r.coordinate->n, r.coordinate->m};
          j["d"]          = t.d(r.coordinate->n, r.coordinate->m);
        }
        if (r.modulus) {
          j["k"] = *r.modulus;
        }
      }
      if (r.direction == DepthReport::Direction::proven_lower) {
        j["norm"]       = r.norm;
        j["norm_bound"] = r.norm_bound;
        j["premises"]   = r.premises;
      }
      return j;
    }

    inline std::string describe(DepthReport const& r) {
      std::ostringstream s;
      s << to_string(r);
      if (r.found()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", r.value.log10_order());
        s << " log10_order=" << buf;
      }
      if (r.direction == DepthReport::Direction::proven_lower) {
        s << " norm=" << r.norm << " <= " << r.norm_bound;
      }
      return s.str();
    }

    //////////////////////////////////////////////////////////////////////
    // Commands
    //////////////////////////////////////////////////////////////////////

    inline int params_build(RunConfig const& cfg, Report& rep,
                            std::ostream& out) {
      GrowthSpec     f1 = GrowthSpec::family(1, 0.1, 0), f2 = f1;
      TableConstants k;
      if (cfg.c_f1 > 0) {
        f1        = GrowthSpec::family(cfg.c_f1, cfg.eps, cfg.offset);
        f2        = GrowthSpec::family(cfg.c_f2 > 0 ? cfg.c_f2 : cfg.c_f1,
                                       cfg.eps, cfg.offset);
        k.epsilon = cfg.eps / 2;
        k.c2      = cfg.C2;
        rep.config("c_f1", cfg.c_f1);
        rep.config("c_f2", cfg.c_f2 > 0 ? cfg.c_f2 : cfg.c_f1);
        rep.config("eps", cfg.eps);
        rep.config("offset", cfg.offset);
        rep.config("C2", cfg.C2);
      } else {
        auto const p = preset(cfg.preset);
        f1           = p.f1;
        f2           = p.f2;
        k            = p.constants;
        rep.config("preset", cfg.preset);
      }
      auto const n = cfg.n_max != 0 ? cfg.n_max : 20;
      rep.config("n_max", n);
      rep.config("mode", cfg.table_mode);
      ParameterTables t;
      if (cfg.table_mode == "single-index") {
        t = build_single_index(f1, n, k);
      } else if (cfg.table_mode == "double-index") {
        t = build_double_index(f1, f2, n, k);
      } else {
        throw ConfigError("unknown table mode '" + cfg.table_mode + "'");
      }
      auto j = sepgrowth::to_json(t);
      Report with_config = rep;
      with_config.body() = j;
      if (cfg.out.empty()) {
        with_config.render(out, true, false);
      } else {
        std::ofstream f(cfg.out);
        if (!f) {
          throw ConfigError("cannot write " + cfg.out);
        }
        with_config.render(f, true, false);
      }
      return pass;
    }

    inline void params_validate(RunConfig const& cfg, Report& rep) {
      if (cfg.tables.empty()) {
        throw ConfigError("params-validate needs --tables");
      }
      rep.config("tables", cfg.tables);
      rep.config("relaxed", cfg.relaxed ? "true" : "false");
      auto const t  = load_tables(cfg.tables, cfg.relaxed, false);
      auto const vr = validate(t, cfg.relaxed);
      auto&      b  = rep.body()["conditions"];
      b             = nlohmann::ordered_json::array();
      for (auto const& c : vr.conditions) {
        auto const status = c.skipped ? "skipped" : c.passed ? "pass" : "fail";
        rep.line("condition " + c.id + ": " + status
                 + (c.passed || c.skipped ? "" : " at " + c.counterexample));
        b.push_back({{"id", c.id},
                     {"status", status},
                     {"counterexample", c.counterexample}});
      }
      if (!vr.ok()) {
        rep.fail();
      }
    }

    inline void eval_word(RunConfig const& cfg, Report& rep) {
      auto const t = tables_for(cfg, rep, 8);
      auto const w = parse_word(cfg.word);
      rep.config("word", to_string(w));
      TruncatedElement e(w, t);
      auto&            b = rep.body();
      b["word"]          = to_string(w);
      b["length"]        = w.length();
      if (!cfg.coord.empty()) {
        rep.config("coord", cfg.coord);
        if (cfg.coord == "inf") {
          rep.line("inf: " + to_string(e.inf()));
          b["inf"] = to_string(e.inf());
          return;
        }
        auto const c = parse_coordinate(cfg.coord);
        auto const s = to_cycle_string(e.projection(c));
        rep.line(to_string(c) + ": " + s);
        b["coordinate"] = {c.n, c.m};
        b["image"]      = s;
        return;
      }
      bool const id = is_identity_element(e);
      rep.line("inf: " + to_string(e.inf()));
      rep.line(std::string("identity: ") + (id ? "yes" : "no"));
      b["inf"]      = to_string(e.inf());
      b["identity"] = id;
    }

    inline void decide_conj(RunConfig const& cfg, Report& rep) {
      auto const t  = tables_for(cfg, rep, 8);
      auto const w1 = parse_word(cfg.word);
      auto const w2 = parse_word(cfg.word2);
      rep.config("w1", to_string(w1));
      rep.config("w2", to_string(w2));
      auto const dec = is_conjugate_element(w1, w2, t);
      auto&      b   = rep.body();
      b["conjugate"] = dec.conjugate;
      rep.line(std::string("conjugate: ") + (dec.conjugate ? "yes" : "no"));
      if (dec.conjugate) {
        bool const ok = verify_conjugator(*dec.witness, w1, w2, t);
        rep.line("w0: " + to_string(dec.witness->w0));
        rep.line("corrections: "
                 + std::to_string(dec.witness->corrections.size()));
        rep.line(std::string("witness verified: ") + (ok ? "yes" : "no"));
        b["w0"]               = to_string(dec.witness->w0);
        b["corrections"]      = dec.witness->corrections.size();
        b["witness_verified"] = ok;
        if (!ok) {
          rep.fail();
        }
      } else if (dec.separated_at_inf) {
        rep.line("separated at: inf");
        b["separated_at"] = "inf";
      } else {
        rep.line("separated at: " + to_string(*dec.separating));
        b["separated_at"] = to_string(*dec.separating);
      }
    }

    inline void depth(RunConfig const& cfg, Report& rep) {
      auto const t = tables_for(cfg, rep, 8);
      rep.config("k_cap", cfg.k_cap);
      auto& b = rep.body();
      if (cfg.witness != 0) {
        rep.config("witness_n", cfg.witness);
        try {
          auto const lo = rf_lower_witness(cfg.witness, t);
          auto const up = rf_upper(v_word(t.r(cfg.witness)), t, cfg.k_cap);
          rep.line("rf lower: " + describe(lo));
          rep.line("rf upper: " + describe(up));
          b["rf_lower"] = to_json(lo, t);
          b["rf_upper"] = to_json(up, t);
          if (!(lo.value == up.value)) {
            rep.fail();
          }
          auto const cl = conj_pair_witness(cfg.witness, t, cfg.relaxed);
          auto const r  = t.r(cfg.witness);
          auto const cu = conj_upper(g1_word(r), g2_word(r), t, cfg.k_cap);
          rep.line("conj lower: " + describe(cl));
          rep.line("conj upper: " + describe(cu));
          b["conj_lower"] = to_json(cl, t);
          b["conj_upper"] = to_json(cu, t);
          if (!(cl.value == cu.value)) {
            rep.fail();
          }
        } catch (PremiseFailure const& e) {
          rep.line("premise failure (" + e.clause() + "): " + e.what());
          b["premise_failure"] = {{"clause", e.clause()}, {"message", e.what()}};
          rep.fail();
        }
        return;
      }
      auto const w1 = parse_word(cfg.word);
      rep.config("w1", to_string(w1));
      if (cfg.word2.empty()) {
        auto const r = rf_upper(w1, t, cfg.k_cap);
        rep.line("rf upper: " + describe(r));
        b["rf_upper"] = to_json(r, t);
        if (!r.found()) {
          rep.fail();
        }
      } else {
        auto const w2 = parse_word(cfg.word2);
        rep.config("w2", to_string(w2));
        auto const r = conj_upper(w1, w2, t, cfg.k_cap);
        rep.line("conj upper: " + describe(r));
        b["conj_upper"] = to_json(r, t);
        if (!r.found()) {
          rep.fail();
        }
      }
    }

    inline void growth(RunConfig const& cfg, Report& rep, bool json,
                       std::ostream& out) {
      auto const    t = tables_for(cfg, rep, 8);
      GrowthOptions opt;
      opt.seed    = cfg.seed;
      opt.samples = cfg.samples;
      opt.k_cap   = cfg.k_cap;
      auto const L = cfg.len != 0 ? cfg.len : 6;
      rep.config("len", L);
      rep.config("seed", opt.seed);
      rep.config("samples", opt.samples);
      rep.config("exhaustive_up_to", opt.exhaustive_up_to);
      rep.config("k_cap", opt.k_cap);
      std::vector<GrowthMode> modes;
      if (cfg.growth_mode == "rf" || cfg.growth_mode == "both") {
        modes.push_back(GrowthMode::rf);
      }
      if (cfg.growth_mode == "conj" || cfg.growth_mode == "both") {
        modes.push_back(GrowthMode::conj);
      }
      if (modes.empty()) {
        throw ConfigError("unknown growth mode '" + cfg.growth_mode + "'");
      }
      rep.config("mode", cfg.growth_mode);
      std::vector<GrowthRow> all;
      for (auto m : modes) {
        auto rows = growth_tables(t, L, m, opt);
        all.insert(all.end(), rows.begin(), rows.end());
      }
      if (json) {
        auto& arr = rep.body()["rows"];
        arr       = nlohmann::ordered_json::array();
        for (auto const& r : all) {
          arr.push_back({{"n", r.n},
                         {"mode", to_string(r.mode)},
                         {"log10_depth", log10_value(r)},
                         {"witness_kind",
                          r.found ? to_string(r.value.kind()) : "trivial"},
                         {"witness_params", r.witness_params},
                         {"words_examined", r.words_examined}});
        }
        rep.render(out, true, false);
      } else {
        std::ostringstream csv;
        write_csv(csv, all);
        std::string l;
        std::istringstream in(csv.str());
        while (std::getline(in, l)) {
          rep.line(l);
        }
        rep.render(out, false, false);
      }
    }

    inline void verify(RunConfig const& cfg, Report& rep) {
      rep.config("suite", cfg.suite);
      if (cfg.suite == "appendix") {
        rep.config("r_max", cfg.r_max);
        rep.config("d_cap", cfg.d_cap);
        suite_report(verify_appendix(cfg.r_max, cfg.d_cap), rep);
      } else if (cfg.suite == "locality") {
        ParameterTables t;
        if (cfg.tables.empty()) {
          rep.config("tables", "locality-toy");
          t = locality_toy_tables();
        } else {
          t = tables_for(cfg, rep, 0);
        }
        auto const len    = cfg.len != 0 ? cfg.len : 12;
        auto const trials = cfg.trials != 0 ? cfg.trials : 2000;
        rep.config("len", len);
        rep.config("trials", trials);
        rep.config("seed", cfg.seed);
        suite_report(verify_locality(t, len, trials, cfg.seed), rep);
      } else if (cfg.suite == "commute") {
        auto const n = cfg.n_max != 0 ? cfg.n_max : 20;
        auto const t = tables_for(cfg, rep, n);
        rep.config("n_max", n);
        suite_report(verify_commute(t, n), rep);
      } else if (cfg.suite == "alt-containment") {
        auto const n = cfg.n_max != 0 ? cfg.n_max : 10;
        auto const t = tables_for(cfg, rep, n);
        rep.config("n_max", n);
        suite_report(verify_alt_containment(t, n), rep);
      } else if (cfg.suite == "d-invariance") {
        auto const t      = tables_for(cfg, rep, 12);
        auto const len    = cfg.len != 0 ? cfg.len : 10;
        auto const trials = cfg.trials != 0 ? cfg.trials : 1000;
        rep.config("len", len);
        rep.config("trials", trials);
        rep.config("seed", cfg.seed);
        suite_report(verify_d_invariance(t, len, trials, cfg.seed), rep);
      } else if (cfg.suite == "witnesses") {
        auto const n = cfg.n_max != 0 ? cfg.n_max : 8;
        auto const t = tables_for(cfg, rep, n);
        rep.config("n_max", n);
        suite_report(verify_witnesses(t, n, cfg.relaxed), rep);
      } else {
        throw ConfigError("unknown suite '" + cfg.suite + "'");
      }
    }
  }  // namespace detail

  inline int run(std::vector<std::string> const& args,
                 std::ostream&                   out,
                 std::ostream&                   err) {
    RunConfig cfg;
    CLI::App  app{"Truncated groups G(d, m*, r): parameter tables, word and "
                 "conjugacy problems, depth bounds"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto add_common = [&](CLI::App* sub, bool tables) {
      sub->add_option("--out", cfg.out, "Write the report to FILE");
      sub->add_option("--format", cfg.format, "Report format")
          ->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--seed", cfg.seed, "Random seed");
      sub->add_option("--n-max", cfg.n_max, "Number of table rows");
      if (tables) {
        sub->add_option("--tables", cfg.tables, "Parameter table file");
        sub->add_flag("--relaxed", cfg.relaxed,
                      "Skip the growth condition (d) when validating");
        sub->add_option("--preset", cfg.preset,
                        "Preset used when no --tables is given");
      }
    };

    auto* build = app.add_subcommand("params-build", "Build parameter tables");
    add_common(build, false);
    build->add_option("--preset", cfg.preset, "Growth preset (balanced, wide)");
    build->add_option("--mode", cfg.table_mode, "double-index or single-index");
    build->add_option("--c1", cfg.c_f1, "Constant c of the growth family f1");
    build->add_option("--c2", cfg.c_f2, "Constant c of the growth family f2");
    build->add_option("--eps", cfg.eps, "Growth exponent epsilon");
    build->add_option("--offset", cfg.offset, "Offset in f(n) = f~(F(n + offset))");
    build->add_option("--C2", cfg.C2, "Constant C2 of the growth condition (d)");

    auto* val = app.add_subcommand("params-validate", "Validate a table file");
    add_common(val, true);

    auto* ev = app.add_subcommand("eval-word", "Evaluate a word");
    add_common(ev, true);
    ev->add_option("word", cfg.word, "Word such as \"a^3 b^-1 a\"")->required();
    ev->add_option("--coord", cfg.coord, "Coordinate n,m or inf");

    auto* dc = app.add_subcommand("decide-conj", "Decide conjugacy of two words");
    add_common(dc, true);
    dc->add_option("w1", cfg.word, "First word")->required();
    dc->add_option("w2", cfg.word2, "Second word")->required();

    auto* dp = app.add_subcommand("depth", "Depth bounds");
    add_common(dp, true);
    dp->add_option("w1", cfg.word, "Word (rf) or first word of a pair (conj)");
    dp->add_option("w2", cfg.word2, "Second word of a pair");
    dp->add_option("--witness", cfg.witness, "Certify the witnesses of row N");
    dp->add_option("--k-cap", cfg.k_cap, "Largest k for Z_3 wr Z_k");

    auto* gt = app.add_subcommand("growth-table", "Depth growth tables");
    add_common(gt, true);
    gt->add_option("--len", cfg.len, "Largest word length");
    gt->add_option("--mode", cfg.growth_mode, "rf, conj or both");
    gt->add_option("--samples", cfg.samples, "Random pairs per sampled row");
    gt->add_option("--k-cap", cfg.k_cap, "Largest k for Z_3 wr Z_k");

    auto* vf = app.add_subcommand("verify", "Run a verification suite");
    add_common(vf, true);
    vf->add_option("suite", cfg.suite,
                   "appendix, locality, commute, alt-containment, "
                   "d-invariance or witnesses")
        ->required();
    vf->add_option("--len", cfg.len, "Largest word length");
    vf->add_option("--trials", cfg.trials, "Number of random words");
    vf->add_option("--r-max", cfg.r_max, "appendix: largest r");
    vf->add_option("--d-cap", cfg.d_cap, "appendix: largest d");

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return pass;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << '\n';
      return config_error;
    }

    auto* sub   = app.get_subcommands().front();
    cfg.command = sub->get_name();
    Report rep;
    rep.config("command", cfg.command);
    bool const json = cfg.format == "json";

    std::ofstream file;
    if (!cfg.out.empty() && cfg.command != "params-build") {
      file.open(cfg.out);
      if (!file) {
        err << "error: cannot write " << cfg.out << '\n';
        return config_error;
      }
    }
    std::ostream& dest = file.is_open() ? static_cast<std::ostream&>(file) : out;

    try {
      if (cfg.command == "params-build") {
        return detail::params_build(cfg, rep, out);
      } else if (cfg.command == "params-validate") {
        detail::params_validate(cfg, rep);
      } else if (cfg.command == "eval-word") {
        detail::eval_word(cfg, rep);
      } else if (cfg.command == "decide-conj") {
        detail::decide_conj(cfg, rep);
      } else if (cfg.command == "depth") {
        if (cfg.witness == 0 && cfg.word.empty()) {
          throw detail::ConfigError("depth needs a word or --witness N");
        }
        detail::depth(cfg, rep);
      } else if (cfg.command == "growth-table") {
        detail::growth(cfg, rep, json, dest);
        return pass;
      } else if (cfg.command == "verify") {
        detail::verify(cfg, rep);
      }
    } catch (detail::ConfigError const& e) {
      err << "error: " << e.what() << '\n';
      return config_error;
    } catch (ParseError const& e) {
      err << "error: " << e.what() << '\n';
      return config_error;
    } catch (ValidationFailed const& e) {
      err << "error: " << e.what() << '\n';
      return config_error;
    } catch (InvalidArgument const& e) {
      err << "error: " << e.what() << '\n';
      return config_error;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return check_failed;
    }
    rep.render(dest, json);
    return rep.passed() ? pass : check_failed;
  }

}  // namespace sepgrowth::cli

#endif  // SEPGROWTH_TOOLS_CLI_HPP_
