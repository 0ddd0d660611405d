// SPDX-License-Identifier: Apache-2.0
//
// hardy-means: evaluate generalized means, compute Hardy constants by the
// closed-form / limit / integral / kappa methods, verify the Hardy
// inequality on concrete sequences, and analyze generator shape.
//
// Exit codes: 0 success; 2 usage, parse or domain errors; 3 the constant is
// +inf under --require-hardy; 4 the inequality is violated.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardymeans.h"

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void die(const std::string& msg, int code = 2) {
  std::cerr << "hardy-means: " << msg << "\n";
  std::exit(code);
}

void check(hm_status s) {
  if (s != HM_OK) die(std::string(hm_status_name(s)) + ": " + hm_last_error());
}

// owning wrappers around the C handles
using GenPtr = std::unique_ptr<hm_generator, decltype(&hm_generator_free)>;
using MeanPtr = std::unique_ptr<hm_mean, decltype(&hm_mean_free)>;

GenPtr make_generator(const std::string& text) {
  hm_generator* g = nullptr;
  hm_status s = hm_generator_parse(text.c_str(), 0, 0, &g);
  if (s != HM_OK) {
    std::cerr << "hardy-means: " << hm_status_name(s) << ": " << hm_last_error() << "\n";
    long pos = hm_last_error_position();
    if (pos >= 0 && pos <= static_cast<long>(text.size())) {
      std::cerr << "  " << text << "\n  " << std::string(static_cast<std::size_t>(pos), ' ')
                << "^\n";
    }
    std::exit(2);
  }
  return GenPtr(g, &hm_generator_free);
}

std::string take_string(char* s) {
  std::string out(s ? s : "");
  hm_string_free(s);
  return out;
}

double parse_real(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') die(std::string("invalid ") + what + ": '" + text + "'");
  return v;  // strtod accepts inf / -inf
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) out.push_back(parse_real(item, "value"));
    pos = comma + 1;
  }
  if (out.empty()) die("no values given");
  return out;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string fmt_json_number(const json& j) {
  if (j.is_null()) return "nan";
  if (j.is_string()) return j.get<std::string>();  // "inf" / "-inf"
  return fmt(j.get<double>());
}

struct Output {
  std::string path;  // empty: stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream f(path);
    if (!f) die("cannot open output file '" + path + "'");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
  }
};

struct FamilyArgs {
  std::string family;
  std::string p_text, q_text;
  std::string gen_text;

  double p() const { return parse_real(p_text, "--p"); }
  double q() const { return parse_real(q_text, "--q"); }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "mean family: power|qa|gini|devmean")->required();
    cmd->add_option("--p", p_text, "parameter p (power/gini); inf and -inf accepted");
    cmd->add_option("--q", q_text, "parameter q (gini)");
    cmd->add_option("--gen", gen_text, "generator expression in x (qa/devmean)");
  }

  MeanPtr build_mean(GenPtr& keep_gen) const {
    hm_mean* m = nullptr;
    if (family == "power") {
      if (p_text.empty()) die("--family power requires --p");
      check(hm_mean_power(p(), &m));
    } else if (family == "qa") {
      if (gen_text.empty()) die("--family qa requires --gen");
      keep_gen = make_generator(gen_text);
      check(hm_mean_quasi_arithmetic(keep_gen.get(), &m));
    } else if (family == "gini") {
      if (p_text.empty() || q_text.empty()) die("--family gini requires --p and --q");
      check(hm_mean_gini(p(), q(), &m));
    } else if (family == "devmean") {
      if (gen_text.empty()) die("--family devmean requires --gen");
      keep_gen = make_generator(gen_text);
      check(hm_mean_homogeneous_deviation(keep_gen.get(), &m));
    } else {
      die("unknown family '" + family + "' (expected power|qa|gini|devmean)");
    }
    return MeanPtr(m, &hm_mean_free);
  }
};

double default_tol() {
  if (const char* env = std::getenv("HARDY_MEANS_TOL")) {
    return parse_real(env, "HARDY_MEANS_TOL");
  }
  return 0.0;  // library default
}

// ---------------------------------------------------------------------------
// hardy subcommand
// ---------------------------------------------------------------------------

json run_hardy_method(const std::string& method, const FamilyArgs& fam, int64_t n_max,
                      double tol) {
  char* out = nullptr;
  if (method == "closed") {
    if (fam.family != "power" && fam.family != "gini") {
      die("--method closed requires --family power or gini");
    }
    GenPtr keep(nullptr, &hm_generator_free);
    MeanPtr m = fam.build_mean(keep);
    check(hm_hardy_closed_form(m.get(), &out));
  } else if (method == "limit") {
    GenPtr keep(nullptr, &hm_generator_free);
    MeanPtr m = fam.build_mean(keep);
    check(hm_hardy_limit(m.get(), n_max, tol, &out));
  } else if (method == "integral") {
    hm_generator* g = nullptr;
    if (fam.family == "devmean") {
      if (fam.gen_text.empty()) die("--family devmean requires --gen");
      g = make_generator(fam.gen_text).release();
    } else if (fam.family == "gini") {
      if (fam.p_text.empty() || fam.q_text.empty()) die("--family gini requires --p and --q");
      check(hm_generator_gini_chi(fam.p(), fam.q(), &g));
    } else if (fam.family == "power") {
      if (fam.p_text.empty()) die("--family power requires --p");
      double p = fam.p();
      if (std::isinf(p)) die("--method integral requires finite p");
      check(hm_generator_gini_chi(p, 0.0, &g));  // (x^p - 1)/p, ln at p = 0
    } else {
      die("--method integral requires a homogeneous-deviation generator "
          "(families devmean, gini or power)");
    }
    GenPtr gp(g, &hm_generator_free);
    check(hm_hardy_integral(gp.get(), &out));
  } else if (method == "kappa") {
    hm_generator* g = nullptr;
    if (fam.family == "qa") {
      if (fam.gen_text.empty()) die("--family qa requires --gen");
      g = make_generator(fam.gen_text).release();
    } else if (fam.family == "power") {
      if (fam.p_text.empty()) die("--family power requires --p");
      double p = fam.p();
      if (std::isinf(p)) die("--method kappa requires finite p");
      check(hm_generator_power(p, &g));
    } else {
      die("--method kappa analyzes quasi-arithmetic means (families qa or power)");
    }
    GenPtr gp(g, &hm_generator_free);
    check(hm_hardy_kappa_analysis(gp.get(), &out));
  } else {
    die("unknown method '" + method + "' (expected closed|limit|integral|kappa|all)");
  }
  json j = json::parse(take_string(out));
  j["requested_method"] = method;
  return j;
}

std::vector<std::string> methods_for_family(const std::string& family) {
  if (family == "power") return {"closed", "limit", "integral", "kappa"};
  if (family == "gini") return {"closed", "limit", "integral"};
  if (family == "qa") return {"limit", "kappa"};
  if (family == "devmean") return {"limit", "integral"};
  die("unknown family '" + family + "'");
}

std::string hardy_csv_row_header() {
  return "method,constant,interval_lo,interval_hi,caveats";
}

std::string hardy_csv_row(const json& j) {
  std::string caveats;
  for (const auto& c : j["caveats"]) {
    if (!caveats.empty()) caveats += "; ";
    caveats += c.get<std::string>();
  }
  std::string lo = "", hi = "";
  if (!j["interval"].is_null()) {
    lo = fmt_json_number(j["interval"][0]);
    hi = fmt_json_number(j["interval"][1]);
  }
  return j["method"].get<std::string>() + "," + fmt_json_number(j["constant"]) + "," + lo +
         "," + hi + ",\"" + caveats + "\"";
}

std::string limit_csv_table(const json& j) {
  // columns (n, a_n, extrapolated_so_far); extrapolants exist from the third
  // sample onward
  std::string out = "n,a_n,extrapolated_so_far\n";
  const json& diag = j["diagnostics"];
  if (diag.is_null() || diag["kind"] != "limit") return out;
  const json& terms = diag["raw_terms"];
  const json& hist = diag["history"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out += fmt(terms[i][0].get<double>()) + "," + fmt(terms[i][1].get<double>()) + ",";
    if (i >= 2 && i - 2 < hist.size()) out += fmt(hist[i - 2].get<double>());
    out += "\n";
  }
  return out;
}

bool constant_is_infinite(const json& j) {
  return j["constant"].is_string() && j["constant"].get<std::string>() == "inf";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized means and their Hardy constants"};
  app.require_subcommand(1);

  // ---- mean ----
  auto* cmd_mean = app.add_subcommand("mean", "evaluate a mean on a list of values");
  FamilyArgs mean_fam;
  mean_fam.add_to(cmd_mean);
  std::string mean_values;
  std::string mean_format = "plain";
  Output mean_out;
  cmd_mean->add_option("--values", mean_values, "comma-separated positive values")->required();
  cmd_mean->add_option("--format", mean_format, "plain|json|csv");
  cmd_mean->add_option("--output,-o", mean_out.path, "write to file instead of stdout");

  // ---- hardy ----
  auto* cmd_hardy = app.add_subcommand("hardy", "compute the Hardy constant of a mean");
  FamilyArgs hardy_fam;
  hardy_fam.add_to(cmd_hardy);
  std::string hardy_method;
  std::string hardy_format;
  std::string hardy_tol_text;
  int64_t hardy_n_max = 100000;
  bool require_hardy = false;
  Output hardy_out;
  cmd_hardy->add_option("--method", hardy_method, "closed|limit|integral|kappa|all")->required();
  cmd_hardy->add_option("--n-max", hardy_n_max, "largest n for the limit method");
  cmd_hardy->add_option("--tol", hardy_tol_text, "extrapolation tolerance (limit method)");
  cmd_hardy->add_option("--format", hardy_format, "json|csv|plain");
  cmd_hardy->add_option("--output,-o", hardy_out.path, "write to file instead of stdout");
  cmd_hardy->add_flag("--require-hardy", require_hardy, "exit 3 when the constant is +inf");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "verify the Hardy inequality on a sequence");
  FamilyArgs verify_fam;
  verify_fam.add_to(cmd_verify);
  std::string seq_kind;
  std::string seq_y = "1", seq_s = "2", seq_r = "0.5";
  std::string seq_terms_text;
  int64_t verify_N = 10000;
  std::string bound_text;
  bool per_step = false;
  std::string verify_format = "json";
  Output verify_out;
  cmd_verify->add_option("--seq", seq_kind, "harmonic|powerlaw|geometric|custom")->required();
  cmd_verify->add_option("--y", seq_y, "harmonic scale: x_n = y/n");
  cmd_verify->add_option("--s", seq_s, "power-law exponent: x_n = n^-s");
  cmd_verify->add_option("--r", seq_r, "geometric ratio: x_n = r^n");
  cmd_verify->add_option("--terms", seq_terms_text, "comma-separated custom terms");
  cmd_verify->add_option("--N", verify_N, "number of terms");
  cmd_verify->add_option("--bound", bound_text, "bound to verify against (number or inf)")
      ->required();
  cmd_verify->add_flag("--per-step", per_step, "record running ratios");
  cmd_verify->add_option("--format", verify_format, "json|csv|plain");
  cmd_verify->add_option("--output,-o", verify_out.path, "write to file instead of stdout");

  // ---- analyze ----
  auto* cmd_analyze = app.add_subcommand("analyze", "shape reports, comparisons, property checks");
  cmd_analyze->require_subcommand(1);

  auto* an_shape = cmd_analyze->add_subcommand("shape", "shape report for a generator");
  std::string shape_gen;
  double grid_lo = 1e-3, grid_hi = 1e3;
  int grid_count = 48;
  std::string shape_format = "json";
  Output shape_out;
  an_shape->add_option("--gen", shape_gen, "generator expression")->required();
  an_shape->add_option("--grid-lo", grid_lo, "grid lower end");
  an_shape->add_option("--grid-hi", grid_hi, "grid upper end");
  an_shape->add_option("--grid-count", grid_count, "grid points (>= 16)");
  an_shape->add_option("--format", shape_format, "json|csv|plain");
  an_shape->add_option("--output,-o", shape_out.path, "write to file instead of stdout");

  auto* an_compare = cmd_analyze->add_subcommand("compare", "compare two generators");
  std::string cmp_f, cmp_g;
  std::string cmp_format = "plain";
  Output cmp_out;
  an_compare->add_option("--f", cmp_f, "first generator expression")->required();
  an_compare->add_option("--g", cmp_g, "second generator expression")->required();
  an_compare->add_option("--grid-lo", grid_lo, "grid lower end");
  an_compare->add_option("--grid-hi", grid_hi, "grid upper end");
  an_compare->add_option("--grid-count", grid_count, "grid points");
  an_compare->add_option("--format", cmp_format, "plain|json");
  an_compare->add_option("--output,-o", cmp_out.path, "write to file instead of stdout");

  auto* an_props = cmd_analyze->add_subcommand("props", "randomized mean property checks");
  FamilyArgs props_fam;
  props_fam.add_to(an_props);
  uint64_t props_seed = 0;
  int props_trials = 100;
  std::string props_format = "json";
  Output props_out;
  an_props->add_option("--seed", props_seed, "RNG seed (default 0)");
  an_props->add_option("--trials", props_trials, "number of random trials");
  an_props->add_option("--format", props_format, "json|csv|plain");
  an_props->add_option("--output,-o", props_out.path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hardy-means: " << e.what() << "\n";
    return 2;
  }

  // ---- mean ----
  if (cmd_mean->parsed()) {
    GenPtr keep(nullptr, &hm_generator_free);
    MeanPtr m = mean_fam.build_mean(keep);
    std::vector<double> xs = parse_values(mean_values);
    double v = 0;
    check(hm_mean_eval(m.get(), xs.data(), xs.size(), &v));
    if (mean_format == "json") {
      json j{{"family", mean_fam.family}, {"value", v}};
      mean_out.write(j.dump(2));
    } else if (mean_format == "csv") {
      mean_out.write("value\n" + fmt(v));
    } else {
      mean_out.write(fmt(v));
    }
    return 0;
  }

  // ---- hardy ----
  if (cmd_hardy->parsed()) {
    double tol = hardy_tol_text.empty() ? default_tol() : parse_real(hardy_tol_text, "--tol");
    std::vector<json> results;
    if (hardy_method == "all") {
      for (const auto& method : methods_for_family(hardy_fam.family)) {
        results.push_back(run_hardy_method(method, hardy_fam, hardy_n_max, tol));
      }
      if (hardy_format.empty()) hardy_format = "csv";
    } else {
      results.push_back(run_hardy_method(hardy_method, hardy_fam, hardy_n_max, tol));
      if (hardy_format.empty()) hardy_format = "json";
    }

    std::string text;
    if (hardy_format == "csv") {
      if (hardy_method == "limit" && results.size() == 1) {
        text = limit_csv_table(results.front());
      } else {
        text = hardy_csv_row_header() + "\n";
        for (const auto& j : results) text += hardy_csv_row(j) + "\n";
      }
    } else if (hardy_format == "plain") {
      for (const auto& j : results) text += fmt_json_number(j["constant"]) + "\n";
    } else {
      text = results.size() == 1 ? results.front().dump(2) : json(results).dump(2);
    }
    hardy_out.write(text);

    if (require_hardy) {
      for (const auto& j : results) {
        if (constant_is_infinite(j)) return 3;
      }
    }
    return 0;
  }

  // ---- verify ----
  if (cmd_verify->parsed()) {
    GenPtr keep(nullptr, &hm_generator_free);
    MeanPtr m = verify_fam.build_mean(keep);
    double bound = parse_real(bound_text, "--bound");
    std::vector<double> terms;
    double param = 0.0;
    if (seq_kind == "harmonic") {
      param = parse_real(seq_y, "--y");
    } else if (seq_kind == "powerlaw") {
      param = parse_real(seq_s, "--s");
    } else if (seq_kind == "geometric") {
      param = parse_real(seq_r, "--r");
    } else if (seq_kind == "custom") {
      if (seq_terms_text.empty()) die("--seq custom requires --terms");
      terms = parse_values(seq_terms_text);
      if (verify_N > static_cast<int64_t>(terms.size())) {
        verify_N = static_cast<int64_t>(terms.size());
      }
    } else {
      die("unknown sequence '" + seq_kind + "'");
    }
    char* out = nullptr;
    check(hm_verify_hardy(m.get(), seq_kind.c_str(), param, terms.empty() ? nullptr : terms.data(),
                          terms.size(), verify_N, bound, per_step ? 1 : 0, &out));
    json j = json::parse(take_string(out));

    std::string text;
    if (verify_format == "csv") {
      if (!j["per_step_ratios"].is_null()) {
        text = "n,ratio\n";
        for (const auto& row : j["per_step_ratios"]) {
          text += fmt(row[0].get<double>()) + "," + fmt(row[1].get<double>()) + "\n";
        }
      } else {
        text = "N,partial_mean_sum,partial_x_sum,ratio,bound,satisfied\n";
        text += fmt(j["N"].get<double>()) + "," + fmt(j["partial_mean_sum"].get<double>()) +
                "," + fmt(j["partial_x_sum"].get<double>()) + "," +
                fmt(j["ratio"].get<double>()) + "," + fmt_json_number(j["bound"]) + "," +
                (j["satisfied"].get<bool>() ? "true" : "false") + "\n";
      }
    } else if (verify_format == "plain") {
      text = "ratio = " + fmt(j["ratio"].get<double>()) +
             "  bound = " + fmt_json_number(j["bound"]) +
             (j["satisfied"].get<bool>() ? "  satisfied" : "  violated");
    } else {
      text = j.dump(2);
    }
    verify_out.write(text);
    return j["satisfied"].get<bool>() ? 0 : 4;
  }

  // ---- analyze ----
  if (an_shape->parsed()) {
    GenPtr g = make_generator(shape_gen);
    char* out = nullptr;
    check(hm_shape_report(g.get(), grid_lo, grid_hi, grid_count, &out));
    json j = json::parse(take_string(out));
    std::string text;
    if (shape_format == "csv") {
      text = "x,kappa\n";
      for (std::size_t i = 0; i < j["grid"].size(); ++i) {
        text += fmt(j["grid"][i].get<double>()) + "," +
                fmt(j["kappa_values"][i].get<double>()) + "\n";
      }
    } else if (shape_format == "plain") {
      for (const char* key : {"f2_sign", "ratio_convex", "ratio_negative", "kappa_decreasing",
                              "kappa_limit_at_zero", "kappa_limit_exists", "kappa_global_inf",
                              "kappa_global_sup", "qa_concave_eligible",
                              "deviation_concave_eligible"}) {
        text += std::string(key) + " = " + j[key].dump() + "\n";
      }
    } else {
      text = j.dump(2);
    }
    shape_out.write(text);
    return 0;
  }

  if (an_compare->parsed()) {
    GenPtr f = make_generator(cmp_f);
    GenPtr g = make_generator(cmp_g);
    int verdict = -1;
    check(hm_compare_generators(f.get(), g.get(), grid_lo, grid_hi, grid_count, &verdict));
    const char* names[] = {"FLeqG", "GLeqF", "Incomparable"};
    if (verdict < 0 || verdict > 2) die("internal: bad verdict");
    if (cmp_format == "json") {
      cmp_out.write(json{{"verdict", names[verdict]}}.dump(2));
    } else {
      cmp_out.write(names[verdict]);
    }
    return 0;
  }

  if (an_props->parsed()) {
    GenPtr keep(nullptr, &hm_generator_free);
    MeanPtr m = props_fam.build_mean(keep);
    char* out = nullptr;
    check(hm_mean_check_properties(m.get(), props_seed, props_trials, &out));
    json j = json::parse(take_string(out));
    std::string text;
    if (props_format == "csv") {
      text = "property,value\n";
      for (const char* key : {"symmetric", "repetition_invariant", "monotone", "internal",
                              "homogeneous", "jensen_concave_sampled"}) {
        text += std::string(key) + "," + j[key].dump() + "\n";
      }
    } else if (props_format == "plain") {
      for (const char* key : {"symmetric", "repetition_invariant", "monotone", "internal",
                              "homogeneous", "jensen_concave_sampled"}) {
        text += std::string(key) + " = " + j[key].dump() + "\n";
      }
    } else {
      text = j.dump(2);
    }
    props_out.write(text);
    return 0;
  }

  return 0;
}
