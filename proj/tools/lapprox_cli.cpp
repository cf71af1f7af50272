// Command-line front end: point evaluation, reference oracle, pole
// catalogues, functional-equation checks, and the benchmark error tables.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lapprox/lapprox.hpp"

using json = nlohmann::ordered_json;
using namespace lapprox;

namespace {

struct CommonOpts {
  int prec_bits = 256;
  std::string format;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--prec", c.prec_bits, "working precision in bits")
      ->check(CLI::Range(64, 65536));
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out_path, "write output to a file instead of stdout");
}

void emit(const CommonOpts& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw lx_error("IO", "cannot open output file " + c.out_path);
  f << text;
}

Precision make_prec(const CommonOpts& c) { return Precision(c.prec_bits, 32); }

constexpr int kCsvDigits = 30;
constexpr int kJsonDigits = 50;

std::string fmt_value(const BigFloat& v, const BigFloat& err, int cap) {
  return to_decimal(v, std::min(cap, sig_digits_from_err(v, err)));
}

std::vector<std::string> default_s_grid() {
  return {"1/2+8i", "1/2+9i", "1/2+10i", "1/2+11i", "1/2+12i"};
}

// identity tolerance at run precision (~1e-40 at 256 bits, tighter above)
BigFloat identity_tolerance(Precision p) { return pow2(-(p.bits - 123), p); }

// ---------------------------------------------------------------- eval ----

struct EvalArgs {
  CommonOpts common;
  std::string char_label;
  double u = 11;
  std::vector<std::string> s_list;
  bool want_xi = false;
  bool want_l = false;
};

int run_eval(const EvalArgs& a) {
  Precision p = make_prec(a.common);
  auto chi = DirichletCharacter::from_label(a.char_label);
  Approximant approx(chi, TruncationLevel(a.u), p);
  json results = json::array();
  std::string csv = "s,value_re,value_im,est_err\n";
  for (const auto& stext : a.s_list) {
    BigComplex s = parse_complex(stext, p);
    ApproxResult r = a.want_xi ? approx.xi_approx(s) : approx.l_approx(s);
    results.push_back({{"s", stext},
                       {"value_re", fmt_value(r.value.real(), r.est_err, kJsonDigits)},
                       {"value_im", fmt_value(r.value.imag(), r.est_err, kJsonDigits)},
                       {"est_err", to_decimal(r.est_err, 3)}});
    csv += stext + "," + fmt_value(r.value.real(), r.est_err, kCsvDigits) + "," +
           fmt_value(r.value.imag(), r.est_err, kCsvDigits) + "," + to_decimal(r.est_err, 3) +
           "\n";
  }
  if (a.common.format == "csv") {
    emit(a.common, csv);
  } else {
    json doc = {{"command", "eval"},
                {"char", chi.label()},
                {"u", a.u},
                {"prec", p.bits},
                {"quantity", a.want_xi ? "xi_approx" : "l_approx"},
                {"results", results}};
    emit(a.common, doc.dump(2) + "\n");
  }
  return 0;
}

// -------------------------------------------------------------- oracle ----

struct OracleArgs {
  CommonOpts common;
  std::string char_label;
  std::string method = "hurwitz";
  double u = 7;
  std::vector<std::string> s_list;
};

int run_oracle(const OracleArgs& a) {
  Precision p = make_prec(a.common);
  auto chi = DirichletCharacter::from_label(a.char_label);
  OracleConfig cfg;
  cfg.method = a.method == "theorem1" ? OracleMethod::theorem1_selfcheck
                                      : OracleMethod::hurwitz_decomposition;
  cfg.precision = p;
  cfg.u = a.u;
  BigFloat est = pow2(p.guard - p.bits, p);
  json results = json::array();
  std::string csv = "s,value_re,value_im,est_err\n";
  for (const auto& stext : a.s_list) {
    BigComplex s = parse_complex(stext, p);
    BigComplex v = l_oracle(s, chi, cfg);
    results.push_back({{"s", stext},
                       {"value_re", fmt_value(v.real(), est, kJsonDigits)},
                       {"value_im", fmt_value(v.imag(), est, kJsonDigits)},
                       {"est_err", to_decimal(est, 3)}});
    csv += stext + "," + fmt_value(v.real(), est, kCsvDigits) + "," +
           fmt_value(v.imag(), est, kCsvDigits) + "," + to_decimal(est, 3) + "\n";
  }
  if (a.common.format == "csv") {
    emit(a.common, csv);
  } else {
    json doc = {{"command", "oracle"}, {"char", chi.label()}, {"method", a.method},
                {"u", a.u},            {"prec", p.bits},      {"results", results}};
    emit(a.common, doc.dump(2) + "\n");
  }
  return 0;
}

// --------------------------------------------------------------- poles ----

struct PolesArgs {
  CommonOpts common;
  std::string char_label;
  double u = 11;
  double max_imag = 30;
  double max_depth = 30;
};

std::string pole_source_string(const Pole& pl, int laurent_index = 0) {
  switch (pl.source) {
    case PoleSource::gamma_factor:
      return "gamma_factor(h=" + std::to_string(pl.h) + ")";
    case PoleSource::euler_factor:
      return "euler_factor(p=" + std::to_string(pl.p) + ",h=" + std::to_string(pl.h) + ")";
    case PoleSource::origin:
      return "origin(c_" + std::to_string(laurent_index) + ")";
  }
  return "?";
}

int run_poles(const PolesArgs& a) {
  Precision p = make_prec(a.common);
  auto chi = DirichletCharacter::from_label(a.char_label);
  PrincipalPart pp(chi, TruncationLevel(a.u), p);
  auto poles = pp.enumerate_poles({a.max_imag, a.max_depth});
  BigFloat est = pow2(p.guard - p.bits, p);
  std::string csv = "source,location_re,location_im,order,residue_re,residue_im\n";
  json rows = json::array();
  auto add_row = [&](const std::string& src, const BigComplex& loc, int order,
                     const BigComplex& res) {
    csv += src + "," + fmt_value(loc.real(), est, kCsvDigits) + "," +
           fmt_value(loc.imag(), est, kCsvDigits) + "," + std::to_string(order) + "," +
           fmt_value(res.real(), est, kCsvDigits) + "," + fmt_value(res.imag(), est, kCsvDigits) +
           "\n";
    rows.push_back({{"source", src},
                    {"location_re", fmt_value(loc.real(), est, kJsonDigits)},
                    {"location_im", fmt_value(loc.imag(), est, kJsonDigits)},
                    {"order", order},
                    {"residue_re", fmt_value(res.real(), est, kJsonDigits)},
                    {"residue_im", fmt_value(res.imag(), est, kJsonDigits)}});
  };
  for (const auto& pl : poles) {
    if (pl.source == PoleSource::origin) {
      // one row per Laurent coefficient c_i (the 1/s^i coefficients)
      for (size_t i = 0; i < pl.laurent.size(); ++i)
        add_row(pole_source_string(pl, static_cast<int>(i) + 1), pl.location, pl.order,
                pl.laurent[i]);
    } else {
      add_row(pole_source_string(pl), pl.location, pl.order, pl.residue);
    }
  }
  if (a.common.format == "json") {
    json doc = {{"command", "poles"},      {"char", chi.label()},
                {"u", a.u},                {"prec", p.bits},
                {"max_imag", a.max_imag},  {"max_real_depth", a.max_depth},
                {"poles", rows}};
    emit(a.common, doc.dump(2) + "\n");
  } else {
    emit(a.common, csv);
  }
  return 0;
}

// ------------------------------------------------------------ fe-check ----

struct FeArgs {
  CommonOpts common;
  std::string char_label;
  double u = 5;
  std::vector<std::string> s_list;
};

int run_fe_check(const FeArgs& a) {
  Precision p = make_prec(a.common);
  auto chi = DirichletCharacter::from_label(a.char_label);
  Approximant ax(chi, TruncationLevel(a.u), p);
  Approximant ax_conj(chi.conjugate(), TruncationLevel(a.u), p);
  std::vector<std::string> pts = a.s_list;
  if (pts.empty())
    pts = {"0.3+2i", "-1.5+0.25i", "2.25-3i", "0.5+9.5i", "-0.75-4i", "1+1i", "3-0.5i", "0.1+13i"};
  BigFloat threshold = pow2(-(p.bits - 56), p);
  BigFloat worst(p);
  json results = json::array();
  for (const auto& stext : pts) {
    BigComplex s = parse_complex(stext, p);
    BigComplex lhs = ax.xi_approx(s).value;
    BigComplex rhs = ax.epsilon() * ax_conj.xi_approx(1L - s).value;
    BigFloat resid = abs(lhs - rhs);
    if (resid > worst) worst = resid;
    results.push_back({{"s", stext}, {"residual", to_decimal(resid, 3)}});
  }
  bool pass = worst <= threshold;
  json doc = {{"command", "fe-check"},
              {"char", chi.label()},
              {"u", a.u},
              {"prec", p.bits},
              {"threshold", to_decimal(threshold, 3)},
              {"max_residual", to_decimal(worst, 3)},
              {"pass", pass},
              {"results", results}};
  emit(a.common, doc.dump(2) + "\n");
  return pass ? 0 : 1;
}

// --------------------------------------------------- table / error-table ----

struct TableArgs {
  CommonOpts common;
  std::vector<std::string> chars;
  std::vector<std::string> s_list;
  std::vector<double> u_list;
  bool detailed = false;  // error-table layout
};

int run_table(const TableArgs& a) {
  Precision p = make_prec(a.common);
  std::vector<std::string> chars = a.chars.empty()
                                       ? std::vector<std::string>{"5.4", "7.6", "8.5"}
                                       : a.chars;
  std::vector<std::string> s_texts = a.s_list.empty() ? default_s_grid() : a.s_list;
  std::vector<double> us = a.u_list.empty() ? std::vector<double>{5, 7, 11} : a.u_list;

  BigFloat tol = identity_tolerance(p);
  BigFloat target = pow2(p.guard - p.bits, p);
  bool all_ok = true;
  std::string csv;
  json jchars = json::array();

  for (const auto& label : chars) {
    auto chi = DirichletCharacter::from_label(label);
    std::vector<BigComplex> s0s;
    for (const auto& st : s_texts) s0s.push_back(parse_complex(st, p));

    std::vector<BigComplex> lrefs;
    std::vector<BigFloat> gabs;
    for (const auto& s0 : s0s) {
      lrefs.push_back(reference::l_reference(s0, chi));
      gabs.push_back(abs(euler::g_factor(s0, chi)));
    }

    csv += "char=" + chi.label() + "\nrow";
    for (const auto& st : s_texts) csv += ",s0=" + st;
    csv += "\nL";
    for (const auto& lr : lrefs) {
      csv += "," + fmt_value(lr.real(), target, 20) + (lr.imag().sign() < 0 ? "" : "+") +
             fmt_value(lr.imag(), target, 20) + "i";
    }
    csv += "\n";

    json jrows = json::array();
    for (double u : us) {
      Approximant approx(chi, TruncationLevel(u), p);
      csv += "|L-L~| u=" + std::to_string(static_cast<long>(u));
      json jcells = json::array();
      for (size_t i = 0; i < s0s.size(); ++i) {
        auto rep = error_analysis::build_error_report(s0s[i], chi, approx, target);
        bool ok_cell = rep.identity_resid <= tol &&
                       rep.exact_abs * gabs[i] <= 10L * rep.corollary;
        all_ok = all_ok && ok_cell;
        csv += "," + fmt_value(rep.exact_abs, rep.exact_abs * pow2(-20, p), 6);
        jcells.push_back(
            {{"s0", s_texts[i]},
             {"exact_abs", fmt_value(rep.exact_abs, rep.exact_abs * pow2(-40, p), kJsonDigits)},
             {"series_abs", fmt_value(rep.series_abs, rep.series_abs * pow2(-40, p), kJsonDigits)},
             {"identity_residual", to_decimal(rep.identity_resid, 3)},
             {"tail_bound", to_decimal(rep.tail_bound, 3)},
             {"corollary_bound_xi", to_decimal(rep.corollary, 3)},
             {"ok", ok_cell}});
      }
      csv += "\n";
      jrows.push_back({{"u", u}, {"cells", jcells}});
    }
    csv += "\n";
    jchars.push_back({{"char", chi.label()}, {"rows", jrows}});
  }

  if (a.common.format == "csv") {
    emit(a.common, csv);
  } else {
    json doc = {{"command", a.detailed ? "error-table" : "table"},
                {"prec", p.bits},
                {"identity_tolerance", to_decimal(tol, 3)},
                {"all_ok", all_ok},
                {"chars", jchars}};
    emit(a.common, doc.dump(2) + "\n");
  }
  return all_ok ? 0 : 1;
}

int run_error_table(const TableArgs& a) {
  Precision p = make_prec(a.common);
  std::vector<std::string> chars = a.chars.empty()
                                       ? std::vector<std::string>{"5.4", "7.6", "8.5"}
                                       : a.chars;
  std::vector<std::string> s_texts = a.s_list.empty() ? default_s_grid() : a.s_list;
  std::vector<double> us = a.u_list.empty() ? std::vector<double>{5, 7, 11} : a.u_list;
  BigFloat tol = identity_tolerance(p);
  BigFloat target = pow2(p.guard - p.bits, p);
  bool all_ok = true;

  std::string csv = "char,s0,u,exact_abs,series_abs,tail_bound,corollary_bound_xi\n";
  json rows = json::array();
  for (const auto& label : chars) {
    auto chi = DirichletCharacter::from_label(label);
    for (double u : us) {
      Approximant approx(chi, TruncationLevel(u), p);
      for (const auto& st : s_texts) {
        BigComplex s0 = parse_complex(st, p);
        auto rep = error_analysis::build_error_report(s0, chi, approx, target);
        BigFloat ga = abs(euler::g_factor(s0, chi));
        bool ok_cell = rep.identity_resid <= tol && rep.exact_abs * ga <= 10L * rep.corollary;
        all_ok = all_ok && ok_cell;
        std::string exact = fmt_value(rep.exact_abs, rep.exact_abs * pow2(-40, p), kCsvDigits);
        std::string series = fmt_value(rep.series_abs, rep.series_abs * pow2(-40, p), kCsvDigits);
        csv += chi.label() + "," + st + "," + std::to_string(static_cast<long>(u)) + "," + exact +
               "," + series + "," + to_decimal(rep.tail_bound, 3) + "," +
               to_decimal(rep.corollary, 3) + "\n";
        rows.push_back({{"char", chi.label()},
                        {"s0", st},
                        {"u", u},
                        {"exact_abs", exact},
                        {"series_abs", series},
                        {"identity_residual", to_decimal(rep.identity_resid, 3)},
                        {"tail_bound", to_decimal(rep.tail_bound, 3)},
                        {"corollary_bound_xi", to_decimal(rep.corollary, 3)},
                        {"ok", ok_cell}});
      }
    }
  }
  if (a.common.format == "csv") {
    emit(a.common, csv);
  } else {
    json doc = {{"command", "error-table"},
                {"prec", p.bits},
                {"identity_tolerance", to_decimal(tol, 3)},
                {"all_ok", all_ok},
                {"rows", rows}};
    emit(a.common, doc.dump(2) + "\n");
  }
  return all_ok ? 0 : 1;
}

json error_json(const lx_error& e) {
  return {{"error", {{"code", e.code()}, {"message", e.what()}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entire approximations of Dirichlet L-functions from truncated Euler products"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate L_approx (or xi_approx) at points");
  add_common(eval_cmd, eval_args.common, "json");
  eval_cmd->add_option("--char", eval_args.char_label, "character label q.n")->required();
  eval_cmd->add_option("--u", eval_args.u, "truncation level");
  eval_cmd->add_option("--s", eval_args.s_list, "evaluation point (repeatable)")->required();
  eval_cmd->add_flag("--xi", eval_args.want_xi, "evaluate xi_approx instead of L_approx");
  eval_cmd->add_flag("--l", eval_args.want_l, "evaluate L_approx (default)");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "reference L values (independent of the product)");
  add_common(oracle_cmd, oracle_args.common, "json");
  oracle_cmd->add_option("--char", oracle_args.char_label, "character label q.n")->required();
  oracle_cmd->add_option("--method", oracle_args.method, "hurwitz | theorem1")
      ->check(CLI::IsMember({"hurwitz", "theorem1"}));
  oracle_cmd->add_option("--u", oracle_args.u, "truncation level for theorem1 method");
  oracle_cmd->add_option("--s", oracle_args.s_list, "evaluation point (repeatable)")->required();

  PolesArgs poles_args;
  auto* poles_cmd = app.add_subcommand("poles", "pole catalogue of xi_u as CSV/JSON");
  add_common(poles_cmd, poles_args.common, "csv");
  poles_cmd->add_option("--char", poles_args.char_label, "character label q.n")->required();
  poles_cmd->add_option("--u", poles_args.u, "truncation level");
  poles_cmd->add_option("--max-imag", poles_args.max_imag, "imaginary window bound");
  poles_cmd->add_option("--max-depth", poles_args.max_depth, "real-axis depth bound");

  FeArgs fe_args;
  auto* fe_cmd = app.add_subcommand("fe-check", "functional equation residuals of xi_approx");
  add_common(fe_cmd, fe_args.common, "json");
  fe_cmd->add_option("--char", fe_args.char_label, "character label q.n")->required();
  fe_cmd->add_option("--u", fe_args.u, "truncation level");
  fe_cmd->add_option("--s", fe_args.s_list, "test point (repeatable; default built-in set)");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand(
      "table", "benchmark grid: L values and |L - L_approx| per (char, s0, u)");
  add_common(table_cmd, table_args.common, "csv");
  table_cmd->add_option("--char", table_args.chars, "character labels (default 5.4 7.6 8.5)");
  table_cmd->add_option("--s", table_args.s_list, "s0 points (default 1/2+8i .. 1/2+12i)");
  table_cmd->add_option("--u", table_args.u_list, "truncation levels (default 5 7 11)");

  TableArgs etable_args;
  etable_args.detailed = true;
  auto* etable_cmd = app.add_subcommand(
      "error-table", "per-cell error analysis: exact, series, tail, corollary bound");
  add_common(etable_cmd, etable_args.common, "csv");
  etable_cmd->add_option("--char", etable_args.chars, "character labels (default 5.4 7.6 8.5)");
  etable_cmd->add_option("--s", etable_args.s_list, "s0 points (default 1/2+8i .. 1/2+12i)");
  etable_cmd->add_option("--u", etable_args.u_list, "truncation levels (default 5 7 11)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (oracle_cmd->parsed()) return run_oracle(oracle_args);
    if (poles_cmd->parsed()) return run_poles(poles_args);
    if (fe_cmd->parsed()) return run_fe_check(fe_args);
    if (table_cmd->parsed()) return run_table(table_args);
    if (etable_cmd->parsed()) return run_error_table(etable_args);
  } catch (const lx_error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"code", "INTERNAL"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 5;
  }
  return 0;
}
