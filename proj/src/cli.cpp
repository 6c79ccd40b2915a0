#include "bjq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bjq/obslang.hpp"
#include "bjq/oracles.hpp"
#include "bjq/quantize.hpp"

namespace bjq::cli {

namespace {

using json = nlohmann::json;
using phasespace::Axis;
using phasespace::PhaseGrid;
using phasespace::WaveGrid;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_field(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw FormatError("line " + std::to_string(line) + ": not a number: '" + t + "'");
  return v;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct Options {
  std::string expr;
  std::string rule = "weyl";
  std::string rules = "bj,weyl";
  std::size_t n = 0;
  double hbar = 1.0;
  std::string format = "text";
  std::string input;
  std::string output = "-";
  std::string kind = "weyl";
  unsigned level = 0;
  std::size_t grid_n = 0;
  double xmin = std::nan("");
  double xmax = std::nan("");
  std::size_t check_n = 8;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int quantize(const Options& o) {
    const QuantRule rule = parse_rule(o.rule);
    const PhasePoly a = parse_classical(o.expr, o.n);
    emit_symbolic("quantize", o, print_canonical(bjq::quantize(a, rule)), {{"rule", rule.name()}});
    return kOk;
  }

  int dequantize(const Options& o) {
    const NormalOp a = parse_operator(o.expr, o.n);
    emit_symbolic("dequantize", o, print_canonical(dequantize_weyl(a)), {});
    return kOk;
  }

  int diff(const Options& o) {
    const auto comma = o.rules.find(',');
    if (comma == std::string::npos) throw SemanticError("--rules expects two rules: r1,r2");
    const QuantRule r1 = parse_rule(o.rules.substr(0, comma));
    const QuantRule r2 = parse_rule(o.rules.substr(comma + 1));
    const PhasePoly a = parse_classical(o.expr, o.n);
    emit_symbolic("diff", o, print_canonical(rule_diff(a, r1, r2)),
                  {{"rules", r1.name() + "," + r2.name()}});
    return kOk;
  }

  int dilemma(const Options& o) {
    const PhasePoly lsq = std::get<PhasePoly>(builtin("lsq"));
    const NormalOp lhat = std::get<NormalOp>(builtin("Lsq_op"));
    const NormalOp weyl = op_weyl(lsq), bj = op_bj(lsq);
    const NormalOp w_minus_l = weyl - lhat, bj_minus_w = bj - weyl, bj_minus_l = bj - lhat;
    const NormalOp cross = rule_diff(std::get<PhasePoly>(builtin("cross12")), QuantRule::bj(),
                                     QuantRule::weyl());
    const PhasePoly symbol = dequantize_weyl(lhat);

    auto hbar2 = [](long num, long den) { return NormalOp(3, HCoeff(GaussRational(make_rational(num, den)), 2)); };
    auto hbar2_2 = [](long num, long den) { return NormalOp(2, HCoeff(GaussRational(make_rational(num, den)), 2)); };

    struct Claim {
      std::string statement;
      bool agrees;
    };
    const std::vector<Claim> claims = {
        {"Weyl quantization of l^2 exceeds Lsq_op by +3/2*hbar^2", w_minus_l == hbar2(3, 2)},
        {"Op_BJ(l^2) - Op_W(l^2) = +1/2*hbar^2", bj_minus_w == hbar2(1, 2)},
        {"Op_BJ(l^2) = Lsq_op + hbar^2", bj_minus_l == hbar2(1, 1)},
        {"Op_BJ(cross12) - Op_W(cross12) = +1/6*hbar^2", cross == hbar2_2(1, 6)},
    };

    // Numerical cross-check on the truncated oscillator basis.
    std::vector<std::pair<double, double>> matrix_errors;
    for (double h : {1.0, 0.5}) {
      const oracles::MatrixRep<double> rep(3, o.check_n, h);
      using Sparse = oracles::MatrixRep<double>::Sparse;
      Sparse lmat(rep.dim(), rep.dim());
      const std::size_t pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
      for (const auto& pr : pairs) {
        const Sparse c = rep.x(pr[0]) * rep.p(pr[1]) - rep.x(pr[1]) * rep.p(pr[0]);
        lmat += c * c;
      }
      const Sparse id = rep.identity();
      const Sparse mw = oracles::matrix_eval(weyl, rep), mb = oracles::matrix_eval(bj, rep);
      double worst = 0.0;
      worst = std::max(worst, oracles::interior_relative_error<double>(
                                  Sparse(mw - lmat), Sparse(w_minus_l.scalar_part().evaluate(h).real() * id), rep, 4));
      worst = std::max(worst, oracles::interior_relative_error<double>(
                                  Sparse(mb - mw), Sparse(bj_minus_w.scalar_part().evaluate(h).real() * id), rep, 4));
      worst = std::max(worst, oracles::interior_relative_error<double>(
                                  Sparse(mb - lmat), Sparse(bj_minus_l.scalar_part().evaluate(h).real() * id), rep, 4));
      matrix_errors.emplace_back(h, worst);
    }
    const bool matrix_ok = std::all_of(matrix_errors.begin(), matrix_errors.end(),
                                       [](const auto& e) { return e.second <= 1e-8; });

    if (o.format == "json") {
      json j = {{"schema", "bjq-dilemma/1"},
                {"weyl_minus_lsq_op", print_canonical(w_minus_l)},
                {"bj_minus_weyl", print_canonical(bj_minus_w)},
                {"bj_minus_lsq_op", print_canonical(bj_minus_l)},
                {"cross12_bj_minus_weyl", print_canonical(cross)},
                {"weyl_symbol_of_lsq_op", print_canonical(symbol)},
                {"matrix_check_ok", matrix_ok}};
      for (const auto& c : claims) j["published_claims"].push_back({{"claim", c.statement}, {"agrees", c.agrees}});
      for (const auto& [h, e] : matrix_errors) j["matrix_check"].push_back({{"hbar", h}, {"max_rel_error", e}});
      out_ << j.dump(2) << "\n";
      return kOk;
    }
    if (o.format == "csv") {
      out_ << "quantity,value\n";
      out_ << "Op_W(lsq) - Lsq_op," << csv_quote(print_canonical(w_minus_l)) << "\n";
      out_ << "Op_BJ(lsq) - Op_W(lsq)," << csv_quote(print_canonical(bj_minus_w)) << "\n";
      out_ << "Op_BJ(lsq) - Lsq_op," << csv_quote(print_canonical(bj_minus_l)) << "\n";
      out_ << "Op_BJ(cross12) - Op_W(cross12)," << csv_quote(print_canonical(cross)) << "\n";
      return kOk;
    }
    out_ << "Op_W(lsq) - Lsq_op = " << print_canonical(w_minus_l) << "\n";
    out_ << "Op_BJ(lsq) - Op_W(lsq) = " << print_canonical(bj_minus_w) << "\n";
    out_ << "Op_BJ(lsq) - Lsq_op = " << print_canonical(bj_minus_l) << "\n";
    out_ << "Op_BJ(cross12) - Op_W(cross12) = " << print_canonical(cross) << "\n";
    out_ << "Weyl symbol of Lsq_op = " << print_canonical(symbol) << "\n";
    out_ << "published claims:\n";
    for (const auto& c : claims) out_ << "  [" << (c.agrees ? "agrees" : "DISAGREES") << "] " << c.statement << "\n";
    for (const auto& [h, e] : matrix_errors)
      out_ << "matrix oracle (n=3, N=" << o.check_n << ", hbar=" << format_number(h)
           << "): max interior relative error " << format_number(e) << (e <= 1e-8 ? " ok" : " FAILED") << "\n";
    return kOk;
  }

  int wigner(const Options& o, bool bj) {
    const WaveGrid psi = load(o);
    const PhaseGrid g = bj ? phasespace::bj_wigner(psi) : phasespace::wigner(psi);
    const PhaseGrid w = bj ? phasespace::wigner(psi) : g;
    if (!psi.is_normalized())
      err_ << "warning: input is not normalized (norm^2 = " << format_number(psi.norm_squared()) << ")\n";
    const auto m = phasespace::marginals(g);
    const double total = m.x.sum() * psi.axes()[0].step;
    const double x_err = (m.x - psi.values().abs2()).abs().maxCoeff();
    err_ << "normalization: " << format_number(total) << " (deviation " << format_number(std::abs(total - 1.0))
         << ")\n";
    err_ << "x-marginal max error vs |psi|^2: " << format_number(x_err) << "\n";
    if (bj) {
      const double p_err = (m.p - phasespace::marginals(w).p).abs().maxCoeff();
      err_ << "p-marginal max deviation from Wigner: " << format_number(p_err) << "\n";
    }
    err_ << "imaginary residue: " << format_number(g.imag_residue) << "\n";
    with_output(o, [&](std::ostream& os) {
      if (o.format == "json") {
        json j = {{"schema", "bjq-grid/1"}, {"kind", bj ? "bj_wigner" : "wigner"}, {"hbar", g.hbar}};
        for (std::size_t i = 0; i < g.x_axes[0].size; ++i) j["x"].push_back(g.x_axes[0].at(i));
        for (std::size_t i = 0; i < g.p_axes[0].size; ++i) j["p"].push_back(g.p_axes[0].at(i));
        j["values"] = json::array();
        for (std::size_t a = 0; a < g.x_points(); ++a) {
          json row = json::array();
          for (std::size_t b = 0; b < g.p_points(); ++b) row.push_back(g.at(a, b).real());
          j["values"].push_back(row);
        }
        os << j.dump() << "\n";
      } else {
        write_phase_grid_csv(os, g);
      }
    });
    return kOk;
  }

  int expect(const Options& o) {
    const QuantRule rule = parse_rule(o.rule);
    if (rule.kind() == QuantRule::Kind::tau)
      throw SemanticError("expect supports --rule weyl or bj only");
    const PhasePoly a = parse_classical(o.expr, o.n == 0 ? 1 : o.n);
    if (a.dof() != 1) throw SemanticError("wavefunction files describe one degree of freedom");
    const WaveGrid psi = load(o);
    const PhaseGrid g = rule.kind() == QuantRule::Kind::bj ? phasespace::bj_wigner(psi) : phasespace::wigner(psi);
    const double v = phasespace::expect(g, a, psi.hbar());
    if (o.format == "json")
      out_ << json{{"schema", "bjq-expect/1"}, {"rule", rule.name()}, {"input", o.expr}, {"value", format_number(v)}}.dump()
           << "\n";
    else if (o.format == "csv")
      out_ << "value\n" << format_number(v) << "\n";
    else
      out_ << format_number(v) << "\n";
    return kOk;
  }

  int state(const Options& o) {
    if (o.grid_n == 0 || std::isnan(o.xmin) || std::isnan(o.xmax))
      throw SemanticError("state needs --grid-n, --xmin and --xmax");
    if (!(o.xmax > o.xmin)) throw SemanticError("--xmax must exceed --xmin");
    const Axis axis{o.grid_n, o.xmin, (o.xmax - o.xmin) / static_cast<double>(o.grid_n)};
    const unsigned levels[1] = {o.level};
    const WaveGrid psi = WaveGrid::oscillator(levels, {axis}, o.hbar);
    with_output(o, [&](std::ostream& os) { write_wavefunction_csv(os, psi); });
    return kOk;
  }

 private:
  static QuantRule parse_rule(const std::string& s) {
    try {
      return QuantRule::parse(s);
    } catch (const std::invalid_argument& e) {
      throw SemanticError(e.what());
    }
  }

  void emit_symbolic(const std::string& command, const Options& o, const std::string& result,
                     const std::vector<std::pair<std::string, std::string>>& extra) {
    if (o.format == "json") {
      json j = {{"schema", "bjq-result/1"}, {"command", command}, {"input", o.expr}, {"result", result}};
      for (const auto& [k, v] : extra) j[k] = v;
      out_ << j.dump() << "\n";
    } else if (o.format == "csv") {
      out_ << "command,input,result\n" << command << "," << csv_quote(o.expr) << "," << csv_quote(result) << "\n";
    } else {
      out_ << result << "\n";
    }
  }

  WaveGrid load(const Options& o) {
    WaveGrid psi = [&] {
      if (o.input == "-") return read_wavefunction_csv(in_, o.hbar);
      std::ifstream f(o.input);
      if (!f) throw IoError("cannot open '" + o.input + "'");
      return read_wavefunction_csv(f, o.hbar);
    }();
    const Axis& ax = psi.axes()[0];
    if (o.grid_n != 0 && o.grid_n != ax.size)
      throw FormatError("file has " + std::to_string(ax.size) + " samples, --grid-n says " + std::to_string(o.grid_n));
    if (!std::isnan(o.xmin) && std::abs(o.xmin - ax.min) > 1e-9 * ax.step)
      throw FormatError("file starts at x = " + format_number(ax.min) + ", --xmin says " + format_number(o.xmin));
    if (!std::isnan(o.xmax) && std::abs(o.xmax - ax.at(ax.size)) > 1e-9 * ax.step)
      throw FormatError("file window ends at x = " + format_number(ax.at(ax.size)) + ", --xmax says " +
                        format_number(o.xmax));
    return psi;
  }

  template <class F>
  void with_output(const Options& o, F&& write) {
    if (o.output == "-") {
      write(out_);
      return;
    }
    std::ofstream f(o.output);
    if (!f) throw IoError("cannot write '" + o.output + "'");
    write(f);
    if (!f) throw IoError("write to '" + o.output + "' failed");
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

WaveGrid read_wavefunction_csv(std::istream& in, double hbar) {
  std::string line;
  std::size_t lineno = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++lineno;
    header = trim(line);
    if (!header.empty()) break;
  }
  if (header.empty()) throw FormatError("no samples");
  std::string compact;
  for (char c : header)
    if (c != ' ' && c != '\t') compact += c;
  if (compact != "x,re,im") throw FormatError("expected header 'x,re,im', got '" + header + "'");

  std::vector<double> xs;
  std::vector<std::complex<double>> vals;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 3) throw FormatError("line " + std::to_string(lineno) + ": expected 3 fields");
    xs.push_back(parse_field(fields[0], lineno));
    vals.emplace_back(parse_field(fields[1], lineno), parse_field(fields[2], lineno));
  }
  if (xs.empty()) throw FormatError("no samples");
  if (xs.size() < 2) throw FormatError("need at least two samples to infer the spacing");
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(dx > 0)) throw FormatError("x values must increase");
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (std::abs(xs[j] - (xs.front() + static_cast<double>(j) * dx)) > 1e-9 * dx)
      throw FormatError("non-uniform x spacing at sample " + std::to_string(j + 1));

  Eigen::ArrayXcd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t j = 0; j < vals.size(); ++j) v(static_cast<Eigen::Index>(j)) = vals[j];
  try {
    return WaveGrid({Axis{xs.size(), xs.front(), dx}}, std::move(v), hbar);
  } catch (const phasespace::GridError& e) {
    throw FormatError(e.what());
  }
}

void write_wavefunction_csv(std::ostream& out, const WaveGrid& psi) {
  if (psi.dof() != 1) throw std::invalid_argument("wavefunction CSV holds one degree of freedom");
  char buf[128];
  out << "x,re,im\n";
  const Axis& a = psi.axes()[0];
  for (std::size_t j = 0; j < a.size; ++j) {
    const auto v = psi.values()(static_cast<Eigen::Index>(j));
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a.at(j), v.real(), v.imag());
    out << buf;
  }
}

void write_phase_grid_csv(std::ostream& out, const PhaseGrid& g) {
  if (g.dof() != 1) throw std::invalid_argument("phase-grid CSV holds one degree of freedom");
  out << "x,p,value\n";
  for (std::size_t a = 0; a < g.x_points(); ++a)
    for (std::size_t b = 0; b < g.p_points(); ++b)
      out << format_number(g.x_axes[0].at(a)) << "," << format_number(g.p_axes[0].at(b)) << ","
          << format_number(g.at(a, b).real()) << "\n";
}

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Weyl / Born-Jordan quantization and phase-space distributions", "bjq"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  };
  auto add_hbar = [&](CLI::App* c) {
    c->add_option("--hbar", o.hbar, "hbar for numerics")->envname("BJQ_HBAR")->check(CLI::PositiveNumber);
  };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--grid-n", o.grid_n, "Samples per axis (power of two)");
    c->add_option("--xmin", o.xmin, "Grid start");
    c->add_option("--xmax", o.xmax, "Grid end (exclusive)");
  };

  auto* quantize = app.add_subcommand("quantize", "Quantize a classical observable");
  quantize->add_option("expr", o.expr, "Classical expression")->required();
  quantize->add_option("--rule", o.rule, "weyl | bj | tau:<p/q>");
  quantize->add_option("--n", o.n, "Degrees of freedom");
  add_format(quantize);

  auto* dequantize = app.add_subcommand("dequantize", "Weyl symbol of an operator");
  dequantize->add_option("expr", o.expr, "Operator expression")->required();
  dequantize->add_option("--n", o.n, "Degrees of freedom");
  add_format(dequantize);

  auto* diff = app.add_subcommand("diff", "Difference of two quantizations");
  diff->add_option("expr", o.expr, "Classical expression")->required();
  diff->add_option("--rules", o.rules, "r1,r2");
  diff->add_option("--n", o.n, "Degrees of freedom");
  add_format(diff);

  auto* dilemma = app.add_subcommand("dilemma", "Angular momentum report");
  dilemma->add_option("--check-n", o.check_n, "Oscillator truncation for the matrix check")
      ->check(CLI::Range(std::size_t{6}, std::size_t{16}));
  add_format(dilemma);

  auto* wigner = app.add_subcommand("wigner", "Wigner or Born-Jordan-Wigner distribution");
  wigner->add_option("psi", o.input, "Wavefunction CSV ('-' for stdin)")->required();
  wigner->add_option("--kind", o.kind, "weyl | bj")->check(CLI::IsMember({"weyl", "wigner", "bj"}));
  wigner->add_option("-o,--output", o.output, "Output path ('-' for stdout)");
  add_hbar(wigner);
  add_grid(wigner);
  add_format(wigner);

  auto* bjwigner = app.add_subcommand("bjwigner", "Born-Jordan-Wigner distribution");
  bjwigner->add_option("psi", o.input, "Wavefunction CSV ('-' for stdin)")->required();
  bjwigner->add_option("-o,--output", o.output, "Output path ('-' for stdout)");
  add_hbar(bjwigner);
  add_grid(bjwigner);
  add_format(bjwigner);

  auto* expect = app.add_subcommand("expect", "Phase-space expectation value");
  expect->add_option("psi", o.input, "Wavefunction CSV ('-' for stdin)")->required();
  expect->add_option("expr", o.expr, "Classical expression")->required();
  expect->add_option("--rule", o.rule, "weyl | bj");
  expect->add_option("--n", o.n, "Degrees of freedom");
  add_hbar(expect);
  add_grid(expect);
  add_format(expect);

  auto* state = app.add_subcommand("state", "Write an oscillator eigenfunction as wavefunction CSV");
  state->add_option("--level", o.level, "Oscillator level");
  state->add_option("-o,--output", o.output, "Output path ('-' for stdout)");
  add_hbar(state);
  add_grid(state);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  Runner r(in, out, err);
  try {
    if (*quantize) return r.quantize(o);
    if (*dequantize) return r.dequantize(o);
    if (*diff) return r.diff(o);
    if (*dilemma) return r.dilemma(o);
    if (*wigner) return r.wigner(o, o.kind == "bj");
    if (*bjwigner) return r.wigner(o, true);
    if (*expect) return r.expect(o);
    if (*state) return r.state(o);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const phasespace::GridError& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kSemantic;
  }
  return kParse;
}

}  // namespace bjq::cli
