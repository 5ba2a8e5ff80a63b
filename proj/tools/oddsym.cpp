// Command-line front end: evaluate functionals on symbol files, run the
// calculus operations, drive the oracle comparisons, and run property
// suites.  Files are one-line JSON; exact scalars print as canonical text.

#include <complex>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <oddsym/oddsym.hpp>
#include <oddsym/suites.hpp>

namespace {

using namespace oddsym;

int g_digits = 15;

std::string float_text(const std::complex<double>& v) {
  std::ostringstream out;
  out << std::setprecision(10);
  if (v.imag() == 0.0) {
    out << v.real();
  } else {
    out << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
  }
  return out.str();
}

std::string value_text(const ExactScalar& v) {
  if (v.is_zero()) return "0";
  return v.to_string() + " ≈ " + float_text(v.eval(g_digits));
}

Json fv_to_json(const FunctionalValue& v) {
  Json j;
  j["value"] = v.value.to_string();
  j["float"] = {v.value.eval(g_digits).real(), v.value.eval(g_digits).imag()};
  j["floor_used"] = v.floor_used;
  j["exact"] = v.exact;
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump() << "\n";
  else
    save_json_file(out_path, j);
}

void print_trig(const TrigPoly& p) {
  if (p.is_zero()) {
    std::cout << "0\n";
    return;
  }
  for (const auto& [k, c] : p.coeffs()) {
    std::cout << "freq (";
    for (int i = 0; i < p.dim(); ++i) std::cout << (i ? "," : "") << k[i];
    std::cout << "): " << value_text(c) << "\n";
  }
}

int run(CLI::App& app, int argc, char** argv) {
  std::string file, file_b, rho_file, out_path;
  std::string functional = "res";
  std::string c1_text = "1", c2_text = "0";
  std::uint64_t seed = 1;
  int cases = -1;
  int target_floor = 0;
  bool floor_given = false;

  app.add_option("--digits", g_digits, "evaluation digits")
      ->envname("ODDSYM_DIGITS")
      ->check(CLI::PositiveNumber);

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "write JSON here"); };

  CLI::App* eval = app.add_subcommand("eval", "apply a functional to a symbol file");
  eval->add_option("file", file)->required();
  eval->add_option("--functional", functional, "res|tr|cutoff|leading");
  eval->add_option("--rho", rho_file, "functional spec for leading");
  add_out(eval);

  CLI::App* star_cmd = app.add_subcommand("star", "compose two symbol files");
  star_cmd->add_option("left", file)->required();
  star_cmd->add_option("right", file_b)->required();
  star_cmd->add_option("--floor", target_floor)->each([&](const std::string&) { floor_given = true; });
  add_out(star_cmd);

  CLI::App* comm = app.add_subcommand("commutator", "star commutator of two symbol files");
  comm->add_option("left", file)->required();
  comm->add_option("right", file_b)->required();
  add_out(comm);

  CLI::App* par = app.add_subcommand("parametrix", "invert an elliptic symbol");
  par->add_option("file", file)->required();
  par->add_option("--floor", target_floor, "target floor")->required();
  add_out(par);

  CLI::App* dec = app.add_subcommand("decompose", "write a symbol as a divergence");
  dec->add_option("file", file)->required();
  add_out(dec);

  CLI::App* exp_cmd = app.add_subcommand("exp", "exponential of a symbol");
  exp_cmd->add_option("file", file)->required();
  add_out(exp_cmd);

  CLI::App* log_cmd = app.add_subcommand("log", "logarithm of I + symbol");
  log_cmd->add_option("file", file)->required();
  add_out(log_cmd);

  CLI::App* det = app.add_subcommand("det", "two-parameter determinant of I + symbol");
  det->add_option("file", file)->required();
  det->add_option("--rho", rho_file)->required();
  det->add_option("--c1", c1_text, "weight of the leading trace");
  det->add_option("--c2", c2_text, "weight of the canonical trace");
  add_out(det);

  CLI::App* pdet = app.add_subcommand("path-det", "determinant along a polynomial path");
  pdet->add_option("file", file)->required();
  pdet->add_option("--rho", rho_file)->required();
  pdet->add_option("--c1", c1_text);
  pdet->add_option("--c2", c2_text);
  add_out(pdet);

  CLI::App* oracle = app.add_subcommand("oracle", "numeric cross-checks");
  oracle->require_subcommand(1);
  CLI::App* ofit = oracle->add_subcommand("fit", "radial finite-part fit table");
  ofit->add_option("file", file)->required();
  add_out(ofit);
  int mode_K = 32;
  CLI::App* omodes = oracle->add_subcommand("modes", "mode-matrix commutator traces");
  omodes->add_option("left", file)->required();
  omodes->add_option("right", file_b)->required();
  omodes->add_option("--K", mode_K, "largest cutoff");
  add_out(omodes);
  CLI::App* ofd = oracle->add_subcommand("fd", "finite-difference derivative of log Det");
  ofd->add_option("file", file)->required();
  ofd->add_option("--rho", rho_file)->required();
  ofd->add_option("--c1", c1_text);
  ofd->add_option("--c2", c2_text);
  add_out(ofd);

  CLI::App* check = app.add_subcommand("check", "run a property suite");
  std::string suite_name = "all";
  check->add_option("suite", suite_name, "suite name or 'all'");
  check->add_option("--seed", seed);
  check->add_option("--cases", cases);
  add_out(check);

  CLI::App* gen = app.add_subcommand("gen", "deterministic random symbol file");
  int gn = 3, gorder = 0, gfloor = -3, gfreq = 2, glayer = 2;
  bool godd = false;
  gen->add_option("--seed", seed);
  gen->add_option("--n", gn);
  gen->add_option("--order", gorder);
  gen->add_option("--floor", gfloor);
  gen->add_option("--max-freq", gfreq);
  gen->add_option("--max-layer", glayer);
  gen->add_flag("--odd-class", godd);
  add_out(gen);

  app.require_subcommand(1);
  app.parse(argc, argv);

  if (eval->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    if (functional == "res") {
      FunctionalValue v = residue(s);
      std::cout << value_text(v.value) << "\n";
      if (!out_path.empty()) emit(fv_to_json(v), out_path);
    } else if (functional == "tr") {
      FunctionalValue v = canonical_trace(s);
      std::cout << value_text(v.value) << "\n";
      if (!out_path.empty()) emit(fv_to_json(v), out_path);
    } else if (functional == "cutoff") {
      TrigPoly density = cutoff_integral(s);
      print_trig(density);
      if (!out_path.empty()) emit(trig_to_json(density), out_path);
    } else if (functional == "leading") {
      if (rho_file.empty()) throw precondition_error("leading needs --rho");
      RhoSpec rho = rho_from_json(load_json_file(rho_file));
      FunctionalValue v = leading_trace(s, rho);
      std::cout << value_text(v.value) << "\n";
      if (!out_path.empty()) emit(fv_to_json(v), out_path);
    } else {
      throw precondition_error("unknown functional: " + functional);
    }
    return 0;
  }

  if (star_cmd->parsed() || comm->parsed()) {
    FormalSymbol a = symbol_from_json(load_json_file(file));
    FormalSymbol b = symbol_from_json(load_json_file(file_b));
    FormalSymbol r = star_cmd->parsed() ? star(a, b) : commutator(a, b);
    if (floor_given) r = r.with_floor(target_floor);
    std::cout << "order " << r.order() << " floor " << r.floor()
              << (r.exact() ? " exact" : " truncated") << "\n";
    emit(symbol_to_json(r), out_path);
    return 0;
  }

  if (par->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    FormalSymbol b = parametrix(s, target_floor);
    emit(symbol_to_json(b), out_path);
    return 0;
  }

  if (dec->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    DerivativeDecomposition d = decompose(s);
    Json j;
    j["residual_floor"] = d.residual_floor;
    Json taus = Json::array();
    for (const auto& t : d.tau) taus.push_back(symbol_to_json(t));
    j["tau"] = taus;
    emit(j, out_path);
    return 0;
  }

  if (exp_cmd->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    emit(symbol_to_json(exp_symbol(s).base), out_path);
    return 0;
  }

  if (log_cmd->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    emit(symbol_to_json(log_symbol(GroupElement(s))), out_path);
    return 0;
  }

  if (det->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    RhoSpec rho = rho_from_json(load_json_file(rho_file));
    DeterminantResult d = determinant(GroupElement(s), ExactScalar::parse(c1_text),
                                      ExactScalar::parse(c2_text), rho, g_digits);
    std::cout << "exponent " << value_text(d.exponent.value) << "\n";
    std::cout << "determinant " << float_text(d.value) << "\n";
    if (!out_path.empty()) {
      Json j;
      j["exponent"] = fv_to_json(d.exponent);
      j["value"] = {d.value.real(), d.value.imag()};
      emit(j, out_path);
    }
    return 0;
  }

  if (pdet->parsed()) {
    PolynomialPath path = path_from_json(load_json_file(file));
    RhoSpec rho = rho_from_json(load_json_file(rho_file));
    PathDeterminantResult d = path_determinant(path, ExactScalar::parse(c1_text),
                                               ExactScalar::parse(c2_text), rho, g_digits);
    std::cout << "exponent " << value_text(d.result.exponent.value) << "\n";
    std::cout << "determinant " << float_text(d.result.value) << "\n";
    for (std::size_t m = 0; m < d.integrand_coefficients.size(); ++m)
      std::cout << "integrand t^" << m << ": " << value_text(d.integrand_coefficients[m]) << "\n";
    if (!out_path.empty()) {
      Json j;
      j["exponent"] = fv_to_json(d.result.exponent);
      j["value"] = {d.result.value.real(), d.result.value.imag()};
      Json ic = Json::array();
      for (const auto& c : d.integrand_coefficients) ic.push_back(c.to_string());
      j["integrand"] = ic;
      emit(j, out_path);
    }
    return 0;
  }

  if (ofit->parsed()) {
    FormalSymbol s = symbol_from_json(load_json_file(file));
    SphereRule rule = sphere_rule(s.dim(), 12);
    std::vector<double> radii;
    for (int j = 0; j < 14; ++j) radii.push_back(2.0 * std::pow(1.22, j));
    Point x{0.0, 0.0, 0.0};
    RadialFit fit = radial_fp(s, x, radii, rule, g_digits);
    Complex fp_exact = eval_trig(cutoff_integral(s), x, g_digits);
    Complex log_exact = eval_trig(sphere_integral(s.component(-s.dim())), x, g_digits);
    auto row = [](const char* what, Complex exact, Complex fitted) {
      double err = std::abs(exact - fitted);
      double rel = err / std::max(1.0, std::abs(exact));
      std::cout << what << ": exact " << float_text(exact) << "  fitted " << float_text(fitted)
                << "  abs " << err << "  rel " << rel << "\n";
    };
    std::cout << "x = 0, radii 2.0 * 1.22^j, j < 14\n";
    row("finite part   ", fp_exact, fit.finite_part);
    row("log coefficient", log_exact, fit.log_coefficient);
    if (!out_path.empty()) {
      Json j;
      j["finite_part"] = {{"exact", {fp_exact.real(), fp_exact.imag()}},
                          {"fitted", {fit.finite_part.real(), fit.finite_part.imag()}}};
      j["log_coefficient"] = {{"exact", {log_exact.real(), log_exact.imag()}},
                              {"fitted", {fit.log_coefficient.real(), fit.log_coefficient.imag()}}};
      emit(j, out_path);
    }
    return 0;
  }

  if (omodes->parsed()) {
    FormalSymbol a = symbol_from_json(load_json_file(file));
    FormalSymbol b = symbol_from_json(load_json_file(file_b));
    Json rows = Json::array();
    for (int K = 32; K <= mode_K; K *= 2) {
      Complex t = numeric_commutator_trace(mode_matrix(a, K, g_digits), mode_matrix(b, K, g_digits));
      std::cout << "K=" << K << "  trace " << float_text(t) << "  |trace| " << std::abs(t) << "\n";
      rows.push_back({{"K", K}, {"trace", {t.real(), t.imag()}}});
    }
    if (!out_path.empty()) emit(rows, out_path);
    return 0;
  }

  if (ofd->parsed()) {
    FormalSymbol u = symbol_from_json(load_json_file(file));
    RhoSpec rho = rho_from_json(load_json_file(rho_file));
    FdCheck fd = fd_derivative_check(u, ExactScalar::parse(c1_text), ExactScalar::parse(c2_text),
                                     rho, Rational(1, 10000), g_digits);
    std::cout << "numeric " << float_text(fd.numeric) << "\n";
    std::cout << "exact   " << float_text(fd.exact) << "\n";
    std::cout << "abs err " << std::abs(fd.numeric - fd.exact) << "\n";
    if (!out_path.empty()) {
      Json j;
      j["numeric"] = {fd.numeric.real(), fd.numeric.imag()};
      j["exact"] = {fd.exact.real(), fd.exact.imag()};
      emit(j, out_path);
    }
    return 0;
  }

  if (check->parsed()) {
    std::vector<SuiteReport> reports;
    if (suite_name == "all") {
      for (const auto& info : suite_registry()) reports.push_back(run_suite(info.name, seed, cases));
    } else {
      reports.push_back(run_suite(suite_name, seed, cases));
    }
    bool ok = true;
    Json out = Json::array();
    for (const auto& rep : reports) {
      ok = ok && rep.ok();
      std::cout << rep.name << ": " << rep.cases << " cases, " << rep.failures.size()
                << " failures, " << std::fixed << std::setprecision(2) << rep.wall_seconds
                << "s\n"
                << std::defaultfloat;
      for (const auto& f : rep.failures)
        std::cout << "  case " << f.case_index << ": " << f.detail << "\n";
      out.push_back(report_to_json(rep));
    }
    if (!out_path.empty()) emit(out, out_path);
    return ok ? 0 : 4;
  }

  if (gen->parsed()) {
    FormalSymbol s = gen_random_symbol(seed, gn, gorder, gfloor, gfreq, glayer, godd);
    emit(symbol_to_json(s), out_path);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbol calculus on flat odd-dimensional tori"};
  try {
    return run(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 3;
  } catch (const oddsym::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const oddsym::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
