#include "momentkit/cli_app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "momentkit/errors.hpp"
#include "momentkit/json_io.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/sandwich.hpp"
#include "momentkit/selftest.hpp"
#include "momentkit/sos.hpp"

namespace momentkit {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json loadJson(const std::string& path, const std::string& what) {
  return parseJson(readFile(path), what + " (" + path + ")");
}

Json tolerancesBlock(const RunConfig& c) {
  return Json{{"tol", c.tol},
              {"lp_tol", c.lp_tol},
              {"sos_tol", c.sos_tol},
              {"moment_tol", c.moment_tol}};
}

void emit(const RunConfig& c, const Json& doc) {
  const std::string text = dumpJson(doc) + "\n";
  if (c.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + c.output_path);
  out << text;
}

PickPolicy parsePick(const std::string& pick) {
  if (pick == "midpoint") return PickPolicy::Midpoint;
  if (pick == "lower") return PickPolicy::Lower;
  if (pick == "upper") return PickPolicy::Upper;
  throw InvalidArgument("pick must be midpoint, lower, or upper");
}

/// Largest order the recovered measure is expected to reproduce: everything
/// when the data was rank deficient (truly atomic source), otherwise the
/// Gauss exactness range 2N-1.
Index verifiableOrder(const MomentSequence<double>& s, std::size_t atom_count) {
  const Index planned = (s.maxOrder() + 1) / 2;
  if (static_cast<Index>(atom_count) < planned) return s.maxOrder();
  return std::min<Index>(s.maxOrder(), 2 * static_cast<Index>(atom_count) - 1);
}

int runCheck(const RunConfig& c) {
  const MomentSequence<double> s = momentsFromJson(loadJson(c.moments_path, "moments"));
  const PsdVerdict<double> verdict = hamburgerCheck(s, c.tol);
  Json doc = toJson(verdict);
  doc["inputs_echo"] = Json{{"moments", toJson(s)}};
  doc["tolerances"] = tolerancesBlock(c);
  emit(c, doc);
  return verdict.is_psd ? kExitOk : kExitNegative;
}

int runSos(const RunConfig& c) {
  const Polynomial<double> f = polynomialFromJson(loadJson(c.poly_path, "polynomial"));
  const SosResult result = sosDecompose(f, c.sos_tol);
  Json doc = std::holds_alternative<SosCertificate>(result)
                 ? toJson(std::get<SosCertificate>(result))
                 : toJson(std::get<NegativityWitness>(result));
  doc["inputs_echo"] = Json{{"poly", toJson(f)}};
  doc["tolerances"] = tolerancesBlock(c);
  emit(c, doc);
  return std::holds_alternative<SosCertificate>(result) ? kExitOk : kExitNegative;
}

int runRecover(const RunConfig& c) {
  const MomentSequence<double> s = momentsFromJson(loadJson(c.moments_path, "moments"));
  const AtomicMeasure<double> mu = recoverMeasure(s, c.tol);
  const MomentReport<double> report =
      verifyMoments(mu, s, verifiableOrder(s, mu.atoms.size()), c.moment_tol);
  Json doc = toJson(mu);
  doc["verify"] = toJson(report);
  doc["inputs_echo"] = Json{{"moments", toJson(s)}};
  doc["tolerances"] = tolerancesBlock(c);
  emit(c, doc);
  return report.all_pass ? kExitOk : kExitNegative;
}

int runApply(const RunConfig& c) {
  const MomentSequence<double> s = momentsFromJson(loadJson(c.moments_path, "moments"));
  const Polynomial<double> f = polynomialFromJson(loadJson(c.poly_path, "polynomial"));
  Json doc{{"value", applyFunctional(s, f)}};
  doc["inputs_echo"] = Json{{"moments", toJson(s)}, {"poly", toJson(f)}};
  doc["tolerances"] = tolerancesBlock(c);
  emit(c, doc);
  return kExitOk;
}

int runIntegrate(const RunConfig& c) {
  const AtomicMeasure<double> mu = measureFromJson(loadJson(c.measure_path, "measure"));
  const FunctionSpec g = functionFromJson(loadJson(c.function_path, "function"));
  Json doc{{"value", integrate(mu, g)}};
  doc["inputs_echo"] = Json{{"measure", toJson(mu)}, {"function", toJson(g)}};
  doc["tolerances"] = tolerancesBlock(c);
  emit(c, doc);
  return kExitOk;
}

int runExtend(const RunConfig& c) {
  const MomentSequence<double> s = momentsFromJson(loadJson(c.moments_path, "moments"));
  const FunctionSpec g = functionFromJson(loadJson(c.function_path, "function"));
  const Json inputs_echo{{"moments", toJson(s)},
                         {"function", toJson(g)},
                         {"degree", static_cast<std::int64_t>(c.degree)},
                         {"grid_size", static_cast<std::int64_t>(c.grid_size)},
                         {"pick", c.pick}};
  try {
    const SandwichResult result =
        extendFunctional(s, g, c.degree, c.grid_size, parsePick(c.pick), c.tol, c.lp_tol);
    Json doc = toJson(result);
    doc["inputs_echo"] = inputs_echo;
    doc["tolerances"] = tolerancesBlock(c);
    emit(c, doc);
    return kExitOk;
  } catch (const SandwichEmpty& e) {
    Json doc{{"error", Json{{"kind", e.kind()},
                            {"detail", std::string(e.what())},
                            {"lower", e.lower()},
                            {"upper", e.upper()}}}};
    doc["inputs_echo"] = inputs_echo;
    doc["tolerances"] = tolerancesBlock(c);
    emit(c, doc);
    return kExitNegative;
  }
}

int runPipeline(const RunConfig& c) {
  const MomentSequence<double> s = momentsFromJson(loadJson(c.moments_path, "moments"));
  const FunctionSpec g = functionFromJson(loadJson(c.function_path, "function"));
  Json doc;
  doc["inputs_echo"] = Json{{"moments", toJson(s)},
                            {"function", toJson(g)},
                            {"degree", static_cast<std::int64_t>(c.degree)},
                            {"grid_size", static_cast<std::int64_t>(c.grid_size)},
                            {"pick", c.pick}};
  doc["tolerances"] = tolerancesBlock(c);

  const auto stage_failed = [&](const std::string& stage, const std::string& detail) {
    doc["error"] = Json{{"kind", "StageFailed"}, {"stage", stage}, {"detail", detail}};
    emit(c, doc);
    return kExitNegative;
  };

  const PsdVerdict<double> verdict = hamburgerCheck(s, c.tol);
  doc["hamburger"] = toJson(verdict);
  if (!verdict.is_psd) {
    return stage_failed("hamburger_check", "Hankel matrix is not positive semidefinite");
  }

  const AtomicMeasure<double> mu = recoverMeasure(s, c.tol);
  doc["measure"] = toJson(mu);

  const MomentReport<double> report =
      verifyMoments(mu, s, verifiableOrder(s, mu.atoms.size()), c.moment_tol);
  doc["verify"] = toJson(report);
  if (!report.all_pass) {
    return stage_failed("verify_moments", "recovered measure does not reproduce the moments");
  }

  SandwichResult sandwich;
  try {
    sandwich = extendFunctional(s, g, c.degree, c.grid_size, parsePick(c.pick), c.tol, c.lp_tol);
  } catch (const SandwichEmpty& e) {
    doc["sandwich"] = Json{{"lower", e.lower()}, {"upper", e.upper()}};
    return stage_failed("extend", e.what());
  }
  doc["sandwich"] = toJson(sandwich);

  const double integral = integrate(mu, g);
  const bool cross_ok =
      sandwich.lower <= integral + c.lp_tol && integral <= sandwich.upper + c.lp_tol;
  doc["cross_check"] = Json{{"integral", integral}, {"pass", cross_ok}};
  if (!cross_ok) {
    return stage_failed("cross_check", "measure integral escapes the sandwich interval");
  }
  emit(c, doc);
  return kExitOk;
}

int runSelftestCommand(const RunConfig& c) {
  if (c.output_path.empty()) return runSelftest(c.seed, std::cout) == 0 ? kExitOk : kExitNegative;
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + c.output_path);
  return runSelftest(c.seed, out) == 0 ? kExitOk : kExitNegative;
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0) || !(c.lp_tol > 0.0) || !(c.sos_tol > 0.0) || !(c.moment_tol > 0.0)) {
    throw InvalidArgument("all tolerances must be positive");
  }
  if (c.degree < 0) throw InvalidArgument("--degree must be nonnegative");
  if (c.grid_size < 2) throw InvalidArgument("--grid-size must be at least 2");
  parsePick(c.pick);
}

}  // namespace

int runConfigured(const RunConfig& c) {
  try {
    validate(c);
    if (c.subcommand == "check") return runCheck(c);
    if (c.subcommand == "sos") return runSos(c);
    if (c.subcommand == "recover") return runRecover(c);
    if (c.subcommand == "apply") return runApply(c);
    if (c.subcommand == "integrate") return runIntegrate(c);
    if (c.subcommand == "extend") return runExtend(c);
    if (c.subcommand == "pipeline") return runPipeline(c);
    if (c.subcommand == "selftest") return runSelftestCommand(c);
    throw InvalidArgument("unknown subcommand " + c.subcommand);
  } catch (const NotAMomentSequence& e) {
    std::cout << dumpJson(Json{{"error", Json{{"kind", e.kind()}, {"detail", e.what()}}}}) << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    std::cout << dumpJson(Json{{"error", Json{{"kind", e.kind()}, {"detail", e.what()}}}}) << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cout << dumpJson(Json{{"error", Json{{"kind", "Internal"}, {"detail", e.what()}}}})
              << "\n";
    return kExitError;
  }
}

int runCli(int argc, const char* const* argv) {
  CLI::App app{"Moment-problem toolkit: Hankel positivity, sum-of-squares certificates, "
               "Gauss measure recovery, and sandwich extension of the moment functional"};
  app.require_subcommand(1);

  RunConfig config;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "PSD test tolerance");
    sub->add_option("--lp-tol", config.lp_tol, "LP optimum tolerance");
    sub->add_option("--sos-tol", config.sos_tol, "certificate residual tolerance");
    sub->add_option("--moment-tol", config.moment_tol, "moment verification tolerance");
    sub->add_option("--output", config.output_path, "write JSON here instead of stdout");
  };

  CLI::App* check = app.add_subcommand("check", "Hankel positivity test of a moment sequence");
  check->add_option("--moments", config.moments_path, "moment sequence JSON")->required();
  add_common(check);

  CLI::App* sos = app.add_subcommand("sos", "sum-of-two-squares certificate or witness");
  sos->add_option("--poly", config.poly_path, "polynomial JSON")->required();
  add_common(sos);

  CLI::App* recover = app.add_subcommand("recover", "Gauss measure from a moment sequence");
  recover->add_option("--moments", config.moments_path, "moment sequence JSON")->required();
  add_common(recover);

  CLI::App* apply = app.add_subcommand("apply", "evaluate the moment functional on a polynomial");
  apply->add_option("--moments", config.moments_path, "moment sequence JSON")->required();
  apply->add_option("--poly", config.poly_path, "polynomial JSON")->required();
  add_common(apply);

  CLI::App* integ = app.add_subcommand("integrate", "integrate a function against a measure");
  integ->add_option("--measure", config.measure_path, "atomic measure JSON")->required();
  integ->add_option("--function", config.function_path, "function spec JSON")->required();
  add_common(integ);

  const auto add_extend_flags = [&](CLI::App* sub) {
    sub->add_option("--moments", config.moments_path, "moment sequence JSON")->required();
    sub->add_option("--function", config.function_path, "function spec JSON")->required();
    sub->add_option("--degree", config.degree, "sandwich polynomial degree");
    sub->add_option("--grid-size", config.grid_size, "uniform constraint grid size");
    sub->add_option("--pick", config.pick, "midpoint|lower|upper")
        ->check(CLI::IsMember({"midpoint", "lower", "upper"}));
    add_common(sub);
  };
  add_extend_flags(app.add_subcommand("extend", "sandwich extension of the moment functional"));
  add_extend_flags(
      app.add_subcommand("pipeline", "check, recover, verify, extend, and cross-check"));

  CLI::App* selftest = app.add_subcommand("selftest", "run the seeded property suites");
  selftest->add_option("--seed", config.seed, "RNG seed for the property suites");
  selftest->add_option("--output", config.output_path, "write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return runConfigured(config);
}

}  // namespace momentkit
