// Command-line front end: max-entropy thermodynamics, energy-constrained
// continuity bounds, sufficient-dimension estimates, table reproduction and
// the randomized inequality verifier.
//
// Exit codes: 0 success, 1 verification suite violation, 2 usage/domain
// error, 3 resource/precision error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecb/bounds.hpp"
#include "ecb/errors.hpp"
#include "ecb/fhat.hpp"
#include "ecb/jsonout.hpp"
#include "ecb/spectrum.hpp"
#include "ecb/suite.hpp"
#include "ecb/thermo.hpp"
#include "ecb/ufa.hpp"

namespace {

struct Options {
  std::string modes;
  std::string spectrum_file;
  double energy = 0.0;
  std::optional<double> eps;
  std::optional<double> rel_err;
  std::string kind;
  std::optional<double> t_fixed;
  bool optimize_t = false;
  int tgrid = 256;
  std::uint64_t seed = 20250809;
  int trials = 1000;
  int dim = 32;
  std::string format = "json";
  std::string out_path;
  std::string suite = "all";
};

std::vector<double> parse_modes(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ecb::DomainError("--modes: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw ecb::DomainError("--modes: empty list");
  return out;
}

ecb::SpectrumModel make_model(const Options& opt) {
  if (!opt.modes.empty() && !opt.spectrum_file.empty())
    throw ecb::DomainError("give exactly one of --modes and --spectrum");
  if (!opt.modes.empty())
    return ecb::SpectrumModel::oscillator(parse_modes(opt.modes));
  if (!opt.spectrum_file.empty())
    return ecb::SpectrumModel::load_file(opt.spectrum_file);
  throw ecb::DomainError("a spectrum is required: --modes or --spectrum");
}

std::unique_ptr<ecb::FHatFunction> make_fhat(const Options& opt,
                                             const ecb::SpectrumModel& model) {
  if (model.is_oscillator())
    return std::make_unique<ecb::OscillatorBar>(model.mode_energies());
  return std::make_unique<ecb::StarEnvelope>(model);
}

double resolve_eps(const Options& opt, const ecb::SpectrumModel& model) {
  if (opt.eps.has_value() == opt.rel_err.has_value())
    throw ecb::DomainError("give exactly one of --eps and --rel-err");
  if (opt.eps) {
    if (!(*opt.eps > 0.0)) throw ecb::DomainError("--eps must be positive");
    return *opt.eps;
  }
  if (!(*opt.rel_err > 0.0)) throw ecb::DomainError("--rel-err must be positive");
  return *opt.rel_err * ecb::f_max(model, opt.energy).F;
}

void emit(const Options& opt, const std::string& text) {
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw ecb::ResourceError("cannot open output file: " + opt.out_path);
    f << text;
  }
  std::cout << text;
}

int cmd_fmax(const Options& opt) {
  const auto model = make_model(opt);
  const auto p = ecb::f_max(model, opt.energy);
  if (opt.format == "csv") {
    std::string out = "E,lambda,lnZ,F\n";
    out += ecb::fmt_sig(p.E) + "," + ecb::fmt_sig(p.lambda) + "," +
           ecb::fmt_sig(p.lnZ) + "," + ecb::fmt_sig(p.F) + "\n";
    emit(opt, out);
  } else {
    ecb::JsonWriter w;
    w.begin_object();
    w.field("E", p.E);
    w.field("lambda", p.lambda);
    w.field("lnZ", p.lnZ);
    w.field("F", p.F);
    w.end_object();
    emit(opt, w.str() + "\n");
  }
  return 0;
}

int cmd_bound(const Options& opt) {
  const auto model = make_model(opt);
  const auto fhat = make_fhat(opt, model);
  const double eps = resolve_eps(opt, model);
  const double ebar = opt.energy - model.ground_energy();
  const auto preset = ecb::preset_from_string(opt.kind.empty() ? "entropy" : opt.kind);
  if (!preset) throw ecb::DomainError("unknown quantity preset: " + opt.kind);
  const auto params = ecb::preset_params(*preset, *fhat);

  double t_star, value;
  if (opt.t_fixed) {
    if (opt.optimize_t) throw ecb::DomainError("--t and --optimize-t are exclusive");
    t_star = *opt.t_fixed;
    value = ecb::cb(*fhat, ebar, eps, t_star, params);
  } else {
    const auto r = ecb::cb_opt(*fhat, ebar, eps, params, opt.tgrid);
    t_star = r.t;
    value = r.value;
  }
  if (opt.format == "csv") {
    emit(opt, "t_star,value\n" + ecb::fmt_sig(t_star) + "," + ecb::fmt_sig(value) + "\n");
  } else {
    ecb::JsonWriter w;
    w.begin_object();
    w.field("t_star", t_star);
    w.field("value", value);
    w.end_object();
    emit(opt, w.str() + "\n");
  }
  return 0;
}

int cmd_ufa(const Options& opt) {
  const auto model = make_model(opt);
  const auto fhat = make_fhat(opt, model);
  const auto kind = ecb::capacity_from_string(opt.kind);
  if (!kind) throw ecb::DomainError("unknown capacity kind: " + opt.kind);
  const double eps = resolve_eps(opt, model);
  const auto res = ecb::sufficient_dim(*kind, model, *fhat, opt.energy, eps,
                                       1'000'000'000'000ULL, opt.tgrid);
  const double rel = opt.rel_err ? *opt.rel_err : 0.0;
  if (opt.format == "csv")
    emit(opt, ecb::ufa_result_csv(res, opt.energy, rel, *kind));
  else
    emit(opt, ecb::ufa_result_json(res, opt.energy, rel, *kind) + "\n");
  return 0;
}

int cmd_tables(const Options& opt) {
  const auto rows = ecb::reproduce_tables(opt.tgrid);
  if (opt.format == "json")
    emit(opt, ecb::tables_json(rows) + "\n");
  else
    emit(opt, ecb::tables_csv(rows));
  return 0;
}

int cmd_verify(const Options& opt) {
  ecb::SuiteConfig cfg;
  cfg.suite = opt.suite;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.dim = opt.dim;
  const auto reports = ecb::run_suite(cfg);
  emit(opt, ecb::report_json(reports) + "\n");
  return ecb::total_violations(reports) > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy continuity bounds for energy-constrained quantum systems"};
  app.require_subcommand(1);

  Options opt;

  const auto add_spectrum = [&](CLI::App* cmd) {
    cmd->add_option("--modes", opt.modes, "oscillator mode energies, comma separated");
    cmd->add_option("--spectrum", opt.spectrum_file, "explicit spectrum file");
  };
  const auto add_eps = [&](CLI::App* cmd) {
    cmd->add_option("--eps", opt.eps, "absolute epsilon");
    cmd->add_option("--rel-err", opt.rel_err, "epsilon as a fraction of F(E)");
  };
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out_path, "also write the output to this file");
  };

  auto* fmax = app.add_subcommand("fmax", "max-entropy F(E) and the Gibbs parameters");
  add_spectrum(fmax);
  fmax->add_option("--energy", opt.energy, "mean energy E")->required();
  add_common(fmax);

  auto* bound = app.add_subcommand("bound", "energy-constrained continuity bound");
  add_spectrum(bound);
  bound->add_option("--energy", opt.energy, "energy bound E")->required();
  add_eps(bound);
  bound->add_option("--kind", opt.kind, "quantity preset (default entropy)");
  bound->add_option("--t", opt.t_fixed, "fixed free parameter t");
  bound->add_flag("--optimize-t", opt.optimize_t, "minimize over t (default)");
  bound->add_option("--tgrid", opt.tgrid, "t-grid size for optimization");
  add_common(bound);

  auto* ufa = app.add_subcommand("ufa", "epsilon-sufficient input dimension");
  add_spectrum(ufa);
  ufa->add_option("--energy", opt.energy, "input energy bound E")->required();
  add_eps(ufa);
  ufa->add_option("--kind", opt.kind, "capacity kind: Cchi|C|Qbar|Q|Cpbar|Cp")->required();
  ufa->add_option("--tgrid", opt.tgrid, "t-grid size for optimization");
  add_common(ufa);

  auto* tables = app.add_subcommand("tables", "reproduce the one-mode dimension tables");
  tables->add_option("--tgrid", opt.tgrid, "t-grid size for optimization");
  add_common(tables);

  auto* verify = app.add_subcommand("verify", "randomized inequality verification");
  verify->add_option("--suite", opt.suite, "suite name or 'all'");
  verify->add_option("--trials", opt.trials, "trials per suite");
  verify->add_option("--seed", opt.seed, "master seed");
  verify->add_option("--dim", opt.dim, "truncation dimension");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(fmax)) return cmd_fmax(opt);
    if (app.got_subcommand(bound)) return cmd_bound(opt);
    if (app.got_subcommand(ufa)) return cmd_ufa(opt);
    if (app.got_subcommand(tables)) {
      if (tables->get_option("--format")->count() == 0) opt.format = "csv";
      return cmd_tables(opt);
    }
    if (app.got_subcommand(verify)) return cmd_verify(opt);
    return 2;
  } catch (const ecb::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ecb::PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ecb::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
