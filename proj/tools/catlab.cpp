// catlab: sweeps, figure presets and a self-check.
//
// Exit codes: 0 ok, 2 config error, 3 numeric failure, 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include "catlab/catlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

/// More than 10% of rows without values is a numeric failure.
int table_status(const catlab::SweepTable& table) {
  const std::size_t failed = catlab::failed_rows(table);
  if (failed * 10 > table.size()) {
    std::cerr << "catlab: " << failed << " of " << table.size() << " rows could not be evaluated\n";
    return kExitNumeric;
  }
  return kExitOk;
}

void write_outputs(const catlab::SweepTable& table, const std::string& csv, const std::string& svg) {
  if (csv.empty() || csv == "-") {
    std::cout << catlab::csv_text(table);
  } else {
    catlab::emit_csv(table, csv);
  }
  if (!svg.empty()) catlab::emit_svg(table, svg);
}

struct SweepOptions {
  std::string config;
  std::string axis;
  std::string range;
  std::string out;
  std::string svg;
  unsigned jobs = 1;
};

int run_sweep_command(const SweepOptions& opt) {
  catlab::ConfigMap cfg;
  if (!opt.config.empty()) cfg = catlab::parse_config_file(opt.config);
  if (!opt.axis.empty()) {
    cfg.erase("axis");
    cfg.emplace("axis", opt.axis);
  }
  if (!opt.range.empty()) {
    cfg.erase("range");
    cfg.emplace("range", opt.range);
  }
  const catlab::SweepSpec spec = catlab::sweep_from_config(cfg);
  const catlab::SweepTable table = catlab::run_sweep(spec, opt.jobs);
  write_outputs(table, opt.out, opt.svg);
  return table_status(table);
}

int run_figure_command(const std::string& preset, const std::string& out_dir, unsigned jobs) {
  const catlab::SweepSpec spec = catlab::figure_preset(preset);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw catlab::IoError("cannot create '" + out_dir + "': " + ec.message());
  const catlab::SweepTable table = catlab::run_sweep(spec, jobs);
  const std::filesystem::path dir(out_dir);
  write_outputs(table, (dir / (preset + ".csv")).string(), (dir / (preset + ".svg")).string());
  std::cout << preset << ": " << table.size() << " rows -> " << (dir / (preset + ".csv")).string() << '\n';
  return table_status(table);
}

int run_check_command(const std::string& config, const std::string& dump_dir) {
  catlab::ConfigMap cfg;
  if (!config.empty()) cfg = catlab::parse_config_file(config);
  const catlab::SweepSpec spec = catlab::sweep_from_config(cfg);
  const catlab::CavityProbeConfig& cavity = spec.cavity;

  const catlab::InvisibilityReport report = catlab::invisibility_report(cavity);
  std::printf("cavity: L=%.9g n=%d v=%.9g Omega=%.9g lambda=%.9g (natural units, c=1)\n", cavity.length(),
              cavity.populated_mode(), cavity.probe_speed(), cavity.probe_gap(), cavity.coupling());
  std::printf("even mode      %s\n", report.even_mode ? "yes" : "no");
  std::printf("resonant       %s (residual %.3g)\n", report.resonant ? "yes" : "no", report.resonance_residual);
  std::printf("speed tuned    %s (N=%ld, residual %.3g)\n", report.speed_tuned ? "yes" : "no", report.speed_divisor,
              report.speed_residual);
  std::printf("|I-,n| = %.3e  |I+,n| = %.3e\n", report.abs_i_minus, report.abs_i_plus);
  const double p_vacuum = catlab::transition_probability(catlab::CatParams::coherent(catlab::CoherentLabel{}),
                                                         catlab::SqueezeParams{}, cavity);
  std::printf("P_e (empty populated mode) = %.6e\n", p_vacuum);

  bool ok = true;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 12; ++i) {
    const catlab::CatParams cat(catlab::CoherentLabel(3.0 * unit(rng), catlab::kTwoPi * unit(rng)),
                                catlab::CoherentLabel(3.0 * unit(rng), catlab::kTwoPi * unit(rng)), unit(rng),
                                unit(rng) + 0.1, catlab::kTwoPi * unit(rng));
    const catlab::SqueezeParams sq(1.5 * unit(rng), catlab::kTwoPi * unit(rng));
    const double analytic = catlab::excitation_bracket(cat, sq);
    const double oracle = catlab::excitation_bracket(cat, sq, catlab::BracketSource::Oracle);
    worst = std::max(worst, std::abs(analytic - oracle) / std::abs(oracle));
  }
  std::printf("oracle bracket, 12 draws: worst relative difference %.3e (limit 1e-8)\n", worst);
  ok = ok && worst < 1e-8;

  const catlab::SqueezeParams sq(1.0, 0.7);
  const catlab::FockOperator s = catlab::squeeze_operator(sq, 160);
  const catlab::FockVector vac = s.apply(catlab::coherent_vector({}, 160));
  const double nbar = catlab::expectation(catlab::FockOperator::number(160), vac).real();
  const double sinh_sq = std::sinh(1.0) * std::sinh(1.0);
  std::printf("squeezed vacuum <n> - sinh^2 r = %.3e (limit 1e-8)\n", nbar - sinh_sq);
  ok = ok && std::abs(nbar - sinh_sq) < 1e-8;

  if (!dump_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dump_dir, ec);
    if (ec) throw catlab::IoError("cannot create '" + dump_dir + "': " + ec.message());
    const std::filesystem::path dir(dump_dir);
    catlab::dump_vector(catlab::converged_cat_vector(catlab::CatParams::symmetric(1.0, catlab::kPi / 2, 0.0), sq),
                        (dir / "even_cat_squeezed.txt").string());
    catlab::dump_operator(catlab::squeeze_operator(sq, 32), (dir / "squeeze_d32.txt").string());
    std::printf("dumped Fock data to %s\n", dump_dir.c_str());
  }
  std::printf("self-test %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catlab: cat-state detection by mode-invisible probes"};
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sweep->add_option("--config", sweep_opt.config, "key = value config file");
  sweep->add_option("--axis", sweep_opt.axis, "alpha_mag | squeeze_r | squeeze_delta | theta | psi");
  sweep->add_option("--range", sweep_opt.range, "start:stop:points");
  sweep->add_option("--out", sweep_opt.out, "CSV output path ('-' or empty: stdout)");
  sweep->add_option("--svg", sweep_opt.svg, "SVG plot output path");
  sweep->add_option("--jobs", sweep_opt.jobs, "worker threads (0: all cores)");

  std::string preset;
  std::string out_dir = ".";
  unsigned figure_jobs = 1;
  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset as CSV + SVG");
  figure->add_option("preset", preset, "fig3a fig3b fig4a fig4b fig5a fig5b fig6 fig7a fig7b")->required();
  figure->add_option("--out-dir", out_dir, "output directory");
  figure->add_option("--jobs", figure_jobs, "worker threads (0: all cores)");

  std::string check_config;
  std::string dump_dir;
  auto* check = app.add_subcommand("check", "Invisibility report and oracle self-test");
  check->add_option("--config", check_config, "key = value config file for the cavity");
  check->add_option("--dump", dump_dir, "write Fock-space dumps ('index re im') to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sweep) return run_sweep_command(sweep_opt);
    if (*figure) return run_figure_command(preset, out_dir, figure_jobs);
    if (*check) return run_check_command(check_config, dump_dir);
  } catch (const catlab::ConfigError& e) {
    std::cerr << "catlab: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const catlab::UnknownPreset& e) {
    std::cerr << "catlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const catlab::IoError& e) {
    std::cerr << "catlab: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "catlab: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
