// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance            run all nine
//   acceptance --only N   run criterion N; exit status reflects it alone

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catlab/catlab.hpp"

using namespace catlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int draws = 0;
  while (draws < 100) {
    CoherentLabel alpha(3.0 * u(rng), kTwoPi * u(rng));
    CoherentLabel beta(3.0 * u(rng), kTwoPi * u(rng));
    const double wa = u(rng);
    const double wb = u(rng);
    const double psi = kTwoPi * u(rng);
    const SqueezeParams sq(1.5 * u(rng), kTwoPi * u(rng));
    try {
      const CatParams cat(alpha, beta, wa, wb, psi);
      const double analytic = excitation_bracket(cat, sq);
      const double oracle = excitation_bracket(cat, sq, BracketSource::Oracle);
      worst = std::max(worst, std::abs(analytic - oracle) / std::abs(oracle));
      ++draws;
    } catch (const DegenerateCat&) {
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-8 && elapsed < 60.0,
          "100 draws, max rel diff " + fmt("%.3e", worst) + " (< 1e-8), " + fmt("%.2f", elapsed) + " s (< 60 s)"};
}

Outcome quadrature_vs_closed() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 100) {
    const int j = 1 + static_cast<int>(10 * u(rng));
    const double v = 0.01 + 1.99 * u(rng);
    const double ratio = 0.5 + 1.5 * u(rng);
    const double length = 1.0;
    const CavityProbeConfig cfg(length, 2, v, ratio * j * kPi / length, 0.01);
    const Sideband s = u(rng) < 0.5 ? Sideband::Plus : Sideband::Minus;
    try {
      (void)closed_form_direct(j, s, cfg);
    } catch (const ResonantDenominator&) {
      continue;
    }
    const cplx closed = integral_closed(j, s, cfg);
    const cplx quad = integral_quadrature(j, s, cfg);
    worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
    ++tested;
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-10 && elapsed < 5.0,
          "100 points, max rel diff " + fmt("%.3e", worst) + " (< 1e-10), " + fmt("%.2f", elapsed) + " s (< 5 s)"};
}

Outcome mode_invisibility() {
  double worst_minus = 0.0;
  double worst_plus = 0.0;
  for (int n : {2, 4, 6}) {
    for (long divisor : {7L, 13L, 40L}) {
      const CavityProbeConfig cfg = CavityProbeConfig::invisible(n, divisor, 1.0, 1e-4);
      worst_minus = std::max(worst_minus, std::abs(integral_closed(n, Sideband::Minus, cfg)));
      worst_plus = std::max(worst_plus, std::abs(integral_quadrature(n, Sideband::Plus, cfg)));
    }
  }
  const CavityProbeConfig si = paper_si_config();
  worst_minus = std::max(worst_minus, std::abs(integral_closed(si.populated_mode(), Sideband::Minus, si)));
  const double pe = transition_probability(CatParams::coherent(CoherentLabel{}), SqueezeParams{}, si);
  const bool pass = worst_minus < 1e-12 && worst_plus < 1e-10 && pe <= 1e-20 && pe >= 1e-22;
  return {pass, "|I-,n| " + fmt("%.2e", worst_minus) + " (< 1e-12), quadrature |I+,n| " + fmt("%.2e", worst_plus) +
                    " (< 1e-10), SI P_e " + fmt("%.3e", pe) + " (<= 1e-20, within a decade of 1e-21)"};
}

Outcome symmetrization() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const CavityProbeConfig cfg(0.5 + 2.0 * u(rng), 2, 0.01 + 1.5 * u(rng), (0.2 + 3.0 * u(rng)) * kPi, 0.01);
    for (int j = 1; j <= 10; ++j) {
      const double lhs = 2.0 * composite_closed(j, j, kPlusConj, kPlus, cfg).real();
      const double rhs = std::norm(integral_closed(j, Sideband::Plus, cfg));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {worst < 1e-10, "20 configs x j=1..10, max |2Re(I* o I) - |I|^2| " + fmt("%.3e", worst) + " (< 1e-10)"};
}

double class_spread(const SweepTable& t, double mag) {
  double lo = 1e300;
  double hi = -1e300;
  for (const SweepRow& r : t) {
    if (r.curve_id == "ys-" || std::abs(r.axis_value - mag) > 1e-9) continue;
    lo = std::min(lo, r.delta_gamma);
    hi = std::max(hi, r.delta_gamma);
  }
  return hi - lo;
}

Outcome distinguishability_collapse() {
  const SweepTable a = run_sweep(figure_preset("fig3a"));
  const SweepTable b = run_sweep(figure_preset("fig3b"));
  const double a05 = class_spread(a, 0.5);
  const double a25 = class_spread(a, 2.5);
  const double b05 = class_spread(b, 0.5);
  const bool pass = a05 >= 10.0 * a25 && b05 > a05;
  return {pass, "fig3a spread |a|=0.5 " + fmt("%.3e", a05) + " vs |a|=2.5 " + fmt("%.3e", a25) + " (ratio " +
                    fmt("%.3g", a05 / a25) + " >= 10); fig3b spread |a|=0.5 " + fmt("%.3e", b05) + " > fig3a"};
}

Outcome yurke_stoler() {
  const InteractionIntegrals ints = InteractionIntegrals::build(paper_si_config());
  const cplx e2 = eta2_vacuum(ints);
  auto dg = [&](double psi, double r, double theta) {
    return delta_gamma(eta1_symmetric(psi, SqueezeParams(r, 0.0), 1.0, theta, ints), e2);
  };
  double worst_axis = 0.0;
  for (double r : {0.0, 1.0}) worst_axis = std::max(worst_axis, std::abs(dg(kPi / 2, r, kPi / 2) - dg(-kPi / 2, r, kPi / 2)));
  const double off_axis = std::abs(dg(kPi / 2, 1.0, 0.3) - dg(-kPi / 2, 1.0, 0.3));
  return {worst_axis < 1e-12 && off_axis > 1e-6,
          "theta=pi/2 |dg(+pi/2)-dg(-pi/2)| " + fmt("%.3e", worst_axis) + " (< 1e-12); theta=0.3 " +
              fmt("%.3e", off_axis) + " (> 1e-6)"};
}

Outcome fig7_peak() {
  bool pass = true;
  double worst = 0.0;
  for (const char* name : {"fig7a", "fig7b"}) {
    const SweepSpec spec = figure_preset(name);
    const SweepTable t = run_sweep(spec);
    const double step = (spec.stop - spec.start) / static_cast<double>(spec.points - 1);
    for (std::size_t c = 0; c < spec.curves.size(); ++c) {
      const auto first = t.begin() + static_cast<std::ptrdiff_t>(c * spec.points);
      const auto best = std::max_element(first, first + static_cast<std::ptrdiff_t>(spec.points),
                                         [](const SweepRow& x, const SweepRow& y) { return x.delta_gamma < y.delta_gamma; });
      const double off = std::abs(best->axis_value - kPi);
      worst = std::max(worst, off / step);
      pass = pass && off <= step;
    }
  }
  return {pass, "8 curves, worst argmax offset from pi " + fmt("%.3g", worst) + " grid steps (<= 1)"};
}

Outcome fock_engine() {
  double unitarity = 0.0;
  double bogoliubov = 0.0;
  double photon = 0.0;
  for (double r : {0.5, 1.0, 1.5}) {
    for (std::size_t d : {120u, 240u}) {
      const SqueezeParams sq(r, 0.7);
      const FockOperator s(detail::squeeze_matrix(sq, d));
      const auto half = static_cast<Eigen::Index>(d / 2);
      const Eigen::MatrixXcd gram = (s.adjoint() * s).entries().topLeftCorner(half, half);
      unitarity = std::max(unitarity, (gram - Eigen::MatrixXcd::Identity(half, half)).cwiseAbs().maxCoeff());
      const FockOperator a = FockOperator::annihilation(d);
      const FockOperator lhs = s.adjoint() * a * s;
      const FockOperator rhs = cplx(sq.cosh_r()) * a - std::polar(sq.sinh_r(), sq.phase()) * FockOperator::creation(d);
      bogoliubov = std::max(bogoliubov, (lhs - rhs).block_max_abs(d / 2));
    }
  }
  for (double r : {0.5, 1.0, 1.5}) {
    const FockVector vac = converged_cat_vector(CatParams::coherent(CoherentLabel{}), SqueezeParams(r, 0.7));
    const double n = expectation(FockOperator::number(vac.dim()), vac).real();
    photon = std::max(photon, std::abs(n - std::sinh(r) * std::sinh(r)));
  }
  double odd_even = 0.0;
  for (double mag : {0.5, 1.5, 2.5}) {
    const FockVector v = converged_cat_vector(CatParams::antipodal(mag, 0.9, kPi), SqueezeParams(1.0, 0.4));
    for (std::size_t k = 0; k < v.dim(); k += 2) odd_even = std::max(odd_even, std::abs(v[k]));
  }
  const bool pass = unitarity < 1e-8 && bogoliubov < 1e-8 && photon < 1e-8 && odd_even < 1e-10;
  return {pass, "unitarity " + fmt("%.2e", unitarity) + ", Bogoliubov (lower D/2 block) " + fmt("%.2e", bogoliubov) +
                    ", squeezed-vacuum <n> " + fmt("%.2e", photon) + " (each < 1e-8); odd-cat even amplitudes " +
                    fmt("%.2e", odd_even) + " (< 1e-10)"};
}

Outcome determinism() {
  const SweepSpec spec = figure_preset("fig3a");
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "catlab_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> texts;
  for (unsigned jobs : {1u, 1u, 2u, 4u}) {
    const std::string path = (dir / ("jobs" + std::to_string(jobs) + "_" + std::to_string(texts.size()) + ".csv")).string();
    emit_csv(run_sweep(spec, jobs), path);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    texts.push_back(buf.str());
  }
  std::filesystem::remove_all(dir);
  const bool same = std::all_of(texts.begin(), texts.end(), [&](const std::string& t) { return t == texts.front(); });
  return {same && !texts.front().empty(),
          "fig3a CSV over jobs {1,1,2,4}: " + std::string(same ? "byte-identical" : "DIFFERENT") + " (" +
              std::to_string(texts.front().size()) + " bytes)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence},
      {2, "quadrature vs closed form", quadrature_vs_closed},
      {3, "mode invisibility", mode_invisibility},
      {4, "symmetrization identity", symmetrization},
      {5, "distinguishability collapse", distinguishability_collapse},
      {6, "Yurke-Stoler degeneracy", yurke_stoler},
      {7, "psi-sweep peak at pi", fig7_peak},
      {8, "Fock engine", fock_engine},
      {9, "plumbing determinism", determinism},
  };
  if (only != 0 && (only < 1 || only > 9)) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
