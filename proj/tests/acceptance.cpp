// Acceptance gate: one pass/fail line per criterion.
//   acceptance            run every criterion
//   acceptance AC4 AC9    run the named criteria

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csrbf/four_landmark.hpp"
#include "csrbf/io.hpp"
#include "csrbf/registration.hpp"
#include "csrbf/support_analysis.hpp"

namespace fs = std::filesystem;
using namespace csrbf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) { return format_number(v); }

std::vector<KernelFamily> named_families() {
  std::vector<KernelFamily> out;
  for (int i = 0; i < kNamedFamilyCount; ++i) out.push_back(named_family(i));
  return out;
}

Outcome ac1_table() {
  const struct {
    KernelFamily f;
    double expected;
  } rows[] = {{KernelFamily::wendland31(), 2.98},
              {KernelFamily::wu12(), 2.80},
              {KernelFamily::gneiting_seven_halves(), 5.09},
              {KernelFamily::gneiting_five(), 6.26}};
  bool pass = true;
  std::ostringstream d;
  for (const auto& row : rows) {
    const SupportBound b = support_bound(row.f);
    // brute force: 10^6 samples of the unit-support slope
    const Kernel k(row.f, 1.0);
    double best_s = 0.0;
    double best = 0.0;
    for (int i = 1; i < 1000000; ++i) {
      const double s = i / 1e6;
      const double v = kernel_deriv(k, s);
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    const double brute_c = std::numbers::sqrt2 * std::abs(best);
    const bool ok = std::abs(b.c_min_over_delta - row.expected) <= 0.01 &&
                    std::abs(b.c_min_over_delta - brute_c) <= 1e-5 && std::abs(b.r_star_over_c - best_s) <= 1e-5;
    pass = pass && ok;
    d << row.f.name() << '=' << num(b.c_min_over_delta) << " (brute " << num(brute_c) << ") ";
  }
  return {pass, d.str()};
}

Outcome ac2_minimizers() {
  const double g72 = deriv_minimum(KernelFamily::gneiting_seven_halves()).r_star_over_c;
  const double g5 = deriv_minimum(KernelFamily::gneiting_five()).r_star_over_c;
  const double g72_exact = 4.0 * (29.0 - std::sqrt(301.0)) / 270.0;
  const double g5_exact = (19.0 - std::sqrt(145.0)) / 54.0;
  const bool pass = std::abs(g72 - 0.1726) <= 1e-3 && std::abs(g5 - 0.1289) <= 1e-3 &&
                    std::abs(g72 - g72_exact) <= 1e-12 && std::abs(g5 - g5_exact) <= 1e-12;
  return {pass, "gneiting-7-2 r*/c=" + num(g72) + ", gneiting-5 r*/c=" + num(g5)};
}

Outcome ac3_constant() {
  const double a = asymptotic_chain(taylor_approx(KernelFamily::gneiting_seven_halves())).constant;
  const double b = asymptotic_chain(taylor_approx(KernelFamily::gneiting_five())).constant;
  const double exact = 0.375 / (2.0 - std::numbers::sqrt2);
  const bool pass = std::abs(a - 0.6402) <= 5e-5 && std::abs(b - 0.6402) <= 5e-5 && std::abs(a - exact) <= 1e-12 &&
                    std::abs(b - exact) <= 1e-12;
  return {pass, "from gneiting-7-2 chain " + num(a) + ", from gneiting-5 chain " + num(b)};
}

Outcome ac4_figure2() {
  const auto fams = named_families();
  const auto ys = axis_samples(50, 5.0);
  const auto rows = figure2_table(fams, 100.0, 0.2, ys);
  double pair = 0.0;
  double asym = 0.0;
  double lowest = 1e300;
  for (std::size_t k = 0; k < rows.size(); k += fams.size()) {
    for (std::size_t a = 0; a < fams.size(); ++a) {
      const Figure2Row& r = rows[k + a];
      lowest = std::min(lowest, r.det);
      asym = std::max(asym, std::abs(r.det - asymptotic_axis_det(0.2, r.y)));
      for (std::size_t b = 0; b < fams.size(); ++b) pair = std::max(pair, std::abs(r.det - rows[k + b].det));
    }
  }
  const bool pass = pair <= 5e-3 && asym <= 2e-2 && lowest > 0.0;
  return {pass, "max pairwise " + num(pair) + " (tol 5e-3), max vs asymptotic " + num(asym) + " (tol 2e-2), min det " +
                    num(lowest)};
}

Outcome ac5_one_landmark() {
  const LandmarkCorrespondence lm({{0.5, 0.5}}, {{0.6, 0.7}});
  const double near_minimal[kNamedFamilyCount] = {0.6, 0.58, 1.02, 1.26};
  bool pass = true;
  std::ostringstream d;
  for (int i = 0; i < kNamedFamilyCount; ++i) {
    const KernelFamily f = named_family(i);
    const double good = det_field(fit(Kernel(f, near_minimal[i]), lm), {0, 0, 1, 1}, 200, 200).min_det;
    const double bad = det_field(fit(Kernel(f, 0.15), lm), {0, 0, 1, 1}, 200, 200).min_det;
    pass = pass && good > 0.0 && bad < 0.0;
    d << f.name() << ' ' << num(good) << '/' << num(bad) << ' ';
  }
  return {pass, "min det at near-minimal c / at c=0.15: " + d.str()};
}

Outcome ac6_four_landmark() {
  const LandmarkCorrespondence lm({{0.5, 0.65}, {0.35, 0.5}, {0.65, 0.5}, {0.5, 0.35}},
                                  {{0.5, 0.65}, {0.35, 0.5}, {0.65, 0.5}, {0.5, 0.25}});
  bool pass = true;
  std::ostringstream d;
  for (int i = 0; i < kNamedFamilyCount; ++i) {
    const KernelFamily f = named_family(i);
    const double good = det_field(fit(Kernel(f, 100.0), lm), {0, 0, 1, 1}, 200, 200).min_det;
    const double bad = det_field(fit(Kernel(f, 0.15), lm), {0, 0, 1, 1}, 200, 200).min_det;
    pass = pass && good > 0.0 && bad < 0.0;
    d << f.name() << ' ' << num(good) << '/' << num(bad) << ' ';
  }
  return {pass, "min det at c=100 / at c=0.15: " + d.str()};
}

Outcome ac7_closed_form() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> c_dist(3.0, 200.0);
  std::uniform_real_distribution<double> d_dist(0.01, 1.0);
  double coeff_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const RhombusCase rc(Kernel(named_family(trial % kNamedFamilyCount), c_dist(rng)), d_dist(rng));
    const RhombusCoefficients co = rhombus_coefficients(rc);
    const Transformation t = fit(rc.kernel(), rc.landmarks());
    double scale = 0.0;
    for (double v : co.c2) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < 4; ++i) {
      coeff_err = std::max(coeff_err, std::abs(t.coefficients()[i].x - co.c1[i]) / scale);
      coeff_err = std::max(coeff_err, std::abs(t.coefficients()[i].y - co.c2[i]) / scale);
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-0.05, 0.05);
  double interp_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 20;
    std::vector<Point2> src(n);
    std::vector<Point2> dst(n);
    for (std::size_t j = 0; j < n; ++j) {
      src[j] = {unit(rng), unit(rng)};
      dst[j] = {src[j].x + shift(rng), src[j].y + shift(rng)};
    }
    const LandmarkCorrespondence lm(src, dst);
    const Transformation t = fit(Kernel(named_family(trial % kNamedFamilyCount), 0.2 + 1.8 * unit(rng)), lm);
    for (std::size_t j = 0; j < n; ++j) {
      const Point2 q = t.evaluate(src[j]);
      const double scale = 1.0 + std::max(std::abs(dst[j].x), std::abs(dst[j].y));
      interp_err = std::max(interp_err, std::max(std::abs(q.x - dst[j].x), std::abs(q.y - dst[j].y)) / scale);
    }
  }
  const bool pass = coeff_err <= 1e-9 && interp_err <= 1e-9;
  return {pass, "closed form vs 4x4 fit " + num(coeff_err) + ", interpolation " + num(interp_err)};
}

Outcome ac8_kernels() {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unit(1e-4, 1.0 - 1e-4);
  double fd_err = 0.0;
  for (const auto& f : named_families()) {
    const Kernel k(f, 1.0);
    constexpr double h = 1e-6;
    for (int i = 0; i < 1000; ++i) {
      const double r = unit(rng);
      const double d = kernel_deriv(k, r);
      const double fd = (kernel_value(k, r + h) - kernel_value(k, r - h)) / (2.0 * h);
      fd_err = std::max(fd_err, std::abs(d - fd) / (1.0 + std::abs(d)));
    }
  }
  double tb_err = 0.0;
  for (double l : {3.5, 5.0, 6.0}) {
    const Kernel k(KernelFamily::gneiting(l), 1.0);
    for (int i = 0; i <= 2000; ++i) {
      const double s = i / 2000.0;
      tb_err = std::max(tb_err, std::abs(kernel_value(k, s) - turning_bands_reference(l, s)));
    }
  }
  // fourth-order remainder: |Phi - T| / s^4 stays bounded as s shrinks
  double remainder = 0.0;
  for (const auto& f : {KernelFamily::gneiting_seven_halves(), KernelFamily::gneiting_five()}) {
    for (int i = 0; i <= 1000; ++i) {
      const double s = 0.01 + 0.09 * i / 1000.0;
      remainder = std::max(remainder, std::abs(profile_value(f, s) - taylor_value(f, s)) / std::pow(s, 4));
    }
  }
  const bool pass = fd_err <= 1e-6 && tb_err <= 1e-12 && remainder <= 400.0;
  return {pass, "derivative vs FD " + num(fd_err) + ", turning bands " + num(tb_err) + ", Taylor remainder / s^4 " +
                    num(remainder)};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CSRBF_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac9_brain() {
  const fs::path data(CSRBF_DATA_DIR);
  const fs::path tmp = fs::temp_directory_path() / ("csrbf-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const std::string base = "fit-warp --kernel gneiting-7-2 --require-topology --landmarks \"" +
                           (data / "brain_landmarks.csv").string() + "\" --image \"" +
                           (data / "brain_synthetic.pgm").string() + "\"";
  const int wide = run_cli(base + " --c 20 --out \"" + (tmp / "c20.pgm").string() + "\"");
  const int narrow = run_cli(base + " --c 2 --out \"" + (tmp / "c2.pgm").string() + "\"");
  fs::remove_all(tmp);
  return {wide == 0 && narrow == 3, "exit code at c=20: " + std::to_string(wide) + ", at c=2: " + std::to_string(narrow)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1_table},       {"AC2", ac2_minimizers},    {"AC3", ac3_constant},
      {"AC4", ac4_figure2},     {"AC5", ac5_one_landmark},  {"AC6", ac6_four_landmark},
      {"AC7", ac7_closed_form}, {"AC8", ac8_kernels},       {"AC9", ac9_brain}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::cerr << "unknown criterion " << w << '\n';
      return 2;
    }
  }

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
