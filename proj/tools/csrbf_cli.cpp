#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "csrbf/errors.hpp"
#include "csrbf/four_landmark.hpp"
#include "csrbf/io.hpp"
#include "csrbf/registration.hpp"
#include "csrbf/support_analysis.hpp"
#include "csrbf/warp_render.hpp"

namespace fs = std::filesystem;
using namespace csrbf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTopology = 3;
constexpr int kExitNumeric = 4;

// Raised for invalid flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KernelArgs {
  std::string name;
  std::optional<double> l;
};

void add_kernel_options(CLI::App* cmd, KernelArgs& k, const std::string& flag, bool required) {
  auto* opt = cmd->add_option(flag, k.name, "kernel: wendland, wu, gneiting-7-2, gneiting-5 or gneiting");
  if (required) opt->required();
  cmd->add_option("--l", k.l, "exponent l >= 3.5 for --" + flag.substr(2) + " gneiting");
}

KernelFamily resolve_family(const KernelArgs& k) {
  if (k.name == "gneiting" && !k.l) throw UsageError("family 'gneiting' requires --l");
  if (k.name != "gneiting" && k.l) throw UsageError("--l only applies to family 'gneiting'");
  return parse_family(k.name, k.l.value_or(0.0));
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
}

// ---- min-support ----

struct MinSupportArgs {
  KernelArgs kernel;
  double delta = 0.0;
  bool all = false;
};

int run_min_support(const MinSupportArgs& a) {
  if (!(a.delta > 0.0)) throw UsageError("--delta must be positive");
  if (a.all == !a.kernel.name.empty()) throw UsageError("give exactly one of --family and --all");
  std::vector<SupportBound> rows;
  if (a.all) {
    for (int i = 0; i < kNamedFamilyCount; ++i) rows.push_back(support_bound(named_family(i)));
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SupportBound& p, const SupportBound& q) { return p.c_min_over_delta < q.c_min_over_delta; });
  } else {
    rows.push_back(support_bound(resolve_family(a.kernel)));
  }
  std::cout << "family,r_star_over_c,slope_min,c_min_over_delta,c_min\n";
  for (const auto& b : rows) {
    std::cout << b.family.name() << ',' << format_number(b.r_star_over_c) << ',' << format_number(b.slope_min) << ','
              << format_number(b.c_min_over_delta) << ',' << format_number(b.c_min_over_delta * a.delta) << '\n';
  }
  return kExitOk;
}

// ---- fit-warp ----

struct FitWarpArgs {
  std::string landmarks;
  std::string image;
  std::string out;
  KernelArgs kernel;
  std::string c;
  double safety = 1.001;
  std::string det_csv;
  std::optional<std::size_t> det_nx;
  std::optional<std::size_t> det_ny;
  int fill = 0;
  bool require_topology = false;
};

double parse_support(const std::string& text, const KernelFamily& family, const LandmarkCorrespondence& lm,
                     double safety) {
  if (text == "auto") {
    if (!(safety >= 1.0)) throw UsageError("--safety must be at least 1");
    const double delta = lm.max_shift();
    if (delta == 0.0) throw UsageError("--c auto needs at least one displaced landmark");
    return safety * min_support(family, delta);
  }
  std::size_t used = 0;
  double c = 0.0;
  try {
    c = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(c > 0.0)) throw UsageError("--c must be a positive number or 'auto'");
  return c;
}

int run_fit_warp(const FitWarpArgs& a) {
  const KernelFamily family = resolve_family(a.kernel);
  const LandmarkCorrespondence lm = load_landmarks(a.landmarks);
  const RasterImage img = read_pnm(fs::path(a.image));
  if (a.fill < 0 || a.fill > 255) throw UsageError("--fill must be in [0, 255]");
  const double c = parse_support(a.c, family, lm, a.safety);
  const Kernel kernel(family, c);

  const RasterImage warped = warp_image(kernel, lm, img, static_cast<std::uint8_t>(a.fill));
  {
    std::ofstream out = open_output(a.out);
    write_pnm(out, warped);
  }

  const std::size_t nx = a.det_nx.value_or(4 * (img.width() - 1) + 1);
  const std::size_t ny = a.det_ny.value_or(4 * (img.height() - 1) + 1);
  const Rect region{0.0, 0.0, static_cast<double>(img.width() - 1), static_cast<double>(img.height() - 1)};
  const JacobianField field = det_field(backward_transformation(kernel, lm), region, nx, ny);
  if (!a.det_csv.empty()) {
    std::ofstream out = open_output(a.det_csv);
    write_det_field_csv(out, field);
  }

  std::cout << "kernel: " << family.name() << "\nc: " << format_number(c) << "\nmin_det: " << format_number(field.min_det)
            << " at (" << format_number(field.argmin.x) << ", " << format_number(field.argmin.y) << ")\n"
            << "negative_fraction: " << format_number(field.negative_fraction) << '\n';
  if (a.require_topology && !(field.min_det > 0.0)) {
    std::cerr << "topology violation: min det " << format_number(field.min_det) << " <= 0\n";
    return kExitTopology;
  }
  return kExitOk;
}

// ---- figures ----

struct FiguresArgs {
  std::string id;
  std::optional<std::string> kernel;
  std::optional<double> l;
  std::optional<double> c;
  std::optional<double> delta;
  std::string out_dir = ".";
};

const LandmarkCorrespondence& one_landmark_case() {
  static const LandmarkCorrespondence lm({{0.5, 0.5}}, {{0.6, 0.7}});
  return lm;
}

const LandmarkCorrespondence& four_landmark_case() {
  static const LandmarkCorrespondence lm({{0.5, 0.65}, {0.35, 0.5}, {0.65, 0.5}, {0.5, 0.35}},
                                         {{0.5, 0.65}, {0.35, 0.5}, {0.65, 0.5}, {0.5, 0.25}});
  return lm;
}

// Near-minimal support sizes for the one-landmark panels, indexed like named_family.
constexpr double kOneLandmarkSupport[kNamedFamilyCount] = {0.6, 0.58, 1.02, 1.26};

std::vector<KernelFamily> figure_families(const FiguresArgs& a) {
  if (!a.kernel) {
    if (a.l) throw UsageError("--l requires --kernel gneiting");
    std::vector<KernelFamily> all;
    for (int i = 0; i < kNamedFamilyCount; ++i) all.push_back(named_family(i));
    return all;
  }
  return {resolve_family(KernelArgs{*a.kernel, a.l})};
}

double default_support(const std::string& id, const KernelFamily& f) {
  if (id == "4.1") {
    for (int i = 0; i < kNamedFamilyCount; ++i) {
      if (named_family(i) == f) return kOneLandmarkSupport[i];
    }
    return 1.001 * min_support(f, one_landmark_case().max_shift());
  }
  if (id == "4.2" || id == "5.3") return 0.15;
  return 100.0;
}

int run_figures(const FiguresArgs& a) {
  static const std::vector<std::string> ids = {"4.1", "4.2", "5.2", "5.3", "fig2-curve"};
  if (std::find(ids.begin(), ids.end(), a.id) == ids.end()) throw UsageError("unknown figure id '" + a.id + "'");
  if (a.c && !(*a.c > 0.0)) throw UsageError("--c must be positive");
  const std::vector<KernelFamily> families = figure_families(a);
  const fs::path dir(a.out_dir);

  if (a.id == "fig2-curve") {
    const double delta = a.delta.value_or(0.2);
    if (!(delta >= 0.0)) throw UsageError("--delta must be non-negative");
    const auto rows = figure2_table(families, a.c.value_or(100.0), delta, axis_samples(50, 5.0));
    std::string text = "y,kernel,det\n";
    for (const auto& r : rows) text += format_number(r.y) + ',' + r.family.name() + ',' + format_number(r.det) + '\n';
    const fs::path path = dir / "fig2-curve.csv";
    write_text(path, text);
    std::cout << path.string() << '\n';
    return kExitOk;
  }

  if (a.delta) throw UsageError("--delta only applies to fig2-curve");
  const bool one = a.id == "4.1" || a.id == "4.2";
  const LandmarkCorrespondence& lm = one ? one_landmark_case() : four_landmark_case();
  for (const auto& f : families) {
    const double c = a.c.value_or(default_support(a.id, f));
    FigureDoc doc = deform_grid(fit(Kernel(f, c), lm), GridSpec{{0.0, 0.0, 1.0, 1.0}, 21, 201}, lm);
    doc.title = "figure " + a.id + ": " + f.name() + ", c = " + format_number(c);
    const fs::path path = dir / ("fig" + a.id + "-" + f.name() + ".svg");
    write_text(path, doc.to_svg());
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

// ---- make-fixture ----

int run_make_fixture(const std::string& out_dir) {
  const fs::path dir(out_dir);
  {
    std::ofstream out = open_output(dir / "brain_synthetic.pgm");
    write_pnm(out, synthetic_brain_image(128, 128));
  }
  const LandmarkCorrespondence lm = synthetic_brain_landmarks();
  {
    std::ofstream out = open_output(dir / "brain_landmarks.csv");
    write_landmarks_csv(out, lm);
  }
  {
    std::ofstream out = open_output(dir / "brain_landmarks.json");
    write_landmarks_json(out, lm);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landmark registration with compactly supported radial basis functions"};
  app.require_subcommand(1);

  MinSupportArgs ms;
  auto* ms_cmd = app.add_subcommand("min-support", "minimum support size that keeps the Jacobian positive");
  add_kernel_options(ms_cmd, ms.kernel, "--family", false);
  ms_cmd->add_option("--delta", ms.delta, "largest coordinate shift of a landmark")->required();
  ms_cmd->add_flag("--all", ms.all, "report the four named kernels, smallest bound first");

  FitWarpArgs fw;
  auto* fw_cmd = app.add_subcommand("fit-warp", "fit a transformation and warp a PGM/PPM image");
  fw_cmd->add_option("--landmarks", fw.landmarks, "landmark CSV or JSON file")->required();
  fw_cmd->add_option("--image", fw.image, "input PGM/PPM image")->required();
  fw_cmd->add_option("--out", fw.out, "output PGM/PPM image")->required();
  add_kernel_options(fw_cmd, fw.kernel, "--kernel", true);
  fw_cmd->add_option("--c", fw.c, "support size, or 'auto' for safety * minimum support")->required();
  fw_cmd->add_option("--safety", fw.safety, "factor applied to the minimum support with --c auto");
  fw_cmd->add_option("--det-csv", fw.det_csv, "write the Jacobian determinant field as CSV");
  fw_cmd->add_option("--det-nx", fw.det_nx, "determinant samples per row (default 4(width-1)+1)")
      ->check(CLI::PositiveNumber);
  fw_cmd->add_option("--det-ny", fw.det_ny, "determinant rows (default 4(height-1)+1)")->check(CLI::PositiveNumber);
  fw_cmd->add_option("--fill", fw.fill, "value for samples outside the input image");
  fw_cmd->add_flag("--require-topology", fw.require_topology, "exit 3 when the determinant is not positive");

  FiguresArgs fg;
  auto* fg_cmd = app.add_subcommand("figures", "regenerate deformation figures (SVG) or determinant curves (CSV)");
  fg_cmd->add_option("--id", fg.id, "4.1, 4.2, 5.2, 5.3 or fig2-curve")->required();
  fg_cmd->add_option("--kernel", fg.kernel, "single kernel instead of all four");
  fg_cmd->add_option("--l", fg.l, "exponent for --kernel gneiting");
  fg_cmd->add_option("--c", fg.c, "override the support size");
  fg_cmd->add_option("--delta", fg.delta, "lower-vertex shift for fig2-curve (default 0.2)");
  fg_cmd->add_option("--out-dir", fg.out_dir, "output directory");

  std::string fixture_dir = "data";
  auto* mf_cmd = app.add_subcommand("make-fixture", "write the synthetic brain image and its landmarks");
  mf_cmd->add_option("--out-dir", fixture_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ms_cmd) return run_min_support(ms);
    if (*fw_cmd) return run_fit_warp(fw);
    if (*fg_cmd) return run_figures(fg);
    if (*mf_cmd) return run_make_fixture(fixture_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConditioningError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const SingularConfigurationError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
