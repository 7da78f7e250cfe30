#include "ektau/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ektau/compatibility.hpp"
#include "ektau/correspondence.hpp"
#include "ektau/fundamental_data.hpp"
#include "ektau/mesh_io.hpp"
#include "ektau/quadruple.hpp"
#include "ektau/reconstruction.hpp"
#include "ektau/surface_patch.hpp"

namespace ektau {

namespace {

struct JobConfig {
  std::optional<double> kappa, tau;
  std::string catalog_name;
  double H = 0.0;
  std::string grid_spec;
  std::optional<double> u0, u1, v0, v1;
  double h_amb = 1e-4;
  double tol = 0.0;  // 0: h^2-scaled default
  std::string out;
  std::string quadruple_path;
  bool do_reconstruct = false;
  int h2_sign = +1;
  // sister targets
  std::optional<double> target_kappa, target_tau;
};

void add_shared(CLI::App* cmd, JobConfig& cfg) {
  cmd->add_option("--kappa", cfg.kappa, "base curvature");
  cmd->add_option("--tau", cfg.tau, "bundle curvature");
  cmd->add_option("--catalog", cfg.catalog_name, "catalog surface name");
  cmd->add_option("--H", cfg.H, "mean curvature parameter (tube/sphere)");
  cmd->add_option("--grid", cfg.grid_spec, "grid size NxM (default: the catalog extent, 41x41)");
  cmd->add_option("--u0", cfg.u0, "parameter rectangle");
  cmd->add_option("--u1", cfg.u1, "parameter rectangle");
  cmd->add_option("--v0", cfg.v0, "parameter rectangle");
  cmd->add_option("--v1", cfg.v1, "parameter rectangle");
  cmd->add_option("--h-amb", cfg.h_amb, "ambient finite-difference step");
  cmd->add_option("--tol", cfg.tol, "verification tolerance");
  cmd->add_option("--out", cfg.out, "output path");
  cmd->add_option("--quadruple", cfg.quadruple_path, "quadruple grid file");
  cmd->add_flag("--reconstruct", cfg.do_reconstruct,
                "also integrate and write a mesh");
  cmd->add_option("--h2-sign", cfg.h2_sign, "sign of H2 for sister (+1|-1)")
      ->check(CLI::IsMember({+1, -1}));
  // handled by a prepass in run_cli; registered here for --help only
  std::string dummy;
  cmd->add_option("--config", dummy, "key = value configuration file");
}

// Expands "--config <file>" into the equivalent flags. Keys already present
// on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& in) {
  std::string path;
  std::vector<std::string> args;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config" && i + 1 < in.size()) {
      path = in[++i];
    } else if (in[i].rfind("--config=", 0) == 0) {
      path = in[i].substr(9);
    } else {
      args.push_back(in[i]);
    }
  }
  if (path.empty()) return args;
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key[0] == '#') continue;
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
    if (present) continue;
    if (key == "reconstruct") {  // bare flag
      if (value == "true" || value == "1" || value == "yes")
        args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

GridSpec parse_grid(const JobConfig& cfg, const GridSpec& fallback) {
  GridSpec g = fallback;
  if (!cfg.grid_spec.empty()) {
    const auto xpos = cfg.grid_spec.find('x');
    if (xpos == std::string::npos)
      throw std::invalid_argument("--grid expects NxM, e.g. 81x81");
    g.n_u = std::stoi(cfg.grid_spec.substr(0, xpos));
    g.n_v = std::stoi(cfg.grid_spec.substr(xpos + 1));
    if (g.n_u < 2 || g.n_v < 2)
      throw std::invalid_argument("--grid sizes must be at least 2");
  }
  if (cfg.u0) g.u0 = *cfg.u0;
  if (cfg.u1) g.u1 = *cfg.u1;
  if (cfg.v0) g.v0 = *cfg.v0;
  if (cfg.v1) g.v1 = *cfg.v1;
  if (!(g.u0 < g.u1) || !(g.v0 < g.v1))
    throw std::invalid_argument("parameter rectangle must be nonempty");
  return g;
}

struct Source {
  QuadrupleField q;
  GridSpec grid;
};

Source load_source(const JobConfig& cfg) {
  const bool has_cat = !cfg.catalog_name.empty();
  const bool has_file = !cfg.quadruple_path.empty();
  if (has_cat == has_file)
    throw std::invalid_argument(
        "exactly one surface source required: --catalog or --quadruple");
  Source s;
  if (has_cat) {
    auto patch = catalog(cfg.catalog_name, cfg.H);
    s.grid = parse_grid(cfg, patch->extent());
    ExtractionOptions eo;
    eo.h_amb = cfg.h_amb;
    s.q = fundamental_data(*patch, s.grid, eo);
  } else {
    s.q = read_quadruple_file(cfg.quadruple_path);
    s.grid = s.q.grid;
  }
  return s;
}

ModelSpace cli_model(double kappa, double tau) {
  if (std::abs(kappa - 4.0 * tau * tau) < 1e-12)
    throw std::invalid_argument("kappa equals 4 tau^2");
  return ModelSpace(kappa, tau);
}

ModelSpace own_model(const QuadrupleField& q) {
  return cli_model(q.kappa, q.tau);
}

// For commands where --kappa/--tau describe the source surface, check they
// agree with the data.
void check_model_flags(const JobConfig& cfg, const QuadrupleField& q) {
  if (cfg.kappa && std::abs(*cfg.kappa - q.kappa) > 1e-12)
    throw std::invalid_argument("--kappa disagrees with the surface model");
  if (cfg.tau && std::abs(*cfg.tau - q.tau) > 1e-12)
    throw std::invalid_argument("--tau disagrees with the surface model");
}

int cmd_catalog_list() {
  for (const auto& e : catalog_entries()) {
    std::cout << e.name << "  (kappa=" << e.kappa << ", tau=" << e.tau << ")"
              << (e.takes_H ? "  [H > 0 required]" : "") << "  "
              << e.description << "\n";
  }
  return 0;
}

int cmd_verify(const JobConfig& cfg) {
  // kappa/tau may intentionally differ from the source model here: they give
  // the model the compatibility equations are checked against.
  if (cfg.kappa.has_value() != cfg.tau.has_value())
    throw std::invalid_argument("--kappa and --tau must be given together");
  std::optional<ModelSpace> flag_model;
  if (cfg.kappa) flag_model = cli_model(*cfg.kappa, *cfg.tau);
  Source s = load_source(cfg);
  ModelSpace target = flag_model ? *flag_model : own_model(s.q);
  const double tol = cfg.tol > 0.0 ? cfg.tol : default_tol(s.grid);
  const CompatReport rep = verify(s.q, target, tol);
  const std::string text = report_to_string(rep);
  std::cout << text;
  if (!cfg.out.empty()) {
    std::ofstream os(cfg.out);
    if (!os) throw std::runtime_error("cannot open for writing: " + cfg.out);
    os << text;
  }
  return rep.pass ? 0 : 2;
}

void maybe_reconstruct_mesh(const JobConfig& cfg, const QuadrupleField& q,
                            const ModelSpace& m) {
  if (!cfg.do_reconstruct) return;
  if (cfg.out.empty())
    throw std::invalid_argument("--reconstruct requires --out");
  IntegrationOptions io;
  io.h_amb = cfg.h_amb;
  auto patch = reconstruct(q, m, io);
  write_mesh_file(cfg.out + ".obj", patch->grid(), patch->points());
  std::cout << "mesh written to " << cfg.out << ".obj\n";
}

int cmd_sister(const JobConfig& cfg) {
  if (!cfg.target_kappa || !cfg.target_tau)
    throw std::invalid_argument(
        "sister requires --target-kappa and --target-tau");
  Source s = load_source(cfg);
  check_model_flags(cfg, s.q);
  ModelSpace m1 = own_model(s.q);
  ModelSpace m2 = cli_model(*cfg.target_kappa, *cfg.target_tau);
  SisterOptions so;
  so.h2_sign = cfg.h2_sign;
  auto [q2, ph] = sister(s.q, m1, m2, so);
  std::cout << "phase theta = " << format_real(ph.theta) << " rad (H1 = "
            << format_real(ph.H1) << ", H2 = " << format_real(ph.H2) << ")\n";
  if (!cfg.out.empty()) write_quadruple_file(cfg.out, q2);
  maybe_reconstruct_mesh(cfg, q2, m2);
  return 0;
}

int cmd_twin(const JobConfig& cfg) {
  Source s = load_source(cfg);
  check_model_flags(cfg, s.q);
  ModelSpace m = own_model(s.q);
  double mean, dev;
  s.q.mean_curvature_stats(mean, dev);
  auto [q2, ph] = twin(s.q, m, mean);
  std::cout << "phase theta = " << format_real(ph.theta) << " rad (H = "
            << format_real(ph.H1) << " -> " << format_real(ph.H2) << ")\n";
  if (!cfg.out.empty()) write_quadruple_file(cfg.out, q2);
  maybe_reconstruct_mesh(cfg, q2, m);
  return 0;
}

int cmd_reconstruct(const JobConfig& cfg) {
  if (cfg.out.empty())
    throw std::invalid_argument("reconstruct requires --out");
  Source s = load_source(cfg);
  check_model_flags(cfg, s.q);
  ModelSpace m = own_model(s.q);
  IntegrationOptions io;
  io.h_amb = cfg.h_amb;
  if (cfg.tol > 0.0) io.compat_tol = cfg.tol;
  auto patch = reconstruct(s.q, m, io);
  write_sampled_patch_file(cfg.out, s.q, patch->points());
  write_mesh_file(cfg.out + ".obj", patch->grid(), patch->points());
  std::cout << "sampled patch written to " << cfg.out << ", mesh to "
            << cfg.out << ".obj\n";
  return 0;
}

int cmd_export(const JobConfig& cfg) {
  if (cfg.out.empty()) throw std::invalid_argument("export requires --out");
  if (!cfg.quadruple_path.empty()) {
    // a sampled-patch file (as written by `reconstruct`)
    const SampledPatchData data = read_sampled_patch_file(cfg.quadruple_path);
    write_mesh_file(cfg.out, data.q.grid, data.positions);
    std::cout << "mesh written to " << cfg.out << "\n";
    return 0;
  }
  if (cfg.catalog_name.empty())
    throw std::invalid_argument(
        "export requires --catalog or a sampled-patch file");
  auto patch = catalog(cfg.catalog_name, cfg.H);
  if (cfg.kappa && std::abs(*cfg.kappa - patch->model().kappa()) > 1e-12)
    throw std::invalid_argument("--kappa disagrees with the surface model");
  if (cfg.tau && std::abs(*cfg.tau - patch->model().tau()) > 1e-12)
    throw std::invalid_argument("--tau disagrees with the surface model");
  const GridSpec grid = parse_grid(cfg, patch->extent());
  std::vector<Vec3> pts(grid.size());
  for (int j = 0; j < grid.n_v; ++j)
    for (int i = 0; i < grid.n_u; ++i)
      pts[grid.idx(i, j)] = patch->position(grid.u(i), grid.v(j));
  write_mesh_file(cfg.out, grid, pts);
  std::cout << "mesh written to " << cfg.out << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "surfaces in homogeneous 3-manifolds E(kappa,tau): fundamental data, "
      "compatibility verification, sister/twin correspondences, "
      "reconstruction"};
  app.require_subcommand(1);

  JobConfig cfg;

  CLI::App* cat = app.add_subcommand("catalog", "list built-in surfaces");
  std::string cat_action;
  cat->add_option("action", cat_action, "what to do (list)")->required();

  CLI::App* c_verify =
      app.add_subcommand("verify", "check the compatibility equations");
  CLI::App* c_sister = app.add_subcommand(
      "sister", "apply the isometric correspondence to another model");
  c_sister->add_option("--target-kappa", cfg.target_kappa,
                       "target base curvature");
  c_sister->add_option("--target-tau", cfg.target_tau,
                       "target bundle curvature");
  CLI::App* c_twin =
      app.add_subcommand("twin", "opposite-mean-curvature twin in the same model");
  CLI::App* c_rec =
      app.add_subcommand("reconstruct", "integrate an immersion from a quadruple");
  CLI::App* c_exp = app.add_subcommand("export", "sample a catalog surface to a mesh");
  for (CLI::App* c : {c_verify, c_sister, c_twin, c_rec, c_exp})
    add_shared(c, cfg);

  try {
    std::vector<std::string> raw(argv + 1, argv + argc);
    const std::vector<std::string> expanded = expand_config(raw);
    std::vector<const char*> ptrs = {argv[0]};
    for (const auto& a : expanded) ptrs.push_back(a.c_str());
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cat->parsed()) {
      if (cat_action != "list")
        throw std::invalid_argument("catalog: unknown action '" + cat_action +
                                    "'");
      return cmd_catalog_list();
    }
    if (c_verify->parsed()) return cmd_verify(cfg);
    if (c_sister->parsed()) return cmd_sister(cfg);
    if (c_twin->parsed()) return cmd_twin(cfg);
    if (c_rec->parsed()) return cmd_reconstruct(cfg);
    if (c_exp->parsed()) return cmd_export(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ektau
