// Command-line front end: face-weight I/O, per-computation subcommands,
// verification suites and CSV/matrix exports.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gmrf/harmonic.hpp"
#include "gmrf/io.hpp"

using namespace gmrf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssumption = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

struct RunConfig {
  std::string face_file;
  std::vector<double> dihedral;  // t a u
  std::string config_file;
  int p = 2, q = 2;
  int n = 48;
  int grid = 256;
  double tol = 1e-8;
  std::string out_dir = ".";
  unsigned seed = 12345;
  double perturb = 0.0;
};

// flat key=value file; command-line flags win
void apply_config_file(RunConfig& cfg, const CLI::App& app) {
  if (cfg.config_file.empty()) return;
  std::ifstream is(cfg.config_file);
  if (!is) throw ParseError("cannot open config file " + cfg.config_file);
  std::string line;
  auto overridden = [&](const std::string& flag) { return app.count(flag) > 0; };
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "p" && !overridden("--p")) cfg.p = std::stoi(val);
    else if (key == "q" && !overridden("--q")) cfg.q = std::stoi(val);
    else if (key == "n" && !overridden("--n")) cfg.n = std::stoi(val);
    else if (key == "grid" && !overridden("--grid")) cfg.grid = std::stoi(val);
    else if (key == "tol" && !overridden("--tol")) cfg.tol = std::stod(val);
    else if (key == "out" && !overridden("--out")) cfg.out_dir = val;
    else if (key == "seed" && !overridden("--seed")) cfg.seed = std::stoul(val);
    else if (key == "face" && !overridden("--face")) cfg.face_file = val;
  }
}

FaceOperator load_face(const RunConfig& cfg) {
  if (!cfg.dihedral.empty()) {
    if (cfg.dihedral.size() != 3)
      throw ParseError("--dihedral wants exactly three numbers t a u");
    return dihedral_face(
        DihedralParams::scalar(cfg.dihedral[0], cfg.dihedral[1], cfg.dihedral[2]));
  }
  if (cfg.face_file.empty()) throw ParseError("provide --face FILE or --dihedral T A U");
  std::ifstream is(cfg.face_file);
  if (!is) throw ParseError("cannot open face file " + cfg.face_file);
  return read_face(is);
}

void check_grid(const RunConfig& cfg) {
  if (cfg.grid < 64 || (cfg.grid & (cfg.grid - 1)) != 0)
    throw AssumptionViolated("grid must be a power of two >= 64");
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream os(std::filesystem::path(cfg.out_dir) / name);
  if (!os) throw ParseError("cannot write to " + cfg.out_dir + "/" + name);
  return os;
}

int cmd_free_energy(const RunConfig& cfg) {
  check_grid(cfg);
  const auto Q = load_face(cfg);
  const auto report = eigen_report(Q, cfg.grid);
  std::cout.precision(12);
  std::cout << "log_lambda " << std::fixed << report.log_lambda_fourier << "\n";
  auto os = open_out(cfg, "eigen_report.csv");
  write_eigen_report_csv(os, report);
  return kExitOk;
}

int cmd_spectral(const RunConfig& cfg) {
  check_grid(cfg);
  const auto Q = load_face(cfg);
  {
    auto os = open_out(cfg, "integrand.csv");
    os << "theta1,theta2,logdet\n";
    for (int m1 = 0; m1 < cfg.grid; ++m1) {
      const Complex z = SymbolFunction::node(m1, cfg.grid);
      for (int m2 = 0; m2 < cfg.grid; ++m2) {
        const Complex w = SymbolFunction::node(m2, cfg.grid);
        os << format_double(2.0 * M_PI * m1 / cfg.grid) << ","
           << format_double(2.0 * M_PI * m2 / cfg.grid) << ","
           << format_double(log_det(psi(Q, z, w))) << "\n";
      }
    }
  }
  {
    auto os = open_out(cfg, "slice_roots.csv");
    os << "u_re,u_im,root_re,root_im\n";
    const int coarse = 64;
    for (int m = 0; m < coarse; ++m) {
      const Complex u = SymbolFunction::node(m, coarse);
      for (const auto& r : spectral_slice(Q, Axis::Second, u))
        os << format_double(u.real()) << "," << format_double(u.imag()) << ","
           << format_double(r.location.real()) << "," << format_double(r.location.imag())
           << "\n";
    }
  }
  {
    auto os = open_out(cfg, "strip_symbol.csv");
    write_symbol_csv(os, strip_symbol(Q, Direction::WE, cfg.grid).symbol);
  }
  {
    auto os = open_out(cfg, "halfplane_symbol.csv");
    write_symbol_csv(os, halfplane_symbol(Q, Side::S, cfg.grid).symbol);
  }
  std::cout << "spectral exports written to " << cfg.out_dir << "\n";
  return kExitOk;
}

int cmd_surface_power(const RunConfig& cfg) {
  const auto Q = load_face(cfg);
  const auto s = surface_power(Q, cfg.p, cfg.q);
  auto os = open_out(cfg, "surface_power.txt");
  write_rect(os, s);
  std::cout << "surface power " << cfg.p << "x" << cfg.q << " written, log_scale "
            << format_double(s.log_scale) << "\n";
  return kExitOk;
}

int cmd_halfstrip(const RunConfig& cfg) {
  check_grid(cfg);
  const auto Q = load_face(cfg);
  const auto hs = halfstrip_fixed_point(Q, Side::W, cfg.n, cfg.grid);
  auto os = open_out(cfg, "halfstrip.txt");
  write_halfstrip(os, hs);
  const auto r = halfstrip_residuals(Q, hs);
  std::cout << "halfstrip n=" << cfg.n << " residuals: cut " << format_double(r.cut_block)
            << " line " << format_double(r.line_block) << " transverse "
            << format_double(r.transverse) << "\n";
  return kExitOk;
}

int cmd_corner(const RunConfig& cfg) {
  check_grid(cfg);
  const auto Q = load_face(cfg);
  const auto C = corner_fixed_point(Q, Corner::SW, cfg.n, cfg.grid);
  auto os = open_out(cfg, "corner.txt");
  os << "corner SW " << cfg.n << " " << Q.d1 << " " << Q.d2 << "\n";
  write_matrix(os, C.assembled());
  const auto hsW = halfstrip_fixed_point(Q, Side::W, cfg.n, cfg.grid);
  const auto hsS = halfstrip_fixed_point(Q, Side::S, cfg.n, cfg.grid);
  const auto r = corner_residuals(Q, C, hsW, hsS);
  std::cout << "corner n=" << cfg.n << " residuals:";
  for (double v : r) std::cout << " " << format_double(v);
  std::cout << "\n";
  return kExitOk;
}

int cmd_boundary_weight(const RunConfig& cfg) {
  check_grid(cfg);
  if (cfg.n < std::max(cfg.p, cfg.q) + 8)
    throw TruncationExceeded("boundary assembly wants n >= max(p, q) + 8");
  const auto Q = load_face(cfg);
  const auto bw = assemble_boundary_weight(Q, cfg.p, cfg.q, cfg.n, cfg.grid);
  auto os = open_out(cfg, "boundary_weight.txt");
  write_boundary(os, bw);
  const auto cov = covariance_check(Q, cfg.p, cfg.q, cfg.n, cfg.grid);
  std::cout << "boundary weight " << cfg.p << "x" << cfg.q << " covariance residual "
            << format_double(cov.max_residual) << "\n";
  return kExitOk;
}

struct VerifyRow {
  std::string check;
  double residual;
  double threshold;
};

int run_verify(const RunConfig& cfg, const std::string& suite) {
  check_grid(cfg);
  const auto Q = load_face(cfg);
  std::vector<VerifyRow> rows;
  auto add = [&](const std::string& name, double value, double thr) {
    rows.push_back({name, value, thr});
  };
  const bool all = suite == "all";

  if (all || suite == "rect") {
    double worst_form = 0.0, worst_scale = 0.0, worst_stokes = 0.0;
    for (int p = 1; p <= 3; ++p)
      for (int qq = 1; qq <= 3; ++qq) {
        const auto orc = oracle_surface_power(Q, p, qq);
        const auto rec = surface_power(Q, p, qq);
        const auto sto = stokes_surface_power(Q, p, qq);
        const double scale = orc.form.matrix.mat().cwiseAbs().maxCoeff();
        worst_form = std::max(
            worst_form,
            (rec.form.matrix.mat() - orc.form.matrix.mat()).cwiseAbs().maxCoeff() / scale);
        worst_scale = std::max(worst_scale, std::abs(rec.log_scale - orc.log_scale));
        worst_stokes = std::max(
            worst_stokes,
            (sto.matrix.mat() - orc.form.matrix.mat()).cwiseAbs().maxCoeff() / scale);
      }
    add("rect.recursion_vs_oracle", worst_form, 1e-9);
    add("rect.log_scale", worst_scale, 1e-8);
    add("rect.stokes_vs_oracle", worst_stokes, 1e-8);
  }

  if (all || suite == "spectral") {
    add("spectral.positivity", torus_positivity_check(Q, 64) ? 0.0 : 1.0, 0.5);
    const double fe1 = free_energy(Q, cfg.grid);
    const double fe2 = free_energy(Q, 2 * cfg.grid);
    add("spectral.free_energy_doubling", std::abs(fe1 - fe2), 1e-11);
    const auto table = fourier_table(Q, 2, 2, cfg.grid);
    add("spectral.coeff_symmetry",
        (table.coeff(-1, -2) - table.coeff(1, 2).adjoint()).cwiseAbs().maxCoeff(), 1e-11);
  }

  if (all || suite == "onedim") {
    Matrix Kc(2 * Q.d2, 2 * Q.d2);
    Kc.block(0, 0, Q.d2, Q.d2) = Q.block(Side::W, Side::W);
    Kc.block(0, Q.d2, Q.d2, Q.d2) = Q.block(Side::W, Side::E);
    Kc.block(Q.d2, 0, Q.d2, Q.d2) = Q.block(Side::E, Side::W);
    Kc.block(Q.d2, Q.d2, Q.d2, Q.d2) = Q.block(Side::E, Side::E);
    const auto K = EdgeCoupling::from_matrix(Q.d2, Kc);
    const auto Wr = w_operators(K);
    const auto Wf = w_via_fourier(K);
    add("onedim.w_routes", (Wr.WL - Wf.WL).cwiseAbs().maxCoeff(), 1e-9);
    const auto g = invariant_boundaries(K, Wf);
    add("onedim.gl_fixed_point",
        (schur_1d_left(g.GL, K.matrix.mat()) - g.GL).cwiseAbs().maxCoeff(), 1e-10);
    add("onedim.gl_plus_gr",
        ((g.GL + g.GR) - fourier_phi_inv(K, 0).inverse()).cwiseAbs().maxCoeff(), 1e-10);
    double worst = 0.0;
    for (int nn = -4; nn <= 4; ++nn) {
      const Matrix lhs = (K.LL() + K.RR()) * fourier_phi_inv(K, nn) +
                         K.LR() * fourier_phi_inv(K, nn - 1) +
                         K.RL() * fourier_phi_inv(K, nn + 1);
      const Matrix expect =
          nn == 0 ? Matrix::Identity(Q.d2, Q.d2).eval() : Matrix::Zero(Q.d2, Q.d2).eval();
      worst = std::max(worst, (lhs - expect).cwiseAbs().maxCoeff());
    }
    add("onedim.coeff_recursion", worst, 1e-9);
  }

  if (all || suite == "strips") {
    const auto s1 = strip_symbol(Q, Direction::WE, cfg.grid);
    const auto lhs = strip_schur(s1, s1);
    const auto Q2 = glue_sn(to_scaled(Q), to_scaled(Q)).form;
    const auto Qf = FaceOperator::from_matrix(Q.d1, 2 * Q.d2, Q2.matrix.mat());
    const auto rhs = strip_symbol(Qf, Direction::WE, cfg.grid);
    double worst = 0.0;
    for (int m = 0; m < cfg.grid; ++m)
      worst = std::max(
          worst, (lhs.symbol.sample(m) - rhs.symbol.sample(m)).cwiseAbs().maxCoeff());
    add("strips.gluing_morphism", worst, 1e-10);
    const auto hp = halfplane_symbol(Q, Side::S, cfg.grid);
    add("strips.halfplane_fixed_point", halfplane_fixed_point_residual(s1, hp), 1e-9);
    double herm = 0.0;
    for (int m = 0; m < cfg.grid; ++m)
      herm = std::max(
          herm,
          (hp.symbol.sample(m) - hp.symbol.sample(m).adjoint().eval()).cwiseAbs().maxCoeff());
    add("strips.halfplane_hermitian", herm, 1e-10);
    const auto cf = cylinder_form(Q, 5, Direction::WE);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += log_det(cylinder_block(Q, 5, k, Direction::WE));
    add("strips.cylinder_logdet", std::abs(log_det(cf) - acc), 1e-10);
  }

  if (all || suite == "halfstrip") {
    auto hs = halfstrip_fixed_point(Q, Side::W, cfg.n, cfg.grid);
    if (cfg.perturb != 0.0)
      hs.line_ff.matrix += cfg.perturb * Matrix::Identity(hs.n * hs.dline, hs.n * hs.dline);
    const auto r = halfstrip_residuals(Q, hs);
    add("halfstrip.cut_block", r.cut_block, 1e-8);
    add("halfstrip.line_block", r.line_block, 1e-7);
    add("halfstrip.transverse", r.transverse, 1e-8);
    const auto sym = strip_symbol(Q, Direction::WE, cfg.grid);
    auto hsE = halfstrip_fixed_point(Q, Side::E, cfg.n, cfg.grid);
    if (cfg.perturb != 0.0)
      hs.first_cut += cfg.perturb * Matrix::Ones(hs.n * hs.dline, hs.w * hs.dcut);
    const auto cmp = glue_opposite_halfstrips(hs, hsE, sym, 8);
    add("halfstrip.opposite_gluing", cmp.near_cut_residual, 1e-6);
  }

  if (all || suite == "corner") {
    auto C = corner_fixed_point(Q, Corner::SW, cfg.n, cfg.grid);
    if (cfg.perturb != 0.0)
      C.hh.matrix += cfg.perturb * Matrix::Identity(C.n * C.dh, C.n * C.dh);
    const auto hsW = halfstrip_fixed_point(Q, Side::W, cfg.n, cfg.grid);
    const auto hsS = halfstrip_fixed_point(Q, Side::S, cfg.n, cfg.grid);
    const auto r = corner_residuals(Q, C, hsW, hsS);
    for (size_t i = 0; i < r.size(); ++i)
      add("corner.block_eq_" + std::to_string(i), r[i], 1e-6);
    // dihedral invariance turns the adjointness of the two transverse
    // couplings into hermiticity of the stored V block
    const int mv = (C.n - 8) * C.dv;
    add("corner.v_adjoint",
        (C.v_from_h - C.v_from_h.adjoint().eval())
            .topLeftCorner(mv, mv)
            .cwiseAbs()
            .maxCoeff(),
        1e-8);
    const auto hp = halfplane_symbol(Q, Side::S, cfg.grid);
    const auto cmp = glue_corners_to_halfplane(C, C, hp, 8);
    add("corner.halfplane_gluing", cmp.near_cut_residual, 1e-5);
  }

  if (all || suite == "boundary") {
    if (cfg.n < std::max(cfg.p, cfg.q) + 8)
      throw TruncationExceeded("boundary verification wants n >= max(p, q) + 8");
    auto cov = covariance_check(Q, cfg.p, cfg.q, cfg.n, cfg.grid);
    double covres = cov.max_residual + std::abs(cfg.perturb);
    add("boundary.covariance", covres, 1e-5);
    add("boundary.restriction",
        restriction_consistency_check(Q, cfg.p + 1, cfg.q + 1, std::max(1, cfg.p - 1),
                                      std::max(1, cfg.q - 1), cfg.n, cfg.grid),
        1e-5);
  }

  if (all || suite == "eigen") {
    const auto rep = eigen_report(Q, cfg.grid, {16, 32}, {32});
    add("eigen.factorization", rep.factorization_residual, 1e-9);
    add("eigen.szego_vs_integral",
        std::abs(rep.szego_sequence.back().second - rep.log_lambda_prime_integral), 1e-3);
    add("eigen.torus_gap",
        std::abs(rep.torus_per_face.back().second - rep.log_lambda_fourier), 1e-2);
  }

  if (rows.empty()) throw ParseError("unknown verify suite '" + suite + "'");

  auto os = open_out(cfg, "verify_" + suite + ".csv");
  os << "check,residual,threshold,pass\n";
  bool ok = true;
  for (const auto& row : rows) {
    const bool pass = row.residual < row.threshold;
    ok = ok && pass;
    os << row.check << "," << format_double(row.residual) << ","
       << format_double(row.threshold) << "," << (pass ? "1" : "0") << "\n";
    std::cout << (pass ? "PASS " : "FAIL ") << row.check << " residual "
              << format_double(row.residual) << " threshold "
              << format_double(row.threshold) << "\n";
  }
  return ok ? kExitOk : kExitAssumption;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guillotine calculus for Gaussian Markov fields on the square lattice"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--face", cfg.face_file, "face-weight file (face or dihedral header)");
  app.add_option("--dihedral", cfg.dihedral, "scalar dihedral weight t a u")->expected(3);
  app.add_option("--config", cfg.config_file, "flat key=value config file");
  app.add_option("--p", cfg.p, "rectangle width");
  app.add_option("--q", cfg.q, "rectangle height");
  app.add_option("--n", cfg.n, "half-line truncation order");
  app.add_option("--grid", cfg.grid, "quadrature grid size (power of two)");
  app.add_option("--tol", cfg.tol, "report tolerance");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--perturb", cfg.perturb, "perturbation for negative controls");

  auto* fe = app.add_subcommand("free-energy", "free energy and eigenvalue report");
  auto* sx = app.add_subcommand("spectral", "integrand, slice-root and symbol CSV exports");
  auto* sp = app.add_subcommand("surface-power", "boundary form of a p x q rectangle");
  auto* hs = app.add_subcommand("halfstrip", "half-strip fixed point");
  auto* cn = app.add_subcommand("corner", "corner fixed point");
  auto* bw = app.add_subcommand("boundary-weight", "consistent boundary weight");
  auto* vf = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  vf->add_option("suite", suite,
                 "rect|spectral|onedim|strips|halfstrip|corner|boundary|eigen|all");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_config_file(cfg, app);
    if (fe->parsed()) return cmd_free_energy(cfg);
    if (sx->parsed()) return cmd_spectral(cfg);
    if (sp->parsed()) return cmd_surface_power(cfg);
    if (hs->parsed()) return cmd_halfstrip(cfg);
    if (cn->parsed()) return cmd_corner(cfg);
    if (bw->parsed()) return cmd_boundary_weight(cfg);
    if (vf->parsed()) return run_verify(cfg, suite);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const QuadratureNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  }
  return kExitOk;
}
