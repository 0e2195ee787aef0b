#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "forage/csv.hpp"
#include "forage/doubled.hpp"
#include "forage/errors.hpp"
#include "forage/graph.hpp"
#include "forage/harness.hpp"
#include "forage/kernels.hpp"
#include "forage/mean_field.hpp"
#include "forage/oracle.hpp"
#include "forage/parallel.hpp"
#include "forage/scenario.hpp"
#include "forage/svg.hpp"
#include "forage/swarm.hpp"

namespace {

using namespace forage;

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

/// Everything a subcommand needs: lattice, goals, doubled system, shortest
/// s-t path membership for the mass metric.
struct Scene {
  ScenarioConfig cfg;
  Graph g;
  DoubledGraph dg;
  OptimalPathSet pstar;
};

Scene load_scene(const std::string& scenario_path) {
  Scene sc;
  sc.cfg = parse_scenario(scenario_path);
  sc.g = build_triangular_lattice(sc.cfg.rows, sc.cfg.cols, sc.cfg.obstacles);
  const auto s_cell = sc.cfg.s_cell;
  const auto t_cell = sc.cfg.resolved_t_cell();
  const auto s = sc.g.vertex_at(s_cell.first, s_cell.second);
  const auto t = sc.g.vertex_at(t_cell.first, t_cell.second);
  if (!s) throw RangeError("s_cell is not a lattice vertex");
  if (!t) throw RangeError("t_cell is not a lattice vertex");
  if (*s == *t) throw RangeError("s_cell and t_cell must differ");
  sc.dg = build_doubled(sc.g, *s, *t);
  sc.pstar = optimal_path_vertices(sc.g, *s, *t);
  return sc;
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

/// Mass of a doubled vector on the shortest-path vertex set (both copies).
double mass_on_pstar(const Scene& sc, const std::vector<double>& vec) {
  double mass = 0.0;
  for (int v = 0; v < sc.dg.V(); ++v) {
    if (!sc.pstar.on_path[v]) continue;
    mass += vec[sc.dg.idx(1, v)] + vec[sc.dg.idx(2, v)];
  }
  return mass;
}

double linf_gap(const DoubledGraph& dg, const std::vector<double>& a,
                const std::vector<double>& b) {
  double gap = 0.0;
  for (int i = 0; i < dg.dim(); ++i) {
    if (!dg.active(i)) continue;
    gap = std::max(gap, std::abs(a[i] - b[i]));
  }
  return gap;
}

/// Heatmap of the signed seek-minus-return weight field with occupancy markers.
void write_snapshot(const Scene& sc, const std::vector<double>& w,
                    const std::vector<double>& occupancy_doubled, const std::string& path) {
  std::vector<double> signed_w(sc.dg.V());
  HeatmapMarkers markers;
  markers.s_vertex = sc.dg.s;
  markers.t_vertex = sc.dg.t;
  markers.occupancy.resize(sc.dg.V());
  for (int v = 0; v < sc.dg.V(); ++v) {
    signed_w[v] = w[sc.dg.idx(1, v)] - w[sc.dg.idx(2, v)];
    markers.occupancy[v] =
        occupancy_doubled[sc.dg.idx(1, v)] + occupancy_doubled[sc.dg.idx(2, v)];
  }
  write_heatmap_svg(sc.g, signed_w, markers, path);
}

int cmd_mf_run(const std::string& scenario_path, const std::string& out_dir) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);
  const std::vector<double> winf =
      closed_form_w_inf(sc.dg, sc.cfg.r, sc.cfg.lambda);

  std::vector<TimeseriesRecord> records;
  MeanFieldEngine engine(sc.dg, sc.cfg.dynamics());
  const auto on_snapshot = [&](const MeanFieldState& st) {
    records.push_back({st.t, "mass_on_pstar", mass_on_pstar(sc, st.y)});
    records.push_back({st.t, "w_gap_winf", linf_gap(sc.dg, st.w, winf)});
    write_snapshot(sc, st.w, st.y, out_path(out_dir, "snap_" + std::to_string(st.t) + ".svg"));
  };
  const ConvergenceReport report =
      engine.run(sc.cfg.max_t, sc.cfg.tol, sc.cfg.snapshot_stride, on_snapshot);

  for (const auto& sample : report.samples) {
    records.push_back({sample.t, "y_residual", sample.y_residual});
    records.push_back({sample.t, "w_residual", sample.w_residual});
  }
  if (report.t_stop % sc.cfg.snapshot_stride != 0) {
    records.push_back({report.t_stop, "y_residual", report.y_residual});
    records.push_back({report.t_stop, "w_residual", report.w_residual});
  }
  write_timeseries_csv(std::move(records), out_path(out_dir, "timeseries.csv"));
  write_indexed_csv(engine.state().y, out_path(out_dir, "final_y.csv"));
  write_indexed_csv(engine.state().w, out_path(out_dir, "final_w.csv"));
  write_snapshot(sc, engine.state().w, engine.state().y, out_path(out_dir, "final.svg"));

  if (!report.converged) {
    std::cerr << "mean-field run hit max_t = " << sc.cfg.max_t
              << " before reaching tol = " << sc.cfg.tol
              << " (y residual " << report.y_residual << ", w residual "
              << report.w_residual << "); outputs written\n";
    return kExitNoConvergence;
  }
  std::cout << "converged at t = " << report.t_stop << "\n";
  return 0;
}

int cmd_swarm_run(const std::string& scenario_path, const std::string& out_dir) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);
  const std::vector<double> winf =
      closed_form_w_inf(sc.dg, sc.cfg.r, sc.cfg.lambda);

  const SwarmTrajectory traj = run_swarm(sc.dg, sc.cfg.dynamics(), sc.cfg.n,
                                         sc.cfg.horizon, sc.cfg.seed,
                                         sc.cfg.snapshot_stride);
  std::vector<TimeseriesRecord> records;
  for (const auto& snap : traj.snapshots) {
    records.push_back({snap.t, "mass_on_pstar", mass_on_pstar(sc, snap.qhat)});
    records.push_back({snap.t, "w_gap_winf", linf_gap(sc.dg, snap.w, winf)});
    write_snapshot(sc, snap.w, snap.qhat,
                   out_path(out_dir, "snap_" + std::to_string(snap.t) + ".svg"));
  }
  write_timeseries_csv(std::move(records), out_path(out_dir, "timeseries.csv"));
  const SwarmSnapshot& last = traj.snapshots.back();
  write_indexed_csv(last.qhat, out_path(out_dir, "final_q.csv"));
  write_indexed_csv(last.w, out_path(out_dir, "final_w.csv"));
  write_snapshot(sc, last.w, last.qhat, out_path(out_dir, "final.svg"));
  std::cout << "ran " << sc.cfg.n << " agents to t = " << last.t << "\n";
  return 0;
}

int cmd_oracle(const std::string& scenario_path, const std::string& out_dir) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);

  const std::vector<double> winf =
      closed_form_w_inf(sc.dg, sc.cfg.r, sc.cfg.lambda);
  const OptimalDistribution opt = optimal_distribution(sc.dg);

  // P^f(inf, 0): pure gradient following under the fixed-point weights.
  const std::vector<double>& w = winf;
  const std::span<const double> w1(w.data(), sc.dg.V());
  const std::span<const double> w2(w.data() + sc.dg.V(), sc.dg.V());
  const ColumnStochasticMatrix pf =
      assemble_pf(sc.dg, gradient_matrix(sc.g, w1), gradient_matrix(sc.g, w2));
  std::vector<double> py;
  matvec(to_csr(pf), opt.y_bar, py);
  double eig_gap = 0.0;
  for (int i = 0; i < sc.dg.dim(); ++i) eig_gap += std::abs(py[i] - opt.y_bar[i]);

  const int d_star = diameter(sc.g);
  int g_star = 0;
  for (int v = 0; v < sc.g.V; ++v) g_star = std::max(g_star, sc.g.degree(v));

  write_indexed_csv(winf, out_path(out_dir, "winf.csv"));
  write_indexed_csv(opt.y_bar, out_path(out_dir, "ybar.csv"));

  std::vector<TimeseriesRecord> summary;
  summary.push_back({0, "k", static_cast<double>(opt.k)});
  summary.push_back({0, "delta_star", static_cast<double>(d_star)});
  summary.push_back({0, "g_star", static_cast<double>(g_star)});
  summary.push_back({0, "rate_bound", rate_bound(sc.cfg.epsilon, d_star)});
  summary.push_back({0, "rate_bound_proof_variant",
                     rate_bound_proof_variant(sc.cfg.epsilon, d_star, g_star)});
  summary.push_back({0, "winf_residual", fixed_point_residual(winf, sc.dg, sc.cfg.r, sc.cfg.lambda)});
  summary.push_back({0, "winf_is_optimal", is_optimal_weights(winf, sc.dg) ? 1.0 : 0.0});
  summary.push_back({0, "pf_ybar_gap_l1", eig_gap});
  write_timeseries_csv(std::move(summary), out_path(out_dir, "oracle_summary.csv"));

  write_snapshot(sc, winf, opt.y_bar, out_path(out_dir, "final.svg"));
  std::cout << "k = " << opt.k << ", delta* = " << d_star << "\n";
  return 0;
}

int cmd_stats(const std::string& scenario_path, const std::string& out_dir,
              std::vector<long long> n_list, int K) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);
  if (n_list.empty()) n_list.push_back(sc.cfg.n);
  if (K <= 0) K = sc.cfg.K;
  for (const long long n : n_list) {
    if (n < 1) throw RangeError("agent counts in --n-list must be >= 1");
  }
  if (K < 2) throw RangeError("--K must be >= 2");

  const std::vector<ErrorStats> sweep =
      agent_sweep(sc.dg, sc.cfg.dynamics(), n_list, K, sc.cfg.horizon, sc.cfg.seed,
                  sc.cfg.max_t, sc.cfg.tol, sc.cfg.snapshot_stride);

  std::ofstream out(out_path(out_dir, "stats.csv"), std::ios::binary);
  if (!out) throw IoError("cannot write stats.csv");
  out << "n,t,e_norm,var_norm\n";
  for (const ErrorStats& st : sweep) {
    for (std::size_t i = 0; i < st.times.size(); ++i) {
      out << st.n << ',' << st.times[i] << ',' << format_value(st.e_norm[i]) << ','
          << format_value(st.var_norm[i]) << '\n';
    }
  }
  std::cout << "wrote stats for " << sweep.size() << " agent counts\n";
  return 0;
}

std::vector<Table2Row> parse_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file: " + path);
  std::vector<Table2Row> grid;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    Table2Row row;
    if (!(fields >> row.r)) continue;  // blank line
    std::string tail;
    if (!(fields >> row.rho >> row.n) || (fields >> tail)) {
      throw ParseError("grid line " + std::to_string(line_no) + ": expected 'r,rho,n'");
    }
    if (row.rho <= 0.0 || row.rho >= 1.0) throw RangeError("grid rho out of (0,1)");
    if (row.r < 0.0) throw RangeError("grid r must be >= 0");
    if (row.n < 1) throw RangeError("grid n must be >= 1");
    grid.push_back(row);
  }
  if (grid.empty()) throw ParseError("grid file has no rows: " + path);
  return grid;
}

int cmd_table2(const std::string& scenario_path, const std::string& out_dir,
               const std::string& grid_path) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);
  const std::vector<Table2Row> grid = parse_grid_file(grid_path);
  const std::vector<Table2Row> rows =
      table2_grid(sc.dg, sc.cfg.dynamics(), grid, sc.cfg.K, sc.cfg.horizon, sc.cfg.seed,
                  sc.cfg.max_t, sc.cfg.tol);
  std::ofstream out(out_path(out_dir, "table2.csv"), std::ios::binary);
  if (!out) throw IoError("cannot write table2.csv");
  out << "r,rho,n,e_norm,var_norm\n";
  for (const Table2Row& row : rows) {
    out << format_value(row.r) << ',' << format_value(row.rho) << ',' << row.n << ','
        << format_value(row.e_norm) << ',' << format_value(row.var_norm) << '\n';
  }
  std::cout << "wrote " << rows.size() << " table rows\n";
  return 0;
}

int cmd_sweep_eps(const std::string& scenario_path, const std::string& out_dir,
                  const std::vector<double>& eps_list) {
  const Scene sc = load_scene(scenario_path);
  ensure_out_dir(out_dir);
  if (eps_list.empty()) throw RangeError("--eps-list must not be empty");
  const std::vector<EpsGapRow> rows =
      epsilon_gap(sc.dg, eps_list, sc.cfg.dynamics(), sc.cfg.max_t, sc.cfg.tol);
  std::ofstream out(out_path(out_dir, "eps_gap.csv"), std::ios::binary);
  if (!out) throw IoError("cannot write eps_gap.csv");
  out << "eps,gap,converged\n";
  bool all_converged = true;
  for (const EpsGapRow& row : rows) {
    out << format_value(row.eps) << ',' << format_value(row.gap) << ','
        << (row.converged ? 1 : 0) << '\n';
    all_converged = all_converged && row.converged;
  }
  out.close();
  if (!all_converged) {
    std::cerr << "some epsilon runs hit max_t before tol; see eps_gap.csv\n";
    return kExitNoConvergence;
  }
  std::cout << "wrote " << rows.size() << " epsilon rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  forage::apply_thread_cap();

  CLI::App app{"stigmergic multi-agent foraging simulator"};
  app.require_subcommand(1);

  int rc = 0;
  std::string scenario, out_dir, grid_path;
  std::vector<long long> n_list;
  std::vector<double> eps_list;
  int K = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario, "scenario file (key = value lines)")->required();
    cmd->add_option("--out", out_dir, "output directory")->required();
  };

  CLI::App* mf = app.add_subcommand("mf", "deterministic mean-field dynamics");
  mf->require_subcommand(1);
  CLI::App* mf_run = mf->add_subcommand("run", "iterate to stationarity, emit trajectory");
  add_common(mf_run);
  mf_run->callback([&] { rc = cmd_mf_run(scenario, out_dir); });

  CLI::App* swarm = app.add_subcommand("swarm", "finite stochastic swarm");
  swarm->require_subcommand(1);
  CLI::App* swarm_run = swarm->add_subcommand("run", "simulate n agents to the horizon");
  add_common(swarm_run);
  swarm_run->callback([&] { rc = cmd_swarm_run(scenario, out_dir); });

  CLI::App* oracle = app.add_subcommand("oracle", "closed-form fixed point and optimality checks");
  add_common(oracle);
  oracle->callback([&] { rc = cmd_oracle(scenario, out_dir); });

  CLI::App* stats = app.add_subcommand("stats", "replica error statistics per agent count");
  add_common(stats);
  stats->add_option("--n-list", n_list, "agent counts (comma separated)")->delimiter(',');
  stats->add_option("--K", K, "replicas per agent count (default: scenario K)");
  stats->callback([&] { rc = cmd_stats(scenario, out_dir, n_list, K); });

  CLI::App* table2 = app.add_subcommand("table2", "error grid over (r, rho, n)");
  add_common(table2);
  table2->add_option("--grid", grid_path, "grid file, one 'r,rho,n' per line")->required();
  table2->callback([&] { rc = cmd_table2(scenario, out_dir, grid_path); });

  CLI::App* sweep = app.add_subcommand("sweep-eps", "stationary gap to the optimal distribution");
  add_common(sweep);
  sweep->add_option("--eps-list", eps_list, "epsilon values (comma separated)")
      ->delimiter(',')
      ->required();
  sweep->callback([&] { rc = cmd_sweep_eps(scenario, out_dir, eps_list); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const forage::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const forage::MissingCoords& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const forage::NoConvergence& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const forage::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
