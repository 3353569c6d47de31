#include "dppdesign/baselines.hpp"
#include "dppdesign/diagnostics.hpp"
#include "dppdesign/dpp.hpp"
#include "dppdesign/emulator.hpp"
#include "dppdesign/error.hpp"
#include "dppdesign/io.hpp"
#include "dppdesign/kernel.hpp"
#include "dppdesign/random.hpp"
#include "dppdesign/sgd.hpp"

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifndef DPPDESIGN_VERSION
#define DPPDESIGN_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dppdesign;

namespace {

// Flags shared by several subcommands. Each subcommand binds the subset it uses.
struct Options {
  Index grid = 25;
  Index d = 2;
  std::string candidates;
  std::string kernel = "gaussian";
  double rho = 0.01;
  double nugget = 0.0;
  Index n = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t jobs = 1;
  bool random_ties = false;

  // sequential
  std::string existing;
  std::vector<Index> batch_sizes;
  std::vector<double> rho_schedule;
  std::vector<Index> exclude;
  bool no_collapse = false;

  // exchange
  long iters = 20000;

  // lhs
  std::string placement = "centroid";

  // diagnose
  std::string stat = "F";
  std::string design;
  Index h_count = 30;
  double h_max = 0.3;
  Index r_count = 16;
  double r_max = 0.2;
  Index reference = 0;
  std::string correction = "none";

  // sgd-demo
  std::vector<Index> batchsizes{23};
  Index num_batches = 50;
  int epochs = 200;
  int replicates = 20;
  double lr0 = 0.05;
  double tau = 1000.0;
  double noise_sd = 1.0;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_candidate_flags(CLI::App *app, Options &o) {
  app->add_option("--grid", o.grid, "lattice size per axis (m^d cell centres)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--d", o.d, "dimension of the lattice")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--candidates", o.candidates, "candidate CSV (x1,...,xd); overrides --grid");
}

void add_kernel_flags(CLI::App *app, Options &o) {
  app->add_option("--kernel", o.kernel, "gaussian or exponential")->capture_default_str();
  app->add_option("--rho", o.rho, "correlation parameter in (0,1)")->capture_default_str();
  app->add_option("--nugget", o.nugget, "added to the kernel diagonal")->capture_default_str();
}

void add_common_flags(CLI::App *app, Options &o) {
  app->add_option("--seed", o.seed, "master seed")->capture_default_str();
  app->add_option("--out", o.out, "output directory (default $DPPDESIGN_OUTPUT_DIR or .)");
}

void add_size_flag(CLI::App *app, Options &o) {
  app->add_option("--n", o.n, "design size")->capture_default_str();
}

CandidateSet load_candidates(const CLI::App &app, const Options &o) {
  if (!o.candidates.empty()) {
    if (app.count("--grid") || app.count("--d"))
      throw UsageError("--candidates cannot be combined with --grid or --d");
    return read_candidates_csv(o.candidates);
  }
  return CandidateSet::grid(o.grid, o.d);
}

KernelSpec kernel_spec(const Options &o) {
  KernelSpec s{parse_kernel_family(o.kernel), o.rho, o.nugget};
  s.validate();
  return s;
}

fs::path output_dir(const Options &o) {
  fs::path dir = ".";
  if (!o.out.empty())
    dir = o.out;
  else if (const char *env = std::getenv("DPPDESIGN_OUTPUT_DIR"); env && *env)
    dir = env;
  fs::create_directories(dir);
  return dir;
}

// Every flag the subcommand knows, with its effective value. The output
// directory is left out so that runs into different directories compare equal.
json flag_record(const CLI::App &app) {
  json flags = json::object();
  for (const CLI::Option *opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "out")
      continue;
    if (opt->get_type_size() == 0) {
      flags[name] = opt->count() > 0;
      continue;
    }
    if (opt->count() > 0) {
      std::string joined;
      for (const std::string &r : opt->results())
        joined += (joined.empty() ? "" : ",") + r;
      flags[name] = joined;
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    }
  }
  return flags;
}

json log_det_value(const std::optional<double> &v) {
  if (!v || !std::isfinite(*v))
    return nullptr;
  return *v;
}

void write_metadata(const fs::path &path, const CLI::App &app, const Options &o,
                    json extra) {
  json meta;
  meta["command"] = app.get_name();
  meta["version"] = DPPDESIGN_VERSION;
  meta["seed"] = o.seed;
  meta["flags"] = flag_record(app);
  for (auto &[k, v] : extra.items())
    meta[k] = v;
  std::ofstream(path) << meta.dump(2) << '\n';
}

void report_design(const fs::path &dir, const Design &design) {
  write_design_csv(dir / "design.csv", design);
  std::cout << to_string(design.provenance) << " design, " << design.size() << " points";
  if (design.log_det)
    std::cout << ", log-det " << format_double(*design.log_det);
  std::cout << "\n";
}

json design_meta(const Design &design) {
  json m;
  m["n"] = design.size();
  m["provenance"] = std::string(to_string(design.provenance));
  m["log_det"] = log_det_value(design.log_det);
  return m;
}

json kernel_meta(const KernelSpec &spec) {
  json m;
  m["family"] = std::string(to_string(spec.family));
  m["rho"] = spec.rho;
  m["nugget"] = spec.nugget;
  return m;
}

json candidate_meta(const CLI::App &app, const Options &o, const CandidateSet &c) {
  json m;
  if (!o.candidates.empty())
    m["file"] = o.candidates;
  else
    m["grid"] = o.grid;
  m["count"] = c.size();
  m["d"] = c.dim();
  (void)app;
  return m;
}

int cmd_emulate(const CLI::App &app, const Options &o) {
  const CandidateSet c = load_candidates(app, o);
  const KernelSpec spec = kernel_spec(o);
  const KernelMatrix k = build_kernel_matrix(c, spec);
  Rng tie(derive_seed(o.seed, 1));
  const Design d = emulate_design(k, o.n, c, o.random_ties ? &tie : nullptr);
  const fs::path dir = output_dir(o);
  report_design(dir, d);
  json extra = design_meta(d);
  extra["kernel"] = kernel_meta(spec);
  extra["candidates"] = candidate_meta(app, o, c);
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

int cmd_sample(const CLI::App &app, const Options &o) {
  const CandidateSet c = load_candidates(app, o);
  const KernelSpec spec = kernel_spec(o);
  Rng rng(o.seed);
  const Design d = sample_fixed_rank_dpp(build_kernel_matrix(c, spec), o.n, c, rng);
  const fs::path dir = output_dir(o);
  report_design(dir, d);
  json extra = design_meta(d);
  extra["kernel"] = kernel_meta(spec);
  extra["candidates"] = candidate_meta(app, o, c);
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

Design load_existing(const CandidateSet &c, const std::string &path) {
  const DesignTable t = read_design_csv(path);
  Design d = make_design(c, t.indices, Provenance::Sequential);
  if (t.coords.cols() != c.dim())
    throw InvalidArgument(path + ": dimension does not match the candidates");
  for (Index r = 0; r < t.coords.rows(); ++r)
    if ((t.coords.row(r) - d.coords.row(r)).cwiseAbs().maxCoeff() > 1e-9)
      throw InvalidArgument(path + ": coordinates of index " +
                            std::to_string(t.indices[static_cast<std::size_t>(r)]) +
                            " do not match the candidate set");
  return d;
}

int cmd_sequential(const CLI::App &app, const Options &o) {
  const CandidateSet c = load_candidates(app, o);
  const KernelSpec spec = kernel_spec(o);
  SequentialState state;
  if (!o.existing.empty())
    state.existing = load_existing(c, o.existing);
  state.excluded = o.exclude;
  state.batch_sizes = o.batch_sizes;
  state.rho_schedule = o.rho_schedule.empty()
                           ? std::vector<double>(o.batch_sizes.size(), spec.rho)
                           : o.rho_schedule;
  Rng tie(derive_seed(o.seed, 1));
  const Design d =
      sequential_design(c, spec, state, o.no_collapse, o.random_ties ? &tie : nullptr);
  const fs::path dir = output_dir(o);
  report_design(dir, d);
  json extra = design_meta(d);
  extra["kernel"] = kernel_meta(spec);
  extra["candidates"] = candidate_meta(app, o, c);
  extra["existing_points"] = state.existing.size();
  extra["batch_sizes"] = state.batch_sizes;
  extra["rho_schedule"] = state.rho_schedule;
  extra["projection_constraint"] = o.no_collapse;
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

int cmd_exchange(const CLI::App &app, const Options &o) {
  const CandidateSet c = load_candidates(app, o);
  const KernelSpec spec = kernel_spec(o);
  if (o.iters < 0)
    throw UsageError("--iters must be nonnegative");
  Rng rng(o.seed);
  const ExchangeResult r = fedorov_exchange(build_kernel_matrix(c, spec), o.n, o.iters, rng, c);
  const fs::path dir = output_dir(o);
  report_design(dir, r.design);
  {
    std::ofstream trace(dir / "trace.csv");
    trace << "iteration,log_det\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i)
      trace << i << ',' << format_double(r.trace[i]) << '\n';
  }
  json extra = design_meta(r.design);
  extra["kernel"] = kernel_meta(spec);
  extra["candidates"] = candidate_meta(app, o, c);
  extra["iterations"] = o.iters;
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

int cmd_lhs(const CLI::App &app, const Options &o) {
  Placement placement;
  if (o.placement == "centroid")
    placement = Placement::Centroid;
  else if (o.placement == "uniform")
    placement = Placement::Uniform;
  else
    throw UsageError("--placement must be centroid or uniform");
  Rng rng(o.seed);
  const LhsDesign l = lhs_design(o.n, o.d, placement, rng);
  const fs::path dir = output_dir(o);
  {
    std::ofstream out(dir / "design.csv");
    out << "index";
    for (Index j = 0; j < o.d; ++j)
      out << ",x" << j + 1;
    for (Index j = 0; j < o.d; ++j)
      out << ",bin" << j + 1;
    out << '\n';
    for (Index i = 0; i < o.n; ++i) {
      out << i;
      for (Index j = 0; j < o.d; ++j)
        out << ',' << format_double(l.points(i, j));
      for (Index j = 0; j < o.d; ++j)
        out << ',' << l.bins(i, j);
      out << '\n';
    }
  }
  std::cout << "Lhs design, " << o.n << " points in " << o.d << " dimensions\n";
  json extra;
  extra["n"] = o.n;
  extra["d"] = o.d;
  extra["provenance"] = "lhs";
  extra["placement"] = o.placement;
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

int cmd_random(const CLI::App &app, const Options &o) {
  const CandidateSet c = load_candidates(app, o);
  Rng rng(o.seed);
  Design d = random_design(c, o.n, rng);
  std::optional<KernelSpec> spec;
  if (app.count("--rho") || app.count("--kernel") || app.count("--nugget")) {
    spec = kernel_spec(o);
    const LogDet ld = dpp_log_pmf(build_kernel_matrix(c, *spec), d.indices);
    d.log_det = ld.value;
  }
  const fs::path dir = output_dir(o);
  report_design(dir, d);
  json extra = design_meta(d);
  if (spec)
    extra["kernel"] = kernel_meta(*spec);
  extra["candidates"] = candidate_meta(app, o, c);
  write_metadata(dir / "design.json", app, o, extra);
  return 0;
}

int cmd_diagnose(const CLI::App &app, const Options &o) {
  const DesignTable t = read_design_csv(o.design);
  const Eigen::MatrixXd &pts = t.coords;
  const Index n = pts.rows();
  const Index d = pts.cols();
  const fs::path dir = output_dir(o);
  json extra;
  extra["design"] = o.design;
  extra["n"] = n;
  extra["d"] = d;
  extra["region"] = "unit cube";
  if (o.stat == "F" || o.stat == "G") {
    if (o.h_count < 1 || o.h_max <= 0)
      throw UsageError("--h-count and --h-max must be positive");
    const Eigen::VectorXd h = linspace(o.h_max / static_cast<double>(o.h_count), o.h_max, o.h_count);
    Eigen::VectorXd v;
    std::string file, column;
    if (o.stat == "F") {
      Index m = o.reference;
      if (m <= 0)
        m = !o.candidates.empty()
                ? static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(
                      read_candidates_csv(o.candidates).size()))))
                : 20;
      v = f_function(pts, reference_grid(m, d), h);
      file = "f.csv";
      column = "f_hat";
      extra["reference_grid"] = m;
    } else {
      v = g_function(pts, h);
      file = "g.csv";
      column = "g_hat";
    }
    std::ofstream out(dir / file);
    write_columns_csv(out, {"h", column}, {h, v});
    std::cout << o.stat << " function of " << n << " points at " << o.h_count << " distances\n";
  } else if (o.stat == "K") {
    EdgeCorrection corr;
    if (o.correction == "none")
      corr = EdgeCorrection::None;
    else if (o.correction == "translation")
      corr = EdgeCorrection::Translation;
    else
      throw UsageError("--correction must be none or translation");
    if (o.r_count < 1 || o.r_max <= 0)
      throw UsageError("--r-count and --r-max must be positive");
    const Eigen::VectorXd r = linspace(o.r_max / static_cast<double>(o.r_count), o.r_max, o.r_count);
    const Eigen::VectorXd k = ripley_k(pts, 1.0, r, corr);
    Eigen::VectorXd csr(r.size());
    for (Index i = 0; i < r.size(); ++i)
      csr[i] = k_csr(r[i], d);
    std::ofstream out(dir / "k.csv");
    write_columns_csv(out, {"r", "k_hat", "k_csr"}, {r, k, csr});
    extra["area"] = 1.0;
    extra["correction"] = o.correction;
    std::cout << "K function of " << n << " points at " << o.r_count << " radii\n";
  } else {
    throw UsageError("--stat must be F, G or K");
  }
  extra["stat"] = o.stat;
  write_metadata(dir / "diagnose.json", app, o, extra);
  return 0;
}

int cmd_sgd_demo(const CLI::App &app, const Options &o) {
  const fs::path dir = output_dir(o);
  std::vector<std::string> names{"batchsize"};
  for (const char *prefix : {"mse_random_b", "mse_designed_b", "ratio_b"})
    for (int j = 1; j <= 5; ++j)
      names.push_back(prefix + std::to_string(j));
  std::vector<MseRatioRow> rows;
  for (Index bs : o.batchsizes) {
    SgdConfig cfg;
    cfg.batchsize = bs;
    cfg.num_batches = o.num_batches;
    cfg.epochs = o.epochs;
    cfg.lr0 = o.lr0;
    cfg.tau = o.tau;
    cfg.replicates = o.replicates;
    cfg.rho = o.rho;
    cfg.noise_sd = o.noise_sd;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.validate();
    rows.push_back(mse_ratio_experiment(cfg));
  }
  std::vector<Eigen::VectorXd> cols(names.size(), Eigen::VectorXd(static_cast<Index>(rows.size())));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index r = static_cast<Index>(i);
    cols[0][r] = static_cast<double>(rows[i].batchsize);
    for (std::size_t j = 0; j < 5; ++j) {
      cols[1 + j][r] = rows[i].mse_a[j];
      cols[6 + j][r] = rows[i].mse_b[j];
      cols[11 + j][r] = rows[i].ratio[j];
    }
    int above = 0;
    for (double x : rows[i].ratio)
      above += x > 1.0;
    std::cout << "batchsize " << rows[i].batchsize << ": " << above
              << " of 5 coefficients favour designed batches\n";
  }
  {
    std::ofstream out(dir / "ratio.csv");
    write_columns_csv(out, names, cols);
  }
  json extra;
  extra["batchsizes"] = o.batchsizes;
  extra["num_batches"] = o.num_batches;
  extra["epochs"] = o.epochs;
  extra["replicates"] = o.replicates;
  extra["learning_rate"] = {{"lr0", o.lr0}, {"tau", o.tau}};
  extra["design_kernel"] = {{"family", "gaussian_iso"}, {"rho", o.rho}};
  extra["noise_sd"] = o.noise_sd;
  write_metadata(dir / "sgd.json", app, o, extra);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Experimental designs from fixed-rank determinantal point processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DPPDESIGN_VERSION);
  Options o;
  std::vector<std::pair<CLI::App *, std::function<int(const CLI::App &, const Options &)>>> commands;

  auto *emulate = app.add_subcommand("emulate", "greedy mode of the fixed-rank DPP");
  add_candidate_flags(emulate, o);
  add_kernel_flags(emulate, o);
  add_size_flag(emulate, o);
  add_common_flags(emulate, o);
  emulate->add_flag("--random-ties", o.random_ties, "break argmax ties with the seeded RNG");
  commands.emplace_back(emulate, cmd_emulate);

  auto *sample = app.add_subcommand("sample", "exact draw from the fixed-rank DPP");
  add_candidate_flags(sample, o);
  add_kernel_flags(sample, o);
  add_size_flag(sample, o);
  add_common_flags(sample, o);
  commands.emplace_back(sample, cmd_sample);

  auto *seq = app.add_subcommand("sequential", "batch-sequential emulated design");
  add_candidate_flags(seq, o);
  add_kernel_flags(seq, o);
  add_common_flags(seq, o);
  seq->add_option("--existing", o.existing, "design CSV of points already run");
  seq->add_option("--batch-sizes", o.batch_sizes, "comma-separated batch sizes")
      ->required()
      ->delimiter(',');
  seq->add_option("--rho-schedule", o.rho_schedule, "comma-separated rho per batch (default --rho)")
      ->delimiter(',');
  seq->add_option("--exclude", o.exclude, "comma-separated candidate ids never to select")
      ->delimiter(',');
  seq->add_flag("--no-collapse", o.no_collapse,
                "forbid shared coordinates with earlier points and within a batch");
  seq->add_flag("--random-ties", o.random_ties, "break argmax ties with the seeded RNG");
  commands.emplace_back(seq, cmd_sequential);

  auto *exch = app.add_subcommand("exchange", "one-at-a-time exchange on the log-det");
  add_candidate_flags(exch, o);
  add_kernel_flags(exch, o);
  add_size_flag(exch, o);
  add_common_flags(exch, o);
  exch->add_option("--iters", o.iters, "proposed swaps")->capture_default_str();
  commands.emplace_back(exch, cmd_exchange);

  auto *lhs = app.add_subcommand("lhs", "Latin hypercube design");
  lhs->add_option("--d", o.d, "dimension")->capture_default_str()->check(CLI::PositiveNumber);
  add_size_flag(lhs, o);
  add_common_flags(lhs, o);
  lhs->add_option("--placement", o.placement, "centroid or uniform")->capture_default_str();
  commands.emplace_back(lhs, cmd_lhs);

  auto *rnd = app.add_subcommand("random", "uniform random subset of the candidates");
  add_candidate_flags(rnd, o);
  add_kernel_flags(rnd, o);
  add_size_flag(rnd, o);
  add_common_flags(rnd, o);
  commands.emplace_back(rnd, cmd_random);

  auto *diag = app.add_subcommand("diagnose", "F, G or Ripley K of a design");
  diag->add_option("--stat", o.stat, "F, G or K")->capture_default_str();
  diag->add_option("--design", o.design, "design CSV (index,x1,...,xd)")
      ->required()
      ->check(CLI::ExistingFile);
  diag->add_option("--candidates", o.candidates, "candidate CSV; sizes the F reference grid");
  diag->add_option("--reference", o.reference, "F reference lattice size per axis");
  diag->add_option("--h-count", o.h_count, "number of F/G distances")->capture_default_str();
  diag->add_option("--h-max", o.h_max, "largest F/G distance")->capture_default_str();
  diag->add_option("--r-count", o.r_count, "number of K radii")->capture_default_str();
  diag->add_option("--r-max", o.r_max, "largest K radius")->capture_default_str();
  diag->add_option("--correction", o.correction, "none or translation")->capture_default_str();
  add_common_flags(diag, o);
  commands.emplace_back(diag, cmd_diagnose);

  auto *sgd = app.add_subcommand("sgd-demo", "random vs designed mini-batches on Friedman data");
  sgd->add_option("--batchsize", o.batchsizes, "comma-separated batch sizes")
      ->delimiter(',')
      ->capture_default_str();
  sgd->add_option("--num-batches", o.num_batches, "batches per dataset")->capture_default_str();
  sgd->add_option("--epochs", o.epochs)->capture_default_str();
  sgd->add_option("--replicates", o.replicates)->capture_default_str();
  sgd->add_option("--lr0", o.lr0, "initial learning rate")->capture_default_str();
  sgd->add_option("--tau", o.tau, "learning-rate decay in steps")->capture_default_str();
  sgd->add_option("--rho", o.rho, "gaussian kernel parameter for designed batches")
      ->capture_default_str();
  sgd->add_option("--noise-sd", o.noise_sd)->capture_default_str();
  sgd->add_option("--jobs", o.jobs, "replicate-level threads")->capture_default_str();
  add_common_flags(sgd, o);
  commands.emplace_back(sgd, cmd_sgd_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  for (auto &[sub, run] : commands) {
    if (!sub->parsed())
      continue;
    try {
      return run(*sub, o);
    } catch (const UsageError &e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const InvalidArgument &e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception &e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
