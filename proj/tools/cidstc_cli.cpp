#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cidstc/codebook.hpp"
#include "cidstc/constellation.hpp"
#include "cidstc/diversity.hpp"
#include "cidstc/harness.hpp"

namespace {

// Writes to --out when given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run(int argc, char** argv) {
  CLI::App app{"Coordinate-interleaved distributed space-time code simulator"};
  app.require_subcommand(1);

  // --- simulate-ber ---------------------------------------------------
  auto* ber = app.add_subcommand("simulate-ber", "Monte Carlo BER curve");
  std::string ber_config_path;
  std::string ber_out;
  cidstc::SimConfig cfg;
  double ber_pmin = 20.0, ber_pmax = 40.0;
  int ber_steps = 0;
  std::string ber_decoder = "sphere";
  std::string ber_split = "optimal";
  ber->add_option("--config", ber_config_path,
                  "key = value config file (flags override it)");
  ber->add_option("--design", cfg.design_id, "design id (see list-designs)");
  ber->add_option("--set", cfg.set_id, "signal-set id");
  ber->add_option("--trials", cfg.trials, "Monte Carlo trials per power point");
  ber->add_option("--seed", cfg.seed, "RNG seed");
  ber->add_option("--decoder", ber_decoder, "exhaustive | sphere | group");
  ber->add_option("--split", ber_split, "optimal | custom");
  ber->add_option("--p1", cfg.custom_p1, "source power for custom split");
  ber->add_option("--p2", cfg.custom_p2, "per-antenna relay power for custom split");
  ber->add_option("--pmin-db", ber_pmin, "grid start, dB");
  ber->add_option("--pmax-db", ber_pmax, "grid end, dB");
  ber->add_option("--steps", ber_steps, "grid points");
  ber->add_option("--p-db", cfg.p_grid_db, "explicit power points in dB");
  ber->add_option("--workers", cfg.workers,
                  "worker threads (default: CIDSTC_WORKERS or 1)");
  ber->add_flag("--noiseless", cfg.noiseless,
                "debug override: fixed fades, zero noise");
  ber->add_option("--out", ber_out, "output CSV path (default stdout)");

  // --- pep-curves ------------------------------------------------------
  auto* pep = app.add_subcommand("pep-curves",
                                 "Closed-form pairwise-error bound curves");
  cidstc::PepParams params;
  double rho = 1.0, rho_prime = 1.0;
  double pep_pmin = 0.0, pep_pmax = 60.0;
  int pep_steps = 61;
  std::string pep_out;
  pep->add_option("--R", params.R, "relay count")->required();
  pep->add_option("--T", params.T, "block length")->required();
  pep->add_option("--rho", rho, "coordinate-interleaved scheme rho")->required();
  pep->add_option("--rho-prime", rho_prime, "baseline scheme rho'")->required();
  pep->add_option("--pmin-db", pep_pmin, "grid start, dB");
  pep->add_option("--pmax-db", pep_pmax, "grid end, dB");
  pep->add_option("--steps", pep_steps, "grid points");
  pep->add_option("--out", pep_out, "output CSV path (default stdout)");

  // --- check-diversity -------------------------------------------------
  auto* div = app.add_subcommand("check-diversity",
                                 "Full-diversity check of a design/set pair");
  std::string div_design, div_set;
  div->add_option("--design", div_design, "design id")->required();
  div->add_option("--set", div_set, "signal-set id")->required();

  // --- list-designs ----------------------------------------------------
  auto* list = app.add_subcommand("list-designs", "List built-in design ids");

  // --- gen-constellation -----------------------------------------------
  auto* gen = app.add_subcommand(
      "gen-constellation", "Emit a signal set's generator or its points");
  std::string gen_set, gen_out;
  int gen_T = 4;
  bool gen_points = false;
  gen->add_option("--set", gen_set, "signal-set id")->required();
  gen->add_option("--T", gen_T, "block length for sizing (default 4)");
  gen->add_flag("--points", gen_points,
                "emit all scaled points as CSV instead of the generator");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (ber->parsed()) {
    if (!ber_config_path.empty()) {
      std::ifstream in(ber_config_path);
      if (!in) throw std::runtime_error("cannot open config: " + ber_config_path);
      cidstc::SimConfig from_file = cidstc::parse_sim_config(in);
      // Flags given on the command line override the file.
      if (!ber->count("--design")) cfg.design_id = from_file.design_id;
      if (!ber->count("--set")) cfg.set_id = from_file.set_id;
      if (!ber->count("--trials")) cfg.trials = from_file.trials;
      if (!ber->count("--seed")) cfg.seed = from_file.seed;
      if (!ber->count("--decoder")) cfg.decoder = from_file.decoder;
      if (!ber->count("--split")) cfg.split = from_file.split;
      if (!ber->count("--p1")) cfg.custom_p1 = from_file.custom_p1;
      if (!ber->count("--p2")) cfg.custom_p2 = from_file.custom_p2;
      if (!ber->count("--workers")) cfg.workers = from_file.workers;
      if (!ber->count("--noiseless")) cfg.noiseless = from_file.noiseless;
      if (cfg.p_grid_db.empty()) cfg.p_grid_db = from_file.p_grid_db;
    }
    if (ber->count("--decoder")) cfg.decoder = cidstc::parse_decoder(ber_decoder);
    if (ber->count("--split")) {
      if (ber_split == "optimal") {
        cfg.split = cidstc::SplitKind::Optimal;
      } else if (ber_split == "custom") {
        cfg.split = cidstc::SplitKind::Custom;
      } else {
        throw std::runtime_error("--split must be optimal or custom");
      }
    }
    if (cfg.p_grid_db.empty()) {
      cfg.p_grid_db = cidstc::db_grid(ber_pmin, ber_pmax,
                                      ber_steps > 0 ? ber_steps : 11);
    }
    OutputTarget out(ber_out);
    cidstc::write_ber_csv(out.stream(), cidstc::run_ber(cfg));
    return 0;
  }

  if (pep->parsed()) {
    params.rho2 = rho * rho;
    params.rho2_prime = rho_prime * rho_prime;
    OutputTarget out(pep_out);
    cidstc::write_pep_csv(
        out.stream(),
        cidstc::run_pep_curves(params,
                               cidstc::db_grid(pep_pmin, pep_pmax, pep_steps)));
    return 0;
  }

  if (div->parsed()) {
    const cidstc::RelayDesign& design = cidstc::find_design(div_design);
    const cidstc::LatticeSignalSet set = cidstc::find_set(div_set, design.T);
    const cidstc::DiversityReport report =
        cidstc::check_full_diversity(design, set);
    std::cout << "fully_diverse=" << (report.fully_diverse ? 1 : 0) << '\n'
              << "min_metric=" << report.min_metric << '\n'
              << "witness_a=" << report.witness_a << '\n'
              << "witness_b=" << report.witness_b << '\n'
              << "pairs_checked=" << report.pairs_checked << '\n'
              << "exhaustive=" << (report.exhaustive ? 1 : 0) << '\n';
    return report.fully_diverse ? 0 : 1;
  }

  if (list->parsed()) {
    for (const auto& d : cidstc::builtin_designs()) std::cout << d.id << '\n';
    return 0;
  }

  if (gen->parsed()) {
    const cidstc::LatticeSignalSet set = cidstc::find_set(gen_set, gen_T);
    OutputTarget out(gen_out);
    if (gen_points) {
      out.stream() << "index";
      for (int i = 0; i < set.n / 2; ++i) {
        out.stream() << ",x" << i + 1 << "_re,x" << i + 1 << "_im";
      }
      out.stream() << '\n';
      const auto points = cidstc::enumerate_points(set);
      for (std::size_t k = 0; k < points.size(); ++k) {
        out.stream() << k;
        for (Eigen::Index i = 0; i < points[k].size(); ++i) {
          out.stream() << ',' << points[k][i].real() << ','
                       << points[k][i].imag();
        }
        out.stream() << '\n';
      }
    } else {
      cidstc::save_generator(out.stream(), set.generator);
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
