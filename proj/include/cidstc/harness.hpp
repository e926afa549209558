#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cidstc/analysis.hpp"

namespace cidstc {

enum class DecoderChoice { Exhaustive, Sphere, Group };
enum class SplitKind { Optimal, Custom };

struct SimConfig {
  std::string design_id = "example1";
  std::string set_id = "z8rot";
  std::vector<double> p_grid_db;  ///< total power points, dB
  std::int64_t trials = 1000;    ///< Monte Carlo trials per power point
  std::uint64_t seed = 1;
  DecoderChoice decoder = DecoderChoice::Sphere;
  SplitKind split = SplitKind::Optimal;
  double custom_p1 = 0.0;  ///< absolute P1/P2, used when split == Custom
  double custom_p2 = 0.0;
  int workers = 0;  ///< 0: take CIDSTC_WORKERS from the env, default 1
  /// Debug override: fixed generic fades, zero noise everywhere. BER must be 0.
  bool noiseless = false;
};

struct BerPoint {
  double p_db = 0.0;
  double p_linear = 0.0;
  std::int64_t trials = 0;
  std::int64_t bit_errors = 0;
  std::int64_t bits = 0;
  double ber = 0.0;
};

struct BerCurve {
  SimConfig config;
  int bits_per_codeword = 0;
  std::vector<BerPoint> points;
};

/// Runs the Monte Carlo BER experiment. Deterministic given the seed, and
/// bit-identical for any worker count: trials are partitioned into fixed
/// blocks with RNG streams derived from (seed, point, block, role).
BerCurve run_ber(const SimConfig& cfg);

/// Emits `p_db,p_linear,trials,bit_errors,bits,ber` rows (17 significant
/// digits, LF endings) followed by a `# key=value` config echo.
void write_ber_csv(std::ostream& out, const BerCurve& curve);

struct PepRow {
  double p_db = 0.0;
  double p_linear = 0.0;
  double cidstc_bound = 0.0;
  double rdstc_bound = 0.0;
  double fractional_change = 0.0;
  bool beyond_crossover = false;
};

struct PepTable {
  PepParams params;  ///< P field unused; per-row P in the rows
  std::vector<PepRow> rows;
  std::optional<double> crossover;  ///< linear power, when bracketed
};

/// Evaluates both closed-form bounds and the fractional change over the grid
/// and brackets the crossover on [grid min, grid max].
PepTable run_pep_curves(const PepParams& params,
                        const std::vector<double>& p_grid_db);

void write_pep_csv(std::ostream& out, const PepTable& table);

/// Uniform grid helper, inclusive of both ends (steps >= 1).
std::vector<double> db_grid(double pmin_db, double pmax_db, int steps);

/// Flat `key = value` config text; '#' starts a comment. Recognized keys:
/// design, set, trials, seed, decoder, split, p1, p2, pmin_db, pmax_db,
/// steps, p_db (comma-separated list), workers, noiseless.
SimConfig parse_sim_config(std::istream& in);

int resolve_workers(int requested);

std::string decoder_name(DecoderChoice d);
DecoderChoice parse_decoder(const std::string& name);

}  // namespace cidstc
