#include "cidstc/harness.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cidstc/channel.hpp"
#include "cidstc/codebook.hpp"
#include "cidstc/constellation.hpp"
#include "cidstc/decoder.hpp"
#include "cidstc/rng.hpp"

namespace cidstc {
namespace {

constexpr std::int64_t kTrialBlock = 256;

// RNG derivation roles within a (seed, point, block) scope.
constexpr std::uint64_t kRoleIndex = 0;
constexpr std::uint64_t kRoleFades = 1;
constexpr std::uint64_t kRoleNoise = 2;

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Fixed, generic fades and zero noise. Exactly unit fades would collapse
// the combined first-hop coefficients (f_1j = f_2j gives k_2j = 0) and can
// make the equivalent lattice basis singular; a fixed generic draw keeps the
// override deterministic while every codebook stays uniquely decodable.
void make_noiseless(ChannelRealization& real) {
  for (Eigen::Index j = 0; j < real.f.cols(); ++j) {
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double a = static_cast<double>(i) + 1.0;
      const double b = static_cast<double>(j) + 1.0;
      real.f(i, j) = Complex(1.0 + 0.37 * a + 0.21 * b, 0.53 * a - 0.11 * b);
      real.g(i, j) = Complex(0.9 - 0.13 * a + 0.31 * b, 0.25 * a + 0.17 * b);
    }
  }
  for (auto& per_relay : real.relay_noise) {
    per_relay[0].setZero();
    per_relay[1].setZero();
  }
  real.dest_noise.setZero();
}

struct BlockResult {
  std::int64_t bit_errors = 0;
};

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CIDSTC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::string decoder_name(DecoderChoice d) {
  switch (d) {
    case DecoderChoice::Exhaustive: return "exhaustive";
    case DecoderChoice::Sphere: return "sphere";
    case DecoderChoice::Group: return "group";
  }
  return "?";
}

DecoderChoice parse_decoder(const std::string& name) {
  if (name == "exhaustive") return DecoderChoice::Exhaustive;
  if (name == "sphere") return DecoderChoice::Sphere;
  if (name == "group") return DecoderChoice::Group;
  throw std::invalid_argument("unknown decoder: " + name);
}

std::vector<double> db_grid(double pmin_db, double pmax_db, int steps) {
  if (steps < 1) throw std::invalid_argument("db_grid: steps must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid[0] = pmin_db;
    return grid;
  }
  const double step = (pmax_db - pmin_db) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = pmin_db + step * i;
  return grid;
}

BerCurve run_ber(const SimConfig& cfg) {
  if (cfg.trials <= 0) throw std::invalid_argument("run_ber: trials must be > 0");
  if (cfg.p_grid_db.empty()) {
    throw std::invalid_argument("run_ber: empty power grid");
  }
  const RelayDesign& design = find_design(cfg.design_id);
  const LatticeSignalSet set = find_set(cfg.set_id, design.T);
  const std::int64_t points = set.point_count();
  const int bits = std::bit_width(static_cast<std::uint64_t>(points)) - 1;
  if ((std::int64_t{1} << bits) != points) {
    throw std::invalid_argument(
        "run_ber: signal-set size must be a power of two for bit labeling");
  }
  if (cfg.decoder == DecoderChoice::Group && set.z_groups.empty()) {
    throw std::invalid_argument(
        "run_ber: group decoder requires a grouped signal set");
  }
  if (cfg.split == SplitKind::Custom &&
      (cfg.custom_p1 <= 0.0 || cfg.custom_p2 <= 0.0)) {
    throw std::invalid_argument("run_ber: custom split requires P1, P2 > 0");
  }

  const NetworkConfig net{design.kind == DesignKind::Cidstc
                              ? design.R
                              : design.antennas() / 2,
                          design.T};
  const DecoderContext ctx(design, set);
  const int workers = resolve_workers(cfg.workers);

  BerCurve curve;
  curve.config = cfg;
  curve.bits_per_codeword = bits;

  const std::int64_t blocks = (cfg.trials + kTrialBlock - 1) / kTrialBlock;
  for (std::size_t pt = 0; pt < cfg.p_grid_db.size(); ++pt) {
    const double p_db = cfg.p_grid_db[pt];
    const double p_linear = std::pow(10.0, p_db / 10.0);
    PowerAllocation pw;
    if (cfg.split == SplitKind::Optimal) {
      pw = optimal_power_split(p_linear, net.R);
    } else {
      pw.P = p_linear;
      pw.P1 = cfg.custom_p1;
      pw.P2 = cfg.custom_p2;
    }
    const double scale = equivalent_scale(pw, design.T);

    std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
    std::atomic<std::int64_t> next_block{0};
    auto worker = [&]() {
      for (;;) {
        const std::int64_t b = next_block.fetch_add(1);
        if (b >= blocks) return;
        auto idx_rng = RngStream::derive(
            cfg.seed, {static_cast<std::uint64_t>(pt),
                       static_cast<std::uint64_t>(b), kRoleIndex});
        auto fade_rng = RngStream::derive(
            cfg.seed, {static_cast<std::uint64_t>(pt),
                       static_cast<std::uint64_t>(b), kRoleFades});
        auto noise_rng = RngStream::derive(
            cfg.seed, {static_cast<std::uint64_t>(pt),
                       static_cast<std::uint64_t>(b), kRoleNoise});
        const std::int64_t lo = b * kTrialBlock;
        const std::int64_t hi = std::min(lo + kTrialBlock, cfg.trials);
        std::int64_t errs = 0;
        for (std::int64_t t = lo; t < hi; ++t) {
          const auto idx = static_cast<std::int64_t>(
              idx_rng.uniform_index(static_cast<std::uint64_t>(points)));
          const ComplexVector x = index_to_symbols(set, idx);
          ChannelRealization real = sample_realization(net, fade_rng, noise_rng);
          if (cfg.noiseless) {
            make_noiseless(real);
          }
          ComplexVector y;
          ComplexVector h;
          if (design.kind == DesignKind::Cidstc) {
            auto r = simulate_end_to_end(x, design, real, pw,
                                         /*check_consistency=*/false);
            y = std::move(r.y);
            h = std::move(r.equivalent.h);
          } else {
            auto r = simulate_rdstc_end_to_end(x, design, real, pw,
                                               /*check_consistency=*/false);
            y = std::move(r.y);
            h = std::move(r.h);
          }
          const LatticeForm form = ctx.form(y, h, scale);
          std::int64_t decoded = 0;
          switch (cfg.decoder) {
            case DecoderChoice::Exhaustive:
              decoded = ctx.decode_exhaustive(form);
              break;
            case DecoderChoice::Sphere:
              decoded = ctx.decode_sphere(form);
              break;
            case DecoderChoice::Group:
              decoded = ctx.decode_group(form);
              break;
          }
          errs += std::popcount(
              static_cast<std::uint64_t>(idx ^ decoded));
        }
        results[static_cast<std::size_t>(b)].bit_errors = errs;
      }
    };

    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    BerPoint point;
    point.p_db = p_db;
    point.p_linear = p_linear;
    point.trials = cfg.trials;
    point.bits = cfg.trials * bits;
    for (const auto& r : results) point.bit_errors += r.bit_errors;
    point.ber = static_cast<double>(point.bit_errors) /
                static_cast<double>(point.bits);
    curve.points.push_back(point);
  }
  return curve;
}

void write_ber_csv(std::ostream& out, const BerCurve& curve) {
  out << "p_db,p_linear,trials,bit_errors,bits,ber\n";
  for (const auto& p : curve.points) {
    out << format17(p.p_db) << ',' << format17(p.p_linear) << ',' << p.trials
        << ',' << p.bit_errors << ',' << p.bits << ',' << format17(p.ber)
        << '\n';
  }
  const SimConfig& c = curve.config;
  out << "# design=" << c.design_id << " set=" << c.set_id
      << " trials=" << c.trials << " seed=" << c.seed
      << " decoder=" << decoder_name(c.decoder) << " split="
      << (c.split == SplitKind::Optimal ? std::string("optimal")
                                        : "custom(" + format17(c.custom_p1) +
                                              "," + format17(c.custom_p2) + ")")
      << " bits_per_codeword=" << curve.bits_per_codeword
      << " noiseless=" << (c.noiseless ? 1 : 0) << '\n';
}

PepTable run_pep_curves(const PepParams& params,
                        const std::vector<double>& p_grid_db) {
  if (p_grid_db.empty()) {
    throw std::invalid_argument("run_pep_curves: empty power grid");
  }
  PepTable table;
  table.params = params;
  double p_min = std::pow(10.0, p_grid_db.front() / 10.0);
  double p_max = p_min;
  for (double db : p_grid_db) {
    const double p = std::pow(10.0, db / 10.0);
    if (p < 1.0) {
      throw std::invalid_argument("run_pep_curves: bounds need P >= 1");
    }
    p_min = std::min(p_min, p);
    p_max = std::max(p_max, p);
  }
  table.crossover = bound_crossover(params, std::max(p_min, 1.0 + 1e-9), p_max);
  for (double db : p_grid_db) {
    PepRow row;
    row.p_db = db;
    row.p_linear = std::pow(10.0, db / 10.0);
    PepParams q = params;
    q.P = row.p_linear;
    row.cidstc_bound = cidstc_pep_bound(q);
    row.rdstc_bound = rdstc_pep_bound(q);
    row.fractional_change = fractional_pep_change(q);
    row.beyond_crossover =
        table.crossover.has_value() && row.p_linear > *table.crossover;
    table.rows.push_back(row);
  }
  return table;
}

void write_pep_csv(std::ostream& out, const PepTable& table) {
  out << "p_db,p_linear,cidstc_bound,rdstc_bound,fractional_change,"
         "beyond_crossover\n";
  for (const auto& r : table.rows) {
    out << format17(r.p_db) << ',' << format17(r.p_linear) << ','
        << format17(r.cidstc_bound) << ',' << format17(r.rdstc_bound) << ','
        << format17(r.fractional_change) << ',' << (r.beyond_crossover ? 1 : 0)
        << '\n';
  }
  out << "# R=" << table.params.R << " T=" << table.params.T
      << " rho2=" << format17(table.params.rho2)
      << " rho2_prime=" << format17(table.params.rho2_prime) << " crossover="
      << (table.crossover ? format17(*table.crossover) : std::string("none"))
      << '\n';
}

SimConfig parse_sim_config(std::istream& in) {
  SimConfig cfg;
  cfg.p_grid_db.clear();
  double pmin_db = 0.0, pmax_db = 0.0;
  int steps = 0;
  bool have_range = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "design") {
      cfg.design_id = value;
    } else if (key == "set") {
      cfg.set_id = value;
    } else if (key == "trials") {
      cfg.trials = std::stoll(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "decoder") {
      cfg.decoder = parse_decoder(value);
    } else if (key == "split") {
      if (value == "optimal") {
        cfg.split = SplitKind::Optimal;
      } else if (value == "custom") {
        cfg.split = SplitKind::Custom;
      } else {
        throw std::invalid_argument("config: split must be optimal or custom");
      }
    } else if (key == "p1") {
      cfg.custom_p1 = std::stod(value);
    } else if (key == "p2") {
      cfg.custom_p2 = std::stod(value);
    } else if (key == "pmin_db") {
      pmin_db = std::stod(value);
      have_range = true;
    } else if (key == "pmax_db") {
      pmax_db = std::stod(value);
      have_range = true;
    } else if (key == "steps") {
      steps = std::stoi(value);
      have_range = true;
    } else if (key == "p_db") {
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        cfg.p_grid_db.push_back(std::stod(trim(tok)));
      }
    } else if (key == "workers") {
      cfg.workers = std::stoi(value);
    } else if (key == "noiseless") {
      cfg.noiseless = (value == "1" || value == "true");
    } else {
      throw std::invalid_argument("config: unknown key: " + key);
    }
  }
  if (cfg.p_grid_db.empty() && have_range) {
    if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    cfg.p_grid_db = db_grid(pmin_db, pmax_db, steps);
  }
  return cfg;
}

}  // namespace cidstc
