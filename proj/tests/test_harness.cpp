#include <cmath>
#include <sstream>

#include "cidstc/harness.hpp"
#include "doctest.h"

using namespace cidstc;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.design_id = "example1";
  cfg.set_id = "z8rot";
  cfg.p_grid_db = {18.0, 24.0};
  cfg.trials = 600;  // spans multiple trial blocks
  cfg.seed = 7;
  cfg.decoder = DecoderChoice::Sphere;
  return cfg;
}

std::string curve_csv(const BerCurve& curve) {
  std::stringstream ss;
  write_ber_csv(ss, curve);
  return ss.str();
}

}  // namespace

TEST_CASE("identical seeds give bit-identical curves") {
  const SimConfig cfg = small_config();
  CHECK(curve_csv(run_ber(cfg)) == curve_csv(run_ber(cfg)));
  SimConfig other = cfg;
  other.seed = 8;
  CHECK(curve_csv(run_ber(other)) != curve_csv(run_ber(cfg)));
}

TEST_CASE("worker count never changes the output") {
  SimConfig cfg = small_config();
  cfg.workers = 1;
  const std::string one = curve_csv(run_ber(cfg));
  cfg.workers = 2;
  const std::string two = curve_csv(run_ber(cfg));
  cfg.workers = 8;
  const std::string eight = curve_csv(run_ber(cfg));
  CHECK(one == two);
  CHECK(one == eight);
}

TEST_CASE("noiseless override decodes perfectly for every design") {
  struct Case {
    const char* design;
    const char* set;
    DecoderChoice decoder;
  };
  for (const Case& c : {Case{"example1", "z8rot", DecoderChoice::Sphere},
                        Case{"ci8", "z4rot", DecoderChoice::Sphere},
                        Case{"rdstc8", "z4rot", DecoderChoice::Group}}) {
    SimConfig cfg = small_config();
    cfg.design_id = c.design;
    cfg.set_id = c.set;
    cfg.decoder = c.decoder;
    cfg.trials = 300;
    cfg.noiseless = true;
    const BerCurve curve = run_ber(cfg);
    for (const BerPoint& p : curve.points) {
      CHECK(p.bit_errors == 0);
      CHECK(p.ber == 0.0);
    }
  }
}

TEST_CASE("curve bookkeeping is consistent") {
  const BerCurve curve = run_ber(small_config());
  CHECK(curve.bits_per_codeword == 8);
  REQUIRE(curve.points.size() == 2);
  for (const BerPoint& p : curve.points) {
    CHECK(p.p_linear == doctest::Approx(std::pow(10.0, p.p_db / 10.0)));
    CHECK(p.bits == p.trials * 8);
    CHECK(p.ber == doctest::Approx(static_cast<double>(p.bit_errors) /
                                   static_cast<double>(p.bits)));
  }
  // BER should not grow with power here (9 dB apart, far above the noise).
  CHECK(curve.points[1].ber <= curve.points[0].ber);
}

TEST_CASE("CSV output follows the pinned schema") {
  const std::string csv = curve_csv(run_ber(small_config()));
  CHECK(csv.rfind("p_db,p_linear,trials,bit_errors,bits,ber\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  // 2 data rows + header + config echo comment.
  int newlines = 0;
  for (char ch : csv) newlines += (ch == '\n');
  CHECK(newlines == 4);
  CHECK(csv.find("# design=example1 set=z8rot") != std::string::npos);
  // 17-significant-digit round trip: p_linear of 18 dB.
  CHECK(csv.find("63.095734448019329") != std::string::npos);
}

TEST_CASE("config validation happens before any trial runs") {
  SimConfig cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS(run_ber(cfg));
  cfg = small_config();
  cfg.p_grid_db.clear();
  CHECK_THROWS(run_ber(cfg));
  cfg = small_config();
  cfg.decoder = DecoderChoice::Group;  // z8rot carries no groups
  CHECK_THROWS(run_ber(cfg));
  cfg = small_config();
  cfg.set_id = "z4rot";  // dimension mismatch with the T=4 design
  CHECK_THROWS(run_ber(cfg));
}

TEST_CASE("bound-curve table matches direct evaluations exactly") {
  PepParams params;
  params.R = 5;
  params.T = 20;
  params.rho2 = 2.25;   // rho = 1.5
  params.rho2_prime = 4.0;  // rho' = 2
  const std::vector<double> grid = db_grid(3.0, 60.0, 100);
  const PepTable table = run_pep_curves(params, grid);
  REQUIRE(table.rows.size() == 100);
  for (const PepRow& row : table.rows) {
    PepParams q = params;
    q.P = row.p_linear;
    CHECK(row.cidstc_bound == cidstc_pep_bound(q));
    CHECK(row.rdstc_bound == rdstc_pep_bound(q));
    CHECK(row.fractional_change == fractional_pep_change(q));
  }
  REQUIRE(table.crossover.has_value());
  // Swapping the metrics moves the crossover to lower power.
  PepParams swapped = params;
  std::swap(swapped.rho2, swapped.rho2_prime);
  const PepTable other = run_pep_curves(swapped, grid);
  REQUIRE(other.crossover.has_value());
  CHECK(*other.crossover < *table.crossover);
}

TEST_CASE("uniform grids include both endpoints") {
  const auto grid = db_grid(0.0, 60.0, 61);
  REQUIRE(grid.size() == 61);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 60.0);
  CHECK(grid[1] == doctest::Approx(1.0));
  CHECK(db_grid(5.0, 5.0, 1) == std::vector<double>{5.0});
  CHECK_THROWS(db_grid(0.0, 1.0, 0));
}

TEST_CASE("config files parse into the same structure") {
  std::stringstream ss(
      "design = ci8\n"
      "set = z4rot  # grouped lattice\n"
      "trials = 5000\n"
      "seed = 99\n"
      "decoder = sphere\n"
      "split = optimal\n"
      "pmin_db = 10\n"
      "pmax_db = 30\n"
      "steps = 5\n"
      "workers = 2\n");
  const SimConfig cfg = parse_sim_config(ss);
  CHECK(cfg.design_id == "ci8");
  CHECK(cfg.set_id == "z4rot");
  CHECK(cfg.trials == 5000);
  CHECK(cfg.seed == 99);
  CHECK(cfg.decoder == DecoderChoice::Sphere);
  CHECK(cfg.split == SplitKind::Optimal);
  CHECK(cfg.workers == 2);
  REQUIRE(cfg.p_grid_db.size() == 5);
  CHECK(cfg.p_grid_db.front() == 10.0);
  CHECK(cfg.p_grid_db.back() == 30.0);

  std::stringstream explicit_grid("p_db = 5, 10, 15\n");
  CHECK(parse_sim_config(explicit_grid).p_grid_db ==
        std::vector<double>{5.0, 10.0, 15.0});

  std::stringstream bad("frobnicate = 3\n");
  CHECK_THROWS(parse_sim_config(bad));
}
