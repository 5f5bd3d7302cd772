#include <cmath>

#include <gtest/gtest.h>

#include "shockline/errors.hpp"
#include "shockline/trace.hpp"

namespace shockline {
namespace {

RunResult rest_run(const GasModel& gm, double t_end) {
  ProfileSpec p;
  p.tau0 = 1.0;
  RunOptions ro;
  ro.t_end = t_end;
  return run(init_field(p, Grid::periodic(64, 10.0), gm), gm, DampingLaw(0.5, 0.0), ro);
}

TEST(Trace, ConstantStateMovesAtSoundSpeed) {
  const GasModel gm(2.0, 1.0);
  const double c = sound_speed(gm, 1.0);
  EXPECT_NEAR(c, std::sqrt(2.0), 1e-15);
  const RunResult r = rest_run(gm, 2.0);
  const CharTrace fwd = trace_characteristic(r.snapshots, gm, DampingLaw(0.5, 0.0), 3.0,
                                             Characteristic::kForward);
  const CharTrace bwd = trace_characteristic(r.snapshots, gm, DampingLaw(0.5, 0.0), 3.0,
                                             Characteristic::kBackward);
  ASSERT_EQ(fwd.t.size(), r.snapshots.size());
  EXPECT_NEAR(fwd.x.back(), 3.0 + 2.0 * c, 1e-12);
  EXPECT_NEAR(bwd.x.back(), r.snapshots.grid.wrap(3.0 - 2.0 * c), 1e-12);
  EXPECT_EQ(fwd.x.front(), bwd.x.front());
  EXPECT_EQ(fwd.phi.front(), bwd.phi.front());
  EXPECT_EQ(bwd.direction, Characteristic::kBackward);
}

TEST(Trace, WrapsAroundThePeriodicDomain) {
  const GasModel gm(2.0, 1.0);
  const RunResult r = rest_run(gm, 8.0);
  const CharTrace tr = trace_characteristic(r.snapshots, gm, DampingLaw(0.5, 0.0), 9.0,
                                            Characteristic::kForward);
  for (double x : tr.x) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 10.0);
  }
  EXPECT_NEAR(tr.x.back(), std::fmod(9.0 + 8.0 * std::sqrt(2.0), 10.0), 1e-11);
}

TEST(Trace, StopsEarlyOnRequest) {
  const GasModel gm(2.0, 1.0);
  const RunResult r = rest_run(gm, 2.0);
  const CharTrace tr = trace_characteristic(r.snapshots, gm, DampingLaw(0.5, 0.0), 3.0,
                                            Characteristic::kForward, 1.0);
  EXPECT_NEAR(tr.t.back(), 1.0, 1e-14);
  EXPECT_NEAR(tr.x.back(), 3.0 + std::sqrt(2.0), 1e-12);
}

TEST(Trace, RejectsOutOfRangeStop) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(0.5, 0.0);
  const RunResult r = rest_run(gm, 1.0);
  EXPECT_THROW(trace_characteristic(r.snapshots, gm, dl, 1.0, Characteristic::kForward, 2.0),
               TraceError);
  SnapshotStore one;
  one.grid = r.snapshots.grid;
  one.append(r.snapshots.state(0));
  EXPECT_THROW(trace_characteristic(one, gm, dl, 1.0, Characteristic::kForward), TraceError);
}

TEST(CrossValidation, AgreesOnSmoothData) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(0.5, 0.0);
  ProfileSpec p;
  p.preset = Preset::kSine;
  p.tau_amp = 0.05;
  p.u_amp = 0.1;
  double prev = 0.0;
  for (std::size_t n : {256u, 512u}) {
    RunOptions ro;
    ro.t_end = 3.0;
    const RunResult r = run(init_field(p, Grid::periodic(n, 10.0), gm), gm, dl, ro);
    for (Characteristic dir : {Characteristic::kForward, Characteristic::kBackward}) {
      const CharTrace tr = trace_characteristic(r.snapshots, gm, dl, 2.0, dir);
      const CrossValidation cv = cross_validate_riccati(tr, gm, dl, 1e-10);
      EXPECT_FALSE(cv.blew_up);
      EXPECT_LT(cv.max_deviation, 1e-5);
      EXPECT_EQ(cv.deviation.size(), tr.t.size());
      EXPECT_EQ(cv.deviation.front(), 0.0);
      if (dir == Characteristic::kForward) {
        if (prev > 0.0) {
          EXPECT_LT(cv.max_deviation, 0.4 * prev);
        }
        prev = cv.max_deviation;
      }
    }
  }
}

}  // namespace
}  // namespace shockline
