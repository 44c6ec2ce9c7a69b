#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "imcf/error.hpp"
#include "imcf/trace_io.hpp"

using namespace imcf;

namespace {

const Parameters kP21 = validate_parameters(2, 1, 1, 1);

void expect_same(const Trace& a, const Trace& b) {
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].r, b.samples[i].r);
    EXPECT_EQ(a.samples[i].psi, b.samples[i].psi);
    EXPECT_EQ(a.samples[i].V, b.samples[i].V);
    EXPECT_EQ(a.samples[i].Vp, b.samples[i].Vp);
  }
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    EXPECT_EQ(a.events[i].kind, b.events[i].kind);
    EXPECT_EQ(a.events[i].r_at, b.events[i].r_at);
  }
  EXPECT_EQ(a.termination.kind, b.termination.kind);
  EXPECT_EQ(a.termination.r, b.termination.r);
  EXPECT_EQ(a.termination.limit, b.termination.limit);
  EXPECT_EQ(a.direction, b.direction);
  EXPECT_EQ(a.carries_profile, b.carries_profile);
}

Trace round_trip(const Trace& t) {
  std::stringstream ss;
  write_trace_csv(ss, t);
  return read_trace_csv(ss);
}

}  // namespace

TEST(TraceIo, FormatDoubleReadsBack) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(TraceIo, RoundTripBlowUp) {
  const Trace t = integrate_psi({0.0, 0.0}, Direction::Forward, kP21, {});
  expect_same(t, round_trip(t));
}

TEST(TraceIo, RoundTripProfileBackward) {
  const Band band = band_bounds(kP21);
  const double r0 = (band.b + 1) / 2;
  const Trace t = integrate_profile({r0, eta_midpoint(r0, kP21)}, Direction::Backward, kP21, {});
  expect_same(t, round_trip(t));
}

TEST(TraceIo, RoundTripPole) {
  const Band band = band_bounds(kP21);
  const double r0 = (band.b + 1) / 2;
  const Trace t = integrate_psi({r0, eta_midpoint(r0, kP21)}, Direction::Forward, kP21, {});
  ASSERT_EQ(t.termination.kind, TerminationKind::HitPlusOne);
  expect_same(t, round_trip(t));
}

TEST(TraceIo, Layout) {
  const Trace t = integrate_psi({0.0, 0.0}, Direction::Forward, kP21, {});
  std::stringstream ss;
  write_trace_csv(ss, t);
  const std::string s = ss.str();
  EXPECT_EQ(s.rfind("r,psi,V,Vprime\n", 0), 0u);
  EXPECT_NE(s.find("\n#events direction=forward\n"), std::string::npos);
  EXPECT_NE(s.find("\nBlowUpMinus,0.6331700450"), std::string::npos);
}

TEST(TraceIo, RejectsMalformedInput) {
  for (const char* bad : {"", "x,y\n1,2\n", "r,psi,V,Vprime\n0.1,abc,,\n#events direction=forward\nStepLimit,0.1\n",
                          "r,psi,V,Vprime\n0.1,0.2,,\n", "r,psi,V,Vprime\n0.1,0.2,,\n#events direction=sideways\n",
                          "r,psi,V,Vprime\n0.1,0.2,,\n#events direction=forward\nWobble,0.3\n"}) {
    std::istringstream in(bad);
    try {
      read_trace_csv(in);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
}
