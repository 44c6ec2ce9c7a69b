#include "imcf/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "imcf/error.hpp"

namespace imcf {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr const char* kHeader = "r,psi,V,Vprime";
constexpr const char* kTrailer = "#events direction=";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

template <class Enum>
bool parse_enum(const std::string& s, Enum& out, std::initializer_list<Enum> values) {
  for (Enum v : values) {
    if (to_string(v) == s) {
      out = v;
      return true;
    }
  }
  return false;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kHeader << '\n';
  for (const ProfileState& s : trace.samples) {
    out << format_double(s.r) << ',' << format_double(s.psi) << ',';
    if (s.V) out << format_double(*s.V);
    out << ',';
    if (s.Vp) out << format_double(*s.Vp);
    out << '\n';
  }
  out << kTrailer << (trace.direction == Direction::Forward ? "forward" : "backward") << '\n';
  for (const Event& e : trace.events) {
    if (e.kind == EventKind::BlowUp || e.kind == EventKind::BoundaryReached) continue;
    out << to_string(e.kind) << ',' << format_double(e.r_at) << ',' << format_double(e.psi_at);
    if (e.kind == EventKind::EtaTouch) out << (e.branch == Branch::Eta1 ? ",eta1" : ",eta2");
    out << '\n';
  }
  const Termination& t = trace.termination;
  out << to_string(t.kind) << ',' << format_double(t.r);
  if (t.kind == TerminationKind::HitPlusOne || t.kind == TerminationKind::HitMinusOne) {
    out << ',' << to_string(t.limit);
  }
  out << '\n';
}

Trace read_trace_csv(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kHeader) {
    throw Error(ErrorCode::ParseError, "missing header '" + std::string(kHeader) + "'");
  }

  bool trailer = false;
  bool all_v = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind(kTrailer, 0) == 0) {
      const std::string dir = line.substr(std::string(kTrailer).size());
      if (dir != "forward" && dir != "backward") throw Error(ErrorCode::ParseError, "bad direction");
      trace.direction = dir == "forward" ? Direction::Forward : Direction::Backward;
      trailer = true;
      break;
    }
    const auto f = split(line);
    if (f.size() != 4) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields");
    ProfileState s{parse_double(f[0], line_no), parse_double(f[1], line_no), {}, {}};
    if (!f[2].empty()) s.V = parse_double(f[2], line_no);
    if (!f[3].empty()) s.Vp = parse_double(f[3], line_no);
    all_v = all_v && s.V && s.Vp;
    trace.samples.push_back(s);
  }
  if (!trailer) throw Error(ErrorCode::ParseError, "missing events trailer");
  trace.carries_profile = all_v && !trace.samples.empty();

  bool terminated = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (terminated) throw Error(ErrorCode::ParseError, "rows after the termination row");
    const auto f = split(line);
    if (f.size() < 2) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": short event row");

    EventKind kind;
    if (parse_enum(f[0], kind, {EventKind::EnterBand, EventKind::ExitBand, EventKind::ZeroCross,
                                EventKind::EtaTouch})) {
      if (f.size() < 3) throw Error(ErrorCode::ParseError, "event row needs r and psi");
      Event e;
      e.kind = kind;
      e.r_at = parse_double(f[1], line_no);
      e.psi_at = parse_double(f[2], line_no);
      if (kind == EventKind::EtaTouch) {
        if (f.size() != 4 || (f[3] != "eta1" && f[3] != "eta2")) {
          throw Error(ErrorCode::ParseError, "EtaTouch row needs eta1 or eta2");
        }
        e.branch = f[3] == "eta1" ? Branch::Eta1 : Branch::Eta2;
      }
      trace.events.push_back(e);
      continue;
    }

    TerminationKind tk;
    if (!parse_enum(f[0], tk, {TerminationKind::BlowUpMinus, TerminationKind::BlowUpPlus,
                               TerminationKind::HitPlusOne, TerminationKind::HitMinusOne,
                               TerminationKind::StepLimit})) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown row '" + f[0] + "'");
    }
    Termination t{tk, parse_double(f[1], line_no), LimitFlag::Finite};
    Event e;
    e.r_at = t.r;
    switch (tk) {
      case TerminationKind::BlowUpMinus:
      case TerminationKind::BlowUpPlus:
        t.limit = tk == TerminationKind::BlowUpMinus ? LimitFlag::MinusInfinity : LimitFlag::PlusInfinity;
        e.kind = EventKind::BlowUp;
        e.sign = tk == TerminationKind::BlowUpMinus ? -1 : 1;
        trace.events.push_back(e);
        break;
      case TerminationKind::HitPlusOne:
      case TerminationKind::HitMinusOne:
        if (f.size() != 3 || !parse_enum(f[2], t.limit, {LimitFlag::PlusInfinity, LimitFlag::MinusInfinity,
                                                         LimitFlag::Zero, LimitFlag::Finite})) {
          throw Error(ErrorCode::ParseError, "pole row needs a limit flag");
        }
        e.kind = EventKind::BoundaryReached;
        e.sign = tk == TerminationKind::HitPlusOne ? 1 : -1;
        e.psi_at = trace.samples.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.samples.back().psi;
        trace.events.push_back(e);
        break;
      case TerminationKind::StepLimit: break;
    }
    trace.termination = t;
    terminated = true;
  }
  if (!terminated) throw Error(ErrorCode::ParseError, "missing termination row");
  return trace;
}

}  // namespace imcf
