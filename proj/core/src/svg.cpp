#include "imcf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "imcf/error.hpp"

namespace imcf {

std::string_view to_string(Pane pane) {
  switch (pane) {
    case Pane::Psi: return "psi";
    case Pane::Vprime: return "vprime";
    case Pane::V: return "v";
    case Pane::Eta: return "eta";
  }
  return "?";
}

Pane pane_from_string(std::string_view s) {
  for (Pane p : {Pane::Psi, Pane::Vprime, Pane::V, Pane::Eta}) {
    if (to_string(p) == s) return p;
  }
  throw Error(ErrorCode::ParseError, "unknown pane '" + std::string(s) + "'");
}

void RenderOptions::validate() const {
  if (width < 100 || height < 100) throw Error(ErrorCode::InvalidControl, "render size must be >= 100 px");
  if (margin < 0 || 2 * margin >= std::min(width, height)) {
    throw Error(ErrorCode::InvalidControl, "margin leaves no plot area");
  }
  if (stride == 0) throw Error(ErrorCode::InvalidControl, "stride must be positive");
  if (lo && hi && !(*lo < *hi)) throw Error(ErrorCode::InvalidControl, "need lo < hi");
}

double PlotFrame::px(double r) const {
  return margin + (r + 1.0) / 2.0 * (width - 2.0 * margin);
}

double PlotFrame::py(double v) const {
  return height - margin - (v - lo) / (hi - lo) * (height - 2.0 * margin);
}

namespace {

using Curve = std::vector<std::pair<double, double>>;

// Nullcline value in the coordinates of the pane.
double curve_value(Pane pane, Branch b, double r, const Parameters& p) {
  return pane == Pane::Vprime ? zeta(b, r, p) : eta(b, r, p);
}

// Samples of both nullcline branches over (-1, a] and [b, 1), band edges included.
std::vector<std::pair<Branch, Curve>> nullclines(Pane pane, const Parameters& p, double pole_gap) {
  const Band band = band_bounds(p);
  std::vector<std::pair<Branch, Curve>> out;
  constexpr int kCount = 240;
  const std::pair<double, double> pieces[] = {{band.a, -1.0 + pole_gap}, {band.b, 1.0 - pole_gap}};
  for (std::size_t piece = 0; piece < 2; ++piece) {
    const auto [from, to] = pieces[piece];
    if (piece == 0 ? !(to < from) : !(to > from)) continue;
    for (Branch br : {Branch::Eta1, Branch::Eta2}) {
      Curve c;
      for (int i = 0; i <= kCount; ++i) {
        const double t = static_cast<double>(i) / kCount;
        const double r = from + (to - from) * t;
        c.emplace_back(r, curve_value(pane, br, r, p));
      }
      out.emplace_back(br, std::move(c));
    }
  }
  return out;
}

std::vector<double> pane_values(const Trace& t, Pane pane) {
  std::vector<double> v;
  for (const ProfileState& s : t.samples) {
    if (pane == Pane::Psi) {
      v.push_back(s.psi);
    } else if (pane == Pane::Vprime) {
      v.push_back(s.Vp.value_or(std::nan("")));
    } else {
      v.push_back(s.V.value_or(std::nan("")));
    }
  }
  return v;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

void polyline(std::ostringstream& out, const Curve& c, const PlotFrame& f, const char* cls,
              bool dashed) {
  // Split into runs that stay inside the vertical range.
  std::vector<Curve> runs(1);
  for (const auto& [r, v] : c) {
    if (std::isfinite(v) && v >= f.lo && v <= f.hi) {
      runs.back().emplace_back(r, v);
    } else if (!runs.back().empty()) {
      runs.emplace_back();
    }
  }
  for (const Curve& run : runs) {
    if (run.size() < 2) continue;
    out << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << (dashed ? "#555" : "#000")
        << "\" stroke-width=\"" << (dashed ? "1" : "1.5") << "\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < run.size(); ++i) {
      if (i) out << ' ';
      out << num(f.px(run[i].first)) << ',' << num(f.py(run[i].second));
    }
    out << "\"/>\n";
  }
}

}  // namespace

PlotFrame plot_frame(const Parameters& p, const std::vector<Trace>& traces, Pane pane,
                     const RenderOptions& opt) {
  double lo = -1.0, hi = 1.0;
  if (pane == Pane::V) {
    bool any = false;
    for (const Trace& t : traces) {
      for (double v : pane_values(t, pane)) {
        if (!std::isfinite(v)) continue;
        lo = any ? std::min(lo, v) : v;
        hi = any ? std::max(hi, v) : v;
        any = true;
      }
    }
    if (!any || hi - lo < 1e-12) {
      const double mid = any ? lo : 0.0;
      lo = mid - 1.0;
      hi = mid + 1.0;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  } else {
    double m = 0.0;
    for (const auto& [br, c] : nullclines(pane, p, kVisiblePoleGap)) {
      for (const auto& pt : c) m = std::max(m, std::abs(pt.second));
    }
    if (m == 0.0) m = 1.0;
    lo = -2.0 * m;
    hi = 2.0 * m;
  }
  if (opt.lo) lo = *opt.lo;
  if (opt.hi) hi = *opt.hi;
  return PlotFrame{lo, hi, opt.width, opt.height, opt.margin};
}

std::string render_portrait(const Parameters& p, const std::vector<Trace>& traces, Pane pane,
                            const RenderOptions& opt) {
  opt.validate();
  const PlotFrame f = plot_frame(p, traces, pane, opt);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
      << "<title>" << to_string(pane) << " (n=" << p.n << ", k=" << p.k << ", m1=" << p.m1
      << ", m2=" << p.m2 << ")</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" fill=\"#fff\"/>\n";

  const double y_axis = f.py(std::clamp(0.0, f.lo, f.hi));
  out << "<line class=\"axis\" x1=\"" << num(f.px(-1.0)) << "\" y1=\"" << num(y_axis) << "\" x2=\""
      << num(f.px(1.0)) << "\" y2=\"" << num(y_axis) << "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  for (double r : {-1.0, 0.0, 1.0}) {
    out << "<line class=\"tick\" x1=\"" << num(f.px(r)) << "\" y1=\"" << num(y_axis - 4) << "\" x2=\""
        << num(f.px(r)) << "\" y2=\"" << num(y_axis + 4) << "\" stroke=\"#000\"/>\n"
        << "<text x=\"" << num(f.px(r)) << "\" y=\"" << num(y_axis + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << (r < 0 ? "-1" : r > 0 ? "1" : "0")
        << "</text>\n";
  }

  if (pane != Pane::V) {
    for (const auto& [br, c] : nullclines(pane, p, 1e-6)) {
      polyline(out, c, f, br == Branch::Eta1 ? "eta1" : "eta2", true);
    }
  }

  if (pane != Pane::Eta) {
    std::vector<double> markers;
    for (const Trace& t : traces) {
      const std::vector<double> v = pane_values(t, pane);
      Curve c;
      for (std::size_t i = 0; i < v.size(); i += opt.stride) c.emplace_back(t.samples[i].r, v[i]);
      if (!v.empty() && (v.size() - 1) % opt.stride != 0) c.emplace_back(t.samples.back().r, v.back());
      polyline(out, c, f, "trajectory", false);
      for (const Event& e : t.events) {
        if (e.kind == EventKind::BlowUp) markers.push_back(e.r_at);
      }
    }
    std::sort(markers.begin(), markers.end());
    markers.erase(std::unique(markers.begin(), markers.end()), markers.end());
    for (double r : markers) {
      out << "<line class=\"asymptote\" x1=\"" << num(f.px(r)) << "\" y1=\"" << num(f.py(f.hi))
          << "\" x2=\"" << num(f.px(r)) << "\" y2=\"" << num(f.py(f.lo))
          << "\" stroke=\"#555\" stroke-dasharray=\"4,4\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace imcf
