#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imcf/geometry.hpp"
#include "imcf/profile_ode.hpp"

namespace imcf {

/// What a portrait shows: psi over the dashed eta curves, V' over the dashed
/// zeta curves, V alone, or the eta curves alone.
enum class Pane { Psi, Vprime, V, Eta };

std::string_view to_string(Pane pane);
Pane pane_from_string(std::string_view s);

struct RenderOptions {
  int width = 640;
  int height = 400;
  int margin = 40;
  /// Draw every stride-th sample of a trajectory (the last one always).
  std::size_t stride = 1;
  /// Vertical range; defaults to +-2 max|eta| (or zeta) over the visible band,
  /// or to the data extent for the V pane.
  std::optional<double> lo, hi;

  /// Throws InvalidControl for dimensions below 100 px or a zero stride.
  void validate() const;
};

/// Curves are sampled on 1 - |r| >= this when sizing the default range.
inline constexpr double kVisiblePoleGap = 0.05;

/// Affine map from [-1, 1] x [lo, hi] to pixel coordinates.
struct PlotFrame {
  double lo, hi;
  int width, height, margin;

  double px(double r) const;
  double py(double v) const;
};

PlotFrame plot_frame(const Parameters& p, const std::vector<Trace>& traces, Pane pane,
                     const RenderOptions& opt);

/// SVG 1.1 text. Each trace is a solid polyline (split where it leaves the
/// vertical range); each interior blow-up gets one dashed vertical marker.
/// Element classes: axis, eta1, eta2, trajectory, asymptote.
std::string render_portrait(const Parameters& p, const std::vector<Trace>& traces, Pane pane,
                            const RenderOptions& opt = {});

}  // namespace imcf
