#pragma once

// Minimal SVG emitter for the reconstruction overlay plots: exterior
// boundary solid brown, true interior dashed red, initial guess dotted
// green, reconstruction solid blue, on a fixed [-1.6, 1.6]^2 viewport.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavrec/geometry.hpp"

namespace cavrec {

struct SvgCurveStyle {
    std::string stroke = "#000000";
    double width = 0.015;
    std::string dash;   // empty = solid
};

class SvgPlot {
public:
    SvgPlot() = default;

    void add_curve(const std::vector<Vec2>& points, const SvgCurveStyle& style);
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> elements_;
};

// The standard overlay used by the CLI.
void write_overlay_svg(const std::filesystem::path& path, const Curve& exterior,
                       const Curve* true_interior, const Curve& initial_guess,
                       const Curve& reconstruction, int samples = 256);

} // namespace cavrec
