#include "cavrec/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cavrec {

void SvgPlot::add_curve(const std::vector<Vec2>& points, const SvgCurveStyle& style) {
    std::ostringstream el;
    el << "<polygon points=\"";
    char buf[64];
    for (const auto& p : points) {
        // SVG y axis points down
        std::snprintf(buf, sizeof(buf), "%.5f,%.5f ", p.x(), -p.y());
        el << buf;
    }
    el << "\" fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"" << style.width
       << "\"";
    if (!style.dash.empty()) el << " stroke-dasharray=\"" << style.dash << "\"";
    el << "/>";
    elements_.push_back(el.str());
}

void SvgPlot::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
           "viewBox=\"-1.6 -1.6 3.2 3.2\">\n";
    out << "<rect x=\"-1.6\" y=\"-1.6\" width=\"3.2\" height=\"3.2\" fill=\"white\"/>\n";
    for (const auto& el : elements_) out << el << "\n";
    out << "</svg>\n";
}

void write_overlay_svg(const std::filesystem::path& path, const Curve& exterior,
                       const Curve* true_interior, const Curve& initial_guess,
                       const Curve& reconstruction, int samples) {
    SvgPlot plot;
    plot.add_curve(sample_curve(exterior, samples), {"#8b4513", 0.02, ""});
    if (true_interior)
        plot.add_curve(sample_curve(*true_interior, samples), {"#cc0000", 0.015, "0.06,0.03"});
    plot.add_curve(sample_curve(initial_guess, samples), {"#008800", 0.012, "0.015,0.03"});
    plot.add_curve(sample_curve(reconstruction, samples), {"#0033cc", 0.02, ""});
    plot.write(path);
}

} // namespace cavrec
