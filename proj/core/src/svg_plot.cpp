#include "sisim/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace sisim {

namespace {

constexpr double kW = 900.0, kH = 460.0;
constexpr double kL = 70.0, kR = 20.0, kT = 20.0, kB = 50.0;

struct Axes {
    double t0, t1, y0, y1;

    double x(double t) const {
        return kL + (t - t0) / std::max(t1 - t0, 1e-300) * (kW - kL - kR);
    }
    double y(double v) const {
        return kH - kB - (v - y0) / std::max(y1 - y0, 1e-300) * (kH - kT - kB);
    }
};

void polyline(std::ostream& os, const Trajectory& traj, const Axes& ax,
              double Sample::* field, const char* color, const char* dash) {
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    char buf[64];
    for (const Sample& s : traj.samples) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", ax.x(s.t), ax.y(s.*field));
        os << buf;
    }
    os << "\"/>\n";
}

} // namespace

void write_trajectory_svg(const Trajectory& traj, std::ostream& os) {
    Axes ax{0.0, 1.0, 0.0, 1.0};
    ax.t1 = traj.samples.empty() ? 1.0 : traj.samples.back().t;
    double ymax = 0.0;
    for (const Sample& s : traj.samples) ymax = std::max(ymax, s.N);
    ax.y1 = ymax > 0.0 ? 1.05 * ymax : 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
       << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    char buf[256];
    // axes
    std::snprintf(buf, sizeof(buf),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n",
                  kL, kH - kB, kW - kR, kH - kB);
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n",
                  kL, kT, kL, kH - kB);
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "  <text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">t = %g</text>\n",
                  kW - kR - 60.0, kH - kB + 20.0, ax.t1);
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "  <text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%g</text>\n", 8.0,
                  kT + 12.0, ax.y1);
    os << buf;

    // impulse markers
    for (const ImpulseRecord& rec : traj.impulse_records) {
        std::snprintf(buf, sizeof(buf),
                      "  <line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" "
                      "stroke=\"#999\" stroke-dasharray=\"2,3\"/>\n",
                      ax.x(rec.t), kT, ax.x(rec.t), kH - kB);
        os << buf;
    }

    polyline(os, traj, ax, &Sample::N, "#777777", "6,3");
    polyline(os, traj, ax, &Sample::S, "#1f77b4", "");
    polyline(os, traj, ax, &Sample::I, "#d62728", "");

    os << "  <text x=\"" << kL + 10 << "\" y=\"" << kT + 14
       << "\" font-size=\"12\" fill=\"#1f77b4\">S</text>\n";
    os << "  <text x=\"" << kL + 30 << "\" y=\"" << kT + 14
       << "\" font-size=\"12\" fill=\"#d62728\">I</text>\n";
    os << "  <text x=\"" << kL + 50 << "\" y=\"" << kT + 14
       << "\" font-size=\"12\" fill=\"#777777\">N</text>\n";
    os << "</svg>\n";
}

} // namespace sisim
