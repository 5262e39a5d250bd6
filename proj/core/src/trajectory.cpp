#include "sisim/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sisim {

const char* to_string(SampleEvent e) {
    switch (e) {
        case SampleEvent::none: return "none";
        case SampleEvent::pre: return "pre";
        case SampleEvent::post: return "post";
    }
    return "none";
}

State DenseSegment::eval(double t) const {
    const double h = t1 - t0;
    const double theta = h > 0.0 ? (t - t0) / h : 0.0;
    const double om = 1.0 - theta;
    auto horner = [&](const std::array<double, 5>& c) {
        return c[0] + theta * (c[1] + om * (c[2] + theta * (c[3] + om * c[4])));
    };
    return State{horner(cS), horner(cI)};
}

State Trajectory::interpolate(double t) const {
    if (segments.empty()) throw std::domain_error("trajectory has no segments");
    const double t_end = segments.back().t1;
    const double slack = 1e-12 * (1.0 + std::abs(t_end));
    if (t < segments.front().t0 - slack || t > t_end + slack)
        throw std::domain_error("interpolation time outside the trajectory span");
    t = std::clamp(t, segments.front().t0, t_end);
    // last segment whose start is <= t; ties at impulse times resolve to the
    // post-impulse segment
    auto it = std::upper_bound(segments.begin(), segments.end(), t,
                               [](double x, const DenseSegment& s) { return x < s.t0; });
    if (it != segments.begin()) --it;
    return it->eval(t);
}

std::vector<double> Trajectory::segment_boundaries(double a, double b) const {
    std::vector<double> out;
    out.push_back(a);
    for (const DenseSegment& s : segments) {
        if (s.t0 > a && s.t0 < b) out.push_back(s.t0);
        if (s.t1 > a && s.t1 < b) out.push_back(s.t1);
    }
    out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> Trajectory::impulse_times_between(double a, double b) const {
    std::vector<double> out;
    for (const ImpulseRecord& rec : impulse_records)
        if (rec.t > a && rec.t <= b) out.push_back(rec.t);
    return out;
}

double Trajectory::end_time() const {
    return samples.empty() ? 0.0 : samples.back().t;
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "t,S,I,N,event\n";
    char buf[128];
    for (const Sample& s : samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%s\n", s.t, s.S,
                      s.I, s.N, to_string(s.event));
        os << buf;
    }
}

} // namespace sisim
