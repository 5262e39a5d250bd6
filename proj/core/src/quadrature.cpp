#include "sisim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisim/errors.hpp"

namespace sisim {
namespace {

// (G7,K15) nodes and weights on [-1,1]; the odd-indexed Kronrod abscissae
// are the Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.94910791234275852452618968447520,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    int depth;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b,
                     int depth, int& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    evals += 15;
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    p.err = std::abs((resk - resg) * half);
    p.depth = depth;
    return p;
}

} // namespace

double gauss_kronrod_panel(const std::function<double(double)>& f,
                           double a, double b, double& err) {
    int evals = 0;
    Panel p = evaluate_panel(f, a, b, 0, evals);
    err = p.err;
    return p.value;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          std::span<const double> interior_breaks,
                          double tol,
                          QuadratureStats* stats) {
    constexpr int kMaxDepth = 48;
    constexpr int kMaxPanels = 200000;

    if (stats) *stats = {};
    if (a == b) return 0.0;

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double x : interior_breaks)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double total_len = b - a;
    int evals = 0;
    int panels = 0;
    double sum = 0.0;
    double achieved = 0.0;
    bool budget_hit = false;

    std::vector<Panel> stack;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        stack.push_back(evaluate_panel(f, cuts[i], cuts[i + 1], 0, evals));

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        ++panels;
        const double local_tol = tol * std::max((p.b - p.a) / total_len, 1e-300);
        if (p.err <= local_tol || p.depth >= kMaxDepth || panels > kMaxPanels) {
            if (p.err > local_tol) budget_hit = true;
            sum += p.value;
            achieved += p.err;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back(evaluate_panel(f, p.a, mid, p.depth + 1, evals));
        stack.push_back(evaluate_panel(f, mid, p.b, p.depth + 1, evals));
    }

    if (stats) {
        stats->panels = panels;
        stats->evaluations = evals;
        stats->error_estimate = achieved;
    }
    if (budget_hit && achieved > tol) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not converge: achieved error estimate "
            << achieved << " exceeds tolerance " << tol;
        throw QuadratureError(msg.str(), achieved);
    }
    return sum;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f,
                                       std::vector<double> boundaries,
                                       double tol)
    : f_(std::move(f)), boundaries_(std::move(boundaries)) {
    std::sort(boundaries_.begin(), boundaries_.end());
    boundaries_.erase(std::unique(boundaries_.begin(), boundaries_.end()),
                      boundaries_.end());
    if (boundaries_.size() < 2)
        throw std::invalid_argument("CumulativeIntegral needs at least two boundaries");
    cell_tol_ = tol / static_cast<double>(boundaries_.size());
    prefix_.resize(boundaries_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i) {
        const double cell =
            integrate_adaptive(f_, boundaries_[i], boundaries_[i + 1], {}, cell_tol_);
        prefix_[i + 1] = prefix_[i] + cell;
    }
}

double CumulativeIntegral::operator()(double t) const {
    const double lo = boundaries_.front();
    const double hi = boundaries_.back();
    if (t < lo - 1e-12 * (1.0 + std::abs(lo)) || t > hi + 1e-12 * (1.0 + std::abs(hi)))
        throw std::domain_error("CumulativeIntegral evaluated outside its partition");
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
    std::size_t cell = static_cast<std::size_t>(it - boundaries_.begin());
    if (cell > 0) --cell;
    if (cell + 1 >= boundaries_.size()) cell = boundaries_.size() - 2;
    if (t == boundaries_[cell]) return prefix_[cell];
    return prefix_[cell] + integrate_adaptive(f_, boundaries_[cell], t, {}, cell_tol_);
}

} // namespace sisim
