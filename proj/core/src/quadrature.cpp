#include "slspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace slspec {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

QuadResult gk15_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const cplx f1 = f(c - dx);
        const cplx f2 = f(c + dx);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    QuadResult r;
    r.value = kron * h;
    r.error = std::abs((kron - gauss) * h);
    r.converged = true;
    r.evaluations = 15;
    return r;
}

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                        double abs_tol, int max_intervals) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel> heap;
    QuadResult first = gk15_panel(f, a, b);
    heap.push({a, b, first.value, first.error});
    cplx total = first.value;
    double err = first.error;
    int evals = first.evaluations;
    int intervals = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && intervals < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            heap.push(worst);
            break;
        }
        QuadResult l = gk15_panel(f, worst.a, mid);
        QuadResult r = gk15_panel(f, mid, worst.b);
        evals += 30;
        ++intervals;
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push({worst.a, mid, l.value, l.error});
        heap.push({mid, worst.b, r.value, r.error});
    }
    // Re-sum to limit cancellation drift from incremental updates.
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = err;
    out.evaluations = evals;
    out.converged = err <= std::max(abs_tol, rel_tol * std::abs(total)) || err <= 1e-15 * std::abs(total);
    return out;
}

}  // namespace slspec
