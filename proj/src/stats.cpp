#include "polyapprox/stats.hpp"

#include <algorithm>
#include <cmath>

#include "polyapprox/errors.hpp"

namespace pa {

namespace {

const double kLanczosG = 7.0;
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace

double gamma_fn(double x) {
    if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + kLanczosG + 0.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double lgamma_fn(double x) {
    if (x < 0.5) return std::log(M_PI / std::sin(M_PI * x)) - lgamma_fn(1.0 - x);
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + kLanczosG + 0.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double ball_volume(int n) {
    return std::exp(0.5 * n * std::log(M_PI) - lgamma_fn(0.5 * n + 1.0));
}

double sphere_surface(int n) { return n * ball_volume(n); }

namespace {

// series for P(a,x), continued fraction for Q(a,x)
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_fn(a));
}

double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - lgamma_fn(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw OutOfRange("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
    auto simpson = [&](int m) {
        double h = (b - a) / m;
        double s = f(a) + f(b);
        for (int i = 1; i < m; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    int m = 16;
    double prev = simpson(m);
    for (int it = 0; it < 22; ++it) {
        m *= 2;
        double cur = simpson(m);
        if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur) + abs_tol) return cur;
        prev = cur;
    }
    return prev;
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t na = a.size(), nb = b.size();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < na && j < nb) {
        double x = std::min(a[i], b[j]);
        while (i < na && a[i] <= x) ++i;
        while (j < nb && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double en = std::sqrt(static_cast<double>(na) * nb / static_cast<double>(na + nb));
    double lambda = (en + 0.12 + 0.11 / en) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

double chi2_sf(double stat, int dof) { return gamma_q(0.5 * dof, 0.5 * stat); }

namespace {

double betacf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h;
}

} // namespace

double beta_inc(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw OutOfRange("beta_inc: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double bt = std::exp(lgamma_fn(a + b) - lgamma_fn(a) - lgamma_fn(b) +
                         a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double t_quantile_975(int dof) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                   2.306,  2.262, 2.228, 2.201, 2.179, 2.160, 2.145,
                                   2.131,  2.120, 2.110, 2.101, 2.093, 2.086, 2.080,
                                   2.074,  2.069, 2.064, 2.060, 2.056, 2.052, 2.048,
                                   2.045,  2.042};
    if (dof < 1) throw OutOfRange("t_quantile_975: dof < 1");
    if (dof <= 30) return table[dof - 1];
    if (dof <= 60) return 2.042 - (2.042 - 2.000) * (dof - 30) / 30.0;
    return 1.96 + 2.4 / dof;
}

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 2 || y.size() != x.size()) throw InsufficientRange("ols: need >= 2 points");
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientRange("ols: degenerate abscissa");
    OlsFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (int i = 0; i < n; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        sse += r * r;
    }
    f.sse = sse;
    if (n > 2) {
        double s2 = sse / (n - 2);
        f.slope_se = std::sqrt(s2 / sxx);
        f.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    }
    return f;
}

} // namespace pa
