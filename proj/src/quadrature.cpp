#include "corpuscle/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace corpuscle {

namespace {

QuadRule1D compute_gauss_legendre(int n) {
    QuadRule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one clean-up iteration
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / pp;
                break;
            }
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

std::map<int, QuadRule1D> g_gl_cache;
std::mutex g_gl_mutex;

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
    (void)f;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

const QuadRule1D& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(n);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

QuadRule1D gauss_legendre_on(int n, double a, double b) {
    const QuadRule1D& base = gauss_legendre(n);
    QuadRule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c + h * base.nodes[i];
        r.weights[i] = h * base.weights[i];
    }
    return r;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

SphereRule make_sphere_rule(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1) throw std::invalid_argument("make_sphere_rule: bad sizes");
    SphereRule s;
    s.n_polar = n_polar;
    s.n_azimuth = n_azimuth;
    const QuadRule1D& gl = gauss_legendre(n_polar);
    const double wphi = 2.0 * std::numbers::pi / n_azimuth;
    s.dirs.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    s.weights.reserve(s.dirs.capacity());
    for (int i = 0; i < n_polar; ++i) {
        const double u = gl.nodes[i];  // cos(theta)
        const double st = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int j = 0; j < n_azimuth; ++j) {
            const double phi = wphi * j;
            s.dirs.push_back({st * std::cos(phi), st * std::sin(phi), u});
            s.weights.push_back(gl.weights[i] * wphi);
        }
    }
    return s;
}

namespace {
// int over unit sphere of x^i y^j z^k; zero for any odd exponent.
double sphere_monomial_integral(int i, int j, int k) {
    if (i % 2 || j % 2 || k % 2) return 0.0;
    auto dfact = [](int n) {  // (n-1)!! with (-1)!! = 1
        double r = 1.0;
        for (int m = n - 1; m > 1; m -= 2) r *= m;
        return r;
    };
    // 4*pi * (i-1)!!(j-1)!!(k-1)!! / (i+j+k+1)!!
    return 4.0 * std::numbers::pi * dfact(i) * dfact(j) * dfact(k) / dfact(i + j + k + 2);
}
}  // namespace

double SphereRule::validate(int max_deg) const {
    double worst = 0.0;
    for (int i = 0; i <= max_deg; ++i)
        for (int j = 0; i + j <= max_deg; ++j)
            for (int k = 0; i + j + k <= max_deg; ++k) {
                double s = 0.0;
                for (std::size_t m = 0; m < dirs.size(); ++m) {
                    const Vec3& d = dirs[m];
                    double v = weights[m];
                    for (int a = 0; a < i; ++a) v *= d.x;
                    for (int a = 0; a < j; ++a) v *= d.y;
                    for (int a = 0; a < k; ++a) v *= d.z;
                    s += v;
                }
                const double exact = sphere_monomial_integral(i, j, k);
                const double scale = std::max(std::abs(exact), 1.0);
                worst = std::max(worst, std::abs(s - exact) / scale);
            }
    return worst;
}

RadialRule make_radial_rule(double R, double inner_scale, int nodes_per_panel) {
    if (R <= 0.0) throw std::invalid_argument("make_radial_rule: R must be positive");
    if (nodes_per_panel < 2) throw std::invalid_argument("make_radial_rule: too few nodes");
    std::vector<double> knots{0.0};
    if (inner_scale > 0.0 && inner_scale < R) {
        // binary refinement near the origin up to 8x the inner scale, then 4x growth
        double k = inner_scale;
        double factor = 2.0;
        while (k < R) {
            knots.push_back(k);
            if (k >= 8.0 * inner_scale) factor = 4.0;
            k *= factor;
        }
    }
    knots.push_back(R);
    RadialRule r;
    for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
        QuadRule1D panel = gauss_legendre_on(nodes_per_panel, knots[p], knots[p + 1]);
        for (int i = 0; i < nodes_per_panel; ++i) {
            r.nodes.push_back(panel.nodes[i]);
            r.weights.push_back(panel.weights[i] * panel.nodes[i] * panel.nodes[i]);
        }
    }
    return r;
}

}  // namespace corpuscle
