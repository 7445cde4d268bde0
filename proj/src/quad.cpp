#include "ginse/quad.hpp"

#include <cmath>

namespace ginse {

Rule1D gauss_hermite(int n) {
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double eps = 1e-15;
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * r.nodes[1];
        else
            z = 2.0 * z - r.nodes[i - 2];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // orthonormal Hermite recurrence for weight e^{-t^2}
            double p1 = std::pow(kPi, -0.25), p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(double(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= eps) break;
        }
        r.nodes[i] = z;
        r.nodes[n - 1 - i] = -z;
        r.weights[i] = 2.0 / (pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

Rule1D gauss_legendre(int n) {
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double eps = 1e-15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= eps) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

PlaneRule::PlaneRule(int points_per_axis, double gaussian_scale)
    : n_(points_per_axis), s_(gaussian_scale), g_(gauss_hermite(points_per_axis)) {
    if (gaussian_scale <= 0.0) throw std::invalid_argument("PlaneRule: scale must be > 0");
}

cplx PlaneRule::integrate(const std::function<cplx(cplx)>& f) const {
    const double inv_sqrt_s = 1.0 / std::sqrt(s_);
    cplx sum = 0.0;
    for (int i = 0; i < n_; ++i) {
        cplx row = 0.0;
        for (int j = 0; j < n_; ++j)
            row += g_.weights[j] * f(cplx(g_.nodes[i], g_.nodes[j]) * inv_sqrt_s);
        sum += g_.weights[i] * row;
    }
    return sum / (s_ * kPi);
}

cplx skew_product(const Poly& f, const Poly& g, const Weight& w, const PlaneRule& rule) {
    return rule.integrate([&](cplx z) {
        cplx fz = f.eval(z), gz = g.eval(z);
        cplx anti = fz * std::conj(gz) - gz * std::conj(fz);
        return anti * (z - std::conj(z)) * w.poly_part(z);
    });
}

cplx skew_product(const Poly& f, const Poly& g, const Weight& w) {
    int total = std::max(f.degree(), 0) + std::max(g.degree(), 0) + 1 + w.poly_degree();
    int n = total / 2 + 4;
    PlaneRule rule(std::max(n, 16), w.gauss_scale());
    return skew_product(f, g, w, rule);
}

namespace {

cplx composite_gl(const std::function<cplx(cplx)>& f, cplx z0, cplx z1, int panels,
                  const Rule1D& gl, const std::optional<cplx>& avoid) {
    cplx dz = (z1 - z0) / double(panels);
    double nudge = 0.0;
    if (avoid) {
        // deterministic nudge of the interior panel boundaries if any node
        // would fall too close to the point; panels keep proper interior
        // Gauss-Legendre nodes, so per-panel exactness is preserved
        for (int p = 0; p < panels && nudge == 0.0; ++p) {
            cplx a = z0 + double(p) * dz;
            for (double t : gl.nodes) {
                cplx node = a + 0.5 * (t + 1.0) * dz;
                if (std::abs(node - *avoid) < 1e-6) {
                    nudge = 1e-5;
                    break;
                }
            }
        }
    }
    auto boundary = [&](int p) {
        if (p <= 0) return z0;
        if (p >= panels) return z1;
        return z0 + (double(p) + nudge) * dz;
    };
    cplx sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        cplx a = boundary(p), b = boundary(p + 1);
        cplx half = 0.5 * (b - a);
        for (size_t j = 0; j < gl.nodes.size(); ++j)
            sum += gl.weights[j] * f(a + (gl.nodes[j] + 1.0) * half) * half;
    }
    return sum;
}

}  // namespace

cplx integrate_segment(const std::function<cplx(cplx)>& f, const Segment& seg,
                       double rel_tol, int panel_cap) {
    if (seg.z0 == seg.z1) return 0.0;
    Rule1D gl = gauss_legendre(seg.order);
    int panels = std::max(seg.panels, 1);
    cplx prev = composite_gl(f, seg.z0, seg.z1, panels, gl, seg.avoid);
    for (panels *= 2; panels <= panel_cap; panels *= 2) {
        cplx cur = composite_gl(f, seg.z0, seg.z1, panels, gl, seg.avoid);
        double gap = std::abs(cur - prev);
        if (gap <= rel_tol * std::max(1e-30, std::abs(cur)) || gap < 1e-15)
            return cur;
        prev = cur;
    }
    cplx cur = prev;
    double gap = std::abs(cur - composite_gl(f, seg.z0, seg.z1, panel_cap / 2, gl, seg.avoid));
    throw SegmentError(cur, gap);
}

cplx integrate_semi_infinite(const std::function<cplx(double)>& f, double upper,
                             double decay_center, double tol) {
    double T = 6.0;
    int doublings = 0;
    while (std::exp(-2.0 * T * T) >= tol && doublings < 3) {
        T *= 2.0;
        ++doublings;
    }
    if (std::exp(-2.0 * T * T) >= tol)
        throw std::runtime_error("integrate_semi_infinite: tolerance not reachable");
    double lower = decay_center - T;
    if (lower >= upper) return 0.0;
    Segment seg;
    seg.z0 = lower;
    seg.z1 = upper;
    seg.order = 16;
    seg.panels = std::max(2, int((upper - lower) / 2.0));
    return integrate_segment([&](cplx t) { return f(t.real()); }, seg,
                             std::max(tol, 1e-13), 1024);
}

}  // namespace ginse
