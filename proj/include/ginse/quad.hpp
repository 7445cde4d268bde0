#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ginse/poly.hpp"
#include "ginse/scalar.hpp"

namespace ginse {

// 1-D Gauss rules (weight e^{-t^2} resp. 1 on [-1,1]).
struct Rule1D {
    std::vector<double> nodes, weights;
};
Rule1D gauss_hermite(int n);
Rule1D gauss_legendre(int n);

// Tensor rule for integrals against e^{-s|z|^2} dA(z), dA = d^2z / pi.
class PlaneRule {
  public:
    PlaneRule(int points_per_axis, double gaussian_scale);

    double gaussian_scale() const { return s_; }
    int points_per_axis() const { return n_; }
    // exact for monomials x^p y^q with p+q up to this total degree
    int exactness_degree() const { return 2 * n_ - 2; }

    // integral of f(z) e^{-s|z|^2} dA(z); f may use conj(z) internally
    cplx integrate(const std::function<cplx(cplx)>& f) const;

  private:
    int n_;
    double s_;
    Rule1D g_;
};

// Weight functions omega(z) = poly_part(z) * exp(-scale |z|^2).
struct Weight {
    enum class Tag { gaussian, pre, over, sigma_pre };
    Tag tag = Tag::gaussian;
    cplx a = 0.0;       // conditioning point (real for pre/over SOP theory)
    double sigma = 2.0; // only for sigma_pre

    static Weight gaussian() { return {Tag::gaussian, 0.0, 2.0}; }
    static Weight pre(double a) { return {Tag::pre, a, 2.0}; }
    static Weight over(cplx x) { return {Tag::over, x, 2.0}; }
    static Weight sigma_pre(double sigma, cplx a) { return {Tag::sigma_pre, a, sigma}; }

    double gauss_scale() const { return tag == Tag::sigma_pre ? sigma : 2.0; }
    int poly_degree() const {
        switch (tag) {
            case Tag::gaussian: return 0;
            case Tag::pre:
            case Tag::sigma_pre: return 2;
            case Tag::over: return 4;
        }
        return 0;
    }
    cplx poly_part(cplx z) const {
        switch (tag) {
            case Tag::gaussian: return 1.0;
            case Tag::pre:
            case Tag::sigma_pre: {
                cplx d = z - a;
                return 1.0 + std::norm(d);
            }
            case Tag::over: {
                cplx u = (z - std::conj(a)) * (std::conj(z) - a);
                cplx v = (z - a) * (std::conj(z) - std::conj(a));
                return u * (1.0 + v);
            }
        }
        return 1.0;
    }
};

// Skew product <f, g>_s = int (f conj(g) - g conj(f)) (z - conj z) omega dA,
// evaluated as a single antisymmetrized integrand (exactly antisymmetric).
cplx skew_product(const Poly& f, const Poly& g, const Weight& w, const PlaneRule& rule);

// Convenience: rule sized to integrate f*g against the weight exactly.
cplx skew_product(const Poly& f, const Poly& g, const Weight& w);

// Straight-line contour.
struct Segment {
    cplx z0, z1;
    int panels = 1;  // initial panel count; doubled adaptively
    int order = 12;  // Gauss-Legendre points per panel (interior nodes)
    std::optional<cplx> avoid;  // nudge panel boundaries away from this point

    Segment() = default;
    Segment(cplx a, cplx b, int npanels = 1, int norder = 12,
            std::optional<cplx> keep_away = std::nullopt)
        : z0(a), z1(b), panels(npanels), order(norder), avoid(keep_away) {}
};

struct SegmentError : std::runtime_error {
    cplx best_estimate;
    double gap;
    SegmentError(cplx best, double g)
        : std::runtime_error("integrate_segment: no convergence"),
          best_estimate(best), gap(g) {}
};

// Composite Gauss-Legendre along [z0, z1], panels doubled until successive
// estimates differ by < rel_tol (relative) or the panel cap is hit.
cplx integrate_segment(const std::function<cplx(cplx)>& f, const Segment& seg,
                       double rel_tol = 1e-11, int panel_cap = 256);

// int_{-inf}^{upper} f(u) du for f Gaussian-decaying around decay_center:
// truncates at decay_center - T with exp(-2 T^2) < tol, T in {6,12,24,48}.
cplx integrate_semi_infinite(const std::function<cplx(double)>& f, double upper,
                             double decay_center, double tol);

}  // namespace ginse
