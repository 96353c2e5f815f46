#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "necklab/geometry.hpp"

namespace necklab {

using Complex = std::complex<double>;

/// Polynomial in z whose coefficients are affine in the family scale:
/// coeff_k(lambda) = c0[k] + c1[k] * lambda.
struct LambdaPoly {
    std::vector<Complex> c0;
    std::vector<Complex> c1;

    int degree() const { return static_cast<int>(c0.size()) - 1; }
    Complex coeff(int k, double lambda) const { return c0[k] + c1[k] * lambda; }
    Complex eval(double lambda, Complex z) const;
    Complex eval_deriv(double lambda, Complex z) const;
};

struct RationalFactor {
    LambdaPoly P;
    LambdaPoly Q;
    bool conjugate_input = false;
};

/// Uniform cylinder grid on [t_min, t_max] x S^1 with theta_k = 2 pi k / n_theta.
struct CylinderGrid {
    double t_min = 0.0;
    double t_max = 0.0;
    int n_t = 0;
    int n_theta = 0;

    double dt() const { return n_t > 1 ? (t_max - t_min) / (n_t - 1) : 0.0; }
    double dtheta() const { return 2.0 * M_PI / n_theta; }
    double t(int j) const { return t_min + j * dt(); }
    double theta(int k) const { return 2.0 * M_PI * k / n_theta; }
    void validate() const;
};

enum class Provenance { Analytic, FiniteDifference, Model };

/// Map values and first derivatives sampled on a cylinder grid,
/// stored flat as [row][theta][component].
struct FieldSample {
    CylinderGrid grid;
    int dim = 0;
    Provenance provenance = Provenance::Analytic;
    std::vector<double> values;
    std::vector<double> du_dt;
    std::vector<double> du_dtheta;

    int node_index(int j, int k) const { return (j * grid.n_theta + k) * dim; }
    Eigen::Map<const Vec> value(int j, int k) const {
        return Eigen::Map<const Vec>(values.data() + node_index(j, k), dim);
    }
    Eigen::Map<const Vec> dt(int j, int k) const {
        return Eigen::Map<const Vec>(du_dt.data() + node_index(j, k), dim);
    }
    Eigen::Map<const Vec> dtheta(int j, int k) const {
        return Eigen::Map<const Vec>(du_dtheta.data() + node_index(j, k), dim);
    }
    void allocate() {
        std::size_t n = static_cast<std::size_t>(grid.n_t) * grid.n_theta * dim;
        values.assign(n, 0.0);
        du_dt.assign(n, 0.0);
        du_dtheta.assign(n, 0.0);
    }
    /// Row index whose t is nearest to the given value.
    int nearest_row(double t) const;
};

/// Lambda-parametrized family of rational maps composed with stereographic
/// projection, one factor per sphere factor of the target. Poles of P/Q are
/// handled exactly by the homogeneous form
///   sigma([P:Q]) = (2 Re(P conj(Q)), 2 Im(P conj(Q)), |P|^2-|Q|^2) / (|P|^2+|Q|^2).
class RationalFamily {
public:
    RationalFamily(std::vector<RationalFactor> factors, std::pair<double, double> lambda_range);

    /// Built-in families: "identity" (sigma(z)), "bubble1" (sigma(z + lambda/z)),
    /// "bubble_kappa" (product target, first factor bubble1, second
    /// sigma(z + kappa lambda / z)).
    static RationalFamily named(const std::string& name, double kappa = 1.0);

    int num_factors() const { return static_cast<int>(factors_.size()); }
    const RationalFactor& factor(int i) const { return factors_[i]; }
    int ambient_dim() const { return 3 * num_factors(); }
    std::pair<double, double> lambda_range() const { return lambda_range_; }

    /// The embedded target this family maps into (S^2 or S^2 x S^2).
    TargetManifold target() const;

    Vec eval(double lambda, Complex z) const;

    /// Value and analytic cylinder derivatives at z = exp(t + i theta).
    void eval_cylinder(double lambda, double t, double theta,
                       Vec& u, Vec& ut, Vec& utheta) const;

    /// z -> 1/z substitution plus conjugation toggle, so that
    /// eval(invert(f), lambda, z) = eval(f, lambda, 1/conj(z)).
    RationalFamily invert() const;

private:
    std::vector<RationalFactor> factors_;
    std::pair<double, double> lambda_range_;

    void validate() const;
};

FieldSample cylinder_sample(const RationalFamily& f, double lambda, const CylinderGrid& g);

struct NeckDiagnostics {
    double neck_energy = 0.0;
    double neck_oscillation = 0.0;
    double dirichlet_energy = 0.0;
};

/// Dirichlet energy over the whole sample (trapezoid in t, exact-uniform in
/// theta), plus energy and oscillation restricted to the neck window
/// [log(lambda/delta), log delta].
NeckDiagnostics neck_diagnostics(const FieldSample& s, double lambda, double delta);

/// 1/2 * integral of |du/dt|^2 + |du/dtheta|^2 over [row_lo, row_hi] x S^1.
double dirichlet_energy(const FieldSample& s, int row_lo, int row_hi);

/// Max pairwise distance of the sampled values over [row_lo, row_hi].
double oscillation(const FieldSample& s, int row_lo, int row_hi);

} // namespace necklab
