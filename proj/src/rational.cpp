#include "necklab/rational.hpp"

#include <algorithm>
#include <cmath>

namespace necklab {

namespace {

constexpr double kDegenerateTol = 1e-60;

int effective_degree(const LambdaPoly& p, double lambda, double scale) {
    for (int k = p.degree(); k >= 0; --k)
        if (std::abs(p.coeff(k, lambda)) > 1e-14 * scale) return k;
    return -1; // identically ~0 at this lambda
}

double coeff_scale(const RationalFactor& f) {
    double s = 0.0;
    for (const auto& c : f.P.c0) s = std::max(s, std::abs(c));
    for (const auto& c : f.P.c1) s = std::max(s, std::abs(c));
    for (const auto& c : f.Q.c0) s = std::max(s, std::abs(c));
    for (const auto& c : f.Q.c1) s = std::max(s, std::abs(c));
    return s;
}

/// Resultant of P and Q at fixed lambda via the Sylvester determinant.
Complex resultant_at(const RationalFactor& f, double lambda) {
    double scale = coeff_scale(f);
    int dp = effective_degree(f.P, lambda, scale);
    int dq = effective_degree(f.Q, lambda, scale);
    if (dp < 0 && dq < 0) return 0.0; // both identically zero
    if (dp < 0) return std::abs(f.Q.coeff(0, lambda)) > 0 ? Complex(1.0) : Complex(0.0);
    if (dq < 0) return std::abs(f.P.coeff(0, lambda)) > 0 ? Complex(1.0) : Complex(0.0);
    if (dp == 0 && dq == 0) return 1.0;
    if (dp == 0) return std::pow(f.P.coeff(0, lambda), dq);
    if (dq == 0) return std::pow(f.Q.coeff(0, lambda), dp);

    int n = dp + dq;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k) S(r, r + dp - k) = f.P.coeff(k, lambda);
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k) S(dq + r, r + dq - k) = f.Q.coeff(k, lambda);
    return S.fullPivLu().determinant();
}

} // namespace

Complex LambdaPoly::eval(double lambda, Complex z) const {
    Complex acc(0.0, 0.0);
    for (int k = degree(); k >= 0; --k) acc = acc * z + coeff(k, lambda);
    return acc;
}

Complex LambdaPoly::eval_deriv(double lambda, Complex z) const {
    Complex acc(0.0, 0.0);
    for (int k = degree(); k >= 1; --k)
        acc = acc * z + coeff(k, lambda) * static_cast<double>(k);
    return acc;
}

void CylinderGrid::validate() const {
    if (!(t_min < t_max)) throw ConfigError("cylinder grid requires t_min < t_max");
    if (n_t < 2) throw ConfigError("cylinder grid requires at least 2 t-rows");
    if (n_theta < 64 || (n_theta & (n_theta - 1)) != 0)
        throw ConfigError("n_theta must be a power of two >= 64");
}

int FieldSample::nearest_row(double t) const {
    double dt = grid.dt();
    if (dt <= 0.0) return 0;
    int j = static_cast<int>(std::lround((t - grid.t_min) / dt));
    return std::clamp(j, 0, grid.n_t - 1);
}

RationalFamily::RationalFamily(std::vector<RationalFactor> factors,
                               std::pair<double, double> lambda_range)
    : factors_(std::move(factors)), lambda_range_(lambda_range) {
    validate();
}

void RationalFamily::validate() const {
    if (factors_.empty() || factors_.size() > 2)
        throw ConfigError("rational family must have one or two factors");
    if (lambda_range_.first < 0.0 || lambda_range_.second < lambda_range_.first)
        throw ConfigError("invalid lambda range");
    for (const auto& f : factors_) {
        if (f.P.c0.empty() || f.Q.c0.empty() ||
            f.P.c0.size() != f.P.c1.size() || f.Q.c0.size() != f.Q.c1.size())
            throw ConfigError("polynomial coefficient arrays malformed");
        if (f.P.degree() > 8 || f.Q.degree() > 8)
            throw ConfigError("polynomial degrees must be <= 8");
        double scale = coeff_scale(f);
        if (scale == 0.0) throw ConfigError("factor has all-zero polynomials");
        // No common zero of (P,Q) anywhere in the configured lambda range,
        // checked by resultant sampling.
        for (int i = 0; i < 100; ++i) {
            double lam = lambda_range_.first +
                         (lambda_range_.second - lambda_range_.first) * i / 99.0;
            if (std::abs(resultant_at(f, lam)) < 1e-25)
                throw DegenerateFamily(
                    "P and Q share a root at lambda = " + std::to_string(lam));
        }
    }
}

RationalFamily RationalFamily::named(const std::string& name, double kappa) {
    auto poly = [](std::vector<Complex> c0, std::vector<Complex> c1) {
        return LambdaPoly{std::move(c0), std::move(c1)};
    };
    // identity: P = z, Q = 1
    RationalFactor identity{poly({0.0, 1.0}, {0.0, 0.0}), poly({1.0}, {0.0}), false};
    // bubble1: sigma(z + lambda/z): P = z^2 + lambda, Q = z
    RationalFactor bubble1{poly({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}),
                           poly({0.0, 1.0}, {0.0, 0.0}), false};
    if (name == "identity")
        return RationalFamily({identity}, {0.0, 0.05});
    if (name == "bubble1")
        return RationalFamily({bubble1}, {1e-9, 0.05});
    if (name == "bubble_kappa") {
        RationalFactor second{poly({0.0, 0.0, 1.0}, {kappa, 0.0, 0.0}),
                              poly({0.0, 1.0}, {0.0, 0.0}), false};
        return RationalFamily({bubble1, second}, {1e-9, 0.05});
    }
    throw ConfigError("unknown family name: " + name);
}

TargetManifold RationalFamily::target() const {
    return num_factors() == 1 ? TargetManifold::sphere(2) : TargetManifold::product(2, 2);
}

Vec RationalFamily::eval(double lambda, Complex z) const {
    if (lambda < lambda_range_.first - 1e-300 || lambda > lambda_range_.second * (1 + 1e-12))
        throw ConfigError("lambda outside the configured family range");
    Vec u(ambient_dim());
    for (int i = 0; i < num_factors(); ++i) {
        const auto& f = factors_[i];
        Complex zeta = f.conjugate_input ? std::conj(z) : z;
        Complex P = f.P.eval(lambda, zeta);
        Complex Q = f.Q.eval(lambda, zeta);
        double p2 = std::norm(P), q2 = std::norm(Q);
        double D = p2 + q2;
        if (D < kDegenerateTol)
            throw DegenerateFamily("family degenerates: |P|^2 + |Q|^2 ~ 0");
        Complex N = P * std::conj(Q);
        u[3 * i + 0] = 2.0 * N.real() / D;
        u[3 * i + 1] = 2.0 * N.imag() / D;
        u[3 * i + 2] = (p2 - q2) / D;
    }
    return u;
}

void RationalFamily::eval_cylinder(double lambda, double t, double theta,
                                   Vec& u, Vec& ut, Vec& utheta) const {
    const int l = ambient_dim();
    u.resize(l); ut.resize(l); utheta.resize(l);
    Complex z = std::exp(Complex(t, theta));
    for (int i = 0; i < num_factors(); ++i) {
        const auto& f = factors_[i];
        Complex zeta = f.conjugate_input ? std::conj(z) : z;
        // d zeta / dt = zeta; d zeta / dtheta = +/- i zeta
        Complex dz_t = zeta;
        Complex dz_h = f.conjugate_input ? Complex(0, -1) * zeta : Complex(0, 1) * zeta;

        Complex P = f.P.eval(lambda, zeta);
        Complex Q = f.Q.eval(lambda, zeta);
        Complex dP = f.P.eval_deriv(lambda, zeta);
        Complex dQ = f.Q.eval_deriv(lambda, zeta);
        Complex Pt = dP * dz_t, Ph = dP * dz_h;
        Complex Qt = dQ * dz_t, Qh = dQ * dz_h;

        double p2 = std::norm(P), q2 = std::norm(Q);
        double D = p2 + q2;
        if (D < kDegenerateTol)
            throw DegenerateFamily("family degenerates: |P|^2 + |Q|^2 ~ 0");
        Complex N = P * std::conj(Q);
        double u1 = 2.0 * N.real() / D;
        double u2 = 2.0 * N.imag() / D;
        double u3 = (p2 - q2) / D;
        u[3 * i + 0] = u1;
        u[3 * i + 1] = u2;
        u[3 * i + 2] = u3;

        auto fill = [&](Complex Pd, Complex Qd, double* out) {
            Complex Nd = Pd * std::conj(Q) + P * std::conj(Qd);
            double p2d = 2.0 * (std::conj(P) * Pd).real();
            double q2d = 2.0 * (std::conj(Q) * Qd).real();
            double Dd = p2d + q2d;
            out[0] = (2.0 * Nd.real() - u1 * Dd) / D;
            out[1] = (2.0 * Nd.imag() - u2 * Dd) / D;
            out[2] = ((p2d - q2d) - u3 * Dd) / D;
        };
        fill(Pt, Qt, ut.data() + 3 * i);
        fill(Ph, Qh, utheta.data() + 3 * i);
    }
}

RationalFamily RationalFamily::invert() const {
    std::vector<RationalFactor> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) {
        int n = std::max(f.P.degree(), f.Q.degree());
        auto reverse = [n](const LambdaPoly& p) {
            LambdaPoly r;
            r.c0.assign(n + 1, Complex(0.0));
            r.c1.assign(n + 1, Complex(0.0));
            for (int k = 0; k <= p.degree(); ++k) {
                r.c0[n - k] = p.c0[k];
                r.c1[n - k] = p.c1[k];
            }
            return r;
        };
        out.push_back(RationalFactor{reverse(f.P), reverse(f.Q), !f.conjugate_input});
    }
    return RationalFamily(std::move(out), lambda_range_);
}

FieldSample cylinder_sample(const RationalFamily& f, double lambda, const CylinderGrid& g) {
    g.validate();
    FieldSample s;
    s.grid = g;
    s.dim = f.ambient_dim();
    s.provenance = Provenance::Analytic;
    s.allocate();
    Vec u, ut, uh;
    for (int j = 0; j < g.n_t; ++j) {
        double t = g.t(j);
        for (int k = 0; k < g.n_theta; ++k) {
            f.eval_cylinder(lambda, t, g.theta(k), u, ut, uh);
            int idx = s.node_index(j, k);
            for (int d = 0; d < s.dim; ++d) {
                s.values[idx + d] = u[d];
                s.du_dt[idx + d] = ut[d];
                s.du_dtheta[idx + d] = uh[d];
            }
        }
    }
    return s;
}

double dirichlet_energy(const FieldSample& s, int row_lo, int row_hi) {
    if (row_hi <= row_lo) return 0.0;
    const double dth = s.grid.dtheta();
    const double dt = s.grid.dt();
    double total = 0.0;
    for (int j = row_lo; j <= row_hi; ++j) {
        double row = 0.0;
        for (int k = 0; k < s.grid.n_theta; ++k) {
            int idx = s.node_index(j, k);
            for (int d = 0; d < s.dim; ++d) {
                double a = s.du_dt[idx + d], b = s.du_dtheta[idx + d];
                row += a * a + b * b;
            }
        }
        double w = (j == row_lo || j == row_hi) ? 0.5 : 1.0;
        total += w * row;
    }
    return 0.5 * total * dt * dth;
}

double oscillation(const FieldSample& s, int row_lo, int row_hi) {
    const int nth = s.grid.n_theta;
    const int dim = s.dim;
    const long count = static_cast<long>(row_hi - row_lo + 1) * nth;
    auto node_ptr = [&](long i) {
        int j = row_lo + static_cast<int>(i / nth);
        int k = static_cast<int>(i % nth);
        return s.values.data() + s.node_index(j, k);
    };
    auto dist2 = [&](const double* a, const double* b) {
        double acc = 0.0;
        for (int d = 0; d < dim; ++d) { double e = a[d] - b[d]; acc += e * e; }
        return acc;
    };
    if (count <= 3000) {
        double best = 0.0;
        for (long i = 0; i < count; ++i) {
            const double* a = node_ptr(i);
            for (long j = i + 1; j < count; ++j)
                best = std::max(best, dist2(a, node_ptr(j)));
        }
        return std::sqrt(best);
    }
    // Too many nodes for the exact pair scan: start from coordinate-extreme
    // candidates and iterate farthest-point sweeps. Deterministic.
    std::vector<long> cand;
    for (int d = 0; d < dim; ++d) {
        long lo = 0, hi = 0;
        for (long i = 1; i < count; ++i) {
            if (node_ptr(i)[d] < node_ptr(lo)[d]) lo = i;
            if (node_ptr(i)[d] > node_ptr(hi)[d]) hi = i;
        }
        cand.push_back(lo);
        cand.push_back(hi);
    }
    double best = 0.0;
    for (int round = 0; round < 3; ++round) {
        std::vector<long> next;
        for (long c : cand) {
            const double* a = node_ptr(c);
            long far_i = 0;
            double far_d = -1.0;
            for (long i = 0; i < count; ++i) {
                double d2 = dist2(a, node_ptr(i));
                if (d2 > far_d) { far_d = d2; far_i = i; }
            }
            best = std::max(best, far_d);
            next.push_back(far_i);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cand = std::move(next);
    }
    return std::sqrt(best);
}

NeckDiagnostics neck_diagnostics(const FieldSample& s, double lambda, double delta) {
    if (!(delta > 0.0) || !(lambda > 0.0))
        throw ConfigError("neck_diagnostics requires lambda > 0 and delta > 0");
    const double t_lo = std::log(lambda / delta);
    const double t_hi = std::log(delta);
    const double dt = s.grid.dt();
    int row_lo = std::max(0, static_cast<int>(std::ceil((t_lo - s.grid.t_min) / dt - 1e-9)));
    int row_hi = std::min(s.grid.n_t - 1,
                          static_cast<int>(std::floor((t_hi - s.grid.t_min) / dt + 1e-9)));
    if (row_hi - row_lo < 1)
        throw EmptyWindow("neck window contains fewer than 2 grid rows");
    NeckDiagnostics d;
    d.dirichlet_energy = dirichlet_energy(s, 0, s.grid.n_t - 1);
    d.neck_energy = dirichlet_energy(s, row_lo, row_hi);
    d.neck_oscillation = oscillation(s, row_lo, row_hi);
    return d;
}

} // namespace necklab
