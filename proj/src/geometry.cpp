#include "necklab/geometry.hpp"

#include <cmath>

namespace necklab {

TargetManifold TargetManifold::sphere(int n) {
    if (n < 1) throw ConfigError("sphere dimension must be >= 1");
    TargetManifold m;
    m.kind_ = TargetKind::Sphere;
    m.intrinsic_dim_ = n;
    m.ambient_dim_ = n + 1;
    m.factors_ = {Factor{0, n + 1}};
    return m;
}

TargetManifold TargetManifold::product(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw ConfigError("product factor dimensions must be >= 1");
    TargetManifold m;
    m.kind_ = TargetKind::Product;
    m.intrinsic_dim_ = n1 + n2;
    m.ambient_dim_ = n1 + n2 + 2;
    m.factors_ = {Factor{0, n1 + 1}, Factor{n1 + 1, n2 + 1}};
    return m;
}

void TargetManifold::check_dim(const Vec& x) const {
    if (x.size() != ambient_dim_)
        throw DimensionMismatch("expected ambient vector of size " +
                                std::to_string(ambient_dim_) + ", got " +
                                std::to_string(x.size()));
}

Vec TargetManifold::project(const Vec& x) const {
    check_dim(x);
    Vec out(ambient_dim_);
    for (const auto& f : factors_) {
        double nrm = x.segment(f.offset, f.dim).norm();
        if (nrm < 1e-30) throw ZeroVector("cannot project a (near-)zero factor block");
        out.segment(f.offset, f.dim) = x.segment(f.offset, f.dim) / nrm;
    }
    return out;
}

Vec TargetManifold::defining_values(const Vec& x) const {
    check_dim(x);
    Vec vals(codim());
    for (int j = 0; j < codim(); ++j) {
        const auto& f = factors_[j];
        vals[j] = x.segment(f.offset, f.dim).squaredNorm() - 1.0;
    }
    return vals;
}

std::vector<std::pair<double, Vec>> TargetManifold::defining_functions(const Vec& x) const {
    check_dim(x);
    std::vector<std::pair<double, Vec>> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) {
        Vec grad = Vec::Zero(ambient_dim_);
        grad.segment(f.offset, f.dim) = 2.0 * x.segment(f.offset, f.dim);
        out.emplace_back(x.segment(f.offset, f.dim).squaredNorm() - 1.0, std::move(grad));
    }
    return out;
}

double TargetManifold::membership_residual(const Vec& x) const {
    return defining_values(x).cwiseAbs().maxCoeff();
}

double TargetManifold::distance_to(const Vec& x) const {
    check_dim(x);
    double d2 = 0.0;
    for (const auto& f : factors_) {
        double dev = x.segment(f.offset, f.dim).norm() - 1.0;
        d2 += dev * dev;
    }
    return std::sqrt(d2);
}

Vec TargetManifold::tangent_project(const Vec& p, const Vec& v) const {
    check_dim(v);
    if (membership_residual(p) > 1e-10)
        throw NotOnManifold("tangent_project: base point is off the manifold");
    Vec out = v;
    // Factor normals |x|^2-1 have orthogonal gradients, so the projection
    // splits per factor: subtract the radial component.
    for (const auto& f : factors_) {
        auto pf = p.segment(f.offset, f.dim);
        auto vf = out.segment(f.offset, f.dim);
        double r2 = pf.squaredNorm();
        out.segment(f.offset, f.dim) = vf - (pf.dot(vf) / r2) * pf;
    }
    return out;
}

Vec TargetManifold::sff_bilinear(const Vec& p, const Vec& X, const Vec& Y) const {
    check_dim(X);
    check_dim(Y);
    Vec out(ambient_dim_);
    for (const auto& f : factors_) {
        double dot = X.segment(f.offset, f.dim).dot(Y.segment(f.offset, f.dim));
        out.segment(f.offset, f.dim) = -dot * p.segment(f.offset, f.dim);
    }
    return out;
}

Vec TargetManifold::second_fundamental_form(const Vec& p, const Vec& X, const Vec& Y) const {
    if (membership_residual(p) > 1e-10)
        throw NotOnManifold("second_fundamental_form: base point is off the manifold");
    for (const auto& f : factors_) {
        auto pf = p.segment(f.offset, f.dim);
        if (std::abs(pf.dot(X.segment(f.offset, f.dim))) > 1e-10 ||
            std::abs(pf.dot(Y.segment(f.offset, f.dim))) > 1e-10)
            throw NotTangent("second_fundamental_form: argument is not tangent at p");
    }
    return sff_bilinear(p, X, Y);
}

std::vector<AlgebraGenerator> TargetManifold::isometry_algebra_basis() const {
    std::vector<AlgebraGenerator> basis;
    for (const auto& f : factors_) {
        for (int j = 0; j < f.dim; ++j) {
            for (int k = j + 1; k < f.dim; ++k) {
                Mat B = Mat::Zero(ambient_dim_, ambient_dim_);
                B(f.offset + j, f.offset + k) = 1.0;
                B(f.offset + k, f.offset + j) = -1.0;
                basis.push_back(AlgebraGenerator{std::move(B)});
            }
        }
    }
    return basis;
}

} // namespace necklab
