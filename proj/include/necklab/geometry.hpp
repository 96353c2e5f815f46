#pragma once

#include <Eigen/Dense>
#include <vector>

#include "necklab/errors.hpp"

namespace necklab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class TargetKind { Sphere, Product };

/// Skew-symmetric generator of the target's isometry algebra, acting on the
/// ambient space. For product targets the matrix is block-diagonal over the
/// two factors.
struct AlgebraGenerator {
    Mat matrix;
};

/// Round sphere S^n in R^{n+1}, or a product S^{n1} x S^{n2} in
/// R^{n1+n2+2}, both with unit radius factors. Supplies the nearest-point
/// retraction, tangent/normal splitting, second fundamental form, defining
/// functions and the isometry-algebra basis.
class TargetManifold {
public:
    static TargetManifold sphere(int n);
    static TargetManifold product(int n1, int n2);

    TargetKind kind() const { return kind_; }
    int ambient_dim() const { return ambient_dim_; }   // l
    int intrinsic_dim() const { return intrinsic_dim_; } // n = dim N
    int codim() const { return static_cast<int>(factors_.size()); } // m

    int num_factors() const { return static_cast<int>(factors_.size()); }
    int factor_offset(int i) const { return factors_[i].offset; }
    int factor_ambient_dim(int i) const { return factors_[i].dim; }

    /// Nearest-point retraction: per-factor radial normalization.
    Vec project(const Vec& x) const;

    /// Values of the defining functions phi_j(x) = |x_j|^2 - 1 (one per factor).
    Vec defining_values(const Vec& x) const;

    /// (value, gradient) pairs of the defining functions at x.
    std::vector<std::pair<double, Vec>> defining_functions(const Vec& x) const;

    /// max_j |phi_j(x)|
    double membership_residual(const Vec& x) const;

    /// Euclidean distance from x to the manifold.
    double distance_to(const Vec& x) const;

    bool is_on_manifold(const Vec& p, double tol = 1e-10) const {
        return membership_residual(p) <= tol;
    }

    /// Orthogonal projection of v onto T_p N. Throws NotOnManifold if p is
    /// off the manifold by more than 1e-10.
    Vec tangent_project(const Vec& p, const Vec& v) const;

    /// Second fundamental form A(p)(X,Y); X, Y must be tangent at p to 1e-10.
    /// Unit-sphere factors give A(p)(X,Y) = -(X.Y) p factor-wise.
    Vec second_fundamental_form(const Vec& p, const Vec& X, const Vec& Y) const;

    /// Bilinear extension of A(p) to arbitrary ambient vectors (no tangency
    /// check); used where the arguments are only approximately tangent.
    Vec sff_bilinear(const Vec& p, const Vec& X, const Vec& Y) const;

    /// Basis of the isometry algebra: E_{jk} (j<k) per factor, embedded
    /// block-diagonally. (E_{jk} x)_j = x_k, (E_{jk} x)_k = -x_j.
    std::vector<AlgebraGenerator> isometry_algebra_basis() const;

private:
    struct Factor { int offset; int dim; };

    TargetKind kind_ = TargetKind::Sphere;
    int ambient_dim_ = 0;
    int intrinsic_dim_ = 0;
    std::vector<Factor> factors_;

    void check_dim(const Vec& x) const;
};

} // namespace necklab
