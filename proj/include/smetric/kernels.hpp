#ifndef SMETRIC_KERNELS_HPP
#define SMETRIC_KERNELS_HPP

#include <Eigen/Core>

#include <cmath>

// Closed-form S-metric kernels. Each takes three Eigen column expressions of
// equal length and returns S(x, y, z) in their scalar type.

namespace smetric::kernels {

template <typename DX, typename DY, typename DZ>
typename DX::Scalar usual(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                          const Eigen::MatrixBase<DZ>& z)
{
    return (x - z).cwiseAbs().sum() + (y - z).cwiseAbs().sum();
}

/// sum_i |x_i - z_i| + |x_i + z_i - 2 y_i|
template <typename DX, typename DY, typename DZ>
typename DX::Scalar sym_skew(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                             const Eigen::MatrixBase<DZ>& z)
{
    using Scalar = typename DX::Scalar;
    return ((x - z).cwiseAbs() + (x + z - Scalar(2) * y).cwiseAbs()).sum();
}

/// sym_skew applied to exp of every coordinate.
template <typename DX, typename DY, typename DZ>
typename DX::Scalar exp_sym_skew(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                                 const Eigen::MatrixBase<DZ>& z)
{
    return sym_skew(x.array().exp().matrix(), y.array().exp().matrix(), z.array().exp().matrix());
}

/// (|x - z| + |y - z|) / 2 with the Euclidean norm.
template <typename DX, typename DY, typename DZ>
typename DX::Scalar half_sum(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                             const Eigen::MatrixBase<DZ>& z)
{
    using Scalar = typename DX::Scalar;
    return ((x - z).norm() + (y - z).norm()) / Scalar(2);
}

// Binary metrics used to generate S_d(x, y, z) = d(x, z) + d(y, z).

template <typename DA, typename DB>
typename DA::Scalar euclidean(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b)
{
    return (a - b).norm();
}

template <typename DA, typename DB>
typename DA::Scalar absolute(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b)
{
    return (a - b).cwiseAbs().sum();
}

template <typename DA, typename DB>
typename DA::Scalar discrete(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b)
{
    using Scalar = typename DA::Scalar;
    return (a.array() == b.array()).all() ? Scalar(0) : Scalar(1);
}

} // namespace smetric::kernels

#endif // SMETRIC_KERNELS_HPP
