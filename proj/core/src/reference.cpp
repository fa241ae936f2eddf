#include "qgeom/reference.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qgeom/errors.hpp"

namespace qgeom {

SpinLabel::SpinLabel(int twice_j) : two_j(twice_j) {
    if (twice_j < 1) {
        throw ValidationError("SpinLabel: two_j must be >= 1 (N >= 2), got " +
                              std::to_string(twice_j));
    }
}

std::array<HermitianMatrix, 3> angular_momentum(SpinLabel spin) {
    const Eigen::Index n = spin.dim();
    const double j = spin.j();
    CMatrix raise = CMatrix::Zero(n, n);
    CMatrix jz = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double m = j - static_cast<double>(k);
        jz(k, k) = m;
        if (k > 0) raise(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const CMatrix lower = raise.adjoint();
    const Complex i(0.0, 1.0);
    return {HermitianMatrix::hermitian_part(0.5 * (raise + lower)),
            HermitianMatrix::hermitian_part((raise - lower) / (2.0 * i)),
            HermitianMatrix(jz)};
}

MatrixConfiguration fuzzy_sphere(SpinLabel spin, double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("fuzzy_sphere: alpha must be > 0");
    const auto j = angular_momentum(spin);
    std::vector<CMatrix> x;
    for (const auto& ja : j) x.push_back(alpha * ja.matrix());
    return make_configuration(x);
}

std::vector<HermitianMatrix> gell_mann(Eigen::Index n) {
    if (n < 2) throw ValidationError("gell_mann: N must be >= 2");
    std::vector<HermitianMatrix> out;
    out.reserve(static_cast<std::size_t>(n * n - 1));
    const Complex i(0.0, 1.0);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r + 1; c < n; ++c) {
            CMatrix m = CMatrix::Zero(n, n);
            m(r, c) = 1.0;
            m(c, r) = 1.0;
            out.emplace_back(std::move(m));
        }
    }
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r + 1; c < n; ++c) {
            CMatrix m = CMatrix::Zero(n, n);
            m(r, c) = -i;
            m(c, r) = i;
            out.emplace_back(std::move(m));
        }
    }
    for (Eigen::Index l = 1; l < n; ++l) {
        CMatrix m = CMatrix::Zero(n, n);
        const double s = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index k = 0; k < l; ++k) m(k, k) = s;
        m(l, l) = -s * static_cast<double>(l);
        out.emplace_back(std::move(m));
    }
    return out;
}

MatrixConfiguration fuzzy_cpn(Eigen::Index n) { return MatrixConfiguration(gell_mann(n)); }

std::pair<CMatrix, CMatrix> clock_shift(Eigen::Index n) {
    if (n < 2) throw ValidationError("clock_shift: N must be >= 2");
    CMatrix u = CMatrix::Zero(n, n);
    CMatrix v = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        u(k, k) = std::polar(1.0, angle);
        v((k + 1) % n, k) = 1.0;
    }
    // exact values at the quarter turns so that N = 2 gives sigma_z exactly
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex& z = u(k, k);
        if (std::abs(z.imag()) < 1e-15) z = Complex(std::round(z.real()), 0.0);
        if (std::abs(z.real()) < 1e-15) z = Complex(0.0, std::round(z.imag()));
    }
    return {u, v};
}

MatrixConfiguration fuzzy_torus(Eigen::Index n) {
    const auto [u, v] = clock_shift(n);
    const Complex i(0.0, 1.0);
    std::vector<CMatrix> x{0.5 * (u + u.adjoint()), (u - u.adjoint()) / (2.0 * i),
                           0.5 * (v + v.adjoint()), (v - v.adjoint()) / (2.0 * i)};
    return make_configuration(x);
}

MatrixConfiguration commuting_config(const RMatrix& points) {
    if (points.rows() < 1 || points.cols() < 1) {
        throw ValidationError("commuting_config: need at least one point with D >= 1");
    }
    std::vector<HermitianMatrix> x;
    for (Eigen::Index a = 0; a < points.cols(); ++a) {
        x.emplace_back(CMatrix(points.col(a).cast<Complex>().asDiagonal()));
    }
    return MatrixConfiguration(std::move(x));
}

}  // namespace qgeom
