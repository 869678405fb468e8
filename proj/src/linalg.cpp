#include "qmpe/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qmpe/errors.hpp"

namespace qmpe {

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j);
    return out;
}

void require_hermitian(const CMatrix& m, const char* who) {
    const double scale = std::max(1.0, m.frobenius_norm());
    if (m.hermiticity_defect() > 1e-10 * scale)
        throw NotHermitian(std::string(who) + ": matrix is not Hermitian within tolerance");
}

// Eigenbasis of the symmetrized matrix, eigenvalues ascending (Eigen's order).
void hermitian_eig(const CMatrix& m, Eigen::VectorXd& evals, Eigen::MatrixXcd& evecs,
                   const char* who) {
    require_hermitian(m, who);
    Eigen::MatrixXcd a = to_eigen(m);
    a = 0.5 * (a + a.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    if (es.info() != Eigen::Success)
        throw NonConvergence(std::string(who) + ": Hermitian eigensolver failed");
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
}

} // namespace

EigenSystem eigendecompose(const CMatrix& m) {
    if (m.dim() == 0) throw Error("eigendecompose: empty matrix");
    if (!m.all_finite()) throw Error("eigendecompose: non-finite entries");

    Eigen::MatrixXcd a = to_eigen(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw NonConvergence("eigendecompose: QR iteration did not converge");

    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::MatrixXcd vinv;
    {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v);
        vinv = lu.inverse();
    }

    double cond;
    {
        // Condition of the eigenvector matrix; blows up near a defective point.
        Eigen::VectorXd s;
        if (a.rows() > 32) {
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(v);
            s = svd.singularValues();
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
            s = svd.singularValues();
        }
        cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                     : std::numeric_limits<double>::infinity();
    }

    const auto n = static_cast<std::size_t>(a.rows());
    EigenSystem sys;
    sys.values.resize(n);
    sys.right_vectors.assign(n, std::vector<cd>(n));
    sys.left_vectors.assign(n, std::vector<cd>(n));
    for (std::size_t j = 0; j < n; ++j) {
        sys.values[j] = es.eigenvalues()(static_cast<Eigen::Index>(j));
        for (std::size_t i = 0; i < n; ++i) {
            sys.right_vectors[j][i] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            sys.left_vectors[j][i] =
                std::conj(vinv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
        }
    }
    sys.condition_estimate = cond;
    sys.near_defective = cond > 1e8;
    return sys;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    hermitian_eig(m, evals, evecs, "hermitian_eigenvalues");
    std::vector<double> out(evals.data(), evals.data() + evals.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

CMatrix matrix_log_hermitian(const CMatrix& m, double floor) {
    if (!(floor > 0.0)) throw Error("matrix_log_hermitian: floor must be positive");
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    hermitian_eig(m, evals, evecs, "matrix_log_hermitian");

    Eigen::VectorXd logs(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) logs(i) = std::log(std::max(evals(i), floor));
    Eigen::MatrixXcd r = evecs * logs.asDiagonal() * evecs.adjoint();
    r = 0.5 * (r + r.adjoint().eval());

    CMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out(i, j) = r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

CMatrix invert_dense(const CMatrix& m) {
    Eigen::MatrixXcd a = to_eigen(m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::MatrixXcd inv = lu.inverse();
    CMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out(i, j) = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

CMatrix hermitian_inverse(const CMatrix& m, double min_eig) {
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    hermitian_eig(m, evals, evecs, "hermitian_inverse");
    if (evals.minCoeff() < min_eig)
        throw SingularSteadyState("hermitian_inverse: eigenvalue below invertibility floor");

    Eigen::MatrixXcd r = evecs * evals.cwiseInverse().asDiagonal() * evecs.adjoint();
    CMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out(i, j) = r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

} // namespace qmpe
