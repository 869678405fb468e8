#include "qmpe/quantifiers.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qmpe/errors.hpp"
#include "qmpe/linalg.hpp"

namespace qmpe {

std::string to_string(QuantifierKind kind) {
    switch (kind) {
        case QuantifierKind::trace: return "trace";
        case QuantifierKind::frobenius: return "frobenius";
        case QuantifierKind::relative_entropy: return "relative_entropy";
    }
    return "?";
}

QuantifierKind quantifier_from_string(const std::string& name) {
    if (name == "trace") return QuantifierKind::trace;
    if (name == "frobenius") return QuantifierKind::frobenius;
    if (name == "relative_entropy") return QuantifierKind::relative_entropy;
    throw ConfigError("unknown quantifier '" + name + "'");
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error("trace_distance: dimension mismatch");
    CMatrix diff = rho - sigma;
    diff = cd{0.5, 0.0} * (diff + diff.adjoint());
    double acc = 0.0;
    for (double ev : hermitian_eigenvalues(diff)) acc += std::abs(ev);
    return 0.5 * acc;
}

double frobenius_distance(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error("frobenius_distance: dimension mismatch");
    CMatrix diff = rho - sigma;
    return diff.frobenius_norm();
}

double relative_entropy(const CMatrix& rho, const CMatrix& sigma, double floor) {
    if (rho.dim() != sigma.dim()) throw Error("relative_entropy: dimension mismatch");
    if (!(floor > 0.0)) throw Error("relative_entropy: floor must be positive");

    // sigma support check before clipping
    {
        Eigen::MatrixXcd s(sigma.dim(), sigma.dim());
        for (std::size_t i = 0; i < sigma.dim(); ++i)
            for (std::size_t j = 0; j < sigma.dim(); ++j)
                s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sigma(i, j);
        s = 0.5 * (s + s.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            if (es.eigenvalues()(k) >= floor) continue;
            const Eigen::VectorXcd v = es.eigenvectors().col(k);
            double support = 0.0;
            for (std::size_t i = 0; i < rho.dim(); ++i)
                for (std::size_t j = 0; j < rho.dim(); ++j)
                    support += std::real(std::conj(v(static_cast<Eigen::Index>(i))) * rho(i, j) *
                                         v(static_cast<Eigen::Index>(j)));
            if (support > 1e-6)
                throw IllConditioned(
                    "relative_entropy: sigma has near-zero eigenvalue with rho support "
                    "(entropy effectively divergent)");
        }
    }

    CMatrix log_rho = matrix_log_hermitian(cd{0.5, 0.0} * (rho + rho.adjoint()), floor);
    CMatrix log_sigma = matrix_log_hermitian(cd{0.5, 0.0} * (sigma + sigma.adjoint()), floor);
    return std::real((rho * (log_rho - log_sigma)).trace());
}

double quantify(QuantifierKind kind, const CMatrix& rho, const CMatrix& sigma, double floor) {
    switch (kind) {
        case QuantifierKind::trace: return trace_distance(rho, sigma);
        case QuantifierKind::frobenius: return frobenius_distance(rho, sigma);
        case QuantifierKind::relative_entropy: return relative_entropy(rho, sigma, floor);
    }
    throw Error("quantify: bad kind");
}

} // namespace qmpe
