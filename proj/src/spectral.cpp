#include "qmpe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmpe/errors.hpp"

namespace qmpe {

namespace {

// Re desc with nearly-equal real parts (1e-9 * scale) broken by Im desc, so
// the +Im partner of a conjugate pair always comes first. Sorted exactly
// first, then tie groups are re-sorted; a fuzzy comparator would not be a
// strict weak ordering.
std::vector<std::size_t> spectral_order(const std::vector<cd>& mu) {
    double scale = 0.0;
    for (cd m : mu) scale = std::max(scale, std::abs(m));
    const double tie = 1e-9 * std::max(1.0, scale);
    std::vector<std::size_t> idx(mu.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (mu[a].real() != mu[b].real()) return mu[a].real() > mu[b].real();
        return mu[a].imag() > mu[b].imag();
    });
    for (std::size_t lo = 0; lo < idx.size();) {
        std::size_t hi = lo + 1;
        while (hi < idx.size() && mu[idx[hi - 1]].real() - mu[idx[hi]].real() <= tie) ++hi;
        std::stable_sort(idx.begin() + lo, idx.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return mu[a].imag() > mu[b].imag(); });
        lo = hi;
    }
    return idx;
}

} // namespace

LiouvillianSpectrum analyze(const Liouvillian& liouv) {
    EigenSystem es = eigendecompose(liouv.matrix);
    const std::size_t nmodes = es.values.size();
    const std::size_t d = liouv.hamiltonian.dim();
    const std::vector<std::size_t> order = spectral_order(es.values);

    LiouvillianSpectrum spec;
    spec.params = liouv.params;
    spec.dim = d;
    spec.eigenvalues.resize(nmodes);
    spec.mode_vecs.resize(nmodes);
    spec.condition_estimate = es.condition_estimate;
    spec.defective = es.near_defective;

    // Order and normalize the right modes: unit trace when the trace is away
    // from zero, otherwise unit Frobenius norm with the largest-magnitude
    // entry rotated real positive (canonical sign for near-traceless modes
    // such as rho_2).
    for (std::size_t j = 0; j < nmodes; ++j) {
        spec.eigenvalues[j] = es.values[order[j]];
        std::vector<cd> v = es.right_vectors[order[j]];
        cd tr{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) tr += v[i + i * d];
        cd scale;
        if (std::abs(tr) > 1e-9) {
            scale = tr;
        } else {
            const double nrm = std::sqrt(kern::sumsq(v.data(), v.size()));
            std::size_t peak = 0;
            for (std::size_t i = 1; i < v.size(); ++i)
                if (std::abs(v[i]) > std::abs(v[peak])) peak = i;
            scale = nrm * (v[peak] / std::abs(v[peak]));
        }
        kern::scal(cd{1.0, 0.0} / scale, v.data(), v.size());
        spec.mode_vecs[j] = std::move(v);
    }

    // Left modes from the inverse of the normalized eigenvector matrix:
    // biorthogonality and exact reconstruction come for free, including for
    // the clustered eigenvalues of the multiqubit collective model.
    CMatrix vmat(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j)
        for (std::size_t i = 0; i < nmodes; ++i) vmat(i, j) = spec.mode_vecs[j][i];
    CMatrix vinv = invert_dense(vmat);

    spec.left_rows.resize(nmodes);
    spec.right_modes.reserve(nmodes);
    spec.left_modes.reserve(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j) {
        spec.left_rows[j].resize(nmodes);
        for (std::size_t k = 0; k < nmodes; ++k) spec.left_rows[j][k] = vinv(j, k);
        spec.right_modes.push_back(devectorize(spec.mode_vecs[j].data(), d));
        std::vector<cd> lvec(nmodes);
        for (std::size_t k = 0; k < nmodes; ++k) lvec[k] = std::conj(vinv(j, k));
        spec.left_modes.push_back(devectorize(lvec.data(), d));
    }

    CMatrix ss = spec.right_modes[0];
    ss = cd{0.5, 0.0} * (ss + ss.adjoint());
    spec.steady_state = std::move(ss);
    spec.steady_vec = vectorize(spec.steady_state);
    return spec;
}

double max_imag_eigenvalue(const ModelParams& params) {
    Liouvillian liouv = build_liouvillian(params);
    EigenSystem es = eigendecompose(liouv.matrix);
    double m = 0.0;
    for (cd mu : es.values) m = std::max(m, std::abs(mu.imag()));
    return m;
}

OverlapSet overlaps(const LiouvillianSpectrum& spec, const CMatrix& rho0) {
    std::vector<cd> r = vectorize(rho0);
    OverlapSet out;
    out.coefficients.resize(spec.left_rows.size());
    for (std::size_t j = 0; j < spec.left_rows.size(); ++j)
        out.coefficients[j] = kern::dotu(spec.left_rows[j].data(), r.data(), r.size());
    return out;
}

double locate_lep(const ModelParams& params_template, double a_min, double a_max, double tol) {
    if (!(tol > 0.0)) throw ConfigError("locate_lep: tol must be positive");
    auto above = [&](double a) {
        ModelParams p = params_template;
        p.a = a;
        return max_imag_eigenvalue(p) > 1e-8;
    };
    bool lo_above = above(a_min);
    if (lo_above == above(a_max))
        throw NoBracket("locate_lep: max |Im mu| does not cross 1e-8 inside [a_min, a_max]");
    double lo = a_min, hi = a_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (above(mid) == lo_above) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace qmpe
