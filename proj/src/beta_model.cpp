#include "seqcon/beta_model.hpp"

#include <cmath>

#include "seqcon/numeric.hpp"

namespace seqcon {

void validate(const BetaParams& p) {
    if (!(p.a > 0.0) || !(p.b > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b))
        throw domain_error("BetaParams: shapes must be positive and finite");
}

double LikelihoodPair::llr_constant() const {
    return log_beta(f0.a, f0.b) - log_beta(f1.a, f1.b);
}

double log_density(const BetaParams& p, double s) {
    validate(p);
    if (!(s > 0.0 && s < 1.0))
        throw domain_error("log_density: s must lie strictly inside (0,1); clip first");
    return (p.a - 1.0) * std::log(s) + (p.b - 1.0) * std::log1p(-s) - log_beta(p.a, p.b);
}

double log_likelihood_ratio(const LikelihoodPair& pair, double s) {
    validate(pair.f0);
    validate(pair.f1);
    if (!(s > 0.0 && s < 1.0))
        throw domain_error("log_likelihood_ratio: s must lie strictly inside (0,1); clip first");
    return pair.llr_constant()
        + (pair.f1.a - pair.f0.a) * std::log(s)
        + (pair.f1.b - pair.f0.b) * std::log1p(-s);
}

double kl_divergence(const BetaParams& p, const BetaParams& q) {
    validate(p);
    validate(q);
    return log_beta(q.a, q.b) - log_beta(p.a, p.b)
        + (p.a - q.a) * digamma(p.a)
        + (p.b - q.b) * digamma(p.b)
        + (q.a - p.a + q.b - p.b) * digamma(p.a + p.b);
}

namespace {

double kl_integrand(const BetaParams& p, const BetaParams& q, double s) {
    const double lp = log_density(p, s);
    return std::exp(lp) * (lp - log_density(q, s));
}

double adaptive_simpson(const BetaParams& p, const BetaParams& q,
                        double lo, double hi, double flo, double fmid, double fhi,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double fl = kl_integrand(p, q, lmid);
    const double fr = kl_integrand(p, q, rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    const double delta = left + right - whole;
    if (depth <= 0)
        throw convergence_error("kl_divergence_clipped: quadrature did not converge");
    if (std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(p, q, lo, mid, flo, fl, fmid, left, 0.5 * tol, depth - 1)
         + adaptive_simpson(p, q, mid, hi, fmid, fr, fhi, right, 0.5 * tol, depth - 1);
}

} // namespace

double kl_divergence_clipped(const BetaParams& p, const BetaParams& q, double eps) {
    validate(p);
    validate(q);
    if (!(eps > 0.0 && eps < 0.5))
        throw domain_error("kl_divergence_clipped: eps must lie in (0, 0.5)");
    const double lo = eps;
    const double hi = 1.0 - eps;
    // Integrate in panels so endpoint spikes (shapes < 1) localize refinement.
    const double cuts[] = {lo, 1e-3, 0.5, 1.0 - 1e-3, hi};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (!(b > a)) continue;
        const double m = 0.5 * (a + b);
        const double fa = kl_integrand(p, q, a);
        const double fm = kl_integrand(p, q, m);
        const double fb = kl_integrand(p, q, b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(p, q, a, b, fa, fm, fb, whole,
                                  1e-6 * (std::fabs(whole) + 1e-9), 60);
    }
    return total;
}

BetaParams fit_moments(double mean, double variance) {
    if (!(mean > 0.0 && mean < 1.0))
        throw domain_error("fit_moments: mean must lie in (0,1)");
    if (!(variance > 0.0))
        throw data_error("fit_moments: degenerate sample, variance must be positive");
    const double cap = mean * (1.0 - mean);
    if (variance >= cap)
        throw data_error("fit_moments: infeasible moments, variance >= mean*(1-mean)");
    const double t = cap / variance - 1.0;
    return BetaParams{mean * t, (1.0 - mean) * t};
}

double sample(const BetaParams& p, RngStream& rng) {
    validate(p);
    return beta_quantile(p.a, p.b, rng.next_uniform());
}

std::optional<double> llr_crossover(const LikelihoodPair& pair) {
    validate(pair.f0);
    validate(pair.f1);
    const double da = pair.f1.a - pair.f0.a;
    const double db = pair.f1.b - pair.f0.b;
    const bool increasing = da > 0.0 && db < 0.0;
    const bool decreasing = da < 0.0 && db > 0.0;
    if (!increasing && !decreasing)
        return std::nullopt;
    constexpr double kEdge = 1e-9;
    double lo = kEdge;
    double hi = 1.0 - kEdge;
    double flo = log_likelihood_ratio(pair, lo);
    double fhi = log_likelihood_ratio(pair, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        return std::nullopt;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = log_likelihood_ratio(pair, mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace seqcon
