#include "seqcon/numeric.hpp"

#include <cmath>
#include <limits>

namespace seqcon {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double log_gamma_lanczos(double x) {
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (x + i - 1);
    const double t = x + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("log_gamma: x must be positive and finite");
    if (x < 0.5)
        return std::log(kPi / std::sin(kPi * x)) - log_gamma_lanczos(1.0 - x);
    return log_gamma_lanczos(x);
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("digamma: x must be positive and finite");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // asymptotic expansion, Bernoulli coefficients
    double series = std::log(x) - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return acc + series;
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw domain_error("log_beta: shapes must be positive and finite");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return h;
    }
    throw convergence_error("reg_inc_beta: continued fraction did not converge in 300 iterations");
}

} // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw domain_error("reg_inc_beta: shapes must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw domain_error("reg_inc_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double front = std::exp(log_front);
    if (x < a / (a + b))
        return front * beta_cont_frac(a, b, x) / a;
    return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

namespace {

double beta_pdf(double a, double b, double x, double log_norm) {
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_norm);
}

// Initial guess for the Beta quantile (Abramowitz-Stegun 26.5.22 when both
// shapes exceed 1, tail power laws otherwise).
double beta_quantile_guess(double a, double b, double u) {
    if (a > 1.0 && b > 1.0) {
        const double y = normal_quantile(u);
        const double lambda = (y * y - 3.0) / 6.0;
        const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
        const double w = y * std::sqrt(h + lambda) / h
            - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (lambda + 5.0 / 6.0 - 2.0 / (3.0 * h));
        return a / (a + b * std::exp(2.0 * w));
    }
    const double lnb = log_beta(a, b);
    double t = std::exp((std::log(u * a) + lnb) / a);
    if (t < 0.5) return t;
    t = std::exp((std::log((1.0 - u) * b) + lnb) / b);
    if (t < 0.5) return 1.0 - t;
    return a / (a + b);
}

} // namespace

double beta_quantile(double a, double b, double u) {
    if (!(a > 0.0) || !(b > 0.0))
        throw domain_error("beta_quantile: shapes must be positive");
    if (!(u > 0.0 && u < 1.0))
        throw domain_error("beta_quantile: u must lie in (0,1)");

    constexpr double kBracket = 1e-15;
    double lo = kBracket;
    double hi = 1.0 - kBracket;
    double x = beta_quantile_guess(a, b, u);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    const double log_norm = log_beta(a, b);
    for (int iter = 0; iter < 200; ++iter) {
        const double g = reg_inc_beta(a, b, x) - u;
        if (g > 0.0) hi = x; else lo = x;
        if (std::fabs(g) < 1e-12)
            return x;
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            return x;
        const double pdf = beta_pdf(a, b, x, log_norm);
        double next = (pdf > 0.0) ? x - g / pdf : mid;
        if (!(next > lo && next < hi))
            next = mid;
        x = next;
    }
    return x;
}

double normal_cdf(double z) {
    if (!std::isfinite(z))
        throw domain_error("normal_cdf: z must be finite");
    return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

// Wichura's PPND16 rational approximations.
double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw domain_error("normal_quantile: u must lie in (0,1)");
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
            + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
            + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
            + 1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
            + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
            + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
            + 4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
            + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
            + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
            + 4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
            + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
            + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
            + 2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
            + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
            + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
            + 5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
            + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
            + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
            + 5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return (q < 0.0) ? -value : value;
}

} // namespace seqcon
