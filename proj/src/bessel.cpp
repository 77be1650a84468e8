#include "steklov/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "steklov/errors.hpp"

namespace steklov::bessel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1.0e-16;
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIter = 200000;

// Taylor coefficients of 1/Gamma(1 + x) about x = 0.
constexpr std::array<double, 29> kRecipGamma = {
    1.0,
    5.7721566490153286061e-1,
    -6.5587807152025388108e-1,
    -4.2002635034095235529e-2,
    1.665386113822914895e-1,
    -4.2197734555544336748e-2,
    -9.6219715278769735621e-3,
    7.2189432466630995424e-3,
    -1.1651675918590651121e-3,
    -2.1524167411495097282e-4,
    1.2805028238811618615e-4,
    -2.0134854780788238656e-5,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

void check_argument(double nu, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw DomainError("Bessel argument must be positive and finite, got " + std::to_string(z));
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw DomainError("Bessel order must be non-negative, got " + std::to_string(nu));
}

// Poly in w = 1/z: d/dz sum c_m w^m = -sum m c_m w^(m+1)
std::vector<double> derivative_in_z(const std::vector<double>& c) {
    std::vector<double> out(c.size() + 1, 0.0);
    for (std::size_t m = 1; m < c.size(); ++m) out[m + 1] = -static_cast<double>(m) * c[m];
    return out;
}

double horner(const std::vector<double>& c, double w) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
    return acc;
}

void add_into(std::vector<double>& dst, const std::vector<double>& src) {
    if (dst.size() < src.size()) dst.resize(src.size(), 0.0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

}  // namespace

namespace detail {

void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    // 1/Gamma(1 + mu) = sum d_j mu^j; odd part gives gam1, even part gam2.
    const double mu2 = mu * mu;
    double odd = 0.0;
    double even = 0.0;
    double pw = 1.0;
    for (std::size_t j = 0; j + 1 < kRecipGamma.size(); j += 2) {
        even += kRecipGamma[j] * pw;
        odd += kRecipGamma[j + 1] * pw;
        pw *= mu2;
    }
    even += kRecipGamma.back() * pw;
    gam1 = -odd;
    gam2 = even;
    gampl = gam2 - mu * gam1;
    gammi = gam2 + mu * gam1;
}

}  // namespace detail

BesselPair bessel_jy(double nu, double z) {
    check_argument(nu, z);

    const int nl = z < 2.0 ? static_cast<int>(nu + 0.5)
                           : std::max(0, static_cast<int>(nu - z + 1.5));
    const double mu = nu - nl;
    const double xi = 1.0 / z;
    const double xi2 = 2.0 * xi;
    const double wronskian = xi2 / kPi;

    // Continued fraction for J_nu'/J_nu (modified Lentz).
    int isign = 1;
    double h = std::max(nu * xi, kFpMin);
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("J'/J continued fraction did not converge", h);

    // Unnormalized downward recurrence to the reduced order mu.
    double rjl = isign * kFpMin;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    const double rjp1 = rjpl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double rjmu = 0.0;
    double rymu = 0.0;
    double ry1 = 0.0;
    if (z < 2.0) {
        // Temme's series for Y_mu and Y_mu+1.
        const double x2 = 0.5 * z;
        const double pimu = kPi * mu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        const double dd = -std::log(x2);
        double e = mu * dd;
        const double fct2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        double gam1 = 0.0, gam2 = 0.0, gampl = 0.0, gammi = 0.0;
        detail::temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / kPi * fct * (gam1 * std::cosh(e) + gam2 * fct2 * dd);
        e = std::exp(e);
        double p = e / (gampl * kPi);
        double q = 1.0 / (e * kPi * gammi);
        const double pimu2 = 0.5 * pimu;
        const double fct3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = kPi * pimu2 * fct3 * fct3;
        double cc = 1.0;
        const double dq = -x2 * x2;
        double sum = ff + r * q;
        double sum1 = p;
        int k = 1;
        for (; k <= kMaxIter; ++k) {
            ff = (k * ff + p + q) / (k * static_cast<double>(k) - mu * mu);
            cc *= dq / k;
            p /= (k - mu);
            q /= (k + mu);
            const double del = cc * (ff + r * q);
            sum += del;
            const double del1 = cc * p - k * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (k > kMaxIter) throw ConvergenceError("Temme series did not converge", sum);
        rymu = -sum;
        ry1 = -sum1 * xi2;
        const double rymup = mu * xi * rymu - ry1;
        rjmu = wronskian / (rymup - f * rymu);
    } else {
        // Steed's method: p + iq = (J' + iY')/(J + iY) at order mu.
        double a = 0.25 - mu * mu;
        double p = -0.5 * xi;
        double q = 1.0;
        const double br = 2.0 * z;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct;
        double ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int k = 2;
        for (; k <= kMaxIter; ++k) {
            a += 2 * (k - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr /= den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
        }
        if (k > kMaxIter) throw ConvergenceError("Steed continued fraction did not converge", p);
        const double gam = (p - f) / q;
        rjmu = std::copysign(std::sqrt(wronskian / ((p - f) * gam + q)), rjl);
        rymu = rjmu * gam;
        const double rymup = p * rymu + q * rjmu;
        ry1 = mu * xi * rymu - rymup;
    }

    const double scale = rjmu / rjl;
    BesselPair out{};
    out.j = rjl1 * scale;
    out.jp = rjp1 * scale;
    for (int k = 1; k <= nl; ++k) {
        const double rytemp = (mu + k) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = nu * xi * rymu - ry1;
    return out;
}

double bessel(BesselKind kind, double nu, double z) {
    const BesselPair p = bessel_jy(nu, z);
    return kind == BesselKind::FirstKind ? p.j : p.y;
}

double OdeDerivativeCoefficients::eval_a(double z) const { return horner(a, 1.0 / z); }
double OdeDerivativeCoefficients::eval_b(double z) const { return horner(b, 1.0 / z); }

OdeDerivativeCoefficients ode_derivative_coefficients(double nu, int k) {
    if (k < 0) throw DomainError("derivative order must be >= 0");
    if (k > kMaxDerivativeOrder)
        throw UnsupportedOrderError("derivative order " + std::to_string(k) + " exceeds cap " +
                                    std::to_string(kMaxDerivativeOrder));
    // y'' = p y' + q y with p = -w, q = -1 + nu^2 w^2.
    const std::vector<double> p{0.0, -1.0};
    const std::vector<double> q{-1.0, 0.0, nu * nu};
    auto mul = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> out(x.size() + y.size() - 1, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
        return out;
    };
    OdeDerivativeCoefficients c{{1.0}, {0.0}};
    for (int step = 0; step < k; ++step) {
        std::vector<double> next_a = derivative_in_z(c.a);
        add_into(next_a, mul(c.b, q));
        std::vector<double> next_b = c.a;
        add_into(next_b, derivative_in_z(c.b));
        add_into(next_b, mul(c.b, p));
        c.a = std::move(next_a);
        c.b = std::move(next_b);
    }
    return c;
}

std::vector<double> bessel_derivs(BesselKind kind, double nu, double z, int k) {
    if (k < 0) throw DomainError("derivative order must be >= 0");
    if (k > kMaxDerivativeOrder)
        throw UnsupportedOrderError("derivative order " + std::to_string(k) + " exceeds cap " +
                                    std::to_string(kMaxDerivativeOrder));
    const BesselPair pr = bessel_jy(nu, z);
    const double y = kind == BesselKind::FirstKind ? pr.j : pr.y;
    const double yp = kind == BesselKind::FirstKind ? pr.jp : pr.yp;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    out.push_back(y);
    if (k >= 1) out.push_back(yp);
    for (int order = 2; order <= k; ++order) {
        const OdeDerivativeCoefficients c = ode_derivative_coefficients(nu, order);
        out.push_back(c.eval_a(z) * y + c.eval_b(z) * yp);
    }
    return out;
}

double bessel_deriv(BesselKind kind, double nu, double z, int k) {
    return bessel_derivs(kind, nu, z, k).back();
}

double BesselEval::ode_residual() const {
    if (derivative_values.size() < 2) return 0.0;
    const double z = argument;
    const double t2 = z * z * derivative_values[1];
    const double t1 = z * derivative_values[0];
    const double t0 = (z * z - order * order) * value;
    const double denom = std::abs(t2) + std::abs(t1) + std::abs(t0);
    return denom == 0.0 ? 0.0 : std::abs(t2 + t1 + t0) / denom;
}

BesselEval evaluate(BesselKind kind, double nu, double z, int k) {
    std::vector<double> d = bessel_derivs(kind, nu, z, k);
    BesselEval e{nu, z, d.front(), {}};
    e.derivative_values.assign(d.begin() + 1, d.end());
    return e;
}

double ratio_expansion_r3(double nu, double z) {
    if (!(nu > 0.0)) throw DomainError("R3 expansion divides by nu; nu must be > 0");
    if (!(z > 0.0)) throw DomainError("R3 expansion requires z > 0");
    if (!(z < std::sqrt(nu * (nu + 2.0))))
        throw DomainError("R3 expansion requires z below the first zero of J_nu'");

    const double lead = z * z * z / (2.0 * nu * nu * (1.0 + nu));
    if (z > 2.0) {
        const BesselPair p = bessel_jy(nu, z);
        return p.j / p.jp - z / nu - lead;
    }
    // J_nu / J_nu' = z S / (nu S + W) with S = sum t_j, W = sum 2j t_j and
    // t_j = (-z^2/4)^j / (j! (nu+1)_j). Subtracting the two leading terms
    // analytically removes the z^3 cancellation.
    const double x = -0.25 * z * z;
    double t = 1.0;
    double denom = nu;     // sum (nu + 2j) t_j
    double tail_w = 0.0;   // sum_{j>=2} 2j t_j
    double tail_d = 0.0;   // sum_{j>=1} (nu + 2j) t_j
    for (int j = 1; j < 200; ++j) {
        t *= x / (j * (nu + j));
        const double term_d = (nu + 2.0 * j) * t;
        denom += term_d;
        tail_d += term_d;
        if (j >= 2) tail_w += 2.0 * j * t;
        if (std::abs(t) < 1e-18 * std::abs(denom)) break;
    }
    const double bracket = tail_w + z * z / (2.0 * nu * (nu + 1.0)) * tail_d;
    return -z * bracket / (nu * denom);
}

}  // namespace steklov::bessel
