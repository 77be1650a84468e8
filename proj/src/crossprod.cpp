#include "steklov/crossprod.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "steklov/bessel.hpp"
#include "steklov/errors.hpp"

namespace steklov::crossprod {

namespace {

void check_order(int k, int max_k) {
    if (k < 1) throw DomainError("cross-product order k must be >= 1");
    if (k > max_k)
        throw UnsupportedOrderError("cross-product order " + std::to_string(k) +
                                    " exceeds supported maximum " + std::to_string(max_k));
}

Rational binomial(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

SymbolicLaurent form_of(std::initializer_list<std::pair<const int, NuPolynomial>> terms) {
    SymbolicLaurent s;
    for (const auto& [m, c] : terms)
        if (!c.is_zero()) s.coeffs[m] = c;
    return s;
}

NuPolynomial nu_poly(std::initializer_list<std::pair<int, int>> monomials) {
    NuPolynomial p;
    for (const auto& [power, c] : monomials) p += NuPolynomial::monomial(c, power);
    return p;
}

struct RecursionTable {
    std::array<SymbolicLaurent, kMaxCrossOrder + 1> yj;
    std::array<SymbolicLaurent, kMaxCrossOrder + 1> yprime_j;
};

RecursionTable build_recursion() {
    RecursionTable t;
    // k = 0: Y J - J Y = 0. k = 1: Y J' - J Y' = -2/(pi z); Y' J' - J' Y' = 0.
    t.yj[1] = form_of({{0, NuPolynomial::constant(-1)}});
    const NuPolynomial nu2 = NuPolynomial::monomial(1, 2);
    for (int k = 1; k < kMaxCrossOrder; ++k) {
        // Y' J^(k+1) - J' Y^(k+1): average of the YJ forms at nu -+ 1, minus
        // nu^2 times a finite sum over lower YJ forms.
        SymbolicLaurent q = t.yj[k].shifted(-1);
        q += t.yj[k].shifted(1);
        q *= NuPolynomial::constant(Rational(1, 2));
        const Rational kfact = factorial(k);
        for (int j = 0; j <= k; ++j) {
            Rational coef = kfact / factorial(j);
            if ((k - j) % 2 != 0) coef = -coef;
            SymbolicLaurent term = t.yj[j].times_inverse_power(k - j + 2);
            term *= nu2 * (-coef);
            q += term;
        }
        t.yprime_j[k + 1] = q;

        // Y J^(k+1) - J Y^(k+1) = -Q_k - (1/z) R_k + R_k'
        SymbolicLaurent r = t.yprime_j[k];
        r *= NuPolynomial::constant(-1);
        SymbolicLaurent shifted = t.yj[k].times_inverse_power(1);
        shifted *= NuPolynomial::constant(-1);
        r += shifted;
        r += t.yj[k].derivative();
        t.yj[k + 1] = r;
    }
    return t;
}

const RecursionTable& recursion_table() {
    static const RecursionTable table = build_recursion();
    return table;
}

// Double-precision copies of the recursion table, for fast evaluation.
struct NumericTable {
    // coeffs[family][k] : list of (m, coefficient polynomial in nu as doubles)
    std::array<std::array<std::vector<std::pair<int, std::vector<double>>>, kMaxCrossOrder + 1>, 2>
        coeffs;
};

const NumericTable& numeric_table() {
    static const NumericTable table = [] {
        NumericTable t;
        const RecursionTable& r = recursion_table();
        for (int fam = 0; fam < 2; ++fam) {
            for (int k = 1; k <= kMaxCrossOrder; ++k) {
                const SymbolicLaurent& s = fam == 0 ? r.yj[k] : r.yprime_j[k];
                for (const auto& [m, p] : s.coeffs) {
                    std::vector<double> c;
                    for (const Rational& q : p.coefficients()) c.push_back(static_cast<double>(q));
                    t.coeffs[fam][k].emplace_back(m, std::move(c));
                }
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

std::string family_name(CrossFamily family) {
    return family == CrossFamily::YJ ? "Y*J^(k)-J*Y^(k)" : "Y'*J^(k)-J'*Y^(k)";
}

// ---- NuPolynomial ---------------------------------------------------------

NuPolynomial::NuPolynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
    trim();
}

NuPolynomial NuPolynomial::constant(const Rational& c) { return NuPolynomial({c}); }

NuPolynomial NuPolynomial::monomial(const Rational& c, int power) {
    std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
    v.back() = c;
    return NuPolynomial(std::move(v));
}

void NuPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double NuPolynomial::operator()(double nu) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * nu + static_cast<double>(*it);
    return acc;
}

Rational NuPolynomial::operator()(const Rational& nu) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * nu + *it;
    return acc;
}

NuPolynomial NuPolynomial::shifted(const Rational& delta) const {
    std::vector<Rational> out(c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        // (nu + delta)^i
        Rational dpow = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            out[i - j] += c_[i] * binomial(static_cast<int>(i), static_cast<int>(j)) * dpow;
            dpow *= delta;
        }
    }
    return NuPolynomial(std::move(out));
}

NuPolynomial& NuPolynomial::operator+=(const NuPolynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

NuPolynomial& NuPolynomial::operator-=(const NuPolynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

NuPolynomial& NuPolynomial::operator*=(const Rational& s) {
    for (Rational& c : c_) c *= s;
    trim();
    return *this;
}

NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return NuPolynomial(std::move(out));
}

std::string NuPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i];
        if (i == 1) os << "*nu";
        if (i > 1) os << "*nu^" << i;
        first = false;
    }
    return os.str();
}

// ---- LaurentForm ----------------------------------------------------------

double LaurentForm::bracket(double z) const {
    const double w = 1.0 / z;
    double acc = 0.0;
    int top = inverse_power_coeffs.empty() ? 0 : inverse_power_coeffs.rbegin()->first;
    for (int m = top; m >= 1; --m) {
        auto it = inverse_power_coeffs.find(m);
        acc = (acc + (it == inverse_power_coeffs.end() ? 0.0 : it->second)) * w;
    }
    return acc + constant_term;
}

LaurentForm LaurentForm::derivative() const {
    LaurentForm d;
    for (const auto& [m, c] : inverse_power_coeffs) d.inverse_power_coeffs[m + 1] = -m * c;
    return d;
}

double evaluate(const LaurentForm& form, double z) {
    if (!(z > 0.0)) throw DomainError("Laurent form evaluated at z <= 0");
    return 2.0 / (std::numbers::pi * z) * form.bracket(z);
}

// ---- SymbolicLaurent ------------------------------------------------------

LaurentForm SymbolicLaurent::at(double nu) const {
    LaurentForm f;
    for (const auto& [m, p] : coeffs) {
        if (m == 0)
            f.constant_term = p(nu);
        else
            f.inverse_power_coeffs[m] = p(nu);
    }
    return f;
}

SymbolicLaurent SymbolicLaurent::derivative() const {
    SymbolicLaurent d;
    for (const auto& [m, p] : coeffs)
        if (m > 0) d.coeffs[m + 1] = p * Rational(-m);
    return d;
}

SymbolicLaurent SymbolicLaurent::shifted(const Rational& delta) const {
    SymbolicLaurent s;
    for (const auto& [m, p] : coeffs) s.coeffs[m] = p.shifted(delta);
    s.drop_zeros();
    return s;
}

SymbolicLaurent SymbolicLaurent::times_inverse_power(int p) const {
    SymbolicLaurent s;
    for (const auto& [m, c] : coeffs) s.coeffs[m + p] = c;
    return s;
}

SymbolicLaurent& SymbolicLaurent::operator+=(const SymbolicLaurent& o) {
    for (const auto& [m, p] : o.coeffs) coeffs[m] += p;
    drop_zeros();
    return *this;
}

SymbolicLaurent& SymbolicLaurent::operator*=(const NuPolynomial& s) {
    for (auto& [m, p] : coeffs) p = p * s;
    drop_zeros();
    return *this;
}

void SymbolicLaurent::drop_zeros() {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->second.is_zero())
            it = coeffs.erase(it);
        else
            ++it;
    }
}

bool operator==(const SymbolicLaurent& a, const SymbolicLaurent& b) { return a.coeffs == b.coeffs; }

// ---- forms ----------------------------------------------------------------

SymbolicLaurent closed_form_symbolic(CrossKind kind) {
    if (kind.k < 1 || kind.k > 4)
        throw UnsupportedOrderError("closed forms exist for k = 1..4 only; use recursive_form for k = " +
                                    std::to_string(kind.k));
    if (kind.family == CrossFamily::YJ) {
        switch (kind.k) {
            case 1: return form_of({{0, nu_poly({{0, -1}})}});
            case 2: return form_of({{1, nu_poly({{0, 1}})}});
            case 3: return form_of({{0, nu_poly({{0, 1}})}, {2, nu_poly({{0, -2}, {2, -1}})}});
            default: return form_of({{1, nu_poly({{0, -2}})}, {3, nu_poly({{0, 6}, {2, 6}})}});
        }
    }
    switch (kind.k) {
        case 1: return {};
        case 2: return form_of({{0, nu_poly({{0, -1}})}, {2, nu_poly({{2, 1}})}});
        case 3: return form_of({{1, nu_poly({{0, 1}})}, {3, nu_poly({{2, -3}})}});
        default:
            return form_of({{0, nu_poly({{0, 1}})},
                            {2, nu_poly({{0, -3}, {2, -2}})},
                            {4, nu_poly({{2, 11}, {4, 1}})}});
    }
}

LaurentForm closed_form(CrossKind kind, double nu) { return closed_form_symbolic(kind).at(nu); }

const SymbolicLaurent& recursive_form_symbolic(CrossKind kind) {
    check_order(kind.k, kMaxCrossOrder);
    const RecursionTable& t = recursion_table();
    return kind.family == CrossFamily::YJ ? t.yj[kind.k] : t.yprime_j[kind.k];
}

LaurentForm recursive_form(CrossKind kind, double nu) {
    check_order(kind.k, kMaxCrossOrder);
    const auto& entries = numeric_table().coeffs[kind.family == CrossFamily::YJ ? 0 : 1][kind.k];
    LaurentForm f;
    for (const auto& [m, poly] : entries) {
        double v = 0.0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * nu + *it;
        if (m == 0)
            f.constant_term = v;
        else
            f.inverse_power_coeffs[m] = v;
    }
    return f;
}

double direct_cross_product(CrossKind kind, double nu, double z) {
    check_order(kind.k, bessel::kMaxDerivativeOrder);
    const auto j = bessel::bessel_derivs(bessel::BesselKind::FirstKind, nu, z, kind.k);
    const auto y = bessel::bessel_derivs(bessel::BesselKind::SecondKind, nu, z, kind.k);
    const int base = kind.family == CrossFamily::YJ ? 0 : 1;
    return y[base] * j[kind.k] - j[base] * y[kind.k];
}

double product_scale(CrossKind kind, double nu, double z) {
    check_order(kind.k, bessel::kMaxDerivativeOrder);
    const auto j = bessel::bessel_derivs(bessel::BesselKind::FirstKind, nu, z, kind.k);
    const auto y = bessel::bessel_derivs(bessel::BesselKind::SecondKind, nu, z, kind.k);
    const int base = kind.family == CrossFamily::YJ ? 0 : 1;
    return std::abs(y[base] * j[kind.k]) + std::abs(j[base] * y[kind.k]);
}

std::string to_json(CrossKind kind, double nu, const LaurentForm& form) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : form.inverse_power_coeffs)
        if (c != 0.0) terms.push_back({{"m", m}, {"c", c}});
    nlohmann::json j{{"k", kind.k},
                     {"family", family_name(kind.family)},
                     {"nu", nu},
                     {"c0", static_cast<int>(std::lround(form.constant_term))},
                     {"terms", terms}};
    return j.dump();
}

}  // namespace steklov::crossprod
