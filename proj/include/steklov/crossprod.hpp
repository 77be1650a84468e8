#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace steklov::crossprod {

using Rational = boost::multiprecision::cpp_rational;

/// Which same-argument cross-product:
///   YJ     : Y_nu J_nu^(k) - J_nu Y_nu^(k)
///   YprimeJ: Y_nu' J_nu^(k) - J_nu' Y_nu^(k)
enum class CrossFamily { YJ, YprimeJ };

struct CrossKind {
    CrossFamily family;
    int k;
};

std::string family_name(CrossFamily family);

inline constexpr int kMaxCrossOrder = 8;

/// Polynomial in nu with exact rational coefficients; coefficients()[i]
/// multiplies nu^i. Always kept trimmed (no trailing zeros).
class NuPolynomial {
public:
    NuPolynomial() = default;
    explicit NuPolynomial(std::vector<Rational> coefficients);
    static NuPolynomial constant(const Rational& c);
    /// c * nu^power
    static NuPolynomial monomial(const Rational& c, int power);

    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    double operator()(double nu) const;
    Rational operator()(const Rational& nu) const;

    /// p(nu + delta)
    NuPolynomial shifted(const Rational& delta) const;

    NuPolynomial& operator+=(const NuPolynomial& o);
    NuPolynomial& operator-=(const NuPolynomial& o);
    NuPolynomial& operator*=(const Rational& s);
    friend NuPolynomial operator+(NuPolynomial a, const NuPolynomial& b) { return a += b; }
    friend NuPolynomial operator-(NuPolynomial a, const NuPolynomial& b) { return a -= b; }
    friend NuPolynomial operator*(NuPolynomial a, const Rational& s) { return a *= s; }
    friend NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b);
    friend bool operator==(const NuPolynomial& a, const NuPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Numeric bracket c0 + sum_m c_m z^-m at a fixed nu. The represented
/// cross-product is (2/(pi z)) times the bracket.
struct LaurentForm {
    double constant_term = 0.0;
    std::map<int, double> inverse_power_coeffs;  ///< m >= 1

    double bracket(double z) const;
    /// d/dz of the bracket; constant term is always 0.
    LaurentForm derivative() const;
};

/// (2/(pi z)) * (c0 + sum_m c_m z^-m)
double evaluate(const LaurentForm& form, double z);

/// Bracket with nu left symbolic: coeffs[m] multiplies z^-m, m = 0 is the
/// constant term.
struct SymbolicLaurent {
    std::map<int, NuPolynomial> coeffs;

    LaurentForm at(double nu) const;
    SymbolicLaurent derivative() const;
    /// Substitutes nu -> nu + delta in every coefficient.
    SymbolicLaurent shifted(const Rational& delta) const;
    /// Multiplies the bracket by z^-p.
    SymbolicLaurent times_inverse_power(int p) const;

    SymbolicLaurent& operator+=(const SymbolicLaurent& o);
    SymbolicLaurent& operator*=(const NuPolynomial& s);
    friend bool operator==(const SymbolicLaurent& a, const SymbolicLaurent& b);

private:
    void drop_zeros();
};

/// Printed closed forms for k = 1..4. Orders outside that range throw
/// UnsupportedOrderError pointing at recursive_form.
SymbolicLaurent closed_form_symbolic(CrossKind kind);
LaurentForm closed_form(CrossKind kind, double nu);

/// Forms generated by the mutual recursion between the two families,
/// valid for 1 <= k <= 8. The table is built once and shared.
const SymbolicLaurent& recursive_form_symbolic(CrossKind kind);
LaurentForm recursive_form(CrossKind kind, double nu);

/// The cross-product evaluated literally from J, Y and their derivatives.
double direct_cross_product(CrossKind kind, double nu, double z);

/// |Y||J^(k)| + |J||Y^(k)| (or the primed analogue): the size of the two
/// products whose difference is the cross-product.
double product_scale(CrossKind kind, double nu, double z);

/// {"k","family","nu","c0","terms":[{"m","c"}]}
std::string to_json(CrossKind kind, double nu, const LaurentForm& form);

}  // namespace steklov::crossprod
