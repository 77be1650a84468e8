#include "steklov/model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov::model {

Mass Mass::absolute(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError("mass must be positive and finite");
    return Mass(value, std::nullopt);
}

Mass Mass::times_pi(double multiple) {
    if (!(multiple > 0.0) || !std::isfinite(multiple))
        throw DomainError("mass multiple of pi must be positive and finite");
    return Mass(multiple * std::numbers::pi, multiple);
}

std::string Mass::to_string() const {
    std::ostringstream os;
    os.precision(17);
    if (pi_multiple_) {
        if (*pi_multiple_ == 1.0)
            os << "pi";
        else
            os << *pi_multiple_ << "pi";
    } else {
        os << value_;
    }
    return os.str();
}

Mass parse_mass(const std::string& text) {
    // [coef][*]pi[/den]  or a plain number
    static const std::regex pi_form(R"(^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)",
                                    std::regex::icase);
    std::smatch m;
    try {
        if (std::regex_match(text, m, pi_form)) {
            double coef = m[1].length() > 0 ? std::stod(m[1].str()) : 1.0;
            if (m[2].matched) coef /= std::stod(m[2].str());
            return Mass::times_pi(coef);
        }
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw DomainError("unparseable mass '" + text + "'");
        return Mass::absolute(v);
    } catch (const std::logic_error&) {
        throw DomainError("unparseable mass '" + text + "'");
    }
}

double BallVolume::value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator) *
           std::pow(std::numbers::pi, pi_power);
}

BallVolume unit_ball_volume_exact(int dimension) {
    if (dimension < 1) throw DomainError("dimension must be >= 1");
    if (dimension > 40) throw DomainError("dimension too large for exact ball volume");
    // omega_N = (2 pi / N) omega_{N-2}, omega_0 = 1, omega_1 = 2.
    std::uint64_t num = dimension % 2 == 0 ? 1 : 2;
    std::uint64_t den = 1;
    int pi_power = 0;
    for (int n = dimension % 2 == 0 ? 2 : 3; n <= dimension; n += 2) {
        num *= 2;
        den *= static_cast<std::uint64_t>(n);
        std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
        ++pi_power;
    }
    return {num, den, pi_power};
}

double unit_ball_volume(int dimension) { return unit_ball_volume_exact(dimension).value(); }

ProblemConfig::ProblemConfig(int dimension, Mass mass, int angular_index)
    : dimension_(dimension), mass_(mass), l_(angular_index) {
    if (dimension < 1) throw DomainError("dimension N must be >= 1");
    if (angular_index < 0) throw DomainError("angular index l must be >= 0");
    const BallVolume vol = unit_ball_volume_exact(dimension);
    omega_ = vol.value();
    if (mass_.pi_multiple() && vol.pi_power == 1) {
        steklov_ratio_ = static_cast<double>(static_cast<std::uint64_t>(dimension) * vol.numerator) /
                         (static_cast<double>(vol.denominator) * *mass_.pi_multiple());
    } else {
        steklov_ratio_ = dimension * omega_ / mass_.value();
    }
}

double ipow(double x, unsigned n) noexcept {
    double result = 1.0;
    while (n != 0) {
        if (n & 1u) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

double DensityParams::total_mass(double omega, int dimension) const {
    const double q = 1.0 - epsilon;
    const unsigned n = static_cast<unsigned>(dimension);
    double shell = 0.0;
    for (unsigned k = 0; k < n; ++k) shell += ipow(q, k);
    shell *= epsilon;
    return rho_inner * omega * ipow(q, n) + rho_annulus * omega * shell;
}

DensityParams density_params(const ProblemConfig& cfg, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1)");
    const unsigned n = static_cast<unsigned>(cfg.dimension());
    const double q = 1.0 - epsilon;
    // 1 - q^N = epsilon * sum_{k<N} q^k avoids cancellation for small epsilon.
    double geometric = 0.0;
    double qk = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        geometric += qk;
        qk *= q;
    }
    const double inner_mass = epsilon * cfg.omega() * qk;
    const double rho_hat = (cfg.mass().value() - inner_mass) / (cfg.omega() * geometric);
    if (!(rho_hat > 0.0))
        throw DomainError("epsilon too large: inner region carries more than the total mass");
    return DensityParams{epsilon, epsilon, rho_hat / epsilon, rho_hat};
}

WaveArguments wave_arguments(const ProblemConfig& cfg, double epsilon, double lambda) {
    if (!(lambda > 0.0))
        throw DomainError("lambda must be positive (equation covers nonzero eigenvalues only)");
    const DensityParams d = density_params(cfg, epsilon);
    const double q = 1.0 - epsilon;
    return {std::sqrt(lambda * epsilon) * q, std::sqrt(lambda * d.rho_annulus) * q};
}

}  // namespace steklov::model
