#include "steklov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <future>
#include <memory>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "steklov/characteristic.hpp"
#include "steklov/continuation.hpp"
#include "steklov/crossprod.hpp"
#include "steklov/errors.hpp"
#include "steklov/oracle.hpp"
#include "steklov/profile.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/table_io.hpp"

namespace steklov::cli {

using nlohmann::ordered_json;
using io::format_double;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Writes to the output file when one is given, otherwise to stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

model::ProblemConfig config(const RunSpec& s, int l) {
    return model::ProblemConfig(s.dimension, model::parse_mass(s.mass), l);
}

double require_epsilon(const RunSpec& s) {
    if (!s.epsilon) throw UsageError(command_name(s.command) + " requires --eps");
    return *s.epsilon;
}

// Root on the branch anchored at (0, lambda_l), reached by continuation.
branch::BranchPoint anchored_root(const model::ProblemConfig& cfg, double eps) {
    const int steps = std::max(20, static_cast<int>(std::ceil(eps / 0.005)));
    const branch::BranchTable t = branch::continue_branch(cfg, eps, steps);
    if (t.truncated || t.points.empty())
        throw ConvergenceError("branch continuation stopped before eps = " + format_double(eps),
                               t.points.empty() ? t.anchor_lambda : t.points.back().lambda);
    return t.points.back();
}

int cmd_spectrum(const RunSpec& s, std::ostream& out) {
    if (s.dimension < 2) throw UsageError("spectrum needs --N >= 2");
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "l,lambda,multiplicity,slope\n";
    for (int l = 0; l <= s.l_max; ++l) {
        const auto ev = spectrum::steklov_eigenvalue(config(s, l));
        csv << l << ',' << format_double(ev.value) << ',' << ev.multiplicity << ','
            << format_double(ev.slope) << '\n';
        rows.push_back({{"l", l},
                        {"lambda", ev.value},
                        {"multiplicity", ev.multiplicity.str()},
                        {"slope", ev.slope}});
    }
    Sink sink(s.output, out);
    if (s.format == Format::Json)
        *sink << rows.dump(2) << '\n';
    else
        *sink << csv.str();
    return 0;
}

int cmd_branch(const RunSpec& s, std::ostream& out) {
    const auto table = branch::continue_branch(config(s, s.l.first), s.eps_max, s.steps);
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        ordered_json j = ordered_json::parse(io::branch_sidecar_json(table));
        ordered_json pts = ordered_json::array();
        for (const auto& p : table.points)
            pts.push_back({{"epsilon", p.epsilon}, {"lambda", p.lambda}, {"residual", p.residual}});
        j["points"] = pts;
        *sink << j.dump(2) << '\n';
    } else {
        io::write_branch_csv(*sink, table);
        if (!s.output.empty()) {
            std::ofstream meta(s.output + ".json");
            if (!meta) throw UsageError("cannot open sidecar '" + s.output + ".json'");
            meta << io::branch_sidecar_json(table) << '\n';
        }
    }
    return table.truncated ? kExitNumerical : 0;
}

int cmd_slope(const RunSpec& s, std::ostream& out) {
    const auto cfg = config(s, s.l.first);
    const std::vector<double> eps = s.eps_list.empty() ? std::vector<double>{1e-2, 1e-3, 1e-4} : s.eps_list;
    const double formula = s.dimension == 1 ? spectrum::interval_slope(cfg.mass().value())
                                            : spectrum::slope_at_zero(cfg);
    const auto samples = branch::slope_estimate(cfg, eps);
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        ordered_json j;
        j["slope_at_zero"] = formula;
        ordered_json rows = ordered_json::array();
        for (const auto& q : samples)
            rows.push_back({{"epsilon", q.epsilon}, {"lambda", q.lambda}, {"quotient", q.quotient}});
        j["quotients"] = rows;
        *sink << j.dump(2) << '\n';
    } else {
        *sink << "epsilon,lambda,quotient,slope_at_zero\n";
        for (const auto& q : samples)
            *sink << format_double(q.epsilon) << ',' << format_double(q.lambda) << ','
                  << format_double(q.quotient) << ',' << format_double(formula) << '\n';
    }
    return 0;
}

int cmd_figure(const RunSpec& s, std::ostream& out) {
    if (s.l.last < s.l.first) throw UsageError("figure needs an l-range a..b with a <= b");
    if (!(s.eps_range.first > 0.0 && s.eps_range.last < 1.0 && s.eps_range.first < s.eps_range.last))
        throw UsageError("figure needs an eps-range inside (0, 1)");
    if (s.eps_count < 2) throw UsageError("--eps-count must be >= 2");
    std::vector<double> eps(static_cast<std::size_t>(s.eps_count));
    for (int i = 0; i < s.eps_count; ++i)
        eps[i] = s.eps_range.first + (s.eps_range.last - s.eps_range.first) * i / (s.eps_count - 1);

    std::vector<std::future<std::vector<branch::FamilyPoint>>> jobs;
    for (int l = s.l.first; l <= s.l.last; ++l) {
        const auto cfg = config(s, l);
        jobs.push_back(std::async(std::launch::async, [cfg, &eps, &s] {
            return branch::trace_families(cfg, eps, s.lambda_max, s.samples);
        }));
    }
    std::vector<branch::FamilyPoint> rows;
    for (auto& j : jobs) {
        auto part = j.get();
        rows.insert(rows.end(), part.begin(), part.end());
    }
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"l", r.l}, {"branch", r.branch}, {"epsilon", r.epsilon},
                           {"lambda", r.lambda}, {"residual", r.residual}});
        *sink << arr.dump(2) << '\n';
    } else {
        io::write_family_csv(*sink, rows);
    }
    return 0;
}

int cmd_verify_crossprod(const RunSpec& s, std::ostream& out) {
    if (s.k_max < 1 || s.k_max > crossprod::kMaxCrossOrder)
        throw UsageError("--k-max must lie in 1..8");
    constexpr double kClosedTol = 1e-10;
    constexpr double kRecursiveTol = 1e-9;
    bool ok = true;
    Sink sink(s.output, out);
    *sink << "family,k,nu,z,direct,recursive,recursive_err,closed_err\n";
    for (auto fam : {crossprod::CrossFamily::YJ, crossprod::CrossFamily::YprimeJ}) {
        for (int k = 1; k <= s.k_max; ++k) {
            for (int i = 0; i <= 10; ++i) {
                const double nu = 0.5 * i;
                for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
                    const crossprod::CrossKind kind{fam, k};
                    const double direct = crossprod::direct_cross_product(kind, nu, z);
                    const double scale = std::max(std::abs(direct), crossprod::product_scale(kind, nu, z));
                    const double rec = crossprod::evaluate(crossprod::recursive_form(kind, nu), z);
                    const double rec_err = std::abs(rec - direct) / scale;
                    double closed_err = 0.0;
                    if (k <= 4) {
                        const double cl = crossprod::evaluate(crossprod::closed_form(kind, nu), z);
                        closed_err = std::abs(cl - direct) / scale;
                        ok = ok && closed_err <= kClosedTol;
                    }
                    ok = ok && rec_err <= kRecursiveTol;
                    *sink << (fam == crossprod::CrossFamily::YJ ? "YJ" : "YpJ") << ',' << k << ','
                          << format_double(nu) << ',' << format_double(z) << ','
                          << format_double(direct) << ',' << format_double(rec) << ','
                          << format_double(rec_err) << ',' << format_double(closed_err) << '\n';
                }
            }
        }
    }
    if (!ok) throw Error("verification_failed", "cross-product identities exceeded tolerance");
    return 0;
}

int cmd_verify_remainder(const RunSpec& s, std::ostream& out) {
    const auto cfg = config(s, s.l.first);
    const double lambda = spectrum::steklov_eigenvalue(cfg).value;
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(1e-5 * std::pow(1e3, i / 12.0));
    const auto samples = branch::remainder_scaling(cfg, lambda, grid);
    const double slope = branch::loglog_slope(samples);
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : samples) rows.push_back({{"epsilon", r.epsilon}, {"remainder", r.remainder}});
        *sink << ordered_json{{"lambda", lambda}, {"loglog_slope", slope}, {"samples", rows}}.dump(2) << '\n';
    } else {
        *sink << "epsilon,remainder\n";
        for (const auto& r : samples) *sink << format_double(r.epsilon) << ',' << format_double(r.remainder) << '\n';
        *sink << "# loglog_slope," << format_double(slope) << '\n';
    }
    if (slope < 1.4) throw Error("verification_failed", "remainder slope " + format_double(slope) + " < 1.4");
    return 0;
}

int cmd_oracle_compare(const RunSpec& s, std::ostream& out) {
    const auto cfg = config(s, s.l.first);
    const double eps = require_epsilon(s);
    const branch::BranchPoint p = anchored_root(cfg, eps);
    const double h = 1e-4 * p.lambda;
    const double shot = oracle::eigenvalue_by_shooting(cfg, eps, {p.lambda - h, p.lambda + h});
    const double rel = std::abs(shot - p.lambda) / p.lambda;
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        *sink << ordered_json{{"epsilon", eps}, {"lambda_bessel", p.lambda}, {"lambda_shooting", shot},
                              {"relative_difference", rel}}.dump(2) << '\n';
    } else {
        *sink << "epsilon,lambda_bessel,lambda_shooting,relative_difference\n"
              << format_double(eps) << ',' << format_double(p.lambda) << ',' << format_double(shot)
              << ',' << format_double(rel) << '\n';
    }
    return 0;
}

int cmd_eigenfunction(const RunSpec& s, std::ostream& out) {
    const auto cfg = config(s, s.l.first);
    const double eps = require_epsilon(s);
    if (s.points < 2) throw UsageError("--points must be >= 2");
    const branch::BranchPoint p = anchored_root(cfg, eps);
    const branch::RadialProfile prof = branch::radial_profile(cfg, p);
    const auto jumps = prof.continuity_jumps();
    Sink sink(s.output, out);
    if (s.format == Format::Json) {
        ordered_json samples = ordered_json::array();
        for (int i = 1; i <= s.points; ++i) {
            const double r = static_cast<double>(i) / s.points;
            samples.push_back({{"r", r}, {"S", prof.value(r)}, {"dS", prof.derivative(r)}});
        }
        *sink << ordered_json{{"epsilon", eps},
                              {"lambda", p.lambda},
                              {"alpha", prof.alpha()},
                              {"beta", prof.beta()},
                              {"value_jump", jumps.value},
                              {"derivative_jump", jumps.derivative},
                              {"relative_boundary_derivative", prof.relative_boundary_derivative()},
                              {"samples", samples}}.dump(2) << '\n';
    } else {
        *sink << "r,S,dS\n";
        for (int i = 1; i <= s.points; ++i) {
            const double r = static_cast<double>(i) / s.points;
            *sink << format_double(r) << ',' << format_double(prof.value(r)) << ','
                  << format_double(prof.derivative(r)) << '\n';
        }
    }
    return 0;
}

ordered_json context_of(const RunSpec& s) {
    return {{"command", command_name(s.command)}, {"N", s.dimension}, {"M", s.mass}, {"l", s.l.first}};
}

void report(std::ostream& err, const std::string& code, const std::string& message, ordered_json context) {
    err << ordered_json{{"code", code}, {"message", message}, {"context", std::move(context)}}.dump() << '\n';
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::Branch: return "branch";
        case Command::Slope: return "slope";
        case Command::Figure: return "figure";
        case Command::VerifyCrossprod: return "verify-crossprod";
        case Command::VerifyRemainder: return "verify-remainder";
        case Command::OracleCompare: return "oracle-compare";
        case Command::Eigenfunction: return "eigenfunction";
    }
    return "unknown";
}

IndexRange parse_index_range(const std::string& text) {
    static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw UsageError("expected an index or a range a..b, got '" + text + "'");
    const int a = std::stoi(m[1].str());
    const int b = m[2].matched ? std::stoi(m[2].str()) : a;
    return {a, b};
}

RealRange parse_real_range(const std::string& text) {
    auto number = [&](const std::string& part) {
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
        return v;
    };
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const double v = number(text);
            return {v, v};
        }
        return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw UsageError("expected a number or a range a..b, got '" + text + "'");
    }
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        switch (spec.command) {
            case Command::Spectrum: return cmd_spectrum(spec, out);
            case Command::Branch: return cmd_branch(spec, out);
            case Command::Slope: return cmd_slope(spec, out);
            case Command::Figure: return cmd_figure(spec, out);
            case Command::VerifyCrossprod: return cmd_verify_crossprod(spec, out);
            case Command::VerifyRemainder: return cmd_verify_remainder(spec, out);
            case Command::OracleCompare: return cmd_oracle_compare(spec, out);
            case Command::Eigenfunction: return cmd_eigenfunction(spec, out);
        }
    } catch (const UsageError& e) {
        report(err, "usage", e.what(), context_of(spec));
        return kExitUsage;
    } catch (const DomainError& e) {
        report(err, e.code(), e.what(), context_of(spec));
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        ordered_json ctx = context_of(spec);
        ctx["best_iterate"] = e.best_iterate();
        report(err, e.code(), e.what(), ctx);
        return kExitNumerical;
    } catch (const Error& e) {
        report(err, e.code(), e.what(), context_of(spec));
        return kExitNumerical;
    }
    return kExitUsage;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Steklov and mass-concentration Neumann eigenvalues of the unit ball"};
    app.require_subcommand(1);
    RunSpec spec;
    std::string l_text;
    std::string eps_text;
    std::string format_text = "csv";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--N", spec.dimension, "space dimension")->check(CLI::Range(1, 40));
        sub->add_option("--M", spec.mass, "total mass, e.g. pi, 4pi, 2.5");
        sub->add_option("--output,-o", spec.output, "output file (default stdout)");
        sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    struct Entry {
        Command command;
        CLI::App* app;
    };
    std::vector<Entry> subs;
    auto add = [&](Command c, const std::string& help) {
        CLI::App* sub = app.add_subcommand(command_name(c), help);
        common(sub);
        subs.push_back({c, sub});
        return sub;
    };

    add(Command::Spectrum, "exact Steklov eigenvalues, multiplicities and slopes")
        ->add_option("--l-max", spec.l_max, "largest angular index")->check(CLI::NonNegativeNumber);
    {
        auto* sub = add(Command::Branch, "continue the branch anchored at the Steklov eigenvalue");
        sub->add_option("--l", l_text, "angular index")->required();
        sub->add_option("--eps-max", spec.eps_max, "largest epsilon");
        sub->add_option("--steps", spec.steps, "uniform epsilon steps");
    }
    {
        auto* sub = add(Command::Slope, "difference quotients toward the first-order coefficient");
        sub->add_option("--l", l_text, "angular index")->required();
        sub->add_option("--eps-list", spec.eps_list, "epsilon values (default 1e-2,1e-3,1e-4)")->delimiter(',');
    }
    {
        auto* sub = add(Command::Figure, "all branch families in a window (eps, lambda)");
        sub->add_option("--l", l_text, "angular index range a..b")->required();
        sub->add_option("--eps", eps_text, "epsilon range a..b")->required();
        sub->add_option("--eps-count", spec.eps_count, "number of epsilon values");
        sub->add_option("--lambda-max", spec.lambda_max, "upper end of the lambda window");
        sub->add_option("--samples", spec.samples, "lambda scan intervals");
    }
    add(Command::VerifyCrossprod, "check cross-product forms against direct evaluation")
        ->add_option("--k-max", spec.k_max, "largest derivative order (<= 8)");
    add(Command::VerifyRemainder, "log-log slope of the expansion remainder")
        ->add_option("--l", l_text, "angular index")->required();
    {
        auto* sub = add(Command::OracleCompare, "Bessel root against ODE shooting");
        sub->add_option("--l", l_text, "angular index")->required();
        sub->add_option("--eps", eps_text, "epsilon")->required();
    }
    {
        auto* sub = add(Command::Eigenfunction, "radial eigenfunction on the anchored branch");
        sub->add_option("--l", l_text, "angular index")->required();
        sub->add_option("--eps", eps_text, "epsilon")->required();
        sub->add_option("--points", spec.points, "radial samples");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report(std::cerr, "usage", e.what(), ordered_json::object());
        return kExitUsage;
    }

    for (const auto& s : subs)
        if (s.app->parsed()) spec.command = s.command;
    spec.format = format_text == "json" ? Format::Json : Format::Csv;
    try {
        if (!l_text.empty()) spec.l = parse_index_range(l_text);
        if (!eps_text.empty()) {
            spec.eps_range = parse_real_range(eps_text);
            if (spec.command != Command::Figure) spec.epsilon = spec.eps_range.first;
        }
    } catch (const UsageError& e) {
        report(std::cerr, "usage", e.what(), context_of(spec));
        return kExitUsage;
    }
    return run(spec, std::cout, std::cerr);
}

}  // namespace steklov::cli
